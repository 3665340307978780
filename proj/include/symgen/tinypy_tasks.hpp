#pragma once

#include "symgen/tinypy.hpp"

// code_execution: synthesize a program from the tinypy grammar, keep it only
// if it parses, runs within budget, and prints something; the gold answer is
// its exact stdout.

namespace symgen::tinypy {

inline const DifficultyKnob& tinypy_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("min_depth", 5, 1.1, true, 13);
    knob.linear("var_pool", 4, 0.6, true, 10);
    knob.linear("min_tokens", 12, 8, true, 64);
    return knob;
  }();
  return k;
}

struct GeneratedProgram {
  std::string source;
  std::string stdout_text;
  bool has_loop = false;
  size_t token_count = 0;
};

inline std::optional<GeneratedProgram> try_program(double level, Rng& rng) {
  static const gramforge::Grammar grammar = gramforge::load_builtin("tinypy");
  const auto& knob = tinypy_knob();
  static const std::vector<std::string> name_pool = {"a", "b", "c", "d", "e",
                                                     "f", "g", "h", "i", "j"};
  gramforge::DerivState st;
  int pool = static_cast<int>(std::max<int64_t>(3, knob.resolve_int("var_pool", level, rng)));
  st.lists["pool"].assign(name_pool.begin(), name_pool.begin() + pool);

  gramforge::DerivationControls c;
  c.min_depth = static_cast<int>(knob.resolve_int("min_depth", level, rng));
  c.max_depth = c.min_depth + 5;
  c.bushiness = 0.3;

  int min_tokens = static_cast<int>(knob.resolve_int("min_tokens", level, rng));

  gramforge::Derivation d;
  try {
    d = gramforge::sample_derivation(grammar, c, rng, st);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (static_cast<int>(d.channel_tokens[0].size()) < min_tokens) return std::nullopt;
  GeneratedProgram out;
  out.token_count = d.channel_tokens[0].size();
  for (const auto& t : d.channel_tokens[0])
    if (t == "for" || t == "while") out.has_loop = true;
  out.source = render_program(d.channel_tokens[0]);

  auto program = parse_program(out.source);
  if (!program) return std::nullopt;
  try {
    out.stdout_text = interpret(*program);
  } catch (const Error&) {
    return std::nullopt;  // division by zero or budget blowups are rejected
  }
  if (trim(out.stdout_text).empty()) return std::nullopt;
  return out;
}

inline TaskExample gen_code_execution(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("code_execution", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    auto prog = try_program(level, rng);
    if (!prog) continue;
    TaskExample ex;
    ex.task_name = "code_execution";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "Predict the standard output of this program. Integer division // floors, "
        "% follows the divisor's sign, and floats print in shortest round-trip "
        "form with a trailing .0 when integral.\n\n" + prog->source +
        "\nAnswer with the exact output.";
    ex.answer = prog->stdout_text;
    ex.payload = Json{{"source", prog->source},
                      {"has_loop", prog->has_loop},
                      {"stat", static_cast<double>(prog->token_count)}};
    return ex;
  }
  throw RetryExhausted("gen_code_execution");
}

// Exact match after trailing-whitespace normalization.
inline double score_code_execution(const std::string& answer, const TaskExample& ex) {
  return canonical_text(answer) == canonical_text(ex.answer) ? 1.0 : 0.0;
}

}  // namespace symgen::tinypy
