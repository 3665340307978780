#pragma once

#include "symgen/regex.hpp"

// regex_following and regex_induction generators.

namespace symgen::rx {

inline const DifficultyKnob& regex_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("min_depth", 3, 0.5, true, 8);
    knob.linear("min_len", 2, 0.6, true, 7);
    knob.linear("min_nodes", 4, 1.4, true, 14);
    knob.linear("pos_examples", 3, 0.5, true, 7);
    knob.linear("neg_examples", 3, 0.5, true, 7);
    knob.linear("slack", 2, 0.6, true, 7);
    return knob;
  }();
  return k;
}

// Pattern sampled from the regex grammar, rejected until its language is
// non-empty and its shortest accepted string is long enough to make random
// answers score poorly.
inline Pattern sample_pattern(double level, Rng& rng, const Budget& budget) {
  static const gramforge::Grammar grammar = gramforge::load_builtin("regex");
  const auto& knob = regex_knob();
  int min_len = static_cast<int>(std::max<int64_t>(1, knob.resolve_int("min_len", level, rng)));
  int min_nodes = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("min_nodes", level, rng)));
  gramforge::DerivationControls c;
  c.min_depth = static_cast<int>(knob.resolve_int("min_depth", level, rng));
  c.max_depth = c.min_depth + 5;
  c.bushiness = 0.4;
  for (int attempt = 0; attempt < 3 * kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    // Size floors relax deterministically when the draw keeps missing them.
    int want_nodes = std::max(2, min_nodes - attempt / 30);
    int want_len = std::max(1, min_len - attempt / 60);
    std::string text;
    try {
      text = gramforge::sample_derivation(grammar, c, rng).channels[0];
    } catch (const Error&) {
      c.min_depth = std::max(0, c.min_depth - 1);
      continue;
    }
    if (text.size() > 64) continue;
    auto p = parse_pattern(text);
    if (!p) continue;
    if (static_cast<int>(p->ast.size()) < want_nodes) continue;
    auto rem = chars_to_accept(p->nfa);
    if (rem[p->nfa.start] >= (1 << 28)) continue;  // empty language
    if (rem[p->nfa.start] < want_len) continue;
    return *p;
  }
  throw RetryExhausted("sample_pattern");
}

inline TaskExample gen_regex_following(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("regex_following", level, seed);
  const auto& knob = regex_knob();
  Pattern p = sample_pattern(level, rng, budget);
  int slack = static_cast<int>(knob.resolve_int("slack", level, rng));
  std::string gold = sample_accepted(p, rng, slack);

  TaskExample ex;
  ex.task_name = "regex_following";
  ex.level = level;
  ex.seed = seed;
  ex.prompt =
      "Produce a string that fully matches this regular expression:\n" + p.text +
      "\nThe alphabet is lowercase letters and digits. Answer with only the string.";
  ex.answer = gold;
  ex.payload = Json{{"pattern", p.text}, {"stat", static_cast<double>(p.ast.size())}};
  return ex;
}

// Reward falls off with the fuzzy edit distance to the pattern's language.
inline double score_following(const std::string& answer, const TaskExample& ex) {
  auto p = parse_pattern(ex.payload.at("pattern").get<std::string>());
  if (!p) return 0.0;
  std::string cand = trim(answer);
  if (cand.size() > kStringCap) cand = cand.substr(0, kStringCap);
  return 1.0 / (1.0 + static_cast<double>(dist_to_language(*p, cand)));
}

inline std::optional<std::string> mutate_to_negative(const Pattern& p, const std::string& base,
                                                     Rng& rng) {
  const std::string& sigma = alphabet();
  for (int tries = 0; tries < 40; ++tries) {
    std::string m = base;
    int op = static_cast<int>(rng.below(3));
    if (op == 0 && !m.empty()) {
      m[rng.below(m.size())] = sigma[rng.below(sigma.size())];
    } else if (op == 1) {
      m.insert(m.begin() + rng.below(m.size() + 1), sigma[rng.below(sigma.size())]);
    } else if (!m.empty()) {
      m.erase(m.begin() + rng.below(m.size()));
    }
    if (m != base && !m.empty() && !matches(p, m)) return m;
  }
  return std::nullopt;
}

inline TaskExample gen_regex_induction(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("regex_induction", level, seed);
  const auto& knob = regex_knob();
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    Pattern p = sample_pattern(level, rng, budget);
    int want_pos = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("pos_examples", level, rng)));
    int want_neg = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("neg_examples", level, rng)));

    std::set<std::string> pos;
    for (int tries = 0; tries < 60 && static_cast<int>(pos.size()) < want_pos; ++tries) {
      std::string s = sample_accepted(p, rng, 2 + static_cast<int>(rng.below(4)));
      if (!s.empty()) pos.insert(s);
    }
    if (pos.size() < 2) continue;

    std::set<std::string> neg;
    std::vector<std::string> pos_list(pos.begin(), pos.end());
    for (int tries = 0; tries < 80 && static_cast<int>(neg.size()) < want_neg; ++tries) {
      auto m = mutate_to_negative(p, pos_list[rng.below(pos_list.size())], rng);
      if (m && !pos.count(*m)) neg.insert(*m);
    }
    if (neg.size() < 2) continue;

    std::vector<std::string> pos_lines(pos.begin(), pos.end());
    std::vector<std::string> neg_lines(neg.begin(), neg.end());
    rng.shuffle(pos_lines);
    rng.shuffle(neg_lines);

    TaskExample ex;
    ex.task_name = "regex_induction";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "Find a regular expression that matches every positive example and rejects "
        "every negative example.\nPositive:\n" +
        join(pos_lines, "\n") + "\nNegative:\n" + join(neg_lines, "\n") +
        "\nUse literals, character classes like [a-d], alternation |, grouping, and "
        "the quantifiers * + ? {m,n}. Shorter answers score higher.\n"
        "Answer with only the expression.";
    ex.answer = p.text;
    ex.payload = Json{{"pattern", p.text},
                      {"positives", pos_lines},
                      {"negatives", neg_lines},
                      {"stat", static_cast<double>(p.ast.size())}};
    return ex;
  }
  throw RetryExhausted("gen_regex_induction");
}

// (match rate + reject rate)/2, scaled by a conciseness factor.
inline double score_regex_induction(const std::string& answer, const TaskExample& ex) {
  auto squash = [](const std::string& s) {
    std::string out;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
  };
  auto cand = parse_pattern(squash(answer));
  if (!cand) return 0.0;
  auto pos = ex.payload.at("positives").get<std::vector<std::string>>();
  auto neg = ex.payload.at("negatives").get<std::vector<std::string>>();
  double hit = 0, reject = 0;
  for (const auto& s : pos)
    if (matches(*cand, s)) ++hit;
  for (const auto& s : neg)
    if (!matches(*cand, s)) ++reject;
  double rate = (hit / pos.size() + reject / neg.size()) / 2.0;
  double gold_len = static_cast<double>(ex.payload.at("pattern").get<std::string>().size());
  double cand_len = static_cast<double>(squash(answer).size());
  double concise = cand_len > 0 ? std::min(1.0, gold_len / cand_len) : 0.0;
  return std::max(0.0, std::min(1.0, rate * concise));
}

}  // namespace symgen::rx
