#pragma once

#include <string>
#include <vector>

#include "symgen/core.hpp"
#include "symgen/earley.hpp"
#include "symgen/gramforge.hpp"

// Task generators over context-free grammars: parsability classification,
// canonical parsing, token tagging, and next-token continuation.

namespace symgen::cfg_tasks {

using cfg::Cfg;
using cfg::ParseForest;
using cfg::ParseTree;

inline constexpr int kInstanceRetryCap = 60;

struct CfgBundle {
  gramforge::Grammar grammar;
  Cfg analyzer;
  std::string source;     // DSL rule lines shown in the prompt
  std::string name;       // curated name or "random"
};

// Rule lines without directives; still parseable by parse_grammar.
inline std::string prompt_source(const gramforge::Grammar& g) {
  std::string full = gramforge::serialize(g);
  std::string out;
  for (const auto& line : split(full, '\n')) {
    if (line.empty() || line[0] == '#' || line[0] == '%') continue;
    // Hide the default ":: 1" weight; weights only drive generation.
    std::string l = line;
    size_t w = l.rfind(" :: 1");
    if (w != std::string::npos && w + 5 == l.size()) l = l.substr(0, w);
    out += l + "\n";
  }
  return out;
}

inline CfgBundle bundle_from_source(const std::string& src, const std::string& name) {
  CfgBundle b;
  b.grammar = gramforge::parse_grammar(src);
  b.analyzer = cfg::make_cfg(b.grammar);
  b.source = prompt_source(b.grammar);
  b.name = name;
  return b;
}

inline const std::vector<std::pair<std::string, std::string>>& curated_cfgs() {
  static const std::vector<std::pair<std::string, std::string>> c = {
      {"dyck1", "S -> '(' S ')' S\nS -> <eps>\n"},
      {"dyck2", "S -> '(' S ')' S\nS -> '[' S ']' S\nS -> <eps>\n"},
      {"arith", "E -> E '+' T\nE -> T\nT -> T '*' F\nT -> F\nF -> '(' E ')'\nF -> n\n"},
      {"anbn", "S -> a S b\nS -> <eps>\n"},
  };
  return c;
}

inline const DifficultyKnob& cfg_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("nonterminals", 2, 0.6, true, 7);
    knob.linear("extra_rules", 1, 1.0, true, 10);
    knob.linear("terminals", 3, 0.5, true, 8);
    knob.linear("min_depth", 1, 0.45, true, 5);
    knob.linear("max_len", 7, 2.5, true, 26);
    return knob;
  }();
  return k;
}

// Random pruned CFG; draws a curated grammar with probability 1/4.
inline CfgBundle random_cfg(double level, Rng& rng) {
  if (rng.chance(0.25)) {
    const auto& [name, src] = rng.pick(curated_cfgs());
    return bundle_from_source(src, name);
  }
  static const std::vector<std::string> nt_pool = {"S", "A", "B", "C", "D", "E", "F"};
  static const std::vector<std::string> term_pool = {"a", "b", "c", "d", "x", "y",
                                                     "'('", "')'", "'['", "']'", "'+'"};
  const auto& knob = cfg_knob();
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    int n_nt = std::max<int64_t>(2, knob.resolve_int("nonterminals", level, rng));
    int extra = static_cast<int>(knob.resolve_int("extra_rules", level, rng));
    int n_term = std::min<int64_t>(term_pool.size(),
                                   std::max<int64_t>(2, knob.resolve_int("terminals", level, rng)));
    std::vector<std::string> terms(term_pool.begin(), term_pool.begin() + n_term);
    rng.shuffle(terms);

    std::string src;
    auto emit_rule = [&](int lhs) {
      std::string line = nt_pool[lhs] + " ->";
      int len = static_cast<int>(rng.below(4));  // 0..3 symbols
      if (len == 0) {
        line += " <eps>";
      } else {
        for (int s = 0; s < len; ++s) {
          if (rng.chance(0.45))
            line += " " + nt_pool[rng.below(n_nt)];
          else
            line += " " + terms[rng.below(terms.size())];
        }
      }
      src += line + "\n";
    };
    for (int i = 0; i < n_nt; ++i) emit_rule(i);  // one rule per nonterminal
    for (int i = 0; i < extra; ++i) emit_rule(static_cast<int>(rng.below(n_nt)));

    try {
      CfgBundle b = bundle_from_source(src, "random");
      if (b.analyzer.min_yield[b.analyzer.start] > 8) continue;
      // Language must contain a non-empty string: some production of some
      // reachable nonterminal must carry a terminal.
      bool has_token = false;
      for (const auto& p : b.analyzer.prods)
        for (int s : p.rhs)
          if (cfg::is_term(s)) has_token = true;
      if (!has_token) continue;
      return b;
    } catch (const Error&) {
      continue;  // pruning emptied the grammar
    }
  }
  throw RetryExhausted("random_cfg: no usable grammar");
}

// Samples a token string from the bundle's grammar within the level's
// length window.
inline std::vector<std::string> sample_tokens(const CfgBundle& b, double level, Rng& rng,
                                              const Budget& budget) {
  const auto& knob = cfg_knob();
  gramforge::DerivationControls c;
  c.min_depth = static_cast<int>(knob.resolve_int("min_depth", level, rng));
  c.max_depth = c.min_depth + 6;
  c.bushiness = 0.35;
  int max_len = static_cast<int>(knob.resolve_int("max_len", level, rng));
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    gramforge::DerivationControls cc = c;
    cc.min_depth = std::max(0, c.min_depth - (attempt >= 20 ? 1 : 0));
    try {
      auto d = gramforge::sample_derivation(b.grammar, cc, rng);
      const auto& toks = d.channel_tokens[0];
      if (!toks.empty() && static_cast<int>(toks.size()) <= max_len) return toks;
    } catch (const Error&) {
      // depth window infeasible for this grammar; widen and retry
      c.min_depth = std::max(0, c.min_depth - 1);
      c.max_depth += 2;
    }
  }
  throw RetryExhausted("sample_tokens: no string within window");
}

inline std::string render_tokens(const std::vector<std::string>& toks) {
  return join(toks, " ");
}

// ---------------------------------------------------------------------------
// parsability

inline std::string parsability_trace(const CfgBundle& b, const std::vector<std::string>& toks,
                                     const ParseForest& f) {
  if (f.count == 0) {
    // Point at the first position where the chart dies.
    std::vector<int> ids;
    for (const auto& t : toks) {
      int id = b.analyzer.terminal_id(t);
      if (id < 0)
        return "Token '" + t + "' is not in the grammar's alphabet, so no parse exists.";
      ids.push_back(id);
    }
    auto chart = cfg::earley_chart(b.analyzer, ids);
    for (size_t j = 1; j <= ids.size(); ++j) {
      if (chart.sets[j].empty())
        return "The prefix '" + render_tokens({toks.begin(), toks.begin() + j - 1}) +
               "' is viable, but no rule can scan '" + toks[j - 1] + "' at position " +
               std::to_string(j - 1) + "; the string is unparsable.";
    }
    return "Every token scans, but no complete derivation of the start symbol covers "
           "the whole string; the string is unparsable.";
  }
  std::string out = "Parse 1: " + cfg::serialize_tree(f.tree);
  if (f.count >= 2) {
    ParseTree alt;
    if (cfg::extract_alternate(b.analyzer, toks, alt))
      out += "\nParse 2: " + cfg::serialize_tree(alt);
    out += f.capped ? "\nAt least " + std::to_string(cfg::kAmbiguityCap) +
                          " distinct parses exist; the string is ambiguous."
                    : "\n" + std::to_string(f.count) +
                          " distinct parses exist; the string is ambiguous.";
  } else {
    out += "\nNo other parse exists; the string is unambiguous.";
  }
  return out;
}

inline TaskExample gen_parsability(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("parsability", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    CfgBundle b = random_cfg(level, rng);
    std::vector<std::string> toks;
    try {
      toks = sample_tokens(b, level, rng, budget);
    } catch (const RetryExhausted&) {
      continue;
    }
    bool want_unparsable = rng.chance(1.0 / 3.0);
    ParseForest f = cfg::earley_analyze(b.analyzer, toks);
    if (want_unparsable) {
      // Perturb until the string drops out of the language.
      for (int k = 0; k < 30 && f.count != 0; ++k) {
        std::vector<std::string> mutated = toks;
        int op = static_cast<int>(rng.below(3));
        if (op == 0 && mutated.size() > 1) {
          mutated.erase(mutated.begin() + rng.below(mutated.size()));
        } else if (op == 1) {
          mutated.insert(mutated.begin() + rng.below(mutated.size() + 1),
                         b.analyzer.alphabet[rng.below(b.analyzer.alphabet.size())]);
        } else if (mutated.size() > 1) {
          size_t i = rng.below(mutated.size()), j = rng.below(mutated.size());
          std::swap(mutated[i], mutated[j]);
        }
        ParseForest mf = cfg::earley_analyze(b.analyzer, mutated);
        if (mf.count == 0) {
          toks = mutated;
          f = mf;
        }
      }
    }
    std::string label = f.count == 0 ? "unparsable" : f.count == 1 ? "unambiguous" : "ambiguous";

    TaskExample ex;
    ex.task_name = "parsability";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "You are given a context-free grammar (start symbol " +
        b.grammar.start + ") and a token string.\n\nGrammar:\n" + b.source +
        "\nToken string: " + render_tokens(toks) +
        "\n\nClassify the string as exactly one of: unambiguous (exactly one parse "
        "tree), ambiguous (more than one parse tree), unparsable (no parse tree).\n"
        "Answer with only the label.";
    ex.answer = label;
    ex.balancing_key = label;
    ex.cot = parsability_trace(b, toks, f);
    ex.payload = Json{{"grammar", b.source},
                      {"start", b.grammar.start},
                      {"tokens", toks},
                      {"label", label},
                      {"parse_count", f.count},
                      {"count_capped", f.capped},
                      {"stat", static_cast<int>(toks.size() + b.analyzer.prods.size())}};
    return ex;
  }
  throw RetryExhausted("gen_parsability");
}

inline double score_label(const std::string& answer, const TaskExample& ex) {
  return normalize_element(answer) == normalize_element(ex.answer) ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// parsing and tagging (unambiguous instances only)

// Instance selection shared by `parsing` and `tagging`.
inline bool pick_unambiguous(const std::string& task, double level, uint64_t seed,
                             const Budget& budget, CfgBundle& b,
                             std::vector<std::string>& toks, ParseForest& f) {
  Rng rng = example_rng(task, level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    b = random_cfg(level, rng);
    for (int s = 0; s < 8; ++s) {
      std::vector<std::string> cand;
      try {
        cand = sample_tokens(b, level, rng, budget);
      } catch (const RetryExhausted&) {
        break;
      }
      ParseForest pf = cfg::earley_analyze(b.analyzer, cand);
      if (pf.count == 1) {
        toks = cand;
        f = pf;
        return true;
      }
    }
  }
  return false;
}

inline TaskExample gen_parsing(double level, uint64_t seed, const Budget& budget) {
  CfgBundle b;
  std::vector<std::string> toks;
  ParseForest f;
  if (!pick_unambiguous("parsing", level, seed, budget, b, toks, f))
    throw RetryExhausted("gen_parsing: no unambiguous instance");
  TaskExample ex;
  ex.task_name = "parsing";
  ex.level = level;
  ex.seed = seed;
  ex.prompt =
      "You are given a context-free grammar (start symbol " + b.grammar.start +
      ") and a token string with exactly one parse tree.\n\nGrammar:\n" + b.source +
      "\nToken string: " + render_tokens(toks) +
      "\n\nProduce the parse tree as fully parenthesized nested lists: each node is "
      "(NONTERMINAL child child ...), where a child is another node or a token. "
      "Tokens that are parentheses or contain spaces are written single-quoted, "
      "e.g. '('. A nonterminal expanded to the empty string is written "
      "(NONTERMINAL).\nAnswer with only the tree.";
  ex.answer = cfg::serialize_tree(f.tree);
  ex.payload = Json{{"grammar", b.source},
                    {"start", b.grammar.start},
                    {"tokens", toks},
                    {"tree", ex.answer},
                    {"stat", static_cast<int>(toks.size() + b.analyzer.prods.size())}};
  return ex;
}

inline double score_parsing(const std::string& answer, const TaskExample& ex) {
  ParseTree cand;
  if (!cfg::parse_tree_text(trim(answer), cand)) return 0.0;
  std::string canon = cfg::serialize_tree(cand);
  if (canon == ex.answer) return 1.0;
  return 0.5 * normalized_similarity(canon, ex.answer);
}

inline void tag_lines(const ParseTree& node, int depth, std::vector<std::string>& out) {
  for (const auto& kid : node.kids) {
    if (kid.is_token)
      out.push_back(kid.label + "/" + node.label + "/" + std::to_string(depth));
    else
      tag_lines(kid, depth + 1, out);
  }
}

inline TaskExample gen_tagging(double level, uint64_t seed, const Budget& budget) {
  CfgBundle b;
  std::vector<std::string> toks;
  ParseForest f;
  if (!pick_unambiguous("tagging", level, seed, budget, b, toks, f))
    throw RetryExhausted("gen_tagging: no unambiguous instance");
  std::vector<std::string> lines;
  tag_lines(f.tree, 0, lines);
  TaskExample ex;
  ex.task_name = "tagging";
  ex.level = level;
  ex.seed = seed;
  ex.prompt =
      "You are given a context-free grammar (start symbol " + b.grammar.start +
      ") and a token string with exactly one parse tree.\n\nGrammar:\n" + b.source +
      "\nToken string: " + render_tokens(toks) +
      "\n\nFor each token, in order, output one line 'token/PARENT/depth' where "
      "PARENT is the nonterminal that directly produces the token and depth is "
      "PARENT's depth in the parse tree (the root has depth 0).\n"
      "Answer with only the lines.";
  ex.answer = join(lines, "\n");
  ex.payload = Json{{"grammar", b.source},
                    {"start", b.grammar.start},
                    {"tokens", toks},
                    {"tree", cfg::serialize_tree(f.tree)},
                    {"lines", lines},
                    {"stat", static_cast<int>(toks.size() + b.analyzer.prods.size())}};
  return ex;
}

inline double score_tagging(const std::string& answer, const TaskExample& ex) {
  std::vector<std::string> gold, cand;
  for (const auto& l : split(ex.answer, '\n'))
    if (!trim(l).empty()) gold.push_back(trim(l));
  for (const auto& l : split(canonical_newlines(answer), '\n'))
    if (!trim(l).empty()) cand.push_back(trim(l));
  if (gold.empty()) return 0.0;
  size_t correct = 0;
  for (size_t i = 0; i < std::min(gold.size(), cand.size()); ++i)
    if (gold[i] == cand[i]) ++correct;
  return static_cast<double>(correct) / std::max(gold.size(), cand.size());
}

// ---------------------------------------------------------------------------
// continuation

inline TaskExample gen_continuation(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("continuation", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    CfgBundle b = random_cfg(level, rng);
    std::vector<std::string> sentence;
    try {
      sentence = sample_tokens(b, level, rng, budget);
    } catch (const RetryExhausted&) {
      continue;
    }
    size_t cut = rng.below(sentence.size() + 1);
    std::vector<std::string> prefix(sentence.begin(), sentence.begin() + cut);
    cfg::Continuations gold = cfg::continuations(b.analyzer, prefix);
    std::vector<std::string> items(gold.tokens.begin(), gold.tokens.end());
    std::sort(items.begin(), items.end());
    if (gold.stop) items.push_back("STOP");
    if (items.empty()) continue;  // should not happen for a viable prefix

    TaskExample ex;
    ex.task_name = "continuation";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "You are given a context-free grammar (start symbol " + b.grammar.start +
        ") and a prefix of a sentence.\n\nGrammar:\n" + b.source + "\nPrefix: " +
        (prefix.empty() ? "(empty)" : render_tokens(prefix)) +
        "\n\nList every token t such that the prefix followed by t can still be "
        "extended to a complete sentence of the grammar. If the prefix is already a "
        "complete sentence, also include the word STOP.\n"
        "Answer with the tokens separated by spaces.";
    ex.answer = join(items, " ");
    ex.payload = Json{{"grammar", b.source},
                      {"start", b.grammar.start},
                      {"prefix", prefix},
                      {"gold", items},
                      {"stat", static_cast<int>(sentence.size() + b.analyzer.prods.size())}};
    return ex;
  }
  throw RetryExhausted("gen_continuation");
}

// Jaccard overlap over the token set (STOP included as an ordinary element).
inline double score_continuation(const std::string& answer, const TaskExample& ex) {
  std::set<std::string> gold, cand;
  for (const auto& t : ex.payload.at("gold").get<std::vector<std::string>>())
    gold.insert(t);
  for (const auto& t : split_ws(answer)) cand.insert(t);
  if (cand.empty()) return 0.0;
  size_t inter = 0;
  for (const auto& t : cand)
    if (gold.count(t)) ++inter;
  size_t uni = gold.size() + cand.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace symgen::cfg_tasks
