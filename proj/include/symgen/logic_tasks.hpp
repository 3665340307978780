#pragma once

#include "symgen/logic.hpp"

// logic_nli and evidence_retrieval generators. Sentences come from the
// english_fol dual-channel grammar; labels are certified by the internal
// decision procedure, never assumed from construction.

namespace symgen::logic {

inline const std::vector<std::string>& adjective_pool() {
  static const std::vector<std::string> p = {"kind",  "happy", "wise",  "brave",
                                             "calm",  "proud", "quiet", "bold",
                                             "eager", "gentle", "tidy", "witty"};
  return p;
}

inline const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> p = {"Mary", "Paul", "Alice", "John", "Sara",
                                             "Tom",  "Nina", "Omar",  "Lena", "Igor"};
  return p;
}

inline const DifficultyKnob& logic_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("premises", 2, 0.9, true, 8);
    knob.linear("extra_adjectives", 0, 0.25, true, 1);
    knob.linear("extra_names", 0, 0.2, true, 1);
    knob.linear("distractors", 1, 0.7, true, 5);
    return knob;
  }();
  return k;
}

struct Sentence {
  std::string en;
  std::string fol;
};

inline std::string polish_english(std::string s) {
  // Token-joined output leaves a space before commas.
  size_t at;
  while ((at = s.find(" ,")) != std::string::npos) s.erase(at, 1);
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  if (!s.empty() && s.back() != '.') s += ".";
  return s;
}

inline Sentence sample_sentence(const gramforge::Grammar& g, gramforge::DerivState state,
                                Rng& rng) {
  gramforge::DerivationControls c;
  c.max_depth = 5;
  auto d = gramforge::sample_derivation(g, c, rng, std::move(state));
  return {polish_english(d.channels[0]), d.channels[1]};
}

struct NliDraft {
  std::vector<Sentence> premises;
  std::vector<Formula> premise_asts;
  Sentence hypothesis;
  Formula hypothesis_ast;
  Vocab vocab;
  std::string label;
  std::vector<std::string> adjectives, names;
};

// Samples premises from the grammar, then picks the hypothesis from a pool
// of sampled candidates so all three labels stay reachable; the stored
// label is always recomputed by decide() on the final vocabulary.
inline std::optional<NliDraft> draft_nli(double level, Rng& rng, const Budget& budget,
                                         const std::string& want) {
  static const gramforge::Grammar grammar = gramforge::load_builtin("english_fol");
  const auto& knob = logic_knob();

  int n_adj = 2 + static_cast<int>(knob.resolve_int("extra_adjectives", level, rng));
  int n_names = 2 + static_cast<int>(knob.resolve_int("extra_names", level, rng));
  if (n_adj >= 3) n_names = 2;  // keep the largest profile space in check
  int n_prem = static_cast<int>(std::max<int64_t>(1, knob.resolve_int("premises", level, rng)));

  std::vector<std::string> adjs = adjective_pool(), names = name_pool();
  rng.shuffle(adjs);
  rng.shuffle(names);
  adjs.resize(n_adj);
  names.resize(n_names);

  gramforge::DerivState st;
  st.lists["adjectives"] = adjs;
  st.lists["names"] = names;

  NliDraft d;
  d.adjectives = adjs;
  d.names = names;

  std::set<std::string> seen;
  for (int tries = 0; static_cast<int>(d.premises.size()) < n_prem && tries < 60; ++tries) {
    budget.checkpoint();
    Sentence s = sample_sentence(grammar, st, rng);
    if (!seen.insert(s.fol).second) continue;
    Vocab probe = d.vocab;
    auto ast = parse_fol(s.fol, probe);
    if (!ast) continue;
    d.vocab = probe;
    d.premises.push_back(s);
    d.premise_asts.push_back(*ast);
  }
  if (static_cast<int>(d.premises.size()) < n_prem) return std::nullopt;
  if (!satisfiable(d.premise_asts, d.vocab)) return std::nullopt;

  // Hypothesis candidates, bucketed by certified label.
  std::map<std::string, std::vector<std::pair<Sentence, Formula>>> buckets;
  for (int tries = 0; tries < 14; ++tries) {
    budget.checkpoint();
    Sentence h = sample_sentence(grammar, st, rng);
    if (seen.count(h.fol)) continue;
    Vocab probe = d.vocab;
    auto ast = parse_fol(h.fol, probe);
    if (!ast) continue;
    int k = static_cast<int>(probe.predicates.size());
    int c = static_cast<int>(probe.constants.size());
    std::string label = decide(d.premise_asts, *ast, probe, c + (1 << k));
    buckets[label].push_back({h, *ast});
    if (!buckets[want].empty() && tries >= 5) break;
  }
  for (const std::string& pick : {want, std::string("entailment"),
                                  std::string("contradiction"), std::string("neutral")}) {
    auto it = buckets.find(pick);
    if (it == buckets.end() || it->second.empty()) continue;
    d.hypothesis = it->second.front().first;
    d.hypothesis_ast = it->second.front().second;
    d.label = pick;
    // Final vocabulary includes the hypothesis symbols.
    Vocab v = d.vocab;
    auto ast = parse_fol(d.hypothesis.fol, v);
    d.vocab = v;
    d.hypothesis_ast = *ast;
    return d;
  }
  return std::nullopt;
}

inline int model_bound(const Vocab& v) {
  return static_cast<int>(v.constants.size()) + (1 << v.predicates.size());
}

inline TaskExample gen_logic_nli(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("logic_nli", level, seed);
  static const std::vector<std::string> wants = {"entailment", "contradiction", "neutral"};
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    std::string want = wants[rng.below(3)];
    auto d = draft_nli(level, rng, budget, want);
    if (!d) continue;

    std::vector<std::string> prem_en, prem_fol;
    for (const auto& p : d->premises) {
      prem_en.push_back(p.en);
      prem_fol.push_back(p.fol);
    }
    TaskExample ex;
    ex.task_name = "logic_nli";
    ex.level = level;
    ex.seed = seed;
    ex.prompt = "Premise: " + join(prem_en, " ") + "\nHypothesis: " + d->hypothesis.en +
                "\nDoes the premise entail the hypothesis, contradict it, or neither?\n"
                "Answer with exactly one word: entailment, contradiction, or neutral.";
    ex.answer = d->label;
    ex.balancing_key = d->label;
    ex.payload = Json{{"premises_fol", prem_fol},
                      {"hypothesis_fol", d->hypothesis.fol},
                      {"label", d->label},
                      {"adjectives", d->adjectives},
                      {"names", d->names},
                      {"model_bound", model_bound(d->vocab)},
                      {"stat", static_cast<double>(d->premises.size())}};
    return ex;
  }
  throw RetryExhausted("gen_logic_nli");
}

inline double score_logic_label(const std::string& answer, const TaskExample& ex) {
  return normalize_element(answer) == ex.answer ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// evidence_retrieval

inline TaskExample gen_evidence_retrieval(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("evidence_retrieval", level, seed);
  static const gramforge::Grammar grammar = gramforge::load_builtin("english_fol");
  const auto& knob = logic_knob();

  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    std::string want = rng.chance(0.5) ? "entailment" : "contradiction";
    auto d = draft_nli(level, rng, budget, want);
    if (!d || d->label == "neutral") continue;

    // The hypothesis must not decide itself: an empty evidence set would be
    // unanswerable under the non-empty-answer contract.
    {
      std::vector<Formula> none;
      if (decide(none, d->hypothesis_ast, d->vocab, model_bound(d->vocab)) == d->label)
        continue;
    }

    // Distractors: vocabulary-disjoint with probability 1/2, otherwise
    // drawn over the instance vocabulary. Each must keep the set satisfiable.
    int n_distract = static_cast<int>(knob.resolve_int("distractors", level, rng));
    std::set<std::string> seen;
    for (const auto& p : d->premises) seen.insert(p.fol);
    seen.insert(d->hypothesis.fol);
    for (int k = 0; k < n_distract; ++k) {
      for (int tries = 0; tries < 20; ++tries) {
        budget.checkpoint();
        gramforge::DerivState st;
        if (rng.chance(0.5)) {
          std::vector<std::string> adjs, names;
          for (const auto& a : adjective_pool())
            if (std::find(d->adjectives.begin(), d->adjectives.end(), a) == d->adjectives.end())
              adjs.push_back(a);
          for (const auto& n : name_pool())
            if (std::find(d->names.begin(), d->names.end(), n) == d->names.end())
              names.push_back(n);
          rng.shuffle(adjs);
          rng.shuffle(names);
          adjs.resize(2);
          names.resize(2);
          st.lists["adjectives"] = adjs;
          st.lists["names"] = names;
        } else {
          st.lists["adjectives"] = d->adjectives;
          st.lists["names"] = d->names;
        }
        Sentence s = sample_sentence(grammar, st, rng);
        if (!seen.insert(s.fol).second) continue;
        Vocab probe = d->vocab;
        auto ast = parse_fol(s.fol, probe);
        if (!ast) continue;
        auto asts = d->premise_asts;
        asts.push_back(*ast);
        if (!satisfiable(asts, probe)) continue;
        d->vocab = probe;
        d->premises.push_back(s);
        d->premise_asts.push_back(*ast);
        break;
      }
    }

    // Shuffle the displayed order.
    std::vector<size_t> order(d->premises.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<Sentence> shown;
    std::vector<Formula> shown_asts;
    for (size_t i : order) {
      shown.push_back(d->premises[i]);
      shown_asts.push_back(d->premise_asts[i]);
    }

    int bound = model_bound(d->vocab);
    auto label_of = [&](const std::vector<size_t>& keep) {
      std::vector<Formula> subset;
      for (size_t i : keep) subset.push_back(shown_asts[i]);
      return decide(subset, d->hypothesis_ast, d->vocab, bound);
    };

    // Greedy shrink, ascending index; entailment/contradiction are monotone
    // in the premise set, so one pass yields ablation minimality.
    std::vector<size_t> kept(shown.size());
    for (size_t i = 0; i < kept.size(); ++i) kept[i] = i;
    for (size_t i = 0; i < shown.size(); ++i) {
      std::vector<size_t> without;
      for (size_t j : kept)
        if (j != i) without.push_back(j);
      if (without.size() < kept.size() && label_of(without) == d->label) kept = without;
    }
    bool minimal = label_of(kept) == d->label && !kept.empty();
    for (size_t i = 0; minimal && i < kept.size(); ++i) {
      std::vector<size_t> without;
      for (size_t j : kept)
        if (j != kept[i]) without.push_back(j);
      if (label_of(without) == d->label) minimal = false;
    }
    if (!minimal) continue;

    std::vector<int> gold;
    for (size_t j : kept) gold.push_back(static_cast<int>(j) + 1);
    std::sort(gold.begin(), gold.end());
    std::vector<std::string> gold_strs, prem_lines, prem_fol;
    for (int g : gold) gold_strs.push_back(std::to_string(g));
    for (size_t i = 0; i < shown.size(); ++i) {
      prem_lines.push_back(std::to_string(i + 1) + ". " + shown[i].en);
      prem_fol.push_back(shown[i].fol);
    }

    std::string relation = d->label == "entailment" ? "entails" : "contradicts";
    TaskExample ex;
    ex.task_name = "evidence_retrieval";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "Premises:\n" + join(prem_lines, "\n") + "\nHypothesis: " + d->hypothesis.en +
        "\nThe premise set " + relation + " the hypothesis. List the indices of a "
        "minimal premise subset that still " + relation +
        " it (removing any one listed premise must break the relation).\n"
        "Answer with the indices in ascending order, separated by spaces.";
    ex.answer = join(gold_strs, " ");
    ex.balancing_key = d->label;
    ex.payload = Json{{"premises_fol", prem_fol},
                      {"hypothesis_fol", d->hypothesis.fol},
                      {"label", d->label},
                      {"gold", gold},
                      {"adjectives", d->adjectives},
                      {"names", d->names},
                      {"model_bound", bound},
                      {"stat", static_cast<double>(shown.size())}};
    return ex;
  }
  throw RetryExhausted("gen_evidence_retrieval");
}

// F1 between predicted and gold index sets.
inline double score_evidence(const std::string& answer, const TaskExample& ex) {
  std::set<int> pred;
  std::string cleaned = answer;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  for (const auto& tok : split_ws(cleaned)) {
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c))) return 0.0;
    pred.insert(std::stoi(tok));
  }
  if (pred.empty()) return 0.0;
  std::set<int> gold;
  for (int g : ex.payload.at("gold").get<std::vector<int>>()) gold.insert(g);
  size_t inter = 0;
  for (int p : pred)
    if (gold.count(p)) ++inter;
  if (inter == 0) return 0.0;
  return 2.0 * static_cast<double>(inter) / static_cast<double>(pred.size() + gold.size());
}

}  // namespace symgen::logic
