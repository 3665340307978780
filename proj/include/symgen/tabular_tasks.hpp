#pragma once

#include "symgen/tabular_formats.hpp"

// Set tasks over ordered domains, table_qa, and table_conversion.

namespace symgen::tabular {

inline const DifficultyKnob& set_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("set_size", 5, 2.2, true, 22);
    knob.linear("run_length", 6, 2.0, true, 24);
    return knob;
  }();
  return k;
}

// Jaccard over normalized elements; elements render comma-separated.
inline double score_jaccard_sets(const std::string& answer, const TaskExample& ex) {
  std::set<std::string> gold, cand;
  for (const auto& g : ex.payload.at("gold").get<std::vector<std::string>>())
    gold.insert(normalize_element(g));
  std::string cleaned = canonical_newlines(answer);
  for (char& c : cleaned)
    if (c == '\n' || c == ';') c = ',';
  for (const auto& part : split(cleaned, ',')) {
    std::string e = normalize_element(part);
    if (!e.empty()) cand.insert(e);
  }
  if (cand.empty()) return 0.0;
  size_t inter = 0;
  for (const auto& e : cand)
    if (gold.count(e)) ++inter;
  size_t uni = gold.size() + cand.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// ---------------------------------------------------------------------------
// set_intersection

inline TaskExample gen_set_intersection(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("set_intersection", level, seed);
  const auto& knob = set_knob();
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    int size_a = static_cast<int>(std::max<int64_t>(3, knob.resolve_int("set_size", level, rng)));
    int size_b = static_cast<int>(std::max<int64_t>(3, knob.resolve_int("set_size", level, rng)));
    // Controlled overlap fraction of the smaller set.
    double frac = rng.uniform(0.2, 0.6);
    int shared = std::max(1, static_cast<int>(frac * std::min(size_a, size_b)));
    int universe = size_a + size_b + 8;
    OrderedDomain dom = random_domain(rng, universe);

    std::vector<int64_t> ranks(universe);
    for (int i = 0; i < universe; ++i) ranks[i] = i;
    rng.shuffle(ranks);
    std::vector<int64_t> common(ranks.begin(), ranks.begin() + shared);
    std::vector<int64_t> only_a(ranks.begin() + shared, ranks.begin() + size_a);
    std::vector<int64_t> only_b(ranks.begin() + size_a,
                                ranks.begin() + size_a + (size_b - shared));

    auto render_set = [&](std::vector<int64_t> members) {
      rng.shuffle(members);
      std::vector<std::string> out;
      for (int64_t r : members) out.push_back(dom.element_at(r));
      return out;
    };
    std::vector<int64_t> a_ranks = common, b_ranks = common;
    a_ranks.insert(a_ranks.end(), only_a.begin(), only_a.end());
    b_ranks.insert(b_ranks.end(), only_b.begin(), only_b.end());
    auto set_a = render_set(a_ranks), set_b = render_set(b_ranks);

    std::sort(common.begin(), common.end());
    std::vector<std::string> gold;
    for (int64_t r : common) gold.push_back(dom.element_at(r));

    TaskExample ex;
    ex.task_name = "set_intersection";
    ex.level = level;
    ex.seed = seed;
    ex.prompt = "Set A (" + dom.name() + "): " + join(set_a, ", ") + "\nSet B: " +
                join(set_b, ", ") +
                "\nCompute the intersection of A and B.\nAnswer with the common "
                "elements separated by commas.";
    ex.answer = join(gold, ", ");
    ex.payload = Json{{"set_a", set_a},
                      {"set_b", set_b},
                      {"gold", gold},
                      {"domain", dom.name()},
                      {"stat", static_cast<double>(size_a + size_b)}};
    return ex;
  }
  throw RetryExhausted("gen_set_intersection");
}

// ---------------------------------------------------------------------------
// set_missing_element

inline TaskExample gen_missing_element(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("set_missing_element", level, seed);
  const auto& knob = set_knob();
  budget.checkpoint();
  int run = static_cast<int>(std::max<int64_t>(5, knob.resolve_int("run_length", level, rng)));
  int missing_n = 1 + static_cast<int>(rng.below(3));
  if (missing_n > run - 2) missing_n = run - 2;
  OrderedDomain dom = random_domain(rng, run + 2);

  // Interior ranks only; endpoints always survive.
  std::vector<int64_t> interior;
  for (int i = 1; i + 1 < run; ++i) interior.push_back(i);
  rng.shuffle(interior);
  std::set<int64_t> missing(interior.begin(), interior.begin() + missing_n);

  std::vector<std::string> shown, gold;
  for (int i = 0; i < run; ++i) {
    if (missing.count(i)) gold.push_back(dom.element_at(i));
    else shown.push_back(dom.element_at(i));
  }
  rng.shuffle(shown);

  TaskExample ex;
  ex.task_name = "set_missing_element";
  ex.level = level;
  ex.seed = seed;
  ex.prompt =
      "The following " + dom.name() +
      " formed a contiguous run in their natural order before some interior elements "
      "were removed; the remainder is shown shuffled:\n" + join(shown, ", ") +
      "\nName every removed element.\nAnswer with the missing elements separated by commas.";
  ex.answer = join(gold, ", ");
  ex.payload = Json{{"shown", shown},
                    {"gold", gold},
                    {"domain", dom.name()},
                    {"stat", static_cast<double>(run)}};
  return ex;
}

// ---------------------------------------------------------------------------
// set_equality

inline TaskExample gen_set_equality(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("set_equality", level, seed);
  const auto& knob = set_knob();
  budget.checkpoint();
  int size = static_cast<int>(std::max<int64_t>(3, knob.resolve_int("set_size", level, rng)));
  OrderedDomain dom = random_domain(rng, size * 3 + 6);

  std::vector<int64_t> ranks(size * 3);
  for (size_t i = 0; i < ranks.size(); ++i) ranks[i] = static_cast<int64_t>(i);
  rng.shuffle(ranks);
  std::vector<int64_t> base(ranks.begin(), ranks.begin() + size);
  std::vector<int64_t> spare(ranks.begin() + size, ranks.end());

  bool equal = rng.chance(0.5);
  std::vector<int64_t> other = base;
  if (!equal) {
    int op = static_cast<int>(rng.below(3));
    if (op == 0) {
      other.push_back(spare[rng.below(spare.size())]);  // add
    } else if (op == 1 && other.size() > 1) {
      other.erase(other.begin() + rng.below(other.size()));  // remove
    } else {
      other[rng.below(other.size())] = spare[rng.below(spare.size())];  // replace
    }
  }
  auto render_set = [&](std::vector<int64_t> members) {
    rng.shuffle(members);
    std::vector<std::string> out;
    for (int64_t r : members) out.push_back(dom.element_at(r));
    return out;
  };
  auto set_a = render_set(base), set_b = render_set(other);
  std::string label = equal ? "True" : "False";

  TaskExample ex;
  ex.task_name = "set_equality";
  ex.level = level;
  ex.seed = seed;
  ex.prompt = "Set A (" + dom.name() + "): " + join(set_a, ", ") + "\nSet B: " +
              join(set_b, ", ") +
              "\nDo A and B contain exactly the same elements? Answer True or False.";
  ex.answer = label;
  ex.balancing_key = label;
  ex.payload = Json{{"set_a", set_a},
                    {"set_b", set_b},
                    {"gold", label},
                    {"domain", dom.name()},
                    {"stat", static_cast<double>(size)}};
  return ex;
}

inline double score_set_equality(const std::string& answer, const TaskExample& ex) {
  return normalize_element(answer) == normalize_element(ex.answer) ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// table_qa

inline std::optional<MiniQuery> random_query(const Table& t, double level, Rng& rng) {
  static const std::vector<std::string> aggs = {"COUNT", "SUM",  "AVG",
                                                "MIN",   "MAX", "COUNT_DISTINCT"};
  const auto& knob = table_knob();
  MiniQuery q;
  q.agg = aggs[rng.below(aggs.size())];

  std::vector<int> numeric, grouping;
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (column_is_numeric(t.columns[c].kind)) numeric.push_back(static_cast<int>(c));
    if (t.columns[c].kind == "category" || t.columns[c].kind == "city" ||
        t.columns[c].kind == "person_name")
      grouping.push_back(static_cast<int>(c));
  }
  if (q.agg == "COUNT") {
    q.target = -1;
  } else if (q.agg == "COUNT_DISTINCT") {
    q.target = static_cast<int>(rng.below(t.columns.size()));
  } else {
    if (numeric.empty()) return std::nullopt;
    q.target = numeric[rng.below(numeric.size())];
  }
  int n_filters = static_cast<int>(knob.resolve_int("filters", level, rng));
  for (int f = 0; f < n_filters; ++f) {
    FilterPred p;
    p.column = static_cast<int>(rng.below(t.columns.size()));
    const std::string& kind = t.columns[p.column].kind;
    // A literal taken from the column keeps filters non-degenerate.
    p.literal = t.rows[rng.below(t.rows.size())][p.column];
    if (column_is_numeric(kind) || kind == "date") {
      static const std::vector<std::string> cmps = {"<", "<=", ">", ">=", "=", "!="};
      p.cmp = cmps[rng.below(cmps.size())];
    } else {
      p.cmp = rng.chance(0.5) ? "=" : "!=";
    }
    q.filters.push_back(p);
  }
  if (!grouping.empty() && rng.chance(0.35)) {
    q.group_by = grouping[rng.below(grouping.size())];
    if (q.target == q.group_by) q.group_by = -1;
  }
  return q;
}

inline TaskExample gen_table_qa(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("table_qa", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    Table t = random_table(level, rng);
    auto q = random_query(t, level, rng);
    if (!q) continue;
    QueryResult res;
    try {
      res = eval_query(t, *q);
    } catch (const Error&) {
      continue;  // AVG/MIN/MAX over an empty selection
    }
    if (res.grouped && res.groups.empty()) continue;
    std::string format = rng.pick(all_formats());

    std::string answer;
    if (res.grouped) {
      std::vector<std::string> lines;
      for (const auto& [k, v] : res.groups) lines.push_back(k + ": " + v);
      answer = join(lines, "\n");
    } else {
      answer = res.scalar;
    }

    TaskExample ex;
    ex.task_name = "table_qa";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "Table (" + format + " format):\n" + render_table(t, format) + "\nQuery:\n" +
        sql_text(t, *q) + "\n" +
        (res.grouped
             ? "Answer with one line per group, formatted 'group: value', in any order."
             : "Answer with a single value.");
    ex.answer = answer;
    Json jq{{"agg", q->agg}, {"target", q->target}, {"group_by", q->group_by}};
    Json jf = Json::array();
    for (const auto& f : q->filters)
      jf.push_back(Json{{"column", f.column}, {"cmp", f.cmp}, {"literal", f.literal}});
    jq["filters"] = jf;
    Json cols = Json::array(), rows = Json::array();
    for (const auto& c : t.columns) cols.push_back(Json{{"name", c.name}, {"kind", c.kind}});
    for (const auto& r : t.rows) rows.push_back(r);
    ex.payload = Json{{"columns", cols},
                      {"rows", rows},
                      {"query", jq},
                      {"grouped", res.grouped},
                      {"gold_scalar", res.grouped ? "" : res.scalar},
                      {"gold_groups", res.grouped ? Json(res.groups) : Json::object()},
                      {"format", format},
                      {"stat", static_cast<double>(t.rows.size() * t.columns.size())}};
    return ex;
  }
  throw RetryExhausted("gen_table_qa");
}

// Numeric values accepted within 1e-6 relative tolerance or matching the
// gold rounded to 2 decimals; strings compare normalized.
inline bool qa_value_matches(const std::string& cand, const std::string& gold) {
  auto gv = Rational::parse(gold);
  auto cv = Rational::parse(cand);
  if (gv && cv) {
    if (*gv == *cv) return true;
    Rational diff = (*cv - *gv).abs();
    Rational scale = gv->abs() < Rational(1) ? Rational(1) : gv->abs();
    if (diff <= scale * Rational(1, 1000000)) return true;
    return cv->round_to_places(2) == gv->round_to_places(2);
  }
  return normalize_element(cand) == normalize_element(gold);
}

inline double score_table_qa(const std::string& answer, const TaskExample& ex) {
  if (!ex.payload.at("grouped").get<bool>())
    return qa_value_matches(trim(answer), ex.payload.at("gold_scalar").get<std::string>()) ? 1.0
                                                                                           : 0.0;
  std::map<std::string, std::string> gold =
      ex.payload.at("gold_groups").get<std::map<std::string, std::string>>();
  std::map<std::string, std::string> cand;
  for (const auto& raw : split(canonical_newlines(answer), '\n')) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto sep = line.find(':');
    if (sep == std::string::npos) sep = line.find('=');
    if (sep == std::string::npos) return 0.0;
    cand[normalize_element(line.substr(0, sep))] = trim(line.substr(sep + 1));
  }
  if (cand.size() != gold.size()) return 0.0;
  for (const auto& [k, v] : gold) {
    auto it = cand.find(normalize_element(k));
    if (it == cand.end() || !qa_value_matches(it->second, v)) return 0.0;
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// table_conversion

inline TaskExample gen_table_conversion(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("table_conversion", level, seed);
  budget.checkpoint();
  Table t = random_table(level, rng);
  // Source and target sampled uniformly over ordered pairs of distinct formats.
  const auto& fmts = all_formats();
  size_t pair_index = rng.below(fmts.size() * (fmts.size() - 1));
  size_t src_i = pair_index / (fmts.size() - 1);
  size_t tgt_i = pair_index % (fmts.size() - 1);
  if (tgt_i >= src_i) ++tgt_i;
  std::string src = fmts[src_i], tgt = fmts[tgt_i];

  TaskExample ex;
  ex.task_name = "table_conversion";
  ex.level = level;
  ex.seed = seed;
  ex.prompt = "Convert this table from " + src + " format to " + tgt + " format.\n\n" +
              render_table(t, src) + "\nAnswer with only the converted table.";
  ex.answer = render_table(t, tgt);
  Json cols = Json::array(), rows = Json::array();
  for (const auto& c : t.columns) cols.push_back(Json{{"name", c.name}, {"kind", c.kind}});
  for (const auto& r : t.rows) rows.push_back(r);
  ex.payload = Json{{"columns", cols},
                    {"rows", rows},
                    {"source", src},
                    {"target", tgt},
                    {"stat", static_cast<double>(t.rows.size() * t.columns.size())}};
  return ex;
}

// 1 - normalized Levenshtein over whitespace-canonicalized text.
inline double score_table_conversion(const std::string& answer, const TaskExample& ex) {
  return normalized_similarity(canonical_text(answer), canonical_text(ex.answer));
}

inline Table table_from_payload(const Json& payload) {
  Table t;
  for (const auto& c : payload.at("columns"))
    t.columns.push_back({c.at("name").get<std::string>(), c.at("kind").get<std::string>()});
  for (const auto& r : payload.at("rows")) t.rows.push_back(r.get<std::vector<std::string>>());
  return t;
}

inline MiniQuery query_from_payload(const Json& payload) {
  const Json& jq = payload.at("query");
  MiniQuery q;
  q.agg = jq.at("agg").get<std::string>();
  q.target = jq.at("target").get<int>();
  q.group_by = jq.at("group_by").get<int>();
  for (const auto& f : jq.at("filters")) {
    FilterPred p;
    p.column = f.at("column").get<int>();
    p.cmp = f.at("cmp").get<std::string>();
    p.literal = f.at("literal").get<std::string>();
    q.filters.push_back(p);
  }
  return q;
}

}  // namespace symgen::tabular
