#pragma once

#include "symgen/bayes.hpp"

// bayesian_association and bayesian_intervention generators plus the
// JSD-based distribution scorer.

namespace symgen::bayes {

inline const DifficultyKnob& bayes_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("nodes", 3, 0.8, true, 8);
    knob.linear("density", 0.35, 0.03, false, 0.6);
    knob.linear("evidence", 0, 0.4, true, 2);
    return knob;
  }();
  return k;
}

inline BayesNet random_net(double level, Rng& rng) {
  const auto& knob = bayes_knob();
  static const std::vector<std::string> names = {"A", "B", "C", "D", "E", "F", "G", "H"};
  int n = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("nodes", level, rng)));
  double density = knob.raw("density", level);
  BayesNet net;
  for (int i = 0; i < n; ++i) {
    NetNode node;
    node.name = names[i];
    node.card = rng.chance(0.7) ? 2 : static_cast<int>(rng.range(3, 4));
    for (int j = 0; j < i; ++j)
      if (node.parents.size() < 3 && rng.chance(density)) node.parents.push_back(j);
    bool all_binary_parents = true;
    for (int p : node.parents)
      if (net.nodes[p].card != 2) all_binary_parents = false;
    bool noisy_ok = node.card == 2 && !node.parents.empty() && all_binary_parents;
    double roll = rng.uniform();
    if (noisy_ok && roll < 0.4) {
      node.cpd.kind = roll < 0.2 ? Cpd::Kind::noisy_or : Cpd::Kind::noisy_and;
      for (size_t p = 0; p < node.parents.size(); ++p)
        node.cpd.weights.push_back(Rational(rng.range(1, 9), 10));
      node.cpd.leak = Rational(rng.range(1, 3), 10);
    } else {
      node.cpd.kind = Cpd::Kind::tabular;
      size_t rows = 1;
      for (int p : node.parents) rows *= net.nodes[p].card;
      for (size_t r = 0; r < rows; ++r) {
        std::vector<Rational> row;
        BigInt total(0);
        std::vector<int64_t> w;
        for (int s = 0; s < node.card; ++s) {
          w.push_back(rng.range(1, 9));
          total = total + BigInt(w.back());
        }
        for (int s = 0; s < node.card; ++s) row.push_back(Rational(BigInt(w[s]), total));
        node.cpd.table.push_back(std::move(row));
      }
    }
    net.nodes.push_back(std::move(node));
  }
  return net;
}

// ---------------------------------------------------------------------------
// Rendering and payload

inline std::string describe_cpd(const BayesNet& net, int i) {
  const NetNode& node = net.nodes[i];
  std::string out;
  if (node.cpd.kind != Cpd::Kind::tabular) {
    std::string rule = node.cpd.kind == Cpd::Kind::noisy_or ? "noisy-OR" : "noisy-AND";
    out += node.name + " is a " + rule + " of";
    for (size_t p = 0; p < node.parents.size(); ++p)
      out += (p ? "," : "") + std::string(" ") + net.nodes[node.parents[p]].name +
             " (weight " + node.cpd.weights[p].to_fraction_string() + ")";
    out += ", leak " + node.cpd.leak.to_fraction_string() + ".\n";
    if (node.cpd.kind == Cpd::Kind::noisy_or)
      out += "  P(" + node.name +
             "=1 | parents) = 1 - (1-leak) * product over active parents of (1-weight).\n";
    else
      out += "  P(" + node.name +
             "=1 | parents) = (1-leak) * product over inactive parents of (1-weight).\n";
    return out;
  }
  if (node.parents.empty()) {
    out += "P(" + node.name + "):";
    for (int s = 0; s < node.card; ++s)
      out += " P(" + node.name + "=" + std::to_string(s) + ")=" +
             node.cpd.table[0][s].to_fraction_string();
    return out + "\n";
  }
  out += "P(" + node.name + " | ";
  std::vector<std::string> pnames;
  for (int p : node.parents) pnames.push_back(net.nodes[p].name);
  out += join(pnames, ", ") + "):\n";
  size_t rows = node.cpd.table.size();
  std::vector<int> pstate(node.parents.size(), 0);
  for (size_t r = 0; r < rows; ++r) {
    std::vector<std::string> cond;
    for (size_t p = 0; p < node.parents.size(); ++p)
      cond.push_back(pnames[p] + "=" + std::to_string(pstate[p]));
    out += "  " + join(cond, ", ") + " ->";
    for (int s = 0; s < node.card; ++s)
      out += " P(" + node.name + "=" + std::to_string(s) + ")=" +
             node.cpd.table[r][s].to_fraction_string();
    out += "\n";
    for (size_t p = node.parents.size(); p-- > 0;) {
      if (++pstate[p] < net.nodes[node.parents[p]].card) break;
      pstate[p] = 0;
    }
  }
  return out;
}

inline std::string render_net(const BayesNet& net) {
  std::string out = "Variables:\n";
  for (const auto& n : net.nodes) {
    out += "  " + n.name + " with states 0.." + std::to_string(n.card - 1);
    if (!n.parents.empty()) {
      std::vector<std::string> ps;
      for (int p : n.parents) ps.push_back(net.nodes[p].name);
      out += ", parents: " + join(ps, ", ");
    }
    out += "\n";
  }
  out += "Conditional distributions:\n";
  for (size_t i = 0; i < net.nodes.size(); ++i) out += describe_cpd(net, static_cast<int>(i));
  return out;
}

inline Json net_payload(const BayesNet& net) {
  Json nodes = Json::array();
  for (const auto& n : net.nodes) {
    Json jn{{"name", n.name}, {"card", n.card}, {"parents", n.parents}};
    if (n.cpd.kind == Cpd::Kind::tabular) {
      Json rows = Json::array();
      for (const auto& row : n.cpd.table) {
        Json jr = Json::array();
        for (const auto& v : row) jr.push_back(v.to_fraction_string());
        rows.push_back(jr);
      }
      jn["cpd"] = Json{{"kind", "tabular"}, {"table", rows}};
    } else {
      Json ws = Json::array();
      for (const auto& w : n.cpd.weights) ws.push_back(w.to_fraction_string());
      jn["cpd"] = Json{{"kind", n.cpd.kind == Cpd::Kind::noisy_or ? "noisy_or" : "noisy_and"},
                       {"weights", ws},
                       {"leak", n.cpd.leak.to_fraction_string()}};
    }
    nodes.push_back(jn);
  }
  return Json{{"nodes", nodes}};
}

inline BayesNet net_from_payload(const Json& j) {
  BayesNet net;
  for (const auto& jn : j.at("nodes")) {
    NetNode n;
    n.name = jn.at("name").get<std::string>();
    n.card = jn.at("card").get<int>();
    n.parents = jn.at("parents").get<std::vector<int>>();
    const Json& cpd = jn.at("cpd");
    std::string kind = cpd.at("kind").get<std::string>();
    if (kind == "tabular") {
      n.cpd.kind = Cpd::Kind::tabular;
      for (const auto& row : cpd.at("table")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(*Rational::parse(v.get<std::string>()));
        n.cpd.table.push_back(std::move(r));
      }
    } else {
      n.cpd.kind = kind == "noisy_or" ? Cpd::Kind::noisy_or : Cpd::Kind::noisy_and;
      for (const auto& w : cpd.at("weights"))
        n.cpd.weights.push_back(*Rational::parse(w.get<std::string>()));
      n.cpd.leak = *Rational::parse(cpd.at("leak").get<std::string>());
    }
    net.nodes.push_back(std::move(n));
  }
  return net;
}

// ---------------------------------------------------------------------------
// Scoring: exact match at the declared precision, else 1 - JSD (base 2)

inline double jsd_base2(const std::vector<double>& p, const std::vector<double>& q) {
  auto kl_to_mid = [&](const std::vector<double>& a) {
    double kl = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] <= 0) continue;
      double m = (p[i] + q[i]) / 2;
      kl += a[i] * std::log2(a[i] / m);
    }
    return kl;
  };
  return (kl_to_mid(p) + kl_to_mid(q)) / 2;
}

inline double score_distribution(const std::string& answer, const TaskExample& ex) {
  auto gold_strs = ex.payload.at("gold").get<std::vector<std::string>>();
  int precision = ex.payload.at("precision").get<int>();
  std::vector<Rational> gold;
  for (const auto& s : gold_strs) gold.push_back(*Rational::parse(s));

  // Accept "state=p", "state: p" or bare probabilities line by line / spaced.
  std::vector<Rational> cand;
  std::string cleaned = canonical_newlines(answer);
  for (char& c : cleaned)
    if (c == '=' || c == ':' || c == ',' || c == '\n') c = ' ';
  std::vector<Rational> numbers;
  for (const auto& tok : split_ws(cleaned)) {
    auto v = Rational::parse(tok);
    if (v) numbers.push_back(*v);
  }
  // With labels present the numbers alternate state, prob; detect by count.
  if (numbers.size() == 2 * gold.size()) {
    for (size_t i = 1; i < numbers.size(); i += 2) cand.push_back(numbers[i]);
  } else if (numbers.size() == gold.size()) {
    cand = numbers;
  } else {
    return 0.0;
  }
  for (const auto& v : cand)
    if (v.sign() < 0) return 0.0;

  // Only near-normalized answers earn credit.
  Rational total(0);
  for (const auto& v : cand) total = total + v;
  if (total < Rational(9, 10) || total > Rational(11, 10)) return 0.0;

  // Exact at the declared precision, before renormalization perturbs the
  // rounded values.
  bool exact = true;
  for (size_t i = 0; i < gold.size(); ++i)
    if (cand[i].round_to_places(precision) != gold[i].round_to_places(precision)) exact = false;
  if (exact) return 1.0;

  for (auto& v : cand) v = v / total;

  std::vector<double> p, q;
  for (size_t i = 0; i < gold.size(); ++i) {
    p.push_back(cand[i].to_double());
    q.push_back(gold[i].to_double());
  }
  double r = 1.0 - jsd_base2(p, q);
  return std::max(0.0, std::min(1.0, r));
}

// ---------------------------------------------------------------------------
// Generators

struct Query {
  BayesNet net;
  int target = 0;
  std::map<int, int> evidence;
  int do_var = -1;
  int do_value = 0;
  std::vector<Rational> gold;
};

inline std::optional<Query> draft_query(double level, Rng& rng, bool interventional) {
  const auto& knob = bayes_knob();
  Query q;
  q.net = random_net(level, rng);
  int n = static_cast<int>(q.net.nodes.size());
  if (n < 2) return std::nullopt;
  q.target = static_cast<int>(rng.below(n));

  std::vector<int> others;
  for (int i = 0; i < n; ++i)
    if (i != q.target) others.push_back(i);
  rng.shuffle(others);

  size_t want_evidence = std::min<size_t>(others.size(),
                                          knob.resolve_int("evidence", level, rng));
  size_t cursor = 0;
  if (interventional) {
    if (cursor >= others.size()) return std::nullopt;
    q.do_var = others[cursor++];
    q.do_value = static_cast<int>(rng.below(q.net.nodes[q.do_var].card));
  }
  for (size_t i = 0; i < want_evidence && cursor < others.size(); ++i) {
    int v = others[cursor++];
    q.evidence[v] = static_cast<int>(rng.below(q.net.nodes[v].card));
  }

  try {
    if (!interventional) {
      q.gold = variable_elimination(q.net, q.target, q.evidence);
    } else {
      BayesNet cut = do_surgery(q.net, q.do_var, q.do_value);
      q.gold = variable_elimination(cut, q.target, q.evidence);
      // The task must genuinely test surgery: reject when conditioning on
      // the intervened value gives (nearly) the same posterior.
      auto obs_evidence = q.evidence;
      obs_evidence[q.do_var] = q.do_value;
      std::vector<Rational> obs = variable_elimination(q.net, q.target, obs_evidence);
      double tv = 0;
      for (size_t s = 0; s < q.gold.size(); ++s)
        tv += std::abs(q.gold[s].to_double() - obs[s].to_double());
      if (tv / 2 <= 0.05) return std::nullopt;
    }
  } catch (const Error&) {
    return std::nullopt;  // zero-probability evidence or similar
  }
  return q;
}

inline TaskExample finish_query(const std::string& task, const Query& q, double level,
                                uint64_t seed) {
  const NetNode& target = q.net.nodes[q.target];
  const int precision = 6;
  std::vector<std::string> gold_strs, answer_lines;
  for (int s = 0; s < target.card; ++s) {
    gold_strs.push_back(q.gold[s].to_fraction_string());
    answer_lines.push_back(std::to_string(s) + "=" + q.gold[s].to_decimal_string(precision));
  }
  std::vector<std::string> ev_strs;
  for (const auto& [var, val] : q.evidence)
    ev_strs.push_back(q.net.nodes[var].name + "=" + std::to_string(val));

  std::string question;
  if (task == "bayesian_association") {
    question = "Compute the posterior distribution of " + target.name +
               (ev_strs.empty() ? " (no evidence observed)"
                                : " given the observed evidence " + join(ev_strs, ", ")) +
               ".";
  } else {
    question = "Compute the distribution of " + target.name + " under the intervention do(" +
               q.net.nodes[q.do_var].name + "=" + std::to_string(q.do_value) + ")" +
               (ev_strs.empty() ? "" : " given the observed evidence " + join(ev_strs, ", ")) +
               ". Interventions cut the incoming edges of the intervened variable.";
  }

  TaskExample ex;
  ex.task_name = task;
  ex.level = level;
  ex.seed = seed;
  ex.prompt = render_net(q.net) + "\n" + question +
              "\nAnswer with one line per state, formatted 'state=probability', using "
              "probabilities rounded to " + std::to_string(precision) + " decimal places.";
  ex.answer = join(answer_lines, "\n");
  Json ev = Json::array();
  for (const auto& [var, val] : q.evidence) ev.push_back(Json::array({var, val}));
  ex.payload = Json{{"net", net_payload(q.net)},
                    {"target", q.target},
                    {"evidence", ev},
                    {"gold", gold_strs},
                    {"precision", precision},
                    {"stat", static_cast<double>(q.net.nodes.size())}};
  if (q.do_var >= 0) {
    ex.payload["do_var"] = q.do_var;
    ex.payload["do_value"] = q.do_value;
  }
  return ex;
}

inline TaskExample gen_association(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("bayesian_association", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    auto q = draft_query(level, rng, false);
    if (q) return finish_query("bayesian_association", *q, level, seed);
  }
  throw RetryExhausted("gen_association");
}

inline TaskExample gen_intervention(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("bayesian_intervention", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    auto q = draft_query(level, rng, true);
    if (q) return finish_query("bayesian_intervention", *q, level, seed);
  }
  throw RetryExhausted("gen_intervention");
}

}  // namespace symgen::bayes
