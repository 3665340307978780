#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symgen/core.hpp"
#include "symgen/util/rational.hpp"

// Random discrete Bayesian networks with tabular and noisy-OR/AND CPDs,
// exact inference by variable elimination over rationals, do-operator graph
// surgery, and Jensen-Shannon scoring.

namespace symgen::bayes {

inline constexpr int kInstanceRetryCap = 80;

struct Cpd {
  enum class Kind { tabular, noisy_or, noisy_and };
  Kind kind = Kind::tabular;
  // tabular: table[parent_config][state], each row summing to exactly 1;
  // parent configs are mixed-radix with the FIRST parent most significant.
  std::vector<std::vector<Rational>> table;
  // noisy: binary child with binary parents.
  std::vector<Rational> weights;
  Rational leak;
};

struct NetNode {
  std::string name;
  int card = 2;
  std::vector<int> parents;
  Cpd cpd;
};

struct BayesNet {
  std::vector<NetNode> nodes;  // indices are a topological order

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].name == name) return static_cast<int>(i);
    throw err("unknown-variable", "no variable named " + name);
  }
};

// P(child=1 | parents) under the noisy rules.
inline Rational noisy_prob_one(const Cpd& c, const std::vector<int>& parent_states) {
  Rational acc(1);
  for (size_t i = 0; i < parent_states.size(); ++i) {
    bool active = parent_states[i] == 1;
    if (c.kind == Cpd::Kind::noisy_or ? active : !active)
      acc = acc * (Rational(1) - c.weights[i]);
  }
  Rational base = (Rational(1) - c.leak) * acc;
  return c.kind == Cpd::Kind::noisy_or ? Rational(1) - base : base;
}

// ---------------------------------------------------------------------------
// Factors

struct Factor {
  std::vector<int> vars;  // ascending node indices
  std::vector<int> cards;
  std::vector<Rational> values;  // mixed radix, first var most significant

  size_t index_of_assignment(const std::vector<int>& assign) const {
    size_t idx = 0;
    for (size_t i = 0; i < vars.size(); ++i) idx = idx * cards[i] + assign[i];
    return idx;
  }
};

inline Factor factor_of_node(const BayesNet& net, int i) {
  const NetNode& node = net.nodes[i];
  Factor f;
  f.vars = node.parents;
  f.vars.push_back(i);
  std::sort(f.vars.begin(), f.vars.end());
  for (int v : f.vars) f.cards.push_back(net.nodes[v].card);
  size_t total = 1;
  for (int c : f.cards) total *= c;
  f.values.assign(total, Rational(0));

  std::vector<int> assign(f.vars.size(), 0);
  std::function<void(size_t)> rec = [&](size_t d) {
    if (d == f.vars.size()) {
      std::vector<int> pstates;
      int child_state = 0;
      for (size_t k = 0; k < f.vars.size(); ++k)
        if (f.vars[k] == i) child_state = assign[k];
      for (int p : node.parents)
        for (size_t k = 0; k < f.vars.size(); ++k)
          if (f.vars[k] == p) pstates.push_back(assign[k]);
      Rational v;
      if (node.cpd.kind == Cpd::Kind::tabular) {
        size_t row = 0;
        for (size_t pi = 0; pi < pstates.size(); ++pi)
          row = row * net.nodes[node.parents[pi]].card + pstates[pi];
        v = node.cpd.table[row][child_state];
      } else {
        Rational one = noisy_prob_one(node.cpd, pstates);
        v = child_state == 1 ? one : Rational(1) - one;
      }
      f.values[f.index_of_assignment(assign)] = v;
      return;
    }
    for (int s = 0; s < f.cards[d]; ++s) {
      assign[d] = s;
      rec(d + 1);
    }
  };
  rec(0);
  return f;
}

inline Factor multiply(const Factor& a, const Factor& b) {
  Factor out;
  out.vars = a.vars;
  for (int v : b.vars)
    if (std::find(out.vars.begin(), out.vars.end(), v) == out.vars.end()) out.vars.push_back(v);
  std::sort(out.vars.begin(), out.vars.end());
  std::map<int, int> card_of;
  for (size_t i = 0; i < a.vars.size(); ++i) card_of[a.vars[i]] = a.cards[i];
  for (size_t i = 0; i < b.vars.size(); ++i) card_of[b.vars[i]] = b.cards[i];
  size_t total = 1;
  for (int v : out.vars) {
    out.cards.push_back(card_of[v]);
    total *= card_of[v];
  }
  out.values.assign(total, Rational(0));
  std::vector<int> assign(out.vars.size(), 0);
  std::function<void(size_t)> rec = [&](size_t d) {
    if (d == out.vars.size()) {
      auto project = [&](const Factor& f) {
        std::vector<int> sub;
        for (int v : f.vars)
          for (size_t k = 0; k < out.vars.size(); ++k)
            if (out.vars[k] == v) sub.push_back(assign[k]);
        return f.values[f.index_of_assignment(sub)];
      };
      out.values[out.index_of_assignment(assign)] = project(a) * project(b);
      return;
    }
    for (int s = 0; s < out.cards[d]; ++s) {
      assign[d] = s;
      rec(d + 1);
    }
  };
  rec(0);
  return out;
}

inline Factor sum_out(const Factor& f, int var) {
  Factor out;
  int vi = -1;
  for (size_t i = 0; i < f.vars.size(); ++i) {
    if (f.vars[i] == var) {
      vi = static_cast<int>(i);
      continue;
    }
    out.vars.push_back(f.vars[i]);
    out.cards.push_back(f.cards[i]);
  }
  if (vi < 0) return f;
  size_t total = 1;
  for (int c : out.cards) total *= c;
  out.values.assign(total, Rational(0));
  std::vector<int> assign(f.vars.size(), 0);
  std::function<void(size_t)> rec = [&](size_t d) {
    if (d == f.vars.size()) {
      std::vector<int> sub;
      for (size_t i = 0; i < f.vars.size(); ++i)
        if (static_cast<int>(i) != vi) sub.push_back(assign[i]);
      size_t oi = out.index_of_assignment(sub);
      out.values[oi] = out.values[oi] + f.values[f.index_of_assignment(assign)];
      return;
    }
    for (int s = 0; s < f.cards[d]; ++s) {
      assign[d] = s;
      rec(d + 1);
    }
  };
  rec(0);
  return out;
}

inline Factor restrict_factor(const Factor& f, int var, int value) {
  Factor out;
  int vi = -1;
  for (size_t i = 0; i < f.vars.size(); ++i) {
    if (f.vars[i] == var) {
      vi = static_cast<int>(i);
      continue;
    }
    out.vars.push_back(f.vars[i]);
    out.cards.push_back(f.cards[i]);
  }
  if (vi < 0) return f;
  size_t total = 1;
  for (int c : out.cards) total *= c;
  out.values.assign(total, Rational(0));
  std::vector<int> assign(f.vars.size(), 0);
  std::function<void(size_t)> rec = [&](size_t d) {
    if (d == f.vars.size()) {
      if (assign[vi] != value) return;
      std::vector<int> sub;
      for (size_t i = 0; i < f.vars.size(); ++i)
        if (static_cast<int>(i) != vi) sub.push_back(assign[i]);
      out.values[out.index_of_assignment(sub)] = f.values[f.index_of_assignment(assign)];
      return;
    }
    for (int s = 0; s < f.cards[d]; ++s) {
      assign[d] = s;
      rec(d + 1);
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Variable elimination

// Exact posterior P(target | evidence). Elimination order: min-degree on
// the factor interaction graph, ties broken by ascending node index.
inline std::vector<Rational> variable_elimination(const BayesNet& net, int target,
                                                  const std::map<int, int>& evidence) {
  if (evidence.count(target))
    throw err("domain", "target cannot be observed");
  std::vector<Factor> factors;
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    Factor f = factor_of_node(net, static_cast<int>(i));
    for (const auto& [var, val] : evidence) f = restrict_factor(f, var, val);
    factors.push_back(std::move(f));
  }
  std::set<int> to_eliminate;
  for (size_t i = 0; i < net.nodes.size(); ++i)
    if (static_cast<int>(i) != target && !evidence.count(static_cast<int>(i)))
      to_eliminate.insert(static_cast<int>(i));

  while (!to_eliminate.empty()) {
    // Interaction degree: distinct co-occurring variables.
    int best = -1;
    size_t best_deg = SIZE_MAX;
    for (int v : to_eliminate) {
      std::set<int> nbrs;
      for (const auto& f : factors)
        if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end())
          nbrs.insert(f.vars.begin(), f.vars.end());
      nbrs.erase(v);
      if (nbrs.size() < best_deg) {
        best_deg = nbrs.size();
        best = v;
      }
    }
    std::vector<Factor> rest;
    std::optional<Factor> product;
    for (auto& f : factors) {
      if (std::find(f.vars.begin(), f.vars.end(), best) != f.vars.end())
        product = product ? multiply(*product, f) : std::move(f);
      else
        rest.push_back(std::move(f));
    }
    if (product) rest.push_back(sum_out(*product, best));
    factors = std::move(rest);
    to_eliminate.erase(best);
  }

  Factor result;
  result.vars = {target};
  result.cards = {net.nodes[target].card};
  result.values.assign(net.nodes[target].card, Rational(1));
  for (const auto& f : factors) result = multiply(result, f);

  // Collapse any stray empty-scope factors and normalize.
  std::vector<Rational> dist(net.nodes[target].card, Rational(0));
  if (result.vars.size() != 1 || result.vars[0] != target)
    throw err("internal", "elimination left extra variables");
  Rational total(0);
  for (int s = 0; s < net.nodes[target].card; ++s) total = total + result.values[s];
  if (total.is_zero())
    throw err("zero-probability-evidence", "the evidence assignment has probability 0");
  for (int s = 0; s < net.nodes[target].card; ++s) dist[s] = result.values[s] / total;
  return dist;
}

// do-operator surgery: cut incoming edges, pin the variable.
inline BayesNet do_surgery(const BayesNet& net, int var, int value) {
  if (var < 0 || var >= static_cast<int>(net.nodes.size()))
    throw err("unknown-variable", "no such variable index");
  BayesNet out = net;
  NetNode& node = out.nodes[var];
  node.parents.clear();
  node.cpd.kind = Cpd::Kind::tabular;
  node.cpd.weights.clear();
  node.cpd.leak = Rational(0);
  node.cpd.table.assign(1, std::vector<Rational>(node.card, Rational(0)));
  node.cpd.table[0][value] = Rational(1);
  return out;
}

}  // namespace symgen::bayes
