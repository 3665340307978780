#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "symgen/core.hpp"

// Randomized STRIPS domains and instances, an exact breadth-first planner
// with lexicographic tie-breaking, plan validation, length-penalized
// scoring, and state-tracking traces.

namespace symgen::planning {

inline constexpr int kInstanceRetryCap = 80;
inline constexpr size_t kGroundActionCap = 700;
inline constexpr size_t kGroundAtomCap = 512;
inline constexpr size_t kFrontierBudget = 150000;

struct Predicate {
  std::string name;
  std::vector<int> arg_types;  // indices into Domain::types
};

struct Literal {
  int pred = 0;
  std::vector<int> args;  // parameter indices
};

struct ActionSchema {
  std::string name;
  std::vector<int> param_types;
  std::vector<Literal> pre, add, del;
};

struct StripsDomain {
  std::vector<std::string> types;
  std::vector<Predicate> predicates;
  std::vector<ActionSchema> actions;

  bool operator==(const StripsDomain& o) const;
};

struct GroundAtom {
  int pred = 0;
  std::vector<int> objs;
  bool operator<(const GroundAtom& o) const {
    return pred != o.pred ? pred < o.pred : objs < o.objs;
  }
  bool operator==(const GroundAtom& o) const { return pred == o.pred && objs == o.objs; }
};

struct StripsInstance {
  std::vector<std::string> objects;
  std::vector<int> object_types;
  std::vector<GroundAtom> init;
  std::vector<GroundAtom> goal;

  bool operator==(const StripsInstance& o) const {
    return objects == o.objects && object_types == o.object_types && init == o.init &&
           goal == o.goal;
  }
};

inline bool StripsDomain::operator==(const StripsDomain& o) const {
  if (types != o.types || predicates.size() != o.predicates.size() ||
      actions.size() != o.actions.size())
    return false;
  for (size_t i = 0; i < predicates.size(); ++i)
    if (predicates[i].name != o.predicates[i].name ||
        predicates[i].arg_types != o.predicates[i].arg_types)
      return false;
  auto lit_eq = [](const std::vector<Literal>& a, const std::vector<Literal>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].pred != b[i].pred || a[i].args != b[i].args) return false;
    return true;
  };
  for (size_t i = 0; i < actions.size(); ++i) {
    const auto& x = actions[i];
    const auto& y = o.actions[i];
    if (x.name != y.name || x.param_types != y.param_types || !lit_eq(x.pre, y.pre) ||
        !lit_eq(x.add, y.add) || !lit_eq(x.del, y.del))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Grounding

using StateBits = std::vector<uint64_t>;

inline void set_bit(StateBits& s, size_t i) { s[i >> 6] |= 1ULL << (i & 63); }
inline bool get_bit(const StateBits& s, size_t i) { return (s[i >> 6] >> (i & 63)) & 1; }
inline bool subset_of(const StateBits& a, const StateBits& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

struct GroundAction {
  std::string text;  // canonical "name(a, b)"
  StateBits pre, add, del;
};

struct Grounding {
  std::map<GroundAtom, size_t> atom_ids;
  std::vector<GroundAtom> atoms;
  std::vector<GroundAction> actions;  // sorted by text
  size_t words = 0;

  StateBits empty_state() const { return StateBits(words, 0); }
  StateBits state_of(const std::vector<GroundAtom>& atoms_in) const {
    StateBits s = empty_state();
    for (const auto& a : atoms_in) set_bit(s, atom_ids.at(a));
    return s;
  }
};

inline std::string action_text(const std::string& name, const std::vector<std::string>& args) {
  std::string t = name + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) t += ", ";
    t += args[i];
  }
  return t + ")";
}

inline std::string atom_text(const StripsDomain& d, const StripsInstance& inst,
                             const GroundAtom& a) {
  std::vector<std::string> args;
  for (int o : a.objs) args.push_back(inst.objects[o]);
  return action_text(d.predicates[a.pred].name, args);
}

// Eager grounding over type-correct argument tuples. Throws "size-cap" when
// the instance exceeds the desk-scale limits.
inline Grounding ground(const StripsDomain& d, const StripsInstance& inst) {
  Grounding g;
  size_t n = inst.objects.size();
  // Atom universe.
  for (size_t p = 0; p < d.predicates.size(); ++p) {
    const auto& types = d.predicates[p].arg_types;
    std::vector<int> tuple(types.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == types.size()) {
        GroundAtom a{static_cast<int>(p), tuple};
        g.atom_ids[a] = g.atoms.size();
        g.atoms.push_back(a);
        return;
      }
      for (size_t o = 0; o < n; ++o) {
        if (inst.object_types[o] != types[i]) continue;
        tuple[i] = static_cast<int>(o);
        rec(i + 1);
      }
    };
    rec(0);
  }
  if (g.atoms.size() > kGroundAtomCap) throw err("size-cap", "too many ground atoms");
  g.words = (g.atoms.size() + 63) / 64;

  for (const auto& schema : d.actions) {
    std::vector<int> binding(schema.param_types.size(), 0);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == schema.param_types.size()) {
        GroundAction ga;
        ga.pre = g.empty_state();
        ga.add = g.empty_state();
        ga.del = g.empty_state();
        auto instantiate = [&](const Literal& lit) {
          GroundAtom a;
          a.pred = lit.pred;
          for (int p : lit.args) a.objs.push_back(binding[p]);
          return a;
        };
        for (const auto& l : schema.pre) set_bit(ga.pre, g.atom_ids.at(instantiate(l)));
        for (const auto& l : schema.add) set_bit(ga.add, g.atom_ids.at(instantiate(l)));
        for (const auto& l : schema.del) set_bit(ga.del, g.atom_ids.at(instantiate(l)));
        std::vector<std::string> args;
        for (int b : binding) args.push_back(inst.objects[b]);
        ga.text = action_text(schema.name, args);
        g.actions.push_back(std::move(ga));
        return;
      }
      for (size_t o = 0; o < n; ++o) {
        if (inst.object_types[o] != schema.param_types[i]) continue;
        binding[i] = static_cast<int>(o);
        rec(i + 1);
      }
    };
    rec(0);
    if (g.actions.size() > kGroundActionCap) throw err("size-cap", "too many ground actions");
  }
  std::sort(g.actions.begin(), g.actions.end(),
            [](const GroundAction& a, const GroundAction& b) { return a.text < b.text; });
  return g;
}

// ---------------------------------------------------------------------------
// Search

struct Plan {
  std::vector<std::string> steps;  // canonical action texts
};

inline uint64_t state_hash(const StateBits& s) {
  return fnv1a(s.data(), s.size() * sizeof(uint64_t));
}

// Breadth-first search expanding ground actions in lexicographic order of
// their canonical text; the first goal state dequeued yields the shortest,
// deterministically tie-broken plan.
inline std::optional<Plan> solve(const Grounding& g, const StateBits& init,
                                 const StateBits& goal) {
  if (subset_of(goal, init)) return Plan{};
  struct Node {
    StateBits state;
    int parent;
    int action;
  };
  std::vector<Node> nodes{{init, -1, -1}};
  std::unordered_set<uint64_t> visited{state_hash(init)};
  size_t head = 0;
  while (head < nodes.size()) {
    if (nodes.size() > kFrontierBudget) throw err("frontier-budget", "search exceeded budget");
    StateBits cur = nodes[head].state;
    for (size_t ai = 0; ai < g.actions.size(); ++ai) {
      const GroundAction& a = g.actions[ai];
      if (!subset_of(a.pre, cur)) continue;
      StateBits next = cur;
      for (size_t w = 0; w < next.size(); ++w) next[w] = (next[w] & ~a.del[w]) | a.add[w];
      uint64_t h = state_hash(next);
      if (!visited.insert(h).second) continue;
      nodes.push_back({next, static_cast<int>(head), static_cast<int>(ai)});
      if (subset_of(goal, next)) {
        Plan plan;
        int at = static_cast<int>(nodes.size()) - 1;
        while (nodes[at].parent >= 0) {
          plan.steps.push_back(g.actions[nodes[at].action].text);
          at = nodes[at].parent;
        }
        std::reverse(plan.steps.begin(), plan.steps.end());
        return plan;
      }
    }
    ++head;
  }
  return std::nullopt;
}

// Replays a plan; returns the final state or nullopt on an inapplicable step.
inline std::optional<StateBits> simulate(const Grounding& g, const StateBits& init,
                                         const std::vector<std::string>& steps) {
  std::map<std::string, const GroundAction*> by_text;
  for (const auto& a : g.actions) by_text[a.text] = &a;
  StateBits cur = init;
  for (const auto& s : steps) {
    auto it = by_text.find(s);
    if (it == by_text.end()) return std::nullopt;
    if (!subset_of(it->second->pre, cur)) return std::nullopt;
    for (size_t w = 0; w < cur.size(); ++w)
      cur[w] = (cur[w] & ~it->second->del[w]) | it->second->add[w];
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Generation

inline const DifficultyKnob& planning_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("predicates", 2, 0.45, true, 5);
    knob.linear("actions", 2, 0.55, true, 5);
    knob.linear("objects", 3, 0.65, true, 7);
    knob.linear("goal_atoms", 1, 0.35, true, 4);
    knob.linear("walk", 2, 1.0, true, 9);
    knob.linear("init_density", 0.22, 0.01, false, 0.35);
    return knob;
  }();
  return k;
}

inline StripsDomain gen_domain(double level, Rng& rng) {
  const auto& knob = planning_knob();
  static const std::vector<std::string> pred_names = {"linked", "free", "held",  "marked",
                                                      "ready",  "open", "stored"};
  static const std::vector<std::string> act_names = {"shift", "bind", "release", "swap",
                                                     "push",  "tag"};
  StripsDomain d;
  int n_types = level >= 3 && rng.chance(0.4) ? 2 : 1;
  for (int t = 0; t < n_types; ++t)
    d.types.push_back(n_types == 1 ? "obj" : "t" + std::to_string(t));

  int n_pred = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("predicates", level, rng)));
  std::vector<std::string> pnames = pred_names;
  rng.shuffle(pnames);
  for (int p = 0; p < n_pred; ++p) {
    Predicate pr;
    pr.name = pnames[p];
    double roll = rng.uniform();
    int arity = roll < 0.2 ? 0 : roll < 0.72 ? 1 : 2;
    for (int a = 0; a < arity; ++a) pr.arg_types.push_back(static_cast<int>(rng.below(n_types)));
    d.predicates.push_back(pr);
  }

  int n_act = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("actions", level, rng)));
  std::vector<std::string> anames = act_names;
  rng.shuffle(anames);
  int schema_attempts = 0;
  for (int a = 0; a < n_act; ++a) {
    if (++schema_attempts > 200) break;  // pathological type split; keep what we have
    ActionSchema s;
    s.name = anames[a];
    int n_par = 1 + static_cast<int>(rng.below(2));
    for (int p = 0; p < n_par; ++p) s.param_types.push_back(static_cast<int>(rng.below(n_types)));
    auto random_literal = [&]() -> std::optional<Literal> {
      // Predicate whose argument types can be served by the parameters.
      for (int tries = 0; tries < 12; ++tries) {
        int pi = static_cast<int>(rng.below(d.predicates.size()));
        Literal lit;
        lit.pred = pi;
        bool ok = true;
        for (int at : d.predicates[pi].arg_types) {
          std::vector<int> fits;
          for (size_t pp = 0; pp < s.param_types.size(); ++pp)
            if (s.param_types[pp] == at) fits.push_back(static_cast<int>(pp));
          if (fits.empty()) {
            ok = false;
            break;
          }
          lit.args.push_back(fits[rng.below(fits.size())]);
        }
        if (ok) return lit;
      }
      return std::nullopt;
    };
    auto lit_key = [](const Literal& l) {
      std::string k = std::to_string(l.pred);
      for (int a2 : l.args) k += "," + std::to_string(a2);
      return k;
    };
    std::set<std::string> pre_seen, add_seen, del_seen;
    int n_pre = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < n_pre; ++i)
      if (auto l = random_literal())
        if (pre_seen.insert(lit_key(*l)).second) s.pre.push_back(*l);
    int n_add = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < n_add; ++i)
      if (auto l = random_literal())
        if (add_seen.insert(lit_key(*l)).second) s.add.push_back(*l);
    int n_del = static_cast<int>(rng.below(3));
    for (int i = 0; i < n_del; ++i)
      if (auto l = random_literal()) {
        if (add_seen.count(lit_key(*l))) continue;  // add and delete stay disjoint
        if (del_seen.insert(lit_key(*l)).second) s.del.push_back(*l);
      }
    if (s.pre.empty() || s.add.empty()) {
      --a;  // resample this schema
      continue;
    }
    d.actions.push_back(std::move(s));
  }
  return d;
}

struct CertifiedInstance {
  StripsInstance instance;
  Plan gold;
  Grounding grounding;
};

inline std::optional<CertifiedInstance> gen_instance(const StripsDomain& d, double level,
                                                     Rng& rng) {
  const auto& knob = planning_knob();
  int n_obj = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("objects", level, rng)));
  int goal_n = static_cast<int>(std::max<int64_t>(1, knob.resolve_int("goal_atoms", level, rng)));
  int walk = static_cast<int>(std::max<int64_t>(1, knob.resolve_int("walk", level, rng)));
  double density = knob.raw("init_density", level);

  StripsInstance inst;
  static const std::vector<std::string> obj_names = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int o = 0; o < n_obj; ++o) {
    inst.objects.push_back(obj_names[o]);
    inst.object_types.push_back(static_cast<int>(rng.below(d.types.size())));
  }
  // Every type needs at least one object or half the schema space is dead.
  for (size_t t = 0; t < d.types.size(); ++t) {
    bool found = false;
    for (int ot : inst.object_types)
      if (ot == static_cast<int>(t)) found = true;
    if (!found) inst.object_types[rng.below(inst.object_types.size())] = static_cast<int>(t);
  }

  Grounding g;
  try {
    g = ground(d, inst);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (g.actions.empty()) return std::nullopt;

  for (const auto& atom : g.atoms)
    if (rng.chance(density)) inst.init.push_back(atom);
  StateBits init = g.state_of(inst.init);

  // Random applicable walk; goal atoms come from what the walk achieved.
  StateBits cur = init;
  for (int s = 0; s < walk; ++s) {
    std::vector<size_t> applicable;
    for (size_t ai = 0; ai < g.actions.size(); ++ai)
      if (subset_of(g.actions[ai].pre, cur)) applicable.push_back(ai);
    if (applicable.empty()) break;
    const GroundAction& a = g.actions[applicable[rng.below(applicable.size())]];
    for (size_t w = 0; w < cur.size(); ++w) cur[w] = (cur[w] & ~a.del[w]) | a.add[w];
  }
  std::vector<size_t> achieved;
  for (size_t i = 0; i < g.atoms.size(); ++i)
    if (get_bit(cur, i) && !get_bit(init, i)) achieved.push_back(i);
  if (achieved.empty()) return std::nullopt;

  std::vector<size_t> pick = achieved;
  rng.shuffle(pick);
  pick.resize(std::min<size_t>(pick.size(), goal_n));
  std::sort(pick.begin(), pick.end());
  for (size_t i : pick) inst.goal.push_back(g.atoms[i]);

  StateBits goal = g.state_of(inst.goal);
  std::optional<Plan> plan;
  try {
    plan = solve(g, init, goal);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!plan || plan->steps.empty()) return std::nullopt;
  return CertifiedInstance{std::move(inst), std::move(*plan), std::move(g)};
}

// ---------------------------------------------------------------------------
// Rendering: structured natural language (prompt) and PDDL-ish payload

inline std::string lit_text(const StripsDomain& d, const ActionSchema& s, const Literal& l) {
  std::vector<std::string> args;
  for (int p : l.args) args.push_back("p" + std::to_string(p + 1));
  (void)s;
  return action_text(d.predicates[l.pred].name, args);
}

inline std::string render_nl(const StripsDomain& d, const StripsInstance& inst) {
  std::string out = "Types: " + join(d.types, ", ") + ".\n";
  std::vector<std::string> objs;
  for (size_t o = 0; o < inst.objects.size(); ++o)
    objs.push_back(inst.objects[o] + " (" + d.types[inst.object_types[o]] + ")");
  out += "Objects: " + join(objs, ", ") + ".\n";
  std::vector<std::string> preds;
  for (const auto& p : d.predicates) {
    std::vector<std::string> ats;
    for (size_t i = 0; i < p.arg_types.size(); ++i)
      ats.push_back("p" + std::to_string(i + 1) + ": " + d.types[p.arg_types[i]]);
    preds.push_back(action_text(p.name, ats));
  }
  out += "Predicates: " + join(preds, ", ") + ".\n";
  out += "Actions:\n";
  for (const auto& s : d.actions) {
    std::vector<std::string> params;
    for (size_t i = 0; i < s.param_types.size(); ++i)
      params.push_back("p" + std::to_string(i + 1) + ": " + d.types[s.param_types[i]]);
    out += "  " + action_text(s.name, params) + ":\n";
    std::vector<std::string> pre, add, del;
    for (const auto& l : s.pre) pre.push_back(lit_text(d, s, l));
    for (const auto& l : s.add) add.push_back(lit_text(d, s, l));
    for (const auto& l : s.del) del.push_back(lit_text(d, s, l));
    out += "    preconditions: " + (pre.empty() ? "none" : join(pre, ", ")) + "\n";
    out += "    adds: " + (add.empty() ? "none" : join(add, ", ")) + "\n";
    out += "    deletes: " + (del.empty() ? "none" : join(del, ", ")) + "\n";
  }
  std::vector<std::string> init_strs, goal_strs;
  for (const auto& a : inst.init) init_strs.push_back(atom_text(d, inst, a));
  for (const auto& a : inst.goal) goal_strs.push_back(atom_text(d, inst, a));
  out += "Initial state: " + (init_strs.empty() ? "empty" : join(init_strs, ", ")) + ".\n";
  out += "Goal: " + join(goal_strs, ", ") + ".\n";
  return out;
}

}  // namespace symgen::planning
