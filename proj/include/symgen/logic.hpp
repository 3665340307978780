#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symgen/core.hpp"
#include "symgen/grammars.hpp"

// Monadic first-order logic with constants and (variable = constant)
// equality. The fragment has the finite model property with bound
// #constants + 2^#predicates, so entailment is decided internally by
// enumerating models up to profile symmetry: a model is a coreference
// partition of the constants, a predicate profile per class, and the set of
// profiles realized by anonymous elements.

namespace symgen::logic {

inline constexpr int kInstanceRetryCap = 60;

struct Term {
  bool is_var = false;
  int id = 0;  // variable depth or constant index
};

struct Formula {
  enum class Kind { pred, eq, neg, conj, disj, impl, forall, exists };
  Kind kind = Kind::pred;
  int pred = -1;
  Term a, b;
  std::vector<Formula> kids;
};

struct Vocab {
  std::vector<std::string> predicates;  // adjectives
  std::vector<std::string> constants;   // names

  int pred_id(const std::string& s) {
    for (size_t i = 0; i < predicates.size(); ++i)
      if (predicates[i] == s) return static_cast<int>(i);
    predicates.push_back(s);
    return static_cast<int>(predicates.size()) - 1;
  }
  int const_id(const std::string& s) {
    for (size_t i = 0; i < constants.size(); ++i)
      if (constants[i] == s) return static_cast<int>(i);
    constants.push_back(s);
    return static_cast<int>(constants.size()) - 1;
  }
};

// ---------------------------------------------------------------------------
// TPTP-flavored prefix syntax: ![X]:(kind(X)=>happy(X)), ?[X]:p(X), ~f,
// (f&g), (f|g), (f=>g), pred(term), term=term. "X"-style capitalized single
// letters inside quantifiers are variables.

namespace detail {

struct FolParser {
  const std::string& s;
  size_t i = 0;
  Vocab& vocab;
  std::vector<std::string> var_stack;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string ident() {
    ws();
    size_t b = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    return s.substr(b, i - b);
  }

  std::optional<Term> term() {
    std::string name = ident();
    if (name.empty()) return std::nullopt;
    for (size_t d = var_stack.size(); d-- > 0;)
      if (var_stack[d] == name) return Term{true, static_cast<int>(d)};
    return Term{false, vocab.const_id(name)};
  }

  std::optional<Formula> unit() {
    ws();
    if (i >= s.size()) return std::nullopt;
    if (s[i] == '!' || s[i] == '?') {
      bool uni = s[i] == '!';
      ++i;
      if (!eat('[')) return std::nullopt;
      std::string v = ident();
      if (v.empty() || !eat(']') || !eat(':')) return std::nullopt;
      var_stack.push_back(v);
      auto body = unit();
      var_stack.pop_back();
      if (!body) return std::nullopt;
      Formula f;
      f.kind = uni ? Formula::Kind::forall : Formula::Kind::exists;
      f.kids.push_back(std::move(*body));
      return f;
    }
    if (s[i] == '~') {
      ++i;
      auto body = unit();
      if (!body) return std::nullopt;
      Formula f;
      f.kind = Formula::Kind::neg;
      f.kids.push_back(std::move(*body));
      return f;
    }
    if (s[i] == '(') {
      ++i;
      auto lhs = unit();
      if (!lhs) return std::nullopt;
      ws();
      Formula::Kind k;
      if (eat('&')) {
        k = Formula::Kind::conj;
      } else if (eat('|')) {
        k = Formula::Kind::disj;
      } else if (i + 1 < s.size() && s[i] == '=' && s[i + 1] == '>') {
        i += 2;
        k = Formula::Kind::impl;
      } else if (eat(')')) {
        return lhs;  // redundant parentheses
      } else {
        return std::nullopt;
      }
      auto rhs = unit();
      if (!rhs || !eat(')')) return std::nullopt;
      Formula f;
      f.kind = k;
      f.kids.push_back(std::move(*lhs));
      f.kids.push_back(std::move(*rhs));
      return f;
    }
    // Atom: pred(term) or term=term.
    auto t = term();
    if (!t) return std::nullopt;
    ws();
    if (i < s.size() && s[i] == '(') {
      if (t->is_var) return std::nullopt;  // predicates are never variables
      ++i;
      // The name was interned as a constant; move it to the predicate table
      // before the argument interns anything after it.
      std::string name = vocab.constants[t->id];
      if (static_cast<size_t>(t->id) + 1 == vocab.constants.size())
        vocab.constants.pop_back();
      int pid = vocab.pred_id(name);
      auto arg = term();
      if (!arg || !eat(')')) return std::nullopt;
      Formula f;
      f.kind = Formula::Kind::pred;
      f.pred = pid;
      f.a = *arg;
      return f;
    }
    if (i < s.size() && s[i] == '=' && (i + 1 >= s.size() || s[i + 1] != '>')) {
      ++i;
      auto rhs = term();
      if (!rhs) return std::nullopt;
      Formula f;
      f.kind = Formula::Kind::eq;
      f.a = *t;
      f.b = *rhs;
      return f;
    }
    return std::nullopt;
  }
};

}  // namespace detail

inline std::optional<Formula> parse_fol(const std::string& text, Vocab& vocab) {
  detail::FolParser p{text, 0, vocab, {}};
  auto f = p.unit();
  if (!f) return std::nullopt;
  p.ws();
  if (p.i != text.size()) return std::nullopt;
  return f;
}

inline void check_fragment(const Formula& f) {
  if (f.kind == Formula::Kind::eq && f.a.is_var && f.b.is_var)
    throw err("fragment-violation", "variable = variable equality is outside the fragment");
  for (const auto& k : f.kids) check_fragment(k);
}

// ---------------------------------------------------------------------------
// Model enumeration up to profile symmetry

struct Model {
  int k = 0;                       // predicate count
  std::vector<int> const_class;    // constant -> coreference class
  std::vector<int> class_profile;  // class -> predicate bitmask
  uint32_t anon_profiles = 0;      // bitmask over 2^k profiles

  std::string describe(const Vocab& v) const {
    std::string out;
    for (size_t c = 0; c < const_class.size(); ++c) {
      if (!out.empty()) out += "; ";
      out += v.constants[c] + ": class " + std::to_string(const_class[c]) + " profile " +
             std::to_string(class_profile[const_class[c]]);
    }
    out += "; anonymous profile mask " + std::to_string(anon_profiles);
    return out;
  }
};

namespace detail {

struct EType {
  int profile;
  int klass;  // -1 = anonymous
};

inline bool eval_formula(const Formula& f, const Model& m, std::vector<EType>& env) {
  switch (f.kind) {
    case Formula::Kind::pred: {
      EType t = f.a.is_var ? env[f.a.id]
                           : EType{m.class_profile[m.const_class[f.a.id]],
                                   m.const_class[f.a.id]};
      return (t.profile >> f.pred) & 1;
    }
    case Formula::Kind::eq: {
      auto type_of = [&](const Term& t) {
        return t.is_var ? env[t.id].klass : m.const_class[t.id];
      };
      int ka = type_of(f.a), kb = type_of(f.b);
      if (ka < 0 || kb < 0) return false;  // anonymous elements equal nothing named
      return ka == kb;
    }
    case Formula::Kind::neg:
      return !eval_formula(f.kids[0], m, env);
    case Formula::Kind::conj:
      return eval_formula(f.kids[0], m, env) && eval_formula(f.kids[1], m, env);
    case Formula::Kind::disj:
      return eval_formula(f.kids[0], m, env) || eval_formula(f.kids[1], m, env);
    case Formula::Kind::impl:
      return !eval_formula(f.kids[0], m, env) || eval_formula(f.kids[1], m, env);
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      bool uni = f.kind == Formula::Kind::forall;
      auto test = [&](EType t) {
        env.push_back(t);
        bool r = eval_formula(f.kids[0], m, env);
        env.pop_back();
        return r;
      };
      for (size_t c = 0; c < m.class_profile.size(); ++c) {
        bool r = test({m.class_profile[c], static_cast<int>(c)});
        if (uni && !r) return false;
        if (!uni && r) return true;
      }
      int profiles = 1 << m.k;
      for (int p = 0; p < profiles; ++p) {
        if (!((m.anon_profiles >> p) & 1)) continue;
        bool r = test({p, -1});
        if (uni && !r) return false;
        if (!uni && r) return true;
      }
      return uni;
    }
  }
  return false;
}

// Enumerates coreference partitions as restricted growth strings.
inline void partitions(int c, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(c, 0);
  std::function<void(int, int)> rec = [&](int i, int maxc) {
    if (i == c) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= maxc; ++k) {
      cur[i] = k;
      rec(i + 1, std::max(maxc, k + 1));
    }
  };
  if (c == 0) {
    out.push_back({});
    return;
  }
  rec(0, 0);
}

}  // namespace detail

// First model (in a fixed deterministic order) satisfying every formula.
inline std::optional<Model> find_model(const std::vector<const Formula*>& formulas,
                                       int k, int c) {
  std::vector<std::vector<int>> parts;
  detail::partitions(c, parts);
  const int profiles = 1 << k;
  for (const auto& part : parts) {
    int nclasses = 0;
    for (int x : part) nclasses = std::max(nclasses, x + 1);
    std::vector<int> profile(nclasses, 0);
    std::optional<Model> hit;
    std::function<bool(int)> assign = [&](int ci) -> bool {
      if (ci == nclasses) {
        const uint32_t tmax = 1u << profiles;
        for (uint32_t t = 0; t < tmax; ++t) {
          if (nclasses == 0 && t == 0) continue;  // domains are non-empty
          Model m;
          m.k = k;
          m.const_class = part;
          m.class_profile = profile;
          m.anon_profiles = t;
          bool ok = true;
          std::vector<detail::EType> env;
          for (const Formula* f : formulas)
            if (!detail::eval_formula(*f, m, env)) {
              ok = false;
              break;
            }
          if (ok) {
            hit = std::move(m);
            return true;
          }
        }
        return false;
      }
      for (int p = 0; p < profiles; ++p) {
        profile[ci] = p;
        if (assign(ci + 1)) return true;
      }
      return false;
    };
    if (assign(0)) return hit;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Signature components: formulas sharing no predicate or constant are
// independent in monadic logic (extra elements can always adopt an existing
// profile), so satisfiability factorizes and the per-component profile
// space stays small even when distractors bring fresh vocabulary.

namespace detail {

inline void used_symbols(const Formula& f, std::set<int>& preds, std::set<int>& consts) {
  if (f.kind == Formula::Kind::pred) {
    preds.insert(f.pred);
    if (!f.a.is_var) consts.insert(f.a.id);
  }
  if (f.kind == Formula::Kind::eq) {
    if (!f.a.is_var) consts.insert(f.a.id);
    if (!f.b.is_var) consts.insert(f.b.id);
  }
  for (const auto& k : f.kids) used_symbols(k, preds, consts);
}

inline Formula remap(const Formula& f, const std::map<int, int>& pmap,
                     const std::map<int, int>& cmap) {
  Formula out;
  out.kind = f.kind;
  out.pred = f.pred >= 0 && f.kind == Formula::Kind::pred ? pmap.at(f.pred) : -1;
  out.a = f.a;
  out.b = f.b;
  if (!out.a.is_var && (f.kind == Formula::Kind::pred || f.kind == Formula::Kind::eq))
    out.a.id = cmap.at(f.a.id);
  if (!out.b.is_var && f.kind == Formula::Kind::eq) out.b.id = cmap.at(f.b.id);
  for (const auto& k : f.kids) out.kids.push_back(remap(k, pmap, cmap));
  return out;
}

}  // namespace detail

// Conjunction satisfiability over signature components.
inline bool satisfiable_all(const std::vector<const Formula*>& formulas) {
  size_t n = formulas.size();
  std::vector<std::set<int>> preds(n), consts(n);
  for (size_t i = 0; i < n; ++i) detail::used_symbols(*formulas[i], preds[i], consts[i]);

  std::vector<size_t> group(n);
  for (size_t i = 0; i < n; ++i) group[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    return group[x] == x ? x : group[x] = find(group[x]);
  };
  auto shares = [&](size_t i, size_t j) {
    for (int p : preds[i])
      if (preds[j].count(p)) return true;
    for (int c : consts[i])
      if (consts[j].count(c)) return true;
    return false;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (shares(i, j)) group[find(i)] = find(j);

  std::map<size_t, std::vector<size_t>> comps;
  for (size_t i = 0; i < n; ++i) comps[find(i)].push_back(i);

  for (const auto& [root, members] : comps) {
    std::map<int, int> pmap, cmap;
    for (size_t i : members) {
      for (int p : preds[i])
        if (!pmap.count(p)) pmap[p] = static_cast<int>(pmap.size());
      for (int c : consts[i])
        if (!cmap.count(c)) cmap[c] = static_cast<int>(cmap.size());
    }
    std::vector<Formula> local;
    for (size_t i : members) local.push_back(detail::remap(*formulas[i], pmap, cmap));
    std::vector<const Formula*> ptrs;
    for (const auto& f : local) ptrs.push_back(&f);
    if (!find_model(ptrs, static_cast<int>(pmap.size()), static_cast<int>(cmap.size())))
      return false;
  }
  return true;
}

// entailment iff premises & ~hypothesis unsatisfiable; contradiction iff
// premises & hypothesis unsatisfiable; neutral otherwise. `bound` must cover
// the fragment's finite-model bound #constants + 2^#predicates.
inline std::string decide(const std::vector<Formula>& premises, const Formula& hypothesis,
                          const Vocab& vocab, int bound) {
  int k = static_cast<int>(vocab.predicates.size());
  int c = static_cast<int>(vocab.constants.size());
  if (bound < c || bound < c + (1 << k))
    throw err("bound-too-small", "need bound >= constants + 2^predicates = " +
                                     std::to_string(c + (1 << k)));
  for (const auto& p : premises) check_fragment(p);
  check_fragment(hypothesis);

  Formula neg_hyp;
  neg_hyp.kind = Formula::Kind::neg;
  neg_hyp.kids.push_back(hypothesis);

  std::vector<const Formula*> with_neg;
  for (const auto& p : premises) with_neg.push_back(&p);
  with_neg.push_back(&neg_hyp);
  if (!satisfiable_all(with_neg)) return "entailment";

  std::vector<const Formula*> with_hyp;
  for (const auto& p : premises) with_hyp.push_back(&p);
  with_hyp.push_back(&hypothesis);
  if (!satisfiable_all(with_hyp)) return "contradiction";
  return "neutral";
}

inline bool satisfiable(const std::vector<Formula>& premises, const Vocab&) {
  std::vector<const Formula*> fs;
  for (const auto& p : premises) fs.push_back(&p);
  return satisfiable_all(fs);
}

}  // namespace symgen::logic
