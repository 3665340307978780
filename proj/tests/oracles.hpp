#pragma once

// Independent brute-force oracles used by the unit and acceptance suites.
// Everything here is deliberately written against different data structures
// and traversal orders than the library implementations it checks.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "symgen/algebra.hpp"
#include "symgen/earley.hpp"
#include "symgen/logic.hpp"
#include "symgen/bayes.hpp"
#include "symgen/planning.hpp"
#include "symgen/tinypy.hpp"
#include "symgen/util/rational.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Naive monadic-FOL model enumeration over explicit domains of size
// 1..bound: a canonical (sorted) profile vector per element plus every
// constant-to-element map, evaluated by looping over elements directly.

namespace logic_detail {

inline bool eval_explicit(const symgen::logic::Formula& f, const std::vector<int>& profiles,
                          const std::vector<int>& const_elem, std::vector<int>& env) {
  using K = symgen::logic::Formula::Kind;
  switch (f.kind) {
    case K::pred: {
      int elem = f.a.is_var ? env[f.a.id] : const_elem[f.a.id];
      return (profiles[elem] >> f.pred) & 1;
    }
    case K::eq: {
      int ea = f.a.is_var ? env[f.a.id] : const_elem[f.a.id];
      int eb = f.b.is_var ? env[f.b.id] : const_elem[f.b.id];
      return ea == eb;
    }
    case K::neg:
      return !eval_explicit(f.kids[0], profiles, const_elem, env);
    case K::conj:
      return eval_explicit(f.kids[0], profiles, const_elem, env) &&
             eval_explicit(f.kids[1], profiles, const_elem, env);
    case K::disj:
      return eval_explicit(f.kids[0], profiles, const_elem, env) ||
             eval_explicit(f.kids[1], profiles, const_elem, env);
    case K::impl:
      return !eval_explicit(f.kids[0], profiles, const_elem, env) ||
             eval_explicit(f.kids[1], profiles, const_elem, env);
    case K::forall:
    case K::exists: {
      bool uni = f.kind == K::forall;
      for (int e = 0; e < static_cast<int>(profiles.size()); ++e) {
        env.push_back(e);
        bool r = eval_explicit(f.kids[0], profiles, const_elem, env);
        env.pop_back();
        if (uni && !r) return false;
        if (!uni && r) return true;
      }
      return uni;
    }
  }
  return false;
}

inline bool sat_explicit(const std::vector<const symgen::logic::Formula*>& fs, int k, int c,
                         int bound) {
  for (int d = 1; d <= bound; ++d) {
    std::vector<int> profiles(d, 0);
    // Non-decreasing profile vectors enumerate models up to permutation.
    std::function<bool(int, int)> fill = [&](int i, int minp) -> bool {
      if (i == d) {
        std::vector<int> const_elem(c, 0);
        std::function<bool(int)> assign = [&](int ci) -> bool {
          if (ci == c) {
            std::vector<int> env;
            for (const auto* f : fs)
              if (!eval_explicit(*f, profiles, const_elem, env)) return false;
            return true;
          }
          for (int e = 0; e < d; ++e) {
            const_elem[ci] = e;
            if (assign(ci + 1)) return true;
          }
          return false;
        };
        return assign(0);
      }
      for (int p = minp; p < (1 << k); ++p) {
        profiles[i] = p;
        if (fill(i + 1, p)) return true;
      }
      return false;
    };
    if (fill(0, 0)) return true;
  }
  return false;
}

}  // namespace logic_detail

inline std::string naive_logic_label(const std::vector<symgen::logic::Formula>& premises,
                                     const symgen::logic::Formula& hypothesis,
                                     const symgen::logic::Vocab& vocab, int bound) {
  int k = static_cast<int>(vocab.predicates.size());
  int c = static_cast<int>(vocab.constants.size());
  symgen::logic::Formula neg;
  neg.kind = symgen::logic::Formula::Kind::neg;
  neg.kids.push_back(hypothesis);

  std::vector<const symgen::logic::Formula*> with_neg;
  for (const auto& p : premises) with_neg.push_back(&p);
  with_neg.push_back(&neg);
  if (!logic_detail::sat_explicit(with_neg, k, c, bound)) return "entailment";

  std::vector<const symgen::logic::Formula*> with_hyp;
  for (const auto& p : premises) with_hyp.push_back(&p);
  with_hyp.push_back(&hypothesis);
  if (!logic_detail::sat_explicit(with_hyp, k, c, bound)) return "contradiction";
  return "neutral";
}

// ---------------------------------------------------------------------------
// Stack-machine expression evaluator: compiles the tree to postfix and runs
// an explicit value stack. Second route against the recursive evaluator.

inline symgen::Rational stack_eval(const symgen::algebra::Expr& e) {
  using symgen::Rational;
  using symgen::algebra::Expr;
  struct Instr {
    Expr::Op op;
    Rational value;
    int64_t exponent;
  };
  std::vector<Instr> code;
  std::function<void(const Expr&)> compile = [&](const Expr& node) {
    for (const auto& k : node.kids) compile(k);
    code.push_back({node.op, node.value, node.exponent});
  };
  compile(e);
  std::vector<Rational> stack;
  for (const auto& ins : code) {
    switch (ins.op) {
      case Expr::Op::num:
        stack.push_back(ins.value);
        break;
      case Expr::Op::abs: {
        Rational a = stack.back();
        stack.back() = a.sign() < 0 ? -a : a;
        break;
      }
      case Expr::Op::round:
        stack.back() = Rational(stack.back().round_half_even());
        break;
      case Expr::Op::pow: {
        Rational a = stack.back();
        stack.back() = a.pow(ins.exponent);
        break;
      }
      default: {
        Rational b = stack.back();
        stack.pop_back();
        Rational a = stack.back();
        stack.pop_back();
        Rational r;
        switch (ins.op) {
          case Expr::Op::add: r = a + b; break;
          case Expr::Op::sub: r = a - b; break;
          case Expr::Op::mul: r = a * b; break;
          case Expr::Op::div: r = a / b; break;
          case Expr::Op::min: r = a <= b ? a : b; break;
          case Expr::Op::max: r = a >= b ? a : b; break;
          default: throw std::runtime_error("stack_eval: unexpected op");
        }
        stack.push_back(r);
        break;
      }
    }
  }
  return stack.back();
}

// ---------------------------------------------------------------------------
// Fraction-free (Bareiss) rank over integers; rows are cleared of
// denominators first. Independent of the Gauss-Jordan RREF in the library.

inline int bareiss_rank(std::vector<std::vector<symgen::Rational>> m) {
  using symgen::BigInt;
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (size_t i = 0; i < rows; ++i) {
    BigInt lcm(1);
    for (const auto& v : m[i]) lcm = lcm / BigInt::gcd(lcm, v.den()) * v.den();
    for (size_t j = 0; j < cols; ++j) a[i][j] = m[i][j].num() * (lcm / m[i][j].den());
  }
  BigInt prev(1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = r;
    while (pivot < rows && a[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[r], a[pivot]);
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = BigInt(0);
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

// ---------------------------------------------------------------------------
// Parse counting by exhaustive leftmost derivation search.
//
// State is (consumed prefix length, remaining sentential suffix). Counts
// saturate at `cap`; unit/epsilon cycles are detected by in-progress
// re-entry, and any completing state on such a cycle means infinitely many
// trees (reported as the cap, matching the chart counter's saturation).

class LeftmostCounter {
public:
  LeftmostCounter(const symgen::cfg::Cfg& g, int cap, long long step_budget = 4000000)
      : g_(g), cap_(cap), budget_(step_budget) {}

  // Returns min(#parse trees, cap). Throws if the step budget is exhausted,
  // so an under-resourced comparison fails loudly instead of silently.
  int count(const std::vector<int>& tokens) {
    tokens_ = &tokens;
    memo_.clear();
    in_progress_.clear();
    cycle_keys_.clear();
    std::vector<int> stack{g_.start};
    long long c = go(0, stack);
    for (const auto& key : cycle_keys_) {
      auto it = memo_.find(key);
      if (it != memo_.end() && it->second >= 1) return cap_;
    }
    return static_cast<int>(std::min<long long>(c, cap_));
  }

private:
  std::string key_of(size_t pos, const std::vector<int>& stack) const {
    std::string k = std::to_string(pos) + ":";
    for (int s : stack) k += std::to_string(s) + ",";
    return k;
  }

  long long go(size_t pos, std::vector<int>& stack) {
    if (--budget_ < 0) throw std::runtime_error("leftmost oracle: step budget exhausted");
    const auto& tokens = *tokens_;
    // Prune on minimum remaining yield.
    long long need = 0;
    for (int s : stack)
      need += symgen::cfg::is_term(s) ? 1 : g_.min_yield[s];
    if (pos + need > tokens.size()) return 0;
    if (stack.size() > 1024) return 0;

    if (stack.empty()) return pos == tokens.size() ? 1 : 0;

    std::string key = key_of(pos, stack);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (in_progress_.count(key)) {
      cycle_keys_.insert(key);
      return 0;
    }
    in_progress_.insert(key);

    int top = stack.back();
    long long total = 0;
    if (symgen::cfg::is_term(top)) {
      if (pos < tokens.size() && tokens[pos] == symgen::cfg::term_index(top)) {
        stack.pop_back();
        total = go(pos + 1, stack);
        stack.push_back(top);
      }
    } else {
      for (const auto& p : g_.prods) {
        if (p.lhs != top) continue;
        stack.pop_back();
        for (size_t i = p.rhs.size(); i-- > 0;) stack.push_back(p.rhs[i]);
        total += go(pos, stack);
        for (size_t i = 0; i < p.rhs.size(); ++i) stack.pop_back();
        stack.push_back(top);
        if (total >= cap_) {
          total = cap_;
          break;
        }
      }
    }
    in_progress_.erase(key);
    memo_[key] = total;
    return total;
  }

  const symgen::cfg::Cfg& g_;
  int cap_;
  long long budget_;
  const std::vector<int>* tokens_ = nullptr;
  std::map<std::string, long long> memo_;
  std::set<std::string> in_progress_;
  std::set<std::string> cycle_keys_;
};

inline int leftmost_parse_count(const symgen::cfg::Cfg& g,
                                const std::vector<std::string>& tokens, int cap) {
  std::vector<int> ids;
  for (const auto& t : tokens) {
    int id = g.terminal_id(t);
    if (id < 0) return 0;
    ids.push_back(id);
  }
  LeftmostCounter c(g, cap);
  return c.count(ids);
}

// ---------------------------------------------------------------------------
// Prefix extendability by bounded sentential-form search: can `prefix` be
// extended with at most `extra_budget` further tokens into a sentence?

class Extender {
public:
  Extender(const symgen::cfg::Cfg& g, int extra_budget, long long step_budget = 50000000)
      : g_(g), extra_(extra_budget), budget_(step_budget) {}

  bool extendable(const std::vector<int>& prefix) {
    prefix_ = &prefix;
    visited_.clear();
    std::vector<int> stack{g_.start};
    return go(0, 0, stack);
  }

private:
  bool go(size_t pos, int extra_used, std::vector<int>& stack) {
    if (--budget_ < 0) throw std::runtime_error("extender oracle: step budget exhausted");
    const auto& prefix = *prefix_;
    if (stack.empty()) return pos == prefix.size();
    // Deep stacks only arise from same-span pumping, which never helps a
    // boolean extendability question (pumps can always be removed).
    if (stack.size() > 160) return false;
    // Remaining capacity: unmatched prefix plus the extension budget.
    long long need = 0;
    for (int s : stack)
      need += symgen::cfg::is_term(s) ? 1 : g_.min_yield[s];
    long long capacity = static_cast<long long>(prefix.size() - pos) + (extra_ - extra_used);
    if (need > capacity) return false;
    // Prefix fully matched: the minimal completion (every nonterminal is
    // productive) fits the remaining budget, so the prefix extends.
    if (pos == prefix.size()) return true;

    std::string key = std::to_string(pos) + "|" + std::to_string(extra_used) + "|";
    for (int s : stack) key += std::to_string(s) + ",";
    if (!visited_.insert(key).second) return false;

    int top = stack.back();
    if (symgen::cfg::is_term(top)) {
      if (pos < prefix.size()) {
        if (prefix[pos] != symgen::cfg::term_index(top)) return false;
        stack.pop_back();
        bool ok = go(pos + 1, extra_used, stack);
        stack.push_back(top);
        return ok;
      }
      if (extra_used >= extra_) return false;
      stack.pop_back();
      bool ok = go(pos, extra_used + 1, stack);
      stack.push_back(top);
      return ok;
    }
    for (const auto& p : g_.prods) {
      if (p.lhs != top) continue;
      stack.pop_back();
      for (size_t i = p.rhs.size(); i-- > 0;) stack.push_back(p.rhs[i]);
      bool ok = go(pos, extra_used, stack);
      for (size_t i = 0; i < p.rhs.size(); ++i) stack.pop_back();
      stack.push_back(top);
      if (ok) return true;
    }
    return false;
  }

  const symgen::cfg::Cfg& g_;
  int extra_;
  long long budget_;
  const std::vector<int>* prefix_ = nullptr;
  std::set<std::string> visited_;
};

inline bool prefix_extendable(const symgen::cfg::Cfg& g,
                              const std::vector<std::string>& prefix, int extra_budget) {
  std::vector<int> ids;
  for (const auto& t : prefix) {
    int id = g.terminal_id(t);
    if (id < 0) return false;
    ids.push_back(id);
  }
  Extender e(g, extra_budget);
  return e.extendable(ids);
}

// ---------------------------------------------------------------------------
// Full-joint Bayesian inference: enumerate every assignment, multiply CPD
// entries, and sum. Exact rationals; usable up to ~8 variables.

inline std::vector<symgen::Rational> joint_posterior(const symgen::bayes::BayesNet& net,
                                                     int target,
                                                     const std::map<int, int>& evidence) {
  using symgen::Rational;
  size_t n = net.nodes.size();
  std::vector<int> assign(n, 0);
  std::vector<Rational> marginal(net.nodes[target].card, Rational(0));
  std::function<void(size_t, Rational)> rec = [&](size_t i, Rational w) {
    if (i == n) {
      marginal[assign[target]] = marginal[assign[target]] + w;
      return;
    }
    auto it = evidence.find(static_cast<int>(i));
    const auto& node = net.nodes[i];
    for (int s = 0; s < node.card; ++s) {
      if (it != evidence.end() && it->second != s) continue;
      assign[i] = s;
      Rational p;
      if (node.cpd.kind == symgen::bayes::Cpd::Kind::tabular) {
        size_t row = 0;
        for (int par : node.parents) row = row * net.nodes[par].card + assign[par];
        p = node.cpd.table[row][s];
      } else {
        std::vector<int> pstates;
        for (int par : node.parents) pstates.push_back(assign[par]);
        Rational one = symgen::bayes::noisy_prob_one(node.cpd, pstates);
        p = s == 1 ? one : Rational(1) - one;
      }
      rec(i + 1, w * p);
    }
  };
  rec(0, Rational(1));
  Rational total(0);
  for (const auto& v : marginal) total = total + v;
  if (total.is_zero()) throw std::runtime_error("joint oracle: zero-probability evidence");
  for (auto& v : marginal) v = v / total;
  return marginal;
}

// ---------------------------------------------------------------------------
// Second tinypy interpreter: postfix expression compilation with an
// explicit value stack and independently written arithmetic and float
// formatting. Byte-equal output is the acceptance contract.

namespace tinypy_ref {

struct Val {
  bool flt = false;
  symgen::BigInt i;
  double f = 0;
};

inline symgen::BigInt ref_floor_div(const symgen::BigInt& a, const symgen::BigInt& b) {
  using symgen::BigInt;
  // mod-first route: m = ((a % b) + b) % b, then (a - m) / b.
  BigInt m = ((a % b) + b) % b;
  return (a - m) / b;
}

inline std::string ref_format_float(double v) {
  // Shortest round-tripping string over fixed and scientific candidates
  // (fixed preferred on ties), plus a ".0" suffix when integral.
  std::string best;
  auto consider = [&](const std::string& s, bool prefer_on_tie) {
    if (std::strtod(s.c_str(), nullptr) != v) return;
    if (best.empty() || s.size() < best.size()) {
      best = s;
      return;
    }
    if (prefer_on_tie && s.size() == best.size() && best.find('e') != std::string::npos)
      best = s;
  };
  for (int prec = 0; prec <= 17; ++prec) {
    char fbuf[512], ebuf[64];
    std::snprintf(fbuf, sizeof fbuf, "%.*f", prec, v);
    std::snprintf(ebuf, sizeof ebuf, "%.*e", prec, v);
    consider(fbuf, true);
    consider(ebuf, false);
  }
  std::string s = best.empty() ? "nan" : best;
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

struct Machine {
  std::map<std::string, Val> env;
  std::string out;
  long long steps = 100000;

  void tick() {
    if (--steps < 0) throw symgen::Error("budget-exceeded", "reference budget");
  }

  Val eval(const symgen::tinypy::PExpr& e) {
    using symgen::tinypy::PExpr;
    // Postfix compilation, explicit stack.
    std::vector<const PExpr*> post;
    std::function<void(const PExpr&)> flatten = [&](const PExpr& x) {
      for (const auto& k : x.kids) flatten(k);
      post.push_back(&x);
    };
    flatten(e);
    std::vector<Val> stack;
    for (const PExpr* px : post) {
      tick();
      switch (px->kind) {
        case PExpr::Kind::int_lit:
          stack.push_back({false, px->int_value, 0});
          break;
        case PExpr::Kind::float_lit:
          stack.push_back({true, symgen::BigInt(0), px->float_value});
          break;
        case PExpr::Kind::var: {
          auto it = env.find(px->name);
          if (it == env.end()) throw symgen::Error("undefined-variable", px->name);
          stack.push_back(it->second);
          break;
        }
        case PExpr::Kind::binop: {
          Val b = stack.back();
          stack.pop_back();
          Val a = stack.back();
          stack.pop_back();
          stack.push_back(apply(px->name, a, b));
          break;
        }
      }
    }
    return stack.back();
  }

  Val apply(const std::string& op, const Val& a, const Val& b) {
    using symgen::BigInt;
    auto cmp_ok = [&](int c) {
      if (op == "<") return c < 0;
      if (op == "<=") return c <= 0;
      if (op == ">") return c > 0;
      if (op == ">=") return c >= 0;
      if (op == "==") return c == 0;
      return c != 0;
    };
    if (op == "<" || op == "<=" || op == ">" || op == ">=" || op == "==" || op == "!=") {
      int c;
      if (!a.flt && !b.flt) c = BigInt::cmp(a.i, b.i);
      else {
        double x = a.flt ? a.f : a.i.to_double();
        double y = b.flt ? b.f : b.i.to_double();
        c = x < y ? -1 : x > y ? 1 : 0;
      }
      return {false, BigInt(cmp_ok(c) ? 1 : 0), 0};
    }
    if (a.flt || b.flt) {
      double x = a.flt ? a.f : a.i.to_double();
      double y = b.flt ? b.f : b.i.to_double();
      if (op == "+") return {true, BigInt(0), x + y};
      if (op == "-") return {true, BigInt(0), x - y};
      if (op == "*") return {true, BigInt(0), x * y};
      if (y == 0) throw symgen::Error("division-by-zero", "float");
      double q = std::floor(x / y);
      if (op == "//") return {true, BigInt(0), q};
      return {true, BigInt(0), x - q * y};
    }
    if (op == "+") return {false, a.i + b.i, 0};
    if (op == "-") return {false, a.i - b.i, 0};
    if (op == "*") return {false, a.i * b.i, 0};
    if (b.i.is_zero()) throw symgen::Error("division-by-zero", "int");
    if (op == "//") return {false, ref_floor_div(a.i, b.i), 0};
    return {false, a.i - ref_floor_div(a.i, b.i) * b.i, 0};
  }

  bool truthy(const symgen::tinypy::PExpr& e) {
    Val v = eval(e);
    return v.flt ? v.f != 0 : !v.i.is_zero();
  }

  void run_block(const std::vector<symgen::tinypy::PStmt>& body) {
    using symgen::tinypy::PStmt;
    for (const auto& st : body) {
      tick();
      switch (st.kind) {
        case PStmt::Kind::assign:
          env[st.target] = eval(st.value);
          break;
        case PStmt::Kind::print: {
          Val v = eval(st.value);
          out += (v.flt ? ref_format_float(v.f) : v.i.to_string()) + "\n";
          break;
        }
        case PStmt::Kind::branch: {
          bool taken = false;
          for (const auto& arm : st.arms) {
            if (truthy(arm.cond)) {
              run_block(arm.body);
              taken = true;
              break;
            }
          }
          if (!taken) run_block(st.else_body);
          break;
        }
        case PStmt::Kind::for_loop: {
          Val bound = eval(st.value);
          long long n = bound.i.fits_i64() ? bound.i.to_i64() : 0;
          for (long long k = 0; k < n; ++k) {
            env[st.target] = {false, symgen::BigInt(k), 0};
            run_block(st.arms[0].body);
          }
          break;
        }
        case PStmt::Kind::while_loop:
          while (truthy(st.arms[0].cond)) run_block(st.arms[0].body);
          break;
      }
    }
  }
};

}  // namespace tinypy_ref

inline std::string reference_interpret(const std::vector<symgen::tinypy::PStmt>& program) {
  tinypy_ref::Machine m;
  m.run_block(program);
  return m.out;
}

// ---------------------------------------------------------------------------
// Iterative-deepening depth-first search for optimal plan length. Depth-
// limited DFS with a per-state best-depth memo; independent of the BFS
// planner's queue discipline.

inline int iddfs_plan_length(const symgen::planning::Grounding& g,
                             const symgen::planning::StateBits& init,
                             const symgen::planning::StateBits& goal, int max_depth) {
  using namespace symgen::planning;
  for (int limit = 0; limit <= max_depth; ++limit) {
    std::map<std::vector<uint64_t>, int> best_remaining;
    std::function<bool(const StateBits&, int)> dfs = [&](const StateBits& s, int left) -> bool {
      if (subset_of(goal, s)) return true;
      if (left == 0) return false;
      auto it = best_remaining.find(s);
      if (it != best_remaining.end() && it->second >= left) return false;
      best_remaining[s] = left;
      for (const auto& a : g.actions) {
        if (!subset_of(a.pre, s)) continue;
        StateBits next = s;
        for (size_t w = 0; w < next.size(); ++w) next[w] = (next[w] & ~a.del[w]) | a.add[w];
        if (dfs(next, left - 1)) return true;
      }
      return false;
    };
    if (dfs(init, limit)) return limit;
  }
  return -1;
}

}  // namespace oracles
