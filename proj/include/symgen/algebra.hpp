#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symgen/core.hpp"
#include "symgen/util/rational.hpp"

// Exact-arithmetic expression tasks: numeric evaluation with bottom-up
// traces, symbolic simplification with equivalence scoring, linear systems,
// and recurrence induction. No floating point touches any gold value.

namespace symgen::algebra {

inline constexpr int kInstanceRetryCap = 80;

// ---------------------------------------------------------------------------
// Expression trees

struct Expr {
  enum class Op { num, var, uref, add, sub, mul, div, pow, abs, min, max, round };
  Op op = Op::num;
  Rational value;       // num
  std::string name;     // var
  int back = 0;         // uref: U[n-back]; back == 0 means the index n itself
  int64_t exponent = 1; // pow
  std::vector<Expr> kids;

  static Expr number(Rational v) {
    Expr e;
    e.op = Op::num;
    e.value = std::move(v);
    return e;
  }
  static Expr variable(std::string n) {
    Expr e;
    e.op = Op::var;
    e.name = std::move(n);
    return e;
  }
  static Expr uref(int back) {
    Expr e;
    e.op = Op::uref;
    e.back = back;
    return e;
  }
  static Expr node(Op op, std::vector<Expr> kids) {
    Expr e;
    e.op = op;
    e.kids = std::move(kids);
    return e;
  }
  static Expr power(Expr base, int64_t exp) {
    Expr e;
    e.op = Op::pow;
    e.exponent = exp;
    e.kids.push_back(std::move(base));
    return e;
  }

  size_t size() const {
    size_t n = 1;
    for (const auto& k : kids) n += k.size();
    return n;
  }
  int depth() const {
    int d = 0;
    for (const auto& k : kids) d = std::max(d, k.depth());
    return d + 1;
  }
};

// Decimal when terminating, fraction otherwise. Used in traces and prompts.
inline std::string render_value(const Rational& v) {
  return v.terminating() ? v.to_decimal_string() : v.to_fraction_string();
}

// Infix rendering. Binary precedence: +,- (1) < *,/ (2) < ** (3); function
// ops render as calls. Negative literals parenthesize like sums.
inline std::string render_expr(const Expr& e, int parent_prec = 0) {
  auto wrap = [&](const std::string& s, int prec) {
    return prec < parent_prec ? "(" + s + ")" : s;
  };
  switch (e.op) {
    case Expr::Op::num: {
      std::string s = render_value(e.value);
      return e.value.sign() < 0 ? wrap(s, 1) : s;
    }
    case Expr::Op::var:
      return e.name;
    case Expr::Op::uref:
      return e.back == 0 ? "n" : "U[n-" + std::to_string(e.back) + "]";
    case Expr::Op::add:
      return wrap(render_expr(e.kids[0], 1) + "+" + render_expr(e.kids[1], 2), 1);
    case Expr::Op::sub:
      return wrap(render_expr(e.kids[0], 1) + "-" + render_expr(e.kids[1], 2), 1);
    case Expr::Op::mul:
      return wrap(render_expr(e.kids[0], 2) + "*" + render_expr(e.kids[1], 3), 2);
    case Expr::Op::div:
      return wrap(render_expr(e.kids[0], 2) + "/" + render_expr(e.kids[1], 3), 2);
    case Expr::Op::pow:
      return wrap(render_expr(e.kids[0], 4) + "**" + std::to_string(e.exponent), 3);
    case Expr::Op::abs:
      return "abs(" + render_expr(e.kids[0]) + ")";
    case Expr::Op::min:
      return "min(" + render_expr(e.kids[0]) + "," + render_expr(e.kids[1]) + ")";
    case Expr::Op::max:
      return "max(" + render_expr(e.kids[0]) + "," + render_expr(e.kids[1]) + ")";
    case Expr::Op::round:
      return "round(" + render_expr(e.kids[0]) + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Exact evaluation with a bottom-up trace

struct EvalEnv {
  const std::map<std::string, Rational>* vars = nullptr;
  const std::vector<Rational>* useq = nullptr;  // U[1..], for uref
  int n = 0;                                    // current index for uref
};

inline Rational eval_expr(const Expr& e, const EvalEnv& env, std::vector<std::string>* trace) {
  auto step = [&](const std::string& text) {
    if (trace) trace->push_back(text);
  };
  switch (e.op) {
    case Expr::Op::num:
      return e.value;
    case Expr::Op::var: {
      if (!env.vars || !env.vars->count(e.name))
        throw err("unbound-variable", "no value for " + e.name);
      return env.vars->at(e.name);
    }
    case Expr::Op::uref: {
      if (e.back == 0) return Rational(env.n);
      int idx = env.n - e.back;
      if (!env.useq || idx < 1 || idx > static_cast<int>(env.useq->size()))
        throw err("unbound-variable", "sequence index out of range");
      return (*env.useq)[idx - 1];
    }
    default:
      break;
  }
  std::vector<Rational> vals;
  for (const auto& k : e.kids) vals.push_back(eval_expr(k, env, trace));
  auto operand = [&](size_t i) {
    std::string s = render_value(vals[i]);
    // Fraction-rendered values and embedded negatives must parenthesize or
    // the step equation would re-associate when read back.
    bool wrap = !vals[i].terminating();
    if (vals[i].sign() < 0 && (i > 0 || e.op == Expr::Op::pow)) wrap = true;
    return wrap ? "(" + s + ")" : s;
  };
  Rational r;
  std::string text;
  switch (e.op) {
    case Expr::Op::add:
      r = vals[0] + vals[1];
      text = operand(0) + "+" + operand(1);
      break;
    case Expr::Op::sub:
      r = vals[0] - vals[1];
      text = operand(0) + "-" + operand(1);
      break;
    case Expr::Op::mul:
      r = vals[0] * vals[1];
      text = operand(0) + "*" + operand(1);
      break;
    case Expr::Op::div:
      if (vals[1].is_zero()) throw err("division-by-zero", "exact divisor is zero");
      r = vals[0] / vals[1];
      text = operand(0) + "/" + operand(1);
      break;
    case Expr::Op::pow:
      r = vals[0].pow(e.exponent);
      text = operand(0) + "**" + std::to_string(e.exponent);
      break;
    case Expr::Op::abs:
      r = vals[0].abs();
      text = "abs(" + render_value(vals[0]) + ")";
      break;
    case Expr::Op::min:
      r = vals[0] <= vals[1] ? vals[0] : vals[1];
      text = "min(" + render_value(vals[0]) + "," + render_value(vals[1]) + ")";
      break;
    case Expr::Op::max:
      r = vals[0] >= vals[1] ? vals[0] : vals[1];
      text = "max(" + render_value(vals[0]) + "," + render_value(vals[1]) + ")";
      break;
    case Expr::Op::round:
      r = Rational(vals[0].round_half_even());
      text = "round(" + render_value(vals[0]) + ")";
      break;
    default:
      throw err("internal", "bad op");
  }
  step(text + "=" + render_value(r));
  return r;
}

inline Rational eval_exact(const Expr& e) {
  EvalEnv env;
  return eval_expr(e, env, nullptr);
}

// One simplification per step, innermost first, "; "-joined.
inline std::string eval_trace(const Expr& e) {
  EvalEnv env;
  std::vector<std::string> steps;
  eval_expr(e, env, &steps);
  return join(steps, "; ");
}

// ---------------------------------------------------------------------------
// Expression parsing (answers use the same syntax the prompts render)

namespace detail {

struct Parser {
  std::string s;
  size_t i = 0;
  bool allow_uref = false;

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
  bool peek_string(const std::string& t) {
    ws();
    return s.compare(i, t.size(), t) == 0;
  }

  std::optional<Expr> expr() { return add_level(); }

  std::optional<Expr> add_level() {
    ws();
    bool neg = false;
    if (eat('-')) neg = true;
    auto left = mul_level();
    if (!left) return std::nullopt;
    if (neg) left = Expr::node(Expr::Op::sub, {Expr::number(Rational(0)), *left});
    while (true) {
      ws();
      if (eat('+')) {
        auto r = mul_level();
        if (!r) return std::nullopt;
        left = Expr::node(Expr::Op::add, {*left, *r});
      } else if (eat('-')) {
        auto r = mul_level();
        if (!r) return std::nullopt;
        left = Expr::node(Expr::Op::sub, {*left, *r});
      } else {
        return left;
      }
    }
  }

  std::optional<Expr> mul_level() {
    auto left = pow_level();
    if (!left) return std::nullopt;
    while (true) {
      ws();
      if (peek_string("**")) return left;  // handled in pow_level
      if (eat('*')) {
        auto r = pow_level();
        if (!r) return std::nullopt;
        left = Expr::node(Expr::Op::mul, {*left, *r});
      } else if (eat('/')) {
        auto r = pow_level();
        if (!r) return std::nullopt;
        left = Expr::node(Expr::Op::div, {*left, *r});
      } else {
        return left;
      }
    }
  }

  std::optional<Expr> pow_level() {
    auto base = atom();
    if (!base) return std::nullopt;
    ws();
    bool has_pow = false;
    if (peek_string("**")) {
      i += 2;
      has_pow = true;
    } else if (eat('^')) {
      has_pow = true;
    }
    if (!has_pow) return base;
    ws();
    bool neg = eat('-');
    size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == b) return std::nullopt;  // integer exponents only
    int64_t e = std::stoll(s.substr(b, i - b));
    return Expr::power(*base, neg ? -e : e);
  }

  std::optional<Expr> atom() {
    ws();
    if (i >= s.size()) return std::nullopt;
    if (eat('(')) {
      auto e = expr();
      if (!e || !eat(')')) return std::nullopt;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.') {
      size_t b = i;
      while (i < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'))
        ++i;
      auto v = Rational::parse(s.substr(b, i - b));
      if (!v) return std::nullopt;
      return Expr::number(*v);
    }
    // U[n-k] references
    if (allow_uref && (s[i] == 'U' || s[i] == 'u') && i + 1 < s.size() && s[i + 1] == '[') {
      i += 2;
      ws();
      if (!eat('n')) return std::nullopt;
      ws();
      if (!eat('-')) return std::nullopt;
      ws();
      size_t b = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == b) return std::nullopt;
      int back = std::stoi(s.substr(b, i - b));
      if (!eat(']') || back < 1) return std::nullopt;
      return Expr::uref(back);
    }
    if (std::isalpha(static_cast<unsigned char>(s[i]))) {
      size_t b = i;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      std::string word = s.substr(b, i - b);
      if (word == "abs" || word == "min" || word == "max" || word == "round") {
        if (!eat('(')) return std::nullopt;
        auto a = expr();
        if (!a) return std::nullopt;
        if (word == "abs" || word == "round") {
          if (!eat(')')) return std::nullopt;
          return Expr::node(word == "abs" ? Expr::Op::abs : Expr::Op::round, {*a});
        }
        if (!eat(',')) return std::nullopt;
        auto b2 = expr();
        if (!b2 || !eat(')')) return std::nullopt;
        return Expr::node(word == "min" ? Expr::Op::min : Expr::Op::max, {*a, *b2});
      }
      if (allow_uref && word == "n") return Expr::uref(0);
      return Expr::variable(word);
    }
    return std::nullopt;
  }
};

}  // namespace detail

inline std::optional<Expr> parse_expr(const std::string& text, bool allow_uref = false) {
  detail::Parser p;
  p.s = text;
  p.allow_uref = allow_uref;
  auto e = p.expr();
  if (!e) return std::nullopt;
  p.ws();
  if (p.i != p.s.size()) return std::nullopt;
  return e;
}

// ---------------------------------------------------------------------------
// Multivariate polynomial normal form

// Monomial key: exponent per variable in a fixed variable universe; the
// map's lexicographic key order fixes the canonical term order.
using Monomial = std::vector<int>;

struct Poly {
  std::vector<std::string> vars;  // fixed universe, sorted
  std::map<Monomial, Rational> terms;

  static Poly constant(const std::vector<std::string>& vars, Rational c) {
    Poly p;
    p.vars = vars;
    if (!c.is_zero()) p.terms[Monomial(vars.size(), 0)] = std::move(c);
    return p;
  }
  static Poly variable(const std::vector<std::string>& vars, const std::string& name) {
    Poly p;
    p.vars = vars;
    Monomial m(vars.size(), 0);
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == name) {
        m[i] = 1;
        p.terms[m] = Rational(1);
        return p;
      }
    throw err("unbound-variable", "unknown symbol " + name);
  }
  bool is_zero() const { return terms.empty(); }

  void add_term(const Monomial& m, const Rational& c) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!c.is_zero()) terms[m] = c;
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.terms) r.add_term(m, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    r.vars = a.vars;
    for (const auto& [ma, ca] : a.terms)
      for (const auto& [mb, cb] : b.terms) {
        Monomial m(ma.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Poly pow(int64_t e) const {
    Poly acc = Poly::constant(vars, Rational(1));
    Poly base = *this;
    for (int64_t k = 0; k < e; ++k) acc = acc * base;
    return acc;
  }
  bool operator==(const Poly& o) const { return vars == o.vars && terms == o.terms; }

  Rational eval(const std::vector<Rational>& point) const {
    Rational total(0);
    for (const auto& [m, c] : terms) {
      Rational t = c;
      for (size_t i = 0; i < m.size(); ++i)
        for (int k = 0; k < m[i]; ++k) t = t * point[i];
      total = total + t;
    }
    return total;
  }

  // Degree-descending, then key-descending rendering: "3*x**2*y-2*x+1/2".
  std::string render() const {
    if (terms.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> items(terms.begin(), terms.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      int da = 0, db = 0;
      for (int e : a.first) da += e;
      for (int e : b.first) db += e;
      if (da != db) return da > db;
      return a.first > b.first;
    });
    std::string out;
    for (const auto& [m, c] : items) {
      std::string mono;
      for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars[i];
        if (m[i] > 1) mono += "**" + std::to_string(m[i]);
      }
      Rational coeff = c;
      std::string sign = coeff.sign() < 0 ? "-" : "+";
      if (coeff.sign() < 0) coeff = -coeff;
      std::string cs = coeff.to_fraction_string();
      std::string term;
      if (mono.empty())
        term = cs;
      else if (cs == "1")
        term = mono;
      else
        term = cs + "*" + mono;
      if (out.empty())
        out = (sign == "-" ? "-" : "") + term;
      else
        out += sign + term;
    }
    return out;
  }
};

// p/q pair for candidate answers containing division; gold expressions are
// pure ring terms so their normal form always has q == 1.
struct RatPoly {
  Poly num, den;

  static RatPoly from_poly(Poly p) {
    RatPoly r;
    r.den = Poly::constant(p.vars, Rational(1));
    r.num = std::move(p);
    return r;
  }
  // Equality via cross-multiplication; no polynomial gcd needed.
  bool equivalent(const RatPoly& o) const { return num * o.den == o.num * den; }
};

inline RatPoly to_ratpoly(const Expr& e, const std::vector<std::string>& vars) {
  switch (e.op) {
    case Expr::Op::num:
      return RatPoly::from_poly(Poly::constant(vars, e.value));
    case Expr::Op::var:
      return RatPoly::from_poly(Poly::variable(vars, e.name));
    case Expr::Op::add:
    case Expr::Op::sub: {
      RatPoly a = to_ratpoly(e.kids[0], vars), b = to_ratpoly(e.kids[1], vars);
      RatPoly r;
      Poly cross = e.op == Expr::Op::add ? a.num * b.den + b.num * a.den
                                         : a.num * b.den - b.num * a.den;
      r.num = std::move(cross);
      r.den = a.den * b.den;
      return r;
    }
    case Expr::Op::mul: {
      RatPoly a = to_ratpoly(e.kids[0], vars), b = to_ratpoly(e.kids[1], vars);
      RatPoly r;
      r.num = a.num * b.num;
      r.den = a.den * b.den;
      return r;
    }
    case Expr::Op::div: {
      RatPoly a = to_ratpoly(e.kids[0], vars), b = to_ratpoly(e.kids[1], vars);
      if (b.num.is_zero()) throw err("division-by-zero", "zero denominator");
      RatPoly r;
      r.num = a.num * b.den;
      r.den = a.den * b.num;
      return r;
    }
    case Expr::Op::pow: {
      RatPoly a = to_ratpoly(e.kids[0], vars);
      if (e.exponent < 0) {
        if (a.num.is_zero()) throw err("division-by-zero", "zero to negative power");
        RatPoly r;
        r.num = a.den.pow(-e.exponent);
        r.den = a.num.pow(-e.exponent);
        return r;
      }
      RatPoly r;
      r.num = a.num.pow(e.exponent);
      r.den = a.den.pow(e.exponent);
      return r;
    }
    default:
      throw err("fragment-violation", "operator outside the ring fragment");
  }
}

// Gold-side normal form: the expression must be a pure ring term.
inline Poly normal_form(const Expr& e, const std::vector<std::string>& vars) {
  RatPoly r = to_ratpoly(e, vars);
  Poly one = Poly::constant(vars, Rational(1));
  if (!(r.den == one)) throw err("fragment-violation", "division in a gold expression");
  return r.num;
}

}  // namespace symgen::algebra
