#pragma once

#include "symgen/algebra.hpp"
#include "symgen/core.hpp"

// Task generators built on the exact expression machinery: arithmetics,
// symbolic_arithmetics, equation_system, sequential_induction.

namespace symgen::algebra {

// ---------------------------------------------------------------------------
// arithmetics

inline const DifficultyKnob& arith_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("depth", 2, 0.55, true, 7);
    knob.linear("int_range", 9, 6, true, 60);
    knob.linear("precision", 2, 0.5, true, 6);
    return knob;
  }();
  return k;
}

// Random numeric expression tree; divisors are re-sampled until non-zero.
inline Expr random_numeric_tree(int depth, int64_t range, Rng& rng) {
  if (depth <= 0 || (depth < 2 && rng.chance(0.25))) {
    if (rng.chance(0.3)) {
      // one-decimal literal, e.g. 4.5
      int64_t tenths = rng.range(-range * 10, range * 10);
      return Expr::number(Rational(BigInt(tenths), BigInt(10)));
    }
    return Expr::number(Rational(rng.range(-range, range)));
  }
  static const std::vector<Expr::Op> ops = {Expr::Op::add, Expr::Op::sub, Expr::Op::mul,
                                            Expr::Op::div, Expr::Op::pow, Expr::Op::abs,
                                            Expr::Op::min, Expr::Op::max, Expr::Op::round};
  static const std::vector<double> w = {3, 3, 3, 1.2, 1.0, 0.8, 1.2, 1.2, 0.8};
  Expr::Op op = ops[rng.weighted(w)];
  switch (op) {
    case Expr::Op::pow:
      return Expr::power(random_numeric_tree(depth - 1, std::min<int64_t>(range, 9), rng),
                         rng.range(2, 3));
    case Expr::Op::abs:
    case Expr::Op::round:
      return Expr::node(op, {random_numeric_tree(depth - 1, range, rng)});
    case Expr::Op::div: {
      Expr numer = random_numeric_tree(depth - 1, range, rng);
      for (int t = 0; t < 20; ++t) {
        Expr denom = random_numeric_tree(depth - 1, std::min<int64_t>(range, 9), rng);
        try {
          if (!eval_exact(denom).is_zero()) return Expr::node(op, {numer, denom});
        } catch (const Error&) {
        }
      }
      return Expr::node(op, {numer, Expr::number(Rational(2))});
    }
    default:
      return Expr::node(op, {random_numeric_tree(depth - 1, range, rng),
                             random_numeric_tree(depth - 1, range, rng)});
  }
}

inline TaskExample gen_arithmetics(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("arithmetics", level, seed);
  const auto& knob = arith_knob();
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    int depth = std::max<int64_t>(2, knob.resolve_int("depth", level, rng));
    int64_t range = std::max<int64_t>(4, knob.resolve_int("int_range", level, rng));
    Expr e = random_numeric_tree(depth, range, rng);
    if (e.kids.empty()) continue;  // plain literal, too trivial
    Rational v;
    try {
      v = eval_exact(e);
    } catch (const Error&) {
      continue;  // division by zero somewhere inside
    }
    if (v.num().limb_count() > 3 || v.den().limb_count() > 3) continue;  // escaped magnitudes

    int precision = -1;
    std::string answer;
    if (v.terminating() && v.den() <= BigInt(100000000)) {
      answer = v.to_decimal_string();
    } else {
      precision = static_cast<int>(knob.resolve_int("precision", level, rng));
      answer = v.to_decimal_string(precision);
    }

    TaskExample ex;
    ex.task_name = "arithmetics";
    ex.level = level;
    ex.seed = seed;
    ex.prompt = "Evaluate " + render_expr(e) + ".\n";
    if (precision >= 0)
      ex.prompt += "Round the result to " + std::to_string(precision) +
                   " decimal places (ties to even).\n";
    ex.prompt += "Answer with only a number.";
    ex.answer = answer;
    ex.cot = eval_trace(e);
    ex.payload = Json{{"expr", render_expr(e)},
                      {"value", v.to_fraction_string()},
                      {"precision", precision},
                      {"stat", static_cast<double>(e.size())}};
    return ex;
  }
  throw RetryExhausted("gen_arithmetics");
}

inline double score_arithmetics(const std::string& answer, const TaskExample& ex) {
  auto cand = Rational::parse(answer);
  if (!cand) return 0.0;
  Rational gold = *Rational::parse(ex.payload.at("value").get<std::string>());
  int precision = ex.payload.at("precision").get<int>();
  if (precision < 0) return *cand == gold ? 1.0 : 0.0;
  return cand->round_to_places(precision) == gold.round_to_places(precision) ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// symbolic_arithmetics

inline const DifficultyKnob& symbolic_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("depth", 2, 0.5, true, 6);
    knob.linear("vars", 1, 0.4, true, 4);
    knob.linear("coeff", 5, 2, true, 25);
    return knob;
  }();
  return k;
}

inline Expr random_ring_tree(int depth, const std::vector<std::string>& vars,
                             int64_t coeff, Rng& rng) {
  if (depth <= 0 || (depth < 2 && rng.chance(0.3))) {
    if (rng.chance(0.55)) return Expr::variable(vars[rng.below(vars.size())]);
    return Expr::number(Rational(rng.range(-coeff, coeff)));
  }
  double r = rng.uniform();
  if (r < 0.35)
    return Expr::node(Expr::Op::add, {random_ring_tree(depth - 1, vars, coeff, rng),
                                      random_ring_tree(depth - 1, vars, coeff, rng)});
  if (r < 0.6)
    return Expr::node(Expr::Op::sub, {random_ring_tree(depth - 1, vars, coeff, rng),
                                      random_ring_tree(depth - 1, vars, coeff, rng)});
  if (r < 0.85)
    return Expr::node(Expr::Op::mul, {random_ring_tree(depth - 1, vars, coeff, rng),
                                      random_ring_tree(depth - 1, vars, coeff, rng)});
  return Expr::power(random_ring_tree(depth - 1, vars, coeff, rng), rng.range(2, 3));
}

inline TaskExample gen_symbolic(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("symbolic_arithmetics", level, seed);
  const auto& knob = symbolic_knob();
  static const std::vector<std::string> pool = {"x", "y", "z", "w"};
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    int nvars = std::max<int64_t>(1, knob.resolve_int("vars", level, rng));
    std::vector<std::string> vars(pool.begin(), pool.begin() + nvars);
    int depth = std::max<int64_t>(2, knob.resolve_int("depth", level, rng));
    int64_t coeff = std::max<int64_t>(2, knob.resolve_int("coeff", level, rng));
    Expr e = random_ring_tree(depth, vars, coeff, rng);
    if (e.kids.empty()) continue;
    Poly nf = normal_form(e, vars);
    if (nf.terms.size() > 24) continue;  // unwieldy expansions
    bool uses_var = false;
    for (const auto& [m, c] : nf.terms)
      for (int d : m)
        if (d) uses_var = true;
    if (!uses_var) continue;  // collapsed to a constant

    TaskExample ex;
    ex.task_name = "symbolic_arithmetics";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "Simplify the following expression over the variables " + join(vars, ", ") +
        ":\n" + render_expr(e) +
        "\nAny algebraically equivalent form is accepted. Use +, -, *, / and ** with "
        "integer exponents.\nAnswer with only an expression.";
    ex.answer = nf.render();
    ex.payload = Json{{"expr", render_expr(e)},
                      {"vars", vars},
                      {"normal_form", nf.render()},
                      {"stat", static_cast<double>(e.size())}};
    return ex;
  }
  throw RetryExhausted("gen_symbolic");
}

// Equivalence scoring: normal-form equality, then randomized evaluation at
// 20 rational points as defense in depth. Both must agree for the point.
inline double score_symbolic(const std::string& answer, const TaskExample& ex) {
  auto vars = ex.payload.at("vars").get<std::vector<std::string>>();
  auto gold_expr = parse_expr(ex.payload.at("normal_form").get<std::string>());
  auto cand_expr = parse_expr(trim(answer));
  if (!cand_expr) return 0.0;
  RatPoly gold, cand;
  try {
    gold = to_ratpoly(*gold_expr, vars);
    cand = to_ratpoly(*cand_expr, vars);
  } catch (const Error&) {
    return 0.0;
  }
  if (!cand.equivalent(gold)) return 0.0;
  // Numeric spot-check at seeded rational points.
  Rng rng(fnv1a(ex.payload.at("normal_form").get<std::string>()));
  int checked = 0;
  while (checked < 20) {
    std::vector<Rational> point;
    for (size_t i = 0; i < vars.size(); ++i)
      point.push_back(Rational(rng.range(-12, 12), rng.range(1, 7)));
    Rational dg = gold.den.eval(point), dc = cand.den.eval(point);
    if (dg.is_zero() || dc.is_zero()) continue;  // resample the point
    if (gold.num.eval(point) / dg != cand.num.eval(point) / dc) return 0.0;
    ++checked;
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// equation_system

struct LinSystem {
  std::vector<std::vector<Rational>> a;  // n_eq x n_var
  std::vector<Rational> b;
  std::vector<std::string> vars;
  std::string klass;  // unique | multiple | none
  std::vector<Rational> solution;  // planted, for unique systems
};

// Reduced row echelon form over exact rationals; returns (rank_a, rank_ab).
inline std::pair<int, int> rref_ranks(std::vector<std::vector<Rational>> m, size_t n_vars) {
  size_t rows = m.size();
  size_t cols = n_vars + 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = r;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    Rational inv = Rational(1) / m[r][c];
    for (size_t j = 0; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  int rank_ab = 0, rank_a = 0;
  for (size_t i = 0; i < rows; ++i) {
    bool any = false, any_a = false;
    for (size_t j = 0; j < cols; ++j)
      if (!m[i][j].is_zero()) {
        any = true;
        if (j < n_vars) any_a = true;
      }
    if (any) ++rank_ab;
    if (any_a) ++rank_a;
  }
  return {rank_a, rank_ab};
}

inline std::string classify_system(const LinSystem& s) {
  std::vector<std::vector<Rational>> m;
  for (size_t i = 0; i < s.a.size(); ++i) {
    auto row = s.a[i];
    row.push_back(s.b[i]);
    m.push_back(row);
  }
  auto [ra, rab] = rref_ranks(m, s.vars.size());
  if (rab > ra) return "none";
  if (ra < static_cast<int>(s.vars.size())) return "multiple";
  return "unique";
}

inline const DifficultyKnob& eqsys_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("vars", 2, 0.35, true, 5);
    knob.linear("mix_ops", 2, 1.6, true, 14);
    return knob;
  }();
  return k;
}

inline constexpr double kEqClassProbs[3] = {0.55, 0.225, 0.225};  // unique/multiple/none

inline LinSystem random_system(double level, Rng& rng) {
  const auto& knob = eqsys_knob();
  static const std::vector<std::string> pool = {"x", "y", "z", "u", "v"};
  int n = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("vars", level, rng)));
  int k = static_cast<int>(std::max<int64_t>(1, knob.resolve_int("mix_ops", level, rng)));

  LinSystem s;
  s.vars.assign(pool.begin(), pool.begin() + n);
  for (int i = 0; i < n; ++i) s.solution.push_back(Rational(rng.range(-9, 9)));
  // Identity-like start: x_i = s_i.
  s.a.assign(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    s.a[i][i] = Rational(1);
    s.b.push_back(s.solution[i]);
  }

  double roll = rng.uniform();
  s.klass = roll < kEqClassProbs[0] ? "unique"
            : roll < kEqClassProbs[0] + kEqClassProbs[1] ? "multiple" : "none";

  auto mix = [&](int rounds) {
    for (int t = 0; t < rounds; ++t) {
      int op = static_cast<int>(rng.below(3));
      int i = static_cast<int>(rng.below(n)), j = static_cast<int>(rng.below(n));
      if (op == 0 && i != j) {
        int64_t lam = rng.chance(0.5) ? rng.range(1, 3) : rng.range(-3, -1);
        for (int c = 0; c < n; ++c) s.a[i][c] = s.a[i][c] + Rational(lam) * s.a[j][c];
        s.b[i] = s.b[i] + Rational(lam) * s.b[j];
      } else if (op == 1 && i != j) {
        std::swap(s.a[i], s.a[j]);
        std::swap(s.b[i], s.b[j]);
      } else {
        int64_t c0 = rng.chance(0.5) ? rng.range(2, 3) : -rng.range(2, 3);
        for (int c = 0; c < n; ++c) s.a[i][c] = s.a[i][c] * Rational(c0);
        s.b[i] = s.b[i] * Rational(c0);
      }
    }
  };
  mix(k);

  if (s.klass != "unique") {
    // Replace one row by a combination of the others (rank deficiency);
    // for "none", push its constant off by a non-zero delta.
    int r = static_cast<int>(rng.below(n));
    std::vector<Rational> row(n, Rational(0));
    Rational rhs(0);
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      if (j == r) continue;
      int64_t mu = rng.range(-2, 2);
      if (mu == 0) continue;
      nonzero = true;
      for (int c = 0; c < n; ++c) row[c] = row[c] + Rational(mu) * s.a[j][c];
      rhs = rhs + Rational(mu) * s.b[j];
    }
    if (!nonzero) {
      int j = (r + 1) % n;
      for (int c = 0; c < n; ++c) row[c] = s.a[j][c];
      rhs = s.b[j];
    }
    s.a[r] = row;
    s.b[r] = rhs;
    if (s.klass == "none") {
      int64_t delta = rng.chance(0.5) ? rng.range(1, 5) : rng.range(-5, -1);
      s.b[r] = s.b[r] + Rational(delta);
    }
    mix(std::max(1, k / 2));
  }
  return s;
}

inline std::string render_equation(const std::vector<Rational>& row, const Rational& rhs,
                                   const std::vector<std::string>& vars) {
  std::string lhs;
  for (size_t j = 0; j < row.size(); ++j) {
    if (row[j].is_zero()) continue;
    Rational c = row[j];
    if (lhs.empty()) {
      if (c == Rational(-1))
        lhs += "-";
      else if (c != Rational(1))
        lhs += render_value(c) + "*";
    } else {
      lhs += c.sign() < 0 ? " - " : " + ";
      Rational a = c.abs();
      if (a != Rational(1)) lhs += render_value(a) + "*";
    }
    lhs += vars[j];
  }
  if (lhs.empty()) lhs = "0";
  return lhs + " = " + render_value(rhs);
}

inline TaskExample gen_equation_system(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("equation_system", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    LinSystem s = random_system(level, rng);
    if (classify_system(s) != s.klass) continue;  // construction must certify the class
    size_t q = rng.below(s.vars.size());

    std::string answer = s.klass == "unique" ? render_value(s.solution[q])
                         : s.klass == "multiple" ? "Multiple solutions" : "No solution";
    std::vector<std::string> eqs;
    for (size_t i = 0; i < s.a.size(); ++i) eqs.push_back(render_equation(s.a[i], s.b[i], s.vars));

    Json a_json = Json::array(), b_json = Json::array();
    for (size_t i = 0; i < s.a.size(); ++i) {
      Json row = Json::array();
      for (const auto& c : s.a[i]) row.push_back(c.to_fraction_string());
      a_json.push_back(row);
      b_json.push_back(s.b[i].to_fraction_string());
    }

    TaskExample ex;
    ex.task_name = "equation_system";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "Solve the following system of linear equations for " + s.vars[q] + ":\n" +
        join(eqs, "\n") +
        "\nIf the system has exactly one solution, answer with the value of " + s.vars[q] +
        ". If it has infinitely many solutions, answer exactly 'Multiple solutions'. "
        "If it has none, answer exactly 'No solution'.";
    ex.answer = answer;
    ex.balancing_key = s.klass;
    ex.payload = Json{{"a", a_json},
                      {"b", b_json},
                      {"vars", s.vars},
                      {"class", s.klass},
                      {"query", s.vars[q]},
                      {"answer", answer},
                      {"stat", static_cast<double>(s.vars.size() * 10)}};
    if (s.klass == "unique") {
      Json sol = Json::array();
      for (const auto& v : s.solution) sol.push_back(v.to_fraction_string());
      ex.payload["solution"] = sol;
    }
    return ex;
  }
  throw RetryExhausted("gen_equation_system");
}

inline double score_equation_system(const std::string& answer, const TaskExample& ex) {
  std::string norm = normalize_element(answer);
  std::string klass = ex.payload.at("class").get<std::string>();
  if (klass == "multiple") return norm == "multiple solutions" ? 1.0 : 0.0;
  if (klass == "none") return norm == "no solution" ? 1.0 : 0.0;
  auto cand = Rational::parse(answer);
  if (!cand) return 0.0;
  Rational gold = *Rational::parse(ex.payload.at("answer").get<std::string>());
  return *cand == gold ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// sequential_induction

inline const DifficultyKnob& induction_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("depth", 1, 0.35, true, 3);
    knob.linear("order", 1, 0.3, true, 3);
    knob.linear("terms", 5, 1.2, true, 14);
    return knob;
  }();
  return k;
}

inline Expr random_recurrence(int depth, int order, Rng& rng) {
  if (depth <= 0) {
    double r = rng.uniform();
    if (r < 0.5) return Expr::uref(1 + static_cast<int>(rng.below(order)));
    if (r < 0.7) return Expr::uref(0);  // the index n
    return Expr::number(Rational(rng.range(-4, 4)));
  }
  double r = rng.uniform();
  Expr::Op op = r < 0.4 ? Expr::Op::add : r < 0.7 ? Expr::Op::sub : Expr::Op::mul;
  return Expr::node(op, {random_recurrence(depth - 1, order, rng),
                         random_recurrence(depth - 1, order, rng)});
}

inline bool replay_sequence(const Expr& f, int order, std::vector<Rational>& seq, int upto) {
  const BigInt cap = BigInt(10).pow(9);
  for (int n = order + 1; n <= upto; ++n) {
    EvalEnv env;
    env.useq = &seq;
    env.n = n;
    Rational v;
    try {
      v = eval_expr(f, env, nullptr);
    } catch (const Error&) {
      return false;
    }
    if (v.num().abs() > cap * v.den()) return false;  // exploding magnitudes
    seq.push_back(v);
  }
  return true;
}

inline TaskExample gen_sequential_induction(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("sequential_induction", level, seed);
  const auto& knob = induction_knob();
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    int order = static_cast<int>(std::max<int64_t>(1, knob.resolve_int("order", level, rng)));
    int depth = static_cast<int>(std::max<int64_t>(1, knob.resolve_int("depth", level, rng)));
    int m = order + static_cast<int>(std::max<int64_t>(4, knob.resolve_int("terms", level, rng)));
    Expr f = random_recurrence(depth, order, rng);
    // The effective order is the deepest back-reference actually used;
    // earlier terms would otherwise be unconstrained seeds the scorer could
    // never reproduce.
    int dc = 0;
    std::function<void(const Expr&)> scan = [&](const Expr& e) {
      if (e.op == Expr::Op::uref) dc = std::max(dc, e.back);
      for (const auto& k : e.kids) scan(k);
    };
    scan(f);
    if (dc == 0 && rng.chance(0.7)) continue;  // mostly genuine recurrences
    order = dc;
    m = std::max(m, order + 4);

    std::vector<Rational> seq;
    for (int i = 0; i < order; ++i) seq.push_back(Rational(rng.range(-5, 5)));
    if (!replay_sequence(f, order, seq, m)) continue;
    bool all_equal = true;
    for (const auto& v : seq)
      if (v != seq[0]) all_equal = false;
    if (all_equal) continue;

    std::vector<std::string> terms;
    for (const auto& v : seq) terms.push_back(render_value(v));
    std::string formula = render_expr(f);

    TaskExample ex;
    ex.task_name = "sequential_induction";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "The sequence U[1], U[2], ... begins:\n" + join(terms, ", ") + "\n" +
        (order > 0
             ? "Find a recurrence U[n] = f(U[n-1], ..., U[n-" + std::to_string(order) +
                   "], n) that generates the remaining terms from the first " +
                   std::to_string(order) + "."
             : "Find a closed form U[n] = f(n) that generates every term.") +
        "\nUse +, -, *, integer constants, n, and back-references like U[n-1].\n"
        "Answer with only the expression for U[n].";
    ex.answer = formula;
    ex.payload = Json{{"formula", formula},
                      {"order", order},
                      {"terms", terms},
                      {"stat", static_cast<double>(f.size() + m)}};
    return ex;
  }
  throw RetryExhausted("gen_sequential_induction");
}

// Correctness on observed terms times a conciseness factor.
inline double score_induction(const std::string& answer, const TaskExample& ex) {
  std::string text = trim(answer);
  // A leading "U[n] =" is tolerated.
  {
    std::string squashed;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) squashed += c;
    if (starts_with(squashed, "U[n]=")) {
      size_t eq = text.find('=');
      text = trim(text.substr(eq + 1));
    }
  }
  auto cand = parse_expr(text, /*allow_uref=*/true);
  if (!cand) return 0.0;
  int dc = 0;
  std::function<void(const Expr&)> scan = [&](const Expr& e) {
    if (e.op == Expr::Op::uref) dc = std::max(dc, e.back);
    for (const auto& k : e.kids) scan(k);
  };
  scan(*cand);

  auto term_strs = ex.payload.at("terms").get<std::vector<std::string>>();
  int m = static_cast<int>(term_strs.size());
  if (dc >= m) return 0.0;
  std::vector<Rational> gold;
  for (const auto& t : term_strs) gold.push_back(*Rational::parse(t));

  std::vector<Rational> seq(gold.begin(), gold.begin() + dc);
  int matches = 0, checked = m - dc;
  for (int n = dc + 1; n <= m; ++n) {
    EvalEnv env;
    env.useq = &seq;
    env.n = n;
    Rational v;
    try {
      v = eval_expr(*cand, env, nullptr);
    } catch (const Error&) {
      return 0.0;
    }
    seq.push_back(v);
    if (v == gold[n - 1]) ++matches;
  }
  double frac = checked > 0 ? static_cast<double>(matches) / checked : 0.0;

  auto squash = [](const std::string& s) {
    std::string out;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
  };
  double gold_len = static_cast<double>(squash(ex.payload.at("formula").get<std::string>()).size());
  double cand_len = static_cast<double>(squash(text).size());
  double concise = cand_len > 0 ? std::min(1.0, gold_len / cand_len) : 0.0;
  double r = frac * concise;
  return std::min(1.0, std::max(0.0, r));
}

}  // namespace symgen::algebra
