#pragma once

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symgen/core.hpp"
#include "symgen/grammars.hpp"
#include "symgen/util/bigint.hpp"

// Small imperative programs: grammar-driven synthesis, a token renderer, an
// indentation-aware parser, and two independent interpreters. Language
// semantics are defined here, not by any external runtime: integers are
// exact, floats are doubles printed in shortest round-trip form with a
// ".0" suffix when integral.

namespace symgen::tinypy {

inline constexpr int kInstanceRetryCap = 80;
inline constexpr int64_t kStepBudget = 100000;

// ---------------------------------------------------------------------------
// Renderer: grammar tokens -> program text

inline std::string render_program(const std::vector<std::string>& tokens) {
  std::string out;
  int indent = 0;
  bool pending_newline = false;
  bool line_empty = true;
  std::string prev;
  for (const auto& tok : tokens) {
    if (tok == "NL") {
      pending_newline = true;
      continue;
    }
    if (tok == "IND") {
      indent += 4;
      continue;
    }
    if (tok == "DED") {
      indent -= 4;
      continue;
    }
    if (pending_newline) {
      out += "\n";
      out += std::string(indent, ' ');
      pending_newline = false;
      line_empty = true;
    }
    bool no_space = line_empty || tok == ")" || tok == ":" || tok == "," ||
                    (tok == "(" && (prev == "print" || prev == "range")) || prev == "(";
    if (!no_space) out += " ";
    out += tok;
    prev = tok;
    line_empty = false;
  }
  out += "\n";
  return out;
}

// ---------------------------------------------------------------------------
// AST and parser

struct PExpr {
  enum class Kind { int_lit, float_lit, var, binop };
  Kind kind = Kind::int_lit;
  BigInt int_value;
  double float_value = 0;
  std::string name;  // var name or operator text
  std::vector<PExpr> kids;
};

struct PStmt {
  enum class Kind { assign, print, branch, for_loop, while_loop };
  Kind kind = Kind::assign;
  std::string target;                 // assign / for loop variable
  PExpr value;                        // assign rhs, print argument, range bound
  struct Arm {
    PExpr cond;  // condition: binop with a comparison operator
    std::vector<PStmt> body;
  };
  std::vector<Arm> arms;              // branch: if/elif arms; while: one arm
  std::vector<PStmt> else_body;
};

namespace detail {

struct ExprParser {
  const std::string& s;
  size_t i = 0;

  void ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool take(const std::string& tok) {
    ws();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }

  std::optional<PExpr> comparison() {
    auto lhs = sum();
    if (!lhs) return std::nullopt;
    ws();
    for (const char* op : {"<=", ">=", "==", "!=", "<", ">"}) {
      if (take(op)) {
        auto rhs = sum();
        if (!rhs) return std::nullopt;
        PExpr e;
        e.kind = PExpr::Kind::binop;
        e.name = op;
        e.kids = {*lhs, *rhs};
        return e;
      }
    }
    return lhs;
  }

  std::optional<PExpr> sum() {
    auto left = term();
    if (!left) return std::nullopt;
    while (true) {
      ws();
      if (take("+")) {
        auto r = term();
        if (!r) return std::nullopt;
        PExpr e;
        e.kind = PExpr::Kind::binop;
        e.name = "+";
        e.kids = {*left, *r};
        left = e;
      } else if (i < s.size() && s[i] == '-' && (i + 1 >= s.size() || s[i + 1] != '=')) {
        ++i;
        auto r = term();
        if (!r) return std::nullopt;
        PExpr e;
        e.kind = PExpr::Kind::binop;
        e.name = "-";
        e.kids = {*left, *r};
        left = e;
      } else {
        return left;
      }
    }
  }

  std::optional<PExpr> term() {
    auto left = factor();
    if (!left) return std::nullopt;
    while (true) {
      ws();
      std::string op;
      if (take("//")) op = "//";
      else if (take("%")) op = "%";
      else if (i < s.size() && s[i] == '*') {
        ++i;
        op = "*";
      }
      if (op.empty()) return left;
      auto r = factor();
      if (!r) return std::nullopt;
      PExpr e;
      e.kind = PExpr::Kind::binop;
      e.name = op;
      e.kids = {*left, *r};
      left = e;
    }
  }

  std::optional<PExpr> factor() {
    ws();
    if (i >= s.size()) return std::nullopt;
    if (take("(")) {
      auto inner = sum();
      if (!inner || !take(")")) return std::nullopt;
      return inner;
    }
    bool neg = false;
    if (s[i] == '-') {
      neg = true;
      ++i;
      ws();
    }
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t b = i;
      bool is_float = false;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
        if (s[i] == '.') is_float = true;
        ++i;
      }
      PExpr e;
      std::string text = s.substr(b, i - b);
      if (is_float) {
        e.kind = PExpr::Kind::float_lit;
        e.float_value = std::stod(text);
        if (neg) e.float_value = -e.float_value;
      } else {
        e.kind = PExpr::Kind::int_lit;
        e.int_value = BigInt::parse(text);
        if (neg) e.int_value = -e.int_value;
      }
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(s[i]))) {
      size_t b = i;
      while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
      PExpr e;
      e.kind = PExpr::Kind::var;
      e.name = s.substr(b, i - b);
      if (neg) {
        PExpr z;
        z.kind = PExpr::Kind::int_lit;
        z.int_value = BigInt(0);
        PExpr sub;
        sub.kind = PExpr::Kind::binop;
        sub.name = "-";
        sub.kids = {z, e};
        return sub;
      }
      return e;
    }
    return std::nullopt;
  }
};

struct LineRec {
  int indent;
  std::string text;
};

}  // namespace detail

inline std::optional<PExpr> parse_expression(const std::string& text) {
  detail::ExprParser p{text, 0};
  auto e = p.comparison();
  if (!e) return std::nullopt;
  p.ws();
  if (p.i != text.size()) return std::nullopt;
  return e;
}

// Parses the indentation-structured source into a statement list.
inline std::optional<std::vector<PStmt>> parse_program(const std::string& source) {
  std::vector<detail::LineRec> lines;
  for (const auto& raw : split(canonical_newlines(source), '\n')) {
    if (trim(raw).empty()) continue;
    int indent = 0;
    while (indent < static_cast<int>(raw.size()) && raw[indent] == ' ') ++indent;
    lines.push_back({indent, trim(raw)});
  }
  size_t pos = 0;
  std::function<std::optional<std::vector<PStmt>>(int)> block =
      [&](int indent) -> std::optional<std::vector<PStmt>> {
    std::vector<PStmt> out;
    while (pos < lines.size() && lines[pos].indent == indent) {
      const std::string& text = lines[pos].text;
      auto header_body = [&](const std::string& head) -> std::optional<std::pair<PExpr, std::vector<PStmt>>> {
        std::string inner = trim(head);
        if (inner.empty() || inner.back() != ':') return std::nullopt;
        inner.pop_back();
        auto cond = parse_expression(trim(inner));
        if (!cond) return std::nullopt;
        ++pos;
        if (pos >= lines.size() || lines[pos].indent != indent + 4) return std::nullopt;
        auto body = block(indent + 4);
        if (!body) return std::nullopt;
        return std::make_pair(*cond, *body);
      };

      if (starts_with(text, "if ")) {
        PStmt st;
        st.kind = PStmt::Kind::branch;
        auto first = header_body(text.substr(3));
        if (!first) return std::nullopt;
        st.arms.push_back({first->first, first->second});
        while (pos < lines.size() && lines[pos].indent == indent &&
               starts_with(lines[pos].text, "elif ")) {
          auto arm = header_body(lines[pos].text.substr(5));
          if (!arm) return std::nullopt;
          st.arms.push_back({arm->first, arm->second});
        }
        if (pos < lines.size() && lines[pos].indent == indent && lines[pos].text == "else:") {
          ++pos;
          if (pos >= lines.size() || lines[pos].indent != indent + 4) return std::nullopt;
          auto body = block(indent + 4);
          if (!body) return std::nullopt;
          st.else_body = *body;
        }
        out.push_back(std::move(st));
        continue;
      }
      if (starts_with(text, "while ")) {
        PStmt st;
        st.kind = PStmt::Kind::while_loop;
        auto arm = header_body(text.substr(6));
        if (!arm) return std::nullopt;
        st.arms.push_back({arm->first, arm->second});
        out.push_back(std::move(st));
        continue;
      }
      if (starts_with(text, "for ")) {
        // for NAME in range(EXPR):
        auto in_pos = text.find(" in range(");
        if (in_pos == std::string::npos || text.back() != ':') return std::nullopt;
        std::string var = trim(text.substr(4, in_pos - 4));
        std::string bound = text.substr(in_pos + 10);
        bound.pop_back();  // ':'
        bound = trim(bound);
        if (bound.empty() || bound.back() != ')') return std::nullopt;
        bound.pop_back();
        auto range_expr = parse_expression(trim(bound));
        if (!range_expr) return std::nullopt;
        PStmt st;
        st.kind = PStmt::Kind::for_loop;
        st.target = var;
        st.value = *range_expr;
        ++pos;
        if (pos >= lines.size() || lines[pos].indent != indent + 4) return std::nullopt;
        auto body = block(indent + 4);
        if (!body) return std::nullopt;
        st.arms.push_back({{}, *body});
        out.push_back(std::move(st));
        continue;
      }
      if (starts_with(text, "print(")) {
        if (text.back() != ')') return std::nullopt;
        auto arg = parse_expression(text.substr(6, text.size() - 7));
        if (!arg) return std::nullopt;
        PStmt st;
        st.kind = PStmt::Kind::print;
        st.value = *arg;
        out.push_back(std::move(st));
        ++pos;
        continue;
      }
      // assignment: NAME = EXPR
      auto eq = text.find(" = ");
      if (eq == std::string::npos) return std::nullopt;
      std::string target = trim(text.substr(0, eq));
      if (target.empty() || !std::isalpha(static_cast<unsigned char>(target[0])))
        return std::nullopt;
      auto value = parse_expression(text.substr(eq + 3));
      if (!value) return std::nullopt;
      PStmt st;
      st.kind = PStmt::Kind::assign;
      st.target = target;
      st.value = *value;
      out.push_back(std::move(st));
      ++pos;
    }
    if (pos < lines.size() && lines[pos].indent > indent) return std::nullopt;
    return out;
  };
  auto result = block(0);
  if (!result || pos != lines.size()) return std::nullopt;
  return result;
}

// ---------------------------------------------------------------------------
// Values and printing

struct Value {
  bool is_float = false;
  BigInt i;
  double f = 0;

  double as_double() const { return is_float ? f : i.to_double(); }
};

inline std::string format_float(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

inline std::string format_value(const Value& v) {
  return v.is_float ? format_float(v.f) : v.i.to_string();
}

// ---------------------------------------------------------------------------
// Primary interpreter: direct recursive evaluation

namespace detail {

inline BigInt floor_div_int(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  BigInt::divmod(a, b, q, r);
  if (!r.is_zero() && (a.sign() < 0) != (b.sign() < 0)) q = q - BigInt(1);
  return q;
}

}  // namespace detail

class Interpreter {
public:
  explicit Interpreter(int64_t budget = kStepBudget) : steps_(budget) {}

  std::string run(const std::vector<PStmt>& program) {
    env_.clear();
    out_.clear();
    exec_block(program);
    return out_;
  }

private:
  void tick() {
    if (--steps_ < 0) throw err("budget-exceeded", "step budget exhausted");
  }

  Value eval(const PExpr& e) {
    tick();
    switch (e.kind) {
      case PExpr::Kind::int_lit:
        return {false, e.int_value, 0};
      case PExpr::Kind::float_lit:
        return {true, BigInt(0), e.float_value};
      case PExpr::Kind::var: {
        auto it = env_.find(e.name);
        if (it == env_.end()) throw err("undefined-variable", e.name);
        return it->second;
      }
      case PExpr::Kind::binop:
        break;
    }
    Value a = eval(e.kids[0]);
    Value b = eval(e.kids[1]);
    const std::string& op = e.name;
    auto cmp_result = [&](int c) {
      if (op == "<") return c < 0;
      if (op == "<=") return c <= 0;
      if (op == ">") return c > 0;
      if (op == ">=") return c >= 0;
      if (op == "==") return c == 0;
      return c != 0;
    };
    if (op == "<" || op == "<=" || op == ">" || op == ">=" || op == "==" || op == "!=") {
      int c;
      if (!a.is_float && !b.is_float) c = BigInt::cmp(a.i, b.i);
      else c = a.as_double() < b.as_double() ? -1 : a.as_double() > b.as_double() ? 1 : 0;
      return {false, BigInt(cmp_result(c) ? 1 : 0), 0};
    }
    if (a.is_float || b.is_float) {
      double x = a.as_double(), y = b.as_double();
      if (op == "+") return {true, BigInt(0), x + y};
      if (op == "-") return {true, BigInt(0), x - y};
      if (op == "*") return {true, BigInt(0), x * y};
      if (y == 0) throw err("division-by-zero", "float divisor is zero");
      if (op == "//") return {true, BigInt(0), std::floor(x / y)};
      if (op == "%") return {true, BigInt(0), x - std::floor(x / y) * y};
      throw err("internal", "bad float op " + op);
    }
    if (op == "+") return {false, a.i + b.i, 0};
    if (op == "-") return {false, a.i - b.i, 0};
    if (op == "*") return {false, a.i * b.i, 0};
    if (b.i.is_zero()) throw err("division-by-zero", "integer divisor is zero");
    if (op == "//") return {false, detail::floor_div_int(a.i, b.i), 0};
    if (op == "%") return {false, a.i - detail::floor_div_int(a.i, b.i) * b.i, 0};
    throw err("internal", "bad int op " + op);
  }

  bool truthy(const PExpr& cond) {
    Value v = eval(cond);
    return v.is_float ? v.f != 0 : !v.i.is_zero();
  }

  void exec_block(const std::vector<PStmt>& body) {
    for (const auto& st : body) exec(st);
  }

  void exec(const PStmt& st) {
    tick();
    switch (st.kind) {
      case PStmt::Kind::assign:
        env_[st.target] = eval(st.value);
        return;
      case PStmt::Kind::print:
        out_ += format_value(eval(st.value)) + "\n";
        return;
      case PStmt::Kind::branch: {
        for (const auto& arm : st.arms) {
          if (truthy(arm.cond)) {
            exec_block(arm.body);
            return;
          }
        }
        exec_block(st.else_body);
        return;
      }
      case PStmt::Kind::for_loop: {
        Value bound = eval(st.value);
        if (bound.is_float) throw err("type-error", "range needs an integer");
        int64_t n = bound.i.fits_i64() ? bound.i.to_i64() : kStepBudget;
        for (int64_t k = 0; k < n; ++k) {
          env_[st.target] = {false, BigInt(k), 0};
          exec_block(st.arms[0].body);
        }
        return;
      }
      case PStmt::Kind::while_loop: {
        while (truthy(st.arms[0].cond)) exec_block(st.arms[0].body);
        return;
      }
    }
  }

  std::map<std::string, Value> env_;
  std::string out_;
  int64_t steps_;
};

inline std::string interpret(const std::vector<PStmt>& program, int64_t budget = kStepBudget) {
  Interpreter in(budget);
  return in.run(program);
}

}  // namespace symgen::tinypy
