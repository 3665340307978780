#pragma once

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symgen/core.hpp"
#include "symgen/grammars.hpp"

// Regex engine for the generated pattern subset: literals, character
// classes with ranges and negation, alternation, grouping, and the
// quantifiers * + ? {m,n}. Compiled to a Thompson NFA; the fuzzy reward
// uses exact string-to-language Levenshtein distance via a product DP.

namespace symgen::rx {

inline constexpr int kInstanceRetryCap = 80;
inline constexpr int kRepeatCap = 8;
inline constexpr size_t kStringCap = 64;

inline const std::string& alphabet() {
  static const std::string a = "abcdefghijklmnopqrstuvwxyz0123456789";
  return a;
}

struct Node {
  enum class Kind { chars, concat, alt, star, plus, opt, repeat };
  Kind kind = Kind::chars;
  std::set<char> chars;
  int min_rep = 0, max_rep = 0;
  std::vector<Node> kids;

  size_t size() const {
    size_t n = 1;
    for (const auto& k : kids) n += k.size();
    return n;
  }
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct PatternParser {
  const std::string& s;
  size_t i = 0;

  std::optional<Node> alt() {
    auto left = concat();
    if (!left) return std::nullopt;
    while (i < s.size() && s[i] == '|') {
      ++i;
      auto right = concat();
      if (!right) return std::nullopt;
      Node n;
      n.kind = Node::Kind::alt;
      n.kids = {*left, *right};
      left = n;
    }
    return left;
  }

  std::optional<Node> concat() {
    std::vector<Node> parts;
    while (i < s.size() && s[i] != '|' && s[i] != ')') {
      auto p = piece();
      if (!p) return std::nullopt;
      parts.push_back(*p);
    }
    if (parts.empty()) return std::nullopt;  // empty alternatives are not in the subset
    if (parts.size() == 1) return parts[0];
    Node n;
    n.kind = Node::Kind::concat;
    n.kids = parts;
    return n;
  }

  std::optional<Node> piece() {
    auto a = atom();
    if (!a) return std::nullopt;
    while (i < s.size()) {
      if (s[i] == '*' || s[i] == '+' || s[i] == '?') {
        Node n;
        n.kind = s[i] == '*' ? Node::Kind::star : s[i] == '+' ? Node::Kind::plus : Node::Kind::opt;
        n.kids = {*a};
        a = n;
        ++i;
      } else if (s[i] == '{') {
        size_t close = s.find('}', i);
        if (close == std::string::npos) return std::nullopt;
        auto body = s.substr(i + 1, close - i - 1);
        auto comma = body.find(',');
        if (comma == std::string::npos) return std::nullopt;
        try {
          int m = std::stoi(body.substr(0, comma));
          int n2 = std::stoi(body.substr(comma + 1));
          if (m < 0 || n2 < m || n2 > kRepeatCap) return std::nullopt;
          Node n;
          n.kind = Node::Kind::repeat;
          n.min_rep = m;
          n.max_rep = n2;
          n.kids = {*a};
          a = n;
        } catch (const std::exception&) {
          return std::nullopt;
        }
        i = close + 1;
      } else {
        break;
      }
    }
    return a;
  }

  std::optional<Node> atom() {
    if (i >= s.size()) return std::nullopt;
    if (s[i] == '(') {
      ++i;
      auto inner = alt();
      if (!inner || i >= s.size() || s[i] != ')') return std::nullopt;
      ++i;
      return inner;
    }
    if (s[i] == '[') {
      ++i;
      bool negated = i < s.size() && s[i] == '^';
      if (negated) ++i;
      std::set<char> cs;
      while (i < s.size() && s[i] != ']') {
        char c = s[i];
        if (!std::isalnum(static_cast<unsigned char>(c))) return std::nullopt;
        if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] != ']') {
          char hi = s[i + 2];
          if (hi < c) return std::nullopt;
          for (char x = c; x <= hi; ++x) cs.insert(x);
          i += 3;
        } else {
          cs.insert(c);
          ++i;
        }
      }
      if (i >= s.size()) return std::nullopt;
      ++i;
      if (negated) {
        std::set<char> inv;
        for (char c : alphabet())
          if (!cs.count(c)) inv.insert(c);
        cs = inv;
      }
      if (cs.empty()) return std::nullopt;  // empty classes would kill the language
      Node n;
      n.chars = cs;
      return n;
    }
    char c = s[i];
    if (!std::isalnum(static_cast<unsigned char>(c))) return std::nullopt;
    ++i;
    Node n;
    n.chars = {c};
    return n;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// NFA

struct Nfa {
  struct Edge {
    int target;
    std::set<char> chars;  // empty = epsilon
  };
  std::vector<std::vector<Edge>> states;
  int start = 0, accept = 0;

  int add_state() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }
};

namespace detail {

// Thompson construction: returns (in, out) fragment states.
inline std::pair<int, int> build(Nfa& nfa, const Node& node) {
  switch (node.kind) {
    case Node::Kind::chars: {
      int in = nfa.add_state(), out = nfa.add_state();
      nfa.states[in].push_back({out, node.chars});
      return {in, out};
    }
    case Node::Kind::concat: {
      auto cur = build(nfa, node.kids[0]);
      for (size_t k = 1; k < node.kids.size(); ++k) {
        auto next = build(nfa, node.kids[k]);
        nfa.states[cur.second].push_back({next.first, {}});
        cur.second = next.second;
      }
      return cur;
    }
    case Node::Kind::alt: {
      int in = nfa.add_state(), out = nfa.add_state();
      for (const auto& kid : node.kids) {
        auto f = build(nfa, kid);
        nfa.states[in].push_back({f.first, {}});
        nfa.states[f.second].push_back({out, {}});
      }
      return {in, out};
    }
    case Node::Kind::star:
    case Node::Kind::plus:
    case Node::Kind::opt: {
      int in = nfa.add_state(), out = nfa.add_state();
      auto f = build(nfa, node.kids[0]);
      nfa.states[in].push_back({f.first, {}});
      nfa.states[f.second].push_back({out, {}});
      if (node.kind != Node::Kind::plus) nfa.states[in].push_back({out, {}});
      if (node.kind != Node::Kind::opt) nfa.states[f.second].push_back({f.first, {}});
      return {in, out};
    }
    case Node::Kind::repeat: {
      // m..n copies chained with optional tails.
      int in = nfa.add_state();
      int cur = in;
      for (int k = 0; k < node.min_rep; ++k) {
        auto f = build(nfa, node.kids[0]);
        nfa.states[cur].push_back({f.first, {}});
        cur = f.second;
      }
      int out = nfa.add_state();
      nfa.states[cur].push_back({out, {}});
      for (int k = node.min_rep; k < node.max_rep; ++k) {
        auto f = build(nfa, node.kids[0]);
        nfa.states[cur].push_back({f.first, {}});
        nfa.states[f.second].push_back({out, {}});
        cur = f.second;
      }
      return {in, out};
    }
  }
  throw err("internal", "bad pattern node");
}

}  // namespace detail

struct Pattern {
  std::string text;
  Node ast;
  Nfa nfa;
};

inline std::optional<Pattern> parse_pattern(const std::string& text) {
  detail::PatternParser p{text, 0};
  auto ast = p.alt();
  if (!ast || p.i != text.size()) return std::nullopt;
  Pattern pat;
  pat.text = text;
  pat.ast = *ast;
  auto [in, out] = detail::build(pat.nfa, pat.ast);
  pat.nfa.start = in;
  pat.nfa.accept = out;
  return pat;
}

// ---------------------------------------------------------------------------
// Matching and distance

namespace detail {

inline void eps_closure(const Nfa& nfa, std::vector<char>& mark) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t q = 0; q < nfa.states.size(); ++q) {
      if (!mark[q]) continue;
      for (const auto& e : nfa.states[q])
        if (e.chars.empty() && !mark[e.target]) {
          mark[e.target] = 1;
          changed = true;
        }
    }
  }
}

}  // namespace detail

inline bool matches(const Pattern& p, const std::string& s) {
  if (s.size() > kStringCap) throw err("size-cap", "string exceeds the matcher cap");
  std::vector<char> cur(p.nfa.states.size(), 0);
  cur[p.nfa.start] = 1;
  detail::eps_closure(p.nfa, cur);
  for (char c : s) {
    std::vector<char> next(p.nfa.states.size(), 0);
    for (size_t q = 0; q < cur.size(); ++q) {
      if (!cur[q]) continue;
      for (const auto& e : p.nfa.states[q])
        if (!e.chars.empty() && e.chars.count(c)) next[e.target] = 1;
    }
    detail::eps_closure(p.nfa, next);
    cur = next;
  }
  return cur[p.nfa.accept];
}

// Minimum Levenshtein distance from s to any string in L(p): 0-1 BFS over
// (position, NFA state) with unit insert/delete/substitute costs.
inline int dist_to_language(const Pattern& p, const std::string& s) {
  if (s.size() > kStringCap) throw err("size-cap", "string exceeds the distance cap");
  const size_t n = s.size(), m = p.nfa.states.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> dist(n + 1, std::vector<int>(m, inf));
  std::deque<std::pair<size_t, int>> dq;
  dist[0][p.nfa.start] = 0;
  dq.push_back({0, p.nfa.start});
  auto relax = [&](size_t i, int q, int d, bool front) {
    if (d >= dist[i][q]) return;
    dist[i][q] = d;
    if (front)
      dq.push_front({i, q});
    else
      dq.push_back({i, q});
  };
  while (!dq.empty()) {
    auto [i, q] = dq.front();
    dq.pop_front();
    int d = dist[i][q];
    // Deletion of s[i].
    if (i < n) relax(i + 1, q, d + 1, false);
    for (const auto& e : p.nfa.states[q]) {
      if (e.chars.empty()) {
        relax(i, e.target, d, true);
        continue;
      }
      // Insertion: consume an edge char without consuming input.
      relax(i, e.target, d + 1, false);
      if (i < n) {
        bool hit = e.chars.count(s[i]) > 0;
        relax(i + 1, e.target, d + (hit ? 0 : 1), hit);
      }
    }
  }
  return dist[n][p.nfa.accept];
}

// Shortest chars-to-accept per state (for biased sampling and emptiness).
inline std::vector<int> chars_to_accept(const Nfa& nfa) {
  const int inf = 1 << 28;
  std::vector<int> d(nfa.states.size(), inf);
  d[nfa.accept] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t q = 0; q < nfa.states.size(); ++q)
      for (const auto& e : nfa.states[q]) {
        int via = d[e.target] == inf ? inf : d[e.target] + (e.chars.empty() ? 0 : 1);
        if (via < d[q]) {
          d[q] = via;
          changed = true;
        }
      }
  }
  return d;
}

// Accepted string via a shortest-biased random walk.
inline std::string sample_accepted(const Pattern& p, Rng& rng, int slack) {
  auto remaining = chars_to_accept(p.nfa);
  if (remaining[p.nfa.start] >= (1 << 28)) throw err("empty-language", p.text);
  std::string out;
  int q = p.nfa.start;
  int budget = remaining[p.nfa.start] + slack;
  int guard = 0;
  while (++guard < 4096) {
    if (q == p.nfa.accept && (budget <= 0 || rng.chance(0.35))) break;
    std::vector<std::pair<const Nfa::Edge*, int>> options;  // (edge, chars consumed)
    for (const auto& e : p.nfa.states[q]) {
      int cost = e.chars.empty() ? 0 : 1;
      if (remaining[e.target] < (1 << 28) && remaining[e.target] + cost <= budget)
        options.push_back({&e, cost});
    }
    if (options.empty()) {
      if (q == p.nfa.accept) break;  // nothing left to walk
      // Budget exhausted: walk the shortest way out.
      const Nfa::Edge* best = nullptr;
      int best_rem = 1 << 29;
      for (const auto& e : p.nfa.states[q]) {
        int via = remaining[e.target] + (e.chars.empty() ? 0 : 1);
        if (via < best_rem) {
          best_rem = via;
          best = &e;
        }
      }
      if (!best) throw err("empty-language", p.text);
      options.push_back({best, best->chars.empty() ? 0 : 1});
    }
    auto [edge, cost] = options[rng.below(options.size())];
    if (cost) {
      std::vector<char> chars(edge->chars.begin(), edge->chars.end());
      out += chars[rng.below(chars.size())];
      --budget;
    }
    q = edge->target;
  }
  return out;
}

}  // namespace symgen::rx
