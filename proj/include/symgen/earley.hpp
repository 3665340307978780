#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "symgen/gramforge.hpp"
#include "symgen/util/error.hpp"

// Earley recognizer over token CFGs with nullable preprocessing, capped
// ambiguity counting on the shared forest, canonical tree extraction
// (lowest rule index, then leftmost split) and exact continuation sets.

namespace symgen::cfg {

// Ambiguity counts saturate here; labels only need 0 / 1 / >=2.
inline constexpr int kAmbiguityCap = 64;

struct Prod {
  int lhs;
  // rhs symbol encoding: >= 0 nonterminal index, < 0 terminal ~t.
  std::vector<int> rhs;
};

inline int term_code(int t) { return ~t; }
inline bool is_term(int sym) { return sym < 0; }
inline int term_index(int sym) { return ~sym; }

struct Cfg {
  std::vector<std::string> nonterminals;
  std::vector<std::string> alphabet;
  std::vector<Prod> prods;  // order defines the canonical tie-break
  int start = 0;
  std::vector<bool> nullable;
  std::vector<int> min_yield;  // shortest terminal yield per nonterminal

  int terminal_id(const std::string& tok) const {
    for (size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == tok) return static_cast<int>(i);
    return -1;
  }

  const std::string& sym_name(int sym) const {
    return is_term(sym) ? alphabet[term_index(sym)] : nonterminals[sym];
  }
};

// ---------------------------------------------------------------------------
// Construction from a single-channel gramforge grammar, with pruning.

// Builds a Cfg from a single-channel grammar of plain token terminals.
// Unproductive and unreachable nonterminals are pruned; throws
// "empty-grammar" if the start symbol does not survive.
inline Cfg make_cfg(const gramforge::Grammar& g) {
  if (g.channel_names.size() != 1)
    throw err("domain", "make_cfg needs a single-channel grammar");

  // Productivity fixpoint over original rules.
  std::set<std::string> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      if (productive.count(r.lhs)) continue;
      bool ok = true;
      for (const auto& s : r.rhs[0]) {
        if (s.kind == gramforge::Symbol::Kind::macro)
          throw err("domain", "make_cfg: macros are not allowed in CFGs");
        if (s.kind == gramforge::Symbol::Kind::nonterminal && !productive.count(s.text))
          ok = false;
      }
      if (ok) {
        productive.insert(r.lhs);
        changed = true;
      }
    }
  }
  if (!productive.count(g.start)) throw err("empty-grammar", "start symbol is unproductive");

  // Reachability over productive rules only.
  std::set<std::string> reachable{g.start};
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      if (!reachable.count(r.lhs) || !productive.count(r.lhs)) continue;
      bool usable = true;
      for (const auto& s : r.rhs[0])
        if (s.kind == gramforge::Symbol::Kind::nonterminal && !productive.count(s.text))
          usable = false;
      if (!usable) continue;
      for (const auto& s : r.rhs[0])
        if (s.kind == gramforge::Symbol::Kind::nonterminal && !reachable.count(s.text)) {
          reachable.insert(s.text);
          changed = true;
        }
    }
  }

  Cfg c;
  std::map<std::string, int> nt_id;
  for (const auto& r : g.rules) {
    if (!nt_id.count(r.lhs) && productive.count(r.lhs) && reachable.count(r.lhs)) {
      nt_id[r.lhs] = static_cast<int>(c.nonterminals.size());
      c.nonterminals.push_back(r.lhs);
    }
  }
  std::map<std::string, int> term_id;
  for (const auto& r : g.rules) {
    if (!nt_id.count(r.lhs)) continue;
    bool usable = true;
    for (const auto& s : r.rhs[0])
      if (s.kind == gramforge::Symbol::Kind::nonterminal &&
          (!productive.count(s.text) || !reachable.count(s.text)))
        usable = false;
    if (!usable) continue;
    Prod p;
    p.lhs = nt_id[r.lhs];
    for (const auto& s : r.rhs[0]) {
      if (s.kind == gramforge::Symbol::Kind::nonterminal) {
        p.rhs.push_back(nt_id[s.text]);
      } else {
        if (!term_id.count(s.text)) {
          term_id[s.text] = static_cast<int>(c.alphabet.size());
          c.alphabet.push_back(s.text);
        }
        p.rhs.push_back(term_code(term_id[s.text]));
      }
    }
    c.prods.push_back(std::move(p));
  }
  c.start = nt_id.at(g.start);

  // Nullable set.
  c.nullable.assign(c.nonterminals.size(), false);
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : c.prods) {
      if (c.nullable[p.lhs]) continue;
      bool all = true;
      for (int s : p.rhs)
        if (is_term(s) || !c.nullable[s]) all = false;
      if (all) {
        c.nullable[p.lhs] = true;
        changed = true;
      }
    }
  }

  // Shortest yields.
  const int inf = 1 << 20;
  c.min_yield.assign(c.nonterminals.size(), inf);
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : c.prods) {
      int total = 0;
      for (int s : p.rhs) total += is_term(s) ? 1 : std::min(c.min_yield[s], inf);
      total = std::min(total, inf);
      if (total < c.min_yield[p.lhs]) {
        c.min_yield[p.lhs] = total;
        changed = true;
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Chart

struct Item {
  int prod;
  int dot;
  int origin;
  bool operator<(const Item& o) const {
    if (prod != o.prod) return prod < o.prod;
    if (dot != o.dot) return dot < o.dot;
    return origin < o.origin;
  }
  bool operator==(const Item& o) const {
    return prod == o.prod && dot == o.dot && origin == o.origin;
  }
};

struct Chart {
  std::vector<std::set<Item>> sets;
  bool complete(const Cfg& g, size_t n) const {
    for (const auto& it : sets[n])
      if (g.prods[it.prod].lhs == g.start && it.origin == 0 &&
          it.dot == static_cast<int>(g.prods[it.prod].rhs.size()))
        return true;
    return false;
  }
};

// Runs the recognizer over tokens[0..n); set j is fully closed under
// predict/complete before set j+1 is built. Unknown tokens simply produce
// an empty next set.
inline Chart earley_chart(const Cfg& g, const std::vector<int>& tokens) {
  Chart chart;
  size_t n = tokens.size();
  chart.sets.resize(n + 1);

  auto add = [&](size_t at, Item item, std::vector<Item>& queue) {
    if (chart.sets[at].insert(item).second) queue.push_back(item);
  };

  for (size_t j = 0; j <= n; ++j) {
    std::vector<Item> queue(chart.sets[j].begin(), chart.sets[j].end());
    if (j == 0) {
      for (size_t p = 0; p < g.prods.size(); ++p)
        if (g.prods[p].lhs == g.start)
          add(0, {static_cast<int>(p), 0, 0}, queue);
    }
    while (!queue.empty()) {
      Item it = queue.back();
      queue.pop_back();
      const Prod& pr = g.prods[it.prod];
      if (it.dot < static_cast<int>(pr.rhs.size())) {
        int sym = pr.rhs[it.dot];
        if (!is_term(sym)) {
          // Predict, with the nullable shortcut (Aycock-Horspool).
          for (size_t p = 0; p < g.prods.size(); ++p)
            if (g.prods[p].lhs == sym)
              add(j, {static_cast<int>(p), 0, static_cast<int>(j)}, queue);
          if (g.nullable[sym]) add(j, {it.prod, it.dot + 1, it.origin}, queue);
        }
        // Scanning happens after closure, below.
      } else {
        // Complete.
        for (const auto& parent : chart.sets[it.origin]) {
          const Prod& pp = g.prods[parent.prod];
          if (parent.dot < static_cast<int>(pp.rhs.size()) &&
              pp.rhs[parent.dot] == pr.lhs)
            add(j, {parent.prod, parent.dot + 1, parent.origin}, queue);
        }
      }
    }
    if (j < n) {
      for (const auto& it : chart.sets[j]) {
        const Prod& pr = g.prods[it.prod];
        if (it.dot < static_cast<int>(pr.rhs.size()) && pr.rhs[it.dot] >= 0) continue;
        if (it.dot < static_cast<int>(pr.rhs.size()) &&
            term_index(pr.rhs[it.dot]) == tokens[j])
          chart.sets[j + 1].insert({it.prod, it.dot + 1, it.origin});
      }
    }
  }
  return chart;
}

// ---------------------------------------------------------------------------
// Parse forest: counting and canonical extraction

struct ParseTree {
  bool is_token = false;
  std::string label;
  std::vector<ParseTree> kids;

  bool operator==(const ParseTree& o) const {
    return is_token == o.is_token && label == o.label && kids == o.kids;
  }
};

// Fully parenthesized Lisp-style serialization: (NT child child ...).
// Tokens that would collide with the tree syntax are single-quoted.
inline void serialize_tree(const ParseTree& t, std::string& out) {
  if (t.is_token) {
    bool special = t.label.empty();
    for (char c : t.label)
      if (c == '(' || c == ')' || c == '\'' ||
          std::isspace(static_cast<unsigned char>(c)))
        special = true;
    if (special) {
      out += "'";
      for (char c : t.label) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
      }
      out += "'";
    } else {
      out += t.label;
    }
    return;
  }
  out += "(" + t.label;
  for (const auto& k : t.kids) {
    out += " ";
    serialize_tree(k, out);
  }
  out += ")";
}

inline std::string serialize_tree(const ParseTree& t) {
  std::string out;
  serialize_tree(t, out);
  return out;
}

struct ParseForest {
  int count = 0;     // exact when < kAmbiguityCap
  bool capped = false;  // true means ">= kAmbiguityCap"
  ParseTree tree;    // canonical tree when count >= 1
};

namespace detail {

struct ForestBuilder {
  const Cfg& g;
  const std::vector<int>& tokens;
  // valid nonterminal spans recovered from the chart
  std::set<std::tuple<int, int, int>> valid;  // (nt, i, j)
  std::map<std::tuple<int, int, int>, long long> memo;
  std::set<std::tuple<int, int, int>> onstack;
  bool cyclic = false;

  bool has(int nt, int i, int j) const { return valid.count({nt, i, j}) > 0; }

  // prefix[d][k]: rhs[0..d) of `p` derives tokens[i..k)
  std::vector<std::vector<char>> prefix_table(const Prod& p, int i, int j) {
    int m = static_cast<int>(p.rhs.size());
    std::vector<std::vector<char>> pre(m + 1, std::vector<char>(j + 1, 0));
    pre[0][i] = 1;
    for (int d = 0; d < m; ++d) {
      for (int k = i; k <= j; ++k) {
        if (!pre[d][k]) continue;
        int sym = p.rhs[d];
        if (is_term(sym)) {
          if (k < j && tokens[k] == term_index(sym)) pre[d + 1][k + 1] = 1;
        } else {
          for (int k2 = k; k2 <= j; ++k2)
            if (has(sym, k, k2)) pre[d + 1][k2] = 1;
        }
      }
    }
    return pre;
  }

  // suffix[d][k]: rhs[d..m) derives tokens[k..j)
  std::vector<std::vector<char>> suffix_table(const Prod& p, int i, int j) {
    int m = static_cast<int>(p.rhs.size());
    std::vector<std::vector<char>> suf(m + 1, std::vector<char>(j + 1, 0));
    suf[m][j] = 1;
    for (int d = m - 1; d >= 0; --d) {
      for (int k = i; k <= j; ++k) {
        int sym = p.rhs[d];
        if (is_term(sym)) {
          if (k < j && tokens[k] == term_index(sym) && suf[d + 1][k + 1]) suf[d][k] = 1;
        } else {
          for (int k2 = k; k2 <= j && !suf[d][k]; ++k2)
            if (has(sym, k, k2) && suf[d + 1][k2]) suf[d][k] = 1;
        }
      }
    }
    return suf;
  }

  // Saturating derivation count for nt over [i, j).
  long long count_nt(int nt, int i, int j) {
    auto key = std::make_tuple(nt, i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (onstack.count(key)) {
      // A derives itself over the same span: infinitely many trees.
      cyclic = true;
      return 0;  // cycle contribution handled by the caller via `cyclic`
    }
    onstack.insert(key);
    long long total = 0;
    for (size_t pi = 0; pi < g.prods.size(); ++pi) {
      const Prod& p = g.prods[pi];
      if (p.lhs != nt) continue;
      total += count_seq(p, i, j);
      if (total >= kAmbiguityCap) {
        total = kAmbiguityCap;
        break;
      }
    }
    onstack.erase(key);
    memo[key] = total;
    return total;
  }

  long long count_seq(const Prod& p, int i, int j) {
    int m = static_cast<int>(p.rhs.size());
    // Only splits whose remaining suffix can still derive (..j) count;
    // otherwise the recursion would flag cycles on dead branches.
    auto suf = suffix_table(p, i, j);
    // ways[d][k]: ways rhs[0..d) derives tokens[i..k), saturated.
    std::vector<std::map<int, long long>> ways(m + 1);
    ways[0][i] = 1;
    for (int d = 0; d < m; ++d) {
      for (const auto& [k, w] : ways[d]) {
        int sym = p.rhs[d];
        if (is_term(sym)) {
          if (k < j && tokens[k] == term_index(sym) && suf[d + 1][k + 1]) {
            auto& slot = ways[d + 1][k + 1];
            slot = std::min<long long>(kAmbiguityCap, slot + w);
          }
        } else {
          for (int k2 = k; k2 <= j; ++k2) {
            if (!has(sym, k, k2) || !suf[d + 1][k2]) continue;
            long long c = count_nt(sym, k, k2);
            if (c == 0) continue;
            auto& slot = ways[d + 1][k2];
            slot = std::min<long long>(kAmbiguityCap, slot + w * c);
          }
        }
      }
    }
    auto it = ways[m].find(j);
    return it == ways[m].end() ? 0 : it->second;
  }

  // Canonical tree: lowest production index, then leftmost (shortest)
  // splits. Spans already open on the current root path are skipped so the
  // extraction stays finite on cyclic (infinitely ambiguous) forests; when
  // the forest is acyclic the skip never triggers and the greedy choice is
  // always realizable.
  bool extract_into(int nt, int i, int j, std::set<std::tuple<int, int, int>>& path,
                    ParseTree& out) {
    auto key = std::make_tuple(nt, i, j);
    if (path.count(key)) return false;
    path.insert(key);
    for (size_t pi = 0; pi < g.prods.size(); ++pi) {
      const Prod& p = g.prods[pi];
      if (p.lhs != nt) continue;
      auto pre = prefix_table(p, i, j);
      if (!pre[p.rhs.size()][j]) continue;
      auto suf = suffix_table(p, i, j);
      ParseTree t;
      t.label = g.nonterminals[nt];
      if (assign_children(p, suf, 0, i, j, path, t)) {
        path.erase(key);
        out = std::move(t);
        return true;
      }
    }
    path.erase(key);
    return false;
  }

  // Backtracking assignment of child spans for rhs[d..), leftmost-first.
  bool assign_children(const Prod& p, const std::vector<std::vector<char>>& suf, size_t d,
                       int cur, int j, std::set<std::tuple<int, int, int>>& path,
                       ParseTree& t) {
    if (d == p.rhs.size()) return cur == j;
    int sym = p.rhs[d];
    if (is_term(sym)) {
      if (cur >= j || tokens[cur] != term_index(sym) || !suf[d + 1][cur + 1]) return false;
      ParseTree leaf;
      leaf.is_token = true;
      leaf.label = g.alphabet[term_index(sym)];
      t.kids.push_back(std::move(leaf));
      if (assign_children(p, suf, d + 1, cur + 1, j, path, t)) return true;
      t.kids.pop_back();
      return false;
    }
    for (int k2 = cur; k2 <= j; ++k2) {
      if (!has(sym, cur, k2) || !suf[d + 1][k2]) continue;
      ParseTree kid;
      if (!extract_into(sym, cur, k2, path, kid)) continue;
      t.kids.push_back(std::move(kid));
      if (assign_children(p, suf, d + 1, k2, j, path, t)) return true;
      t.kids.pop_back();
    }
    return false;
  }

  ParseTree extract(int nt, int i, int j) {
    std::set<std::tuple<int, int, int>> path;
    ParseTree out;
    if (!extract_into(nt, i, j, path, out))
      throw err("internal", "canonical extraction failed for a valid span");
    return out;
  }
};

}  // namespace detail

// Full analysis of tokens under g: ambiguity count (capped), canonical tree.
inline ParseForest earley_analyze(const Cfg& g, const std::vector<std::string>& tokens) {
  ParseForest f;
  std::vector<int> ids;
  for (const auto& t : tokens) {
    int id = g.terminal_id(t);
    if (id < 0) return f;  // unknown token: no parse
    ids.push_back(id);
  }
  Chart chart = earley_chart(g, ids);
  int n = static_cast<int>(ids.size());
  if (!chart.complete(g, n)) return f;

  detail::ForestBuilder fb{g, ids};
  for (int j = 0; j <= n; ++j)
    for (const auto& it : chart.sets[j])
      if (it.dot == static_cast<int>(g.prods[it.prod].rhs.size()))
        fb.valid.insert({g.prods[it.prod].lhs, it.origin, j});

  long long c = fb.count_nt(g.start, 0, n);
  if (fb.cyclic) {
    // A same-span cycle is reachable from a valid root: infinite forest.
    f.count = kAmbiguityCap;
    f.capped = true;
  } else {
    f.count = static_cast<int>(c);
    f.capped = c >= kAmbiguityCap;
  }
  if (f.count >= 1) f.tree = fb.extract(g.start, 0, n);
  return f;
}

namespace detail {

// Enumerates parse trees in canonical order (production index, then
// leftmost splits), skipping same-span re-entries so the walk stays finite
// on cyclic forests. Stops after `limit` trees.
struct TreeEnumerator {
  ForestBuilder& fb;

  std::vector<ParseTree> enum_nt(int nt, int i, int j, size_t limit,
                                 std::set<std::tuple<int, int, int>>& path) {
    std::vector<ParseTree> out;
    auto key = std::make_tuple(nt, i, j);
    if (limit == 0 || path.count(key)) return out;
    path.insert(key);
    for (size_t pi = 0; pi < fb.g.prods.size() && out.size() < limit; ++pi) {
      const Prod& p = fb.g.prods[pi];
      if (p.lhs != nt) continue;
      auto pre = fb.prefix_table(p, i, j);
      if (!pre[p.rhs.size()][j]) continue;
      auto suf = fb.suffix_table(p, i, j);
      for (auto& kids : enum_seq(p, suf, 0, i, j, limit - out.size(), path)) {
        ParseTree t;
        t.label = fb.g.nonterminals[nt];
        t.kids = std::move(kids);
        out.push_back(std::move(t));
      }
    }
    path.erase(key);
    return out;
  }

  std::vector<std::vector<ParseTree>> enum_seq(const Prod& p,
                                               const std::vector<std::vector<char>>& suf,
                                               size_t d, int cur, int j, size_t limit,
                                               std::set<std::tuple<int, int, int>>& path) {
    std::vector<std::vector<ParseTree>> out;
    if (limit == 0) return out;
    if (d == p.rhs.size()) {
      if (cur == j) out.push_back({});
      return out;
    }
    int sym = p.rhs[d];
    if (is_term(sym)) {
      if (cur >= j || fb.tokens[cur] != term_index(sym) || !suf[d + 1][cur + 1]) return out;
      ParseTree leaf;
      leaf.is_token = true;
      leaf.label = fb.g.alphabet[term_index(sym)];
      for (auto& rest : enum_seq(p, suf, d + 1, cur + 1, j, limit, path)) {
        std::vector<ParseTree> kids{leaf};
        for (auto& r : rest) kids.push_back(std::move(r));
        out.push_back(std::move(kids));
      }
      return out;
    }
    for (int k2 = cur; k2 <= j && out.size() < limit; ++k2) {
      if (!fb.has(sym, cur, k2) || !suf[d + 1][k2]) continue;
      for (auto& kid : enum_nt(sym, cur, k2, limit - out.size(), path)) {
        for (auto& rest : enum_seq(p, suf, d + 1, k2, j, limit - out.size(), path)) {
          std::vector<ParseTree> kids{kid};
          for (auto& r : rest) kids.push_back(std::move(r));
          out.push_back(std::move(kids));
          if (out.size() >= limit) break;
        }
        if (out.size() >= limit) break;
      }
    }
    return out;
  }
};

}  // namespace detail

// A second, structurally different parse when the input is ambiguous, in
// canonical enumeration order. Used by ambiguity traces. Returns false when
// no (cycle-free) alternative exists.
inline bool extract_alternate(const Cfg& g, const std::vector<std::string>& tokens,
                              ParseTree& out) {
  std::vector<int> ids;
  for (const auto& t : tokens) {
    int id = g.terminal_id(t);
    if (id < 0) return false;
    ids.push_back(id);
  }
  Chart chart = earley_chart(g, ids);
  int n = static_cast<int>(ids.size());
  if (!chart.complete(g, n)) return false;
  detail::ForestBuilder fb{g, ids};
  for (int j = 0; j <= n; ++j)
    for (const auto& it : chart.sets[j])
      if (it.dot == static_cast<int>(g.prods[it.prod].rhs.size()))
        fb.valid.insert({g.prods[it.prod].lhs, it.origin, j});
  detail::TreeEnumerator en{fb};
  std::set<std::tuple<int, int, int>> path;
  auto trees = en.enum_nt(g.start, 0, n, 2, path);
  if (trees.size() < 2) return false;
  out = std::move(trees[1]);
  return true;
}

// ---------------------------------------------------------------------------
// Continuations

struct Continuations {
  std::set<std::string> tokens;
  bool stop = false;  // prefix is already a complete sentence
};

// Exact next-token set after `prefix`, plus STOP iff the prefix is a
// sentence. Requires a pruned grammar (make_cfg guarantees it): every
// surviving item can reach completion, so the scannable terminals of the
// closed final state set are exactly the viable continuations.
inline Continuations continuations(const Cfg& g, const std::vector<std::string>& prefix) {
  Continuations out;
  std::vector<int> ids;
  for (const auto& t : prefix) {
    int id = g.terminal_id(t);
    if (id < 0) return out;  // dead prefix
    ids.push_back(id);
  }
  Chart chart = earley_chart(g, ids);
  size_t m = ids.size();
  out.stop = chart.complete(g, m);
  for (const auto& it : chart.sets[m]) {
    const Prod& p = g.prods[it.prod];
    if (it.dot < static_cast<int>(p.rhs.size()) && is_term(p.rhs[it.dot]))
      out.tokens.insert(g.alphabet[term_index(p.rhs[it.dot])]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree parsing (for the parsing-task scorer)

inline bool parse_tree_text(const std::string& text, ParseTree& out) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  std::function<bool(ParseTree&)> node = [&](ParseTree& t) -> bool {
    skip_ws();
    if (i >= text.size()) return false;
    if (text[i] == '\'') {
      ++i;
      t.is_token = true;
      t.label.clear();
      while (i < text.size() && text[i] != '\'') {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        t.label += text[i++];
      }
      if (i >= text.size()) return false;
      ++i;
      return true;
    }
    if (text[i] == '(') {
      ++i;
      skip_ws();
      size_t b = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')')
        ++i;
      if (i == b) return false;
      t.label = text.substr(b, i - b);
      t.is_token = false;
      skip_ws();
      while (i < text.size() && text[i] != ')') {
        ParseTree kid;
        if (!node(kid)) return false;
        t.kids.push_back(std::move(kid));
        skip_ws();
      }
      if (i >= text.size()) return false;
      ++i;  // ')'
      return true;
    }
    size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '(' && text[i] != ')')
      ++i;
    if (i == b) return false;
    t.is_token = true;
    t.label = text.substr(b, i - b);
    return true;
  };
  if (!node(out)) return false;
  skip_ws();
  return i == text.size();
}

}  // namespace symgen::cfg
