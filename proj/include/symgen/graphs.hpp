#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symgen/core.hpp"

// Undirected labeled graphs: topology samplers, four text renderings with
// exact-round-trip parsers, and the pathfinding / centrality / cycle /
// isomorphism tasks.

namespace symgen::graphs {

inline constexpr int kInstanceRetryCap = 80;

struct Graph {
  std::vector<std::string> labels;
  std::set<std::pair<int, int>> edges;  // i < j
  std::string topology;

  int n() const { return static_cast<int>(labels.size()); }
  bool has_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    return edges.count({a, b}) > 0;
  }
  void add_edge(int a, int b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    edges.insert({a, b});
  }
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(labels.size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }
  std::vector<int> degrees() const {
    std::vector<int> d(labels.size(), 0);
    for (auto [a, b] : edges) {
      ++d[a];
      ++d[b];
    }
    return d;
  }
  bool same_labeled(const Graph& o) const { return labels == o.labels && edges == o.edges; }
};

// Spreadsheet-style labels: a..z, aa, ab, ...
inline std::string node_label(int i) {
  std::string s;
  ++i;
  while (i > 0) {
    --i;
    s.insert(s.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  }
  return s;
}

inline Graph empty_graph(int n, const std::string& topology) {
  Graph g;
  g.topology = topology;
  for (int i = 0; i < n; ++i) g.labels.push_back(node_label(i));
  return g;
}

// ---------------------------------------------------------------------------
// Topologies

inline Graph gen_erdos_renyi(int n, double p, Rng& rng) {
  Graph g = empty_graph(n, "erdos_renyi");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(p)) g.add_edge(i, j);
  return g;
}

inline Graph gen_watts_strogatz(int n, int k, double beta, Rng& rng) {
  Graph g = empty_graph(n, "watts_strogatz");
  k = std::max(2, k - (k % 2));  // even lattice degree
  for (int i = 0; i < n; ++i)
    for (int d = 1; d <= k / 2; ++d) g.add_edge(i, (i + d) % n);
  // Rewire each lattice edge with probability beta.
  auto edges = std::vector<std::pair<int, int>>(g.edges.begin(), g.edges.end());
  for (auto [a, b] : edges) {
    if (!rng.chance(beta)) continue;
    int c = static_cast<int>(rng.below(n));
    if (c == a || g.has_edge(a, c)) continue;
    g.edges.erase({std::min(a, b), std::max(a, b)});
    g.add_edge(a, c);
  }
  return g;
}

inline Graph gen_barabasi_albert(int n, int m, Rng& rng) {
  Graph g = empty_graph(n, "barabasi_albert");
  m = std::max(1, std::min(m, n - 1));
  std::vector<int> endpoints;  // repeated by degree for preferential pick
  for (int i = 0; i < m + 1 && i < n; ++i)
    for (int j = i + 1; j < m + 1; ++j) {
      g.add_edge(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  for (int v = m + 1; v < n; ++v) {
    std::set<int> targets;
    int guard = 0;
    while (static_cast<int>(targets.size()) < m && ++guard < 200) {
      int t = endpoints.empty() ? static_cast<int>(rng.below(v))
                                : endpoints[rng.below(endpoints.size())];
      if (t != v) targets.insert(t);
    }
    for (int t : targets) {
      g.add_edge(v, t);
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return g;
}

inline std::optional<Graph> try_regular(int n, int d, Rng& rng) {
  if ((n * d) % 2 != 0 || d >= n) return std::nullopt;
  std::vector<int> stubs;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) stubs.push_back(i);
  for (int attempt = 0; attempt < 60; ++attempt) {
    rng.shuffle(stubs);
    Graph g = empty_graph(n, "regular");
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (a == b || g.has_edge(a, b)) ok = false;
      else g.add_edge(a, b);
    }
    if (ok) return g;
  }
  return std::nullopt;
}

inline Graph gen_grid(int rows, int cols) {
  Graph g = empty_graph(rows * cols, "grid");
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int i = r * cols + c;
      if (c + 1 < cols) g.add_edge(i, i + 1);
      if (r + 1 < rows) g.add_edge(i, i + cols);
    }
  return g;
}

inline const DifficultyKnob& graph_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("nodes", 5, 1.5, true, 16);
    knob.linear("er_p", 0.3, 0.01, false, 0.5);
    knob.linear("ws_k", 2, 0.4, true, 6);
    knob.linear("ba_m", 1, 0.3, true, 3);
    return knob;
  }();
  return k;
}

inline Graph gen_topology(const std::string& tag, double level, Rng& rng) {
  const auto& knob = graph_knob();
  int n = static_cast<int>(std::max<int64_t>(4, knob.resolve_int("nodes", level, rng)));
  if (tag == "erdos_renyi") return gen_erdos_renyi(n, knob.raw("er_p", level), rng);
  if (tag == "watts_strogatz")
    return gen_watts_strogatz(n, static_cast<int>(knob.resolve_int("ws_k", level, rng)), 0.25,
                              rng);
  if (tag == "barabasi_albert")
    return gen_barabasi_albert(n, static_cast<int>(std::max<int64_t>(
                                      1, knob.resolve_int("ba_m", level, rng))),
                               rng);
  if (tag == "regular") {
    for (int d = 3; d >= 2; --d) {
      auto g = try_regular(n % 2 == 1 && d % 2 == 1 ? n + 1 : n, d, rng);
      if (g) return *g;
    }
    return gen_grid(2, std::max(2, n / 2));
  }
  if (tag == "grid") {
    int rows = 2 + static_cast<int>(rng.below(2));
    int cols = std::max(2, n / rows);
    return gen_grid(rows, cols);
  }
  throw err("unknown-topology", tag);
}

inline const std::vector<std::string>& topology_tags() {
  static const std::vector<std::string> t = {"erdos_renyi", "watts_strogatz",
                                             "barabasi_albert", "regular", "grid"};
  return t;
}

// ---------------------------------------------------------------------------
// Renderings

inline const std::vector<std::string>& render_formats() {
  static const std::vector<std::string> f = {"edge_list", "adjacency_list",
                                             "adjacency_matrix", "dot"};
  return f;
}

inline std::string render(const Graph& g, const std::string& format) {
  if (format == "edge_list") {
    std::string out = "nodes: " + join(g.labels, " ") + "\nedges:\n";
    for (auto [a, b] : g.edges) out += g.labels[a] + " -- " + g.labels[b] + "\n";
    return out;
  }
  if (format == "adjacency_list") {
    auto adj = g.adjacency();
    std::string out;
    for (int i = 0; i < g.n(); ++i) {
      out += g.labels[i] + ":";
      for (int j : adj[i]) out += " " + g.labels[j];
      out += "\n";
    }
    return out;
  }
  if (format == "adjacency_matrix") {
    std::string out = "   " + join(g.labels, " ") + "\n";
    for (int i = 0; i < g.n(); ++i) {
      out += g.labels[i] + ":";
      for (int j = 0; j < g.n(); ++j) out += std::string(" ") + (g.has_edge(i, j) ? "1" : "0");
      out += "\n";
    }
    return out;
  }
  if (format == "dot") {
    std::string out = "graph {\n";
    for (const auto& l : g.labels) out += "  " + l + ";\n";
    for (auto [a, b] : g.edges) out += "  " + g.labels[a] + " -- " + g.labels[b] + ";\n";
    return out + "}\n";
  }
  throw err("unknown-format", format);
}

inline std::optional<Graph> parse_graph(const std::string& text, const std::string& format) {
  Graph g;
  std::map<std::string, int> id;
  auto intern = [&](const std::string& label) {
    auto it = id.find(label);
    if (it != id.end()) return it->second;
    id[label] = g.n();
    g.labels.push_back(label);
    return g.n() - 1;
  };
  auto lines = split(canonical_newlines(text), '\n');
  if (format == "edge_list") {
    size_t li = 0;
    while (li < lines.size() && trim(lines[li]).empty()) ++li;
    if (li >= lines.size() || !starts_with(trim(lines[li]), "nodes:")) return std::nullopt;
    for (const auto& l : split_ws(trim(lines[li]).substr(6))) intern(l);
    ++li;
    if (li >= lines.size() || trim(lines[li]) != "edges:") return std::nullopt;
    for (++li; li < lines.size(); ++li) {
      std::string l = trim(lines[li]);
      if (l.empty()) continue;
      auto sep = l.find("--");
      if (sep == std::string::npos) return std::nullopt;
      std::string a = trim(l.substr(0, sep)), b = trim(l.substr(sep + 2));
      if (!id.count(a) || !id.count(b)) return std::nullopt;
      g.add_edge(id[a], id[b]);
    }
    return g;
  }
  if (format == "adjacency_list") {
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (const auto& raw : lines) {
      std::string l = trim(raw);
      if (l.empty()) continue;
      auto colon = l.find(':');
      if (colon == std::string::npos) return std::nullopt;
      rows.push_back({trim(l.substr(0, colon)), split_ws(l.substr(colon + 1))});
      intern(rows.back().first);
    }
    for (const auto& [from, tos] : rows)
      for (const auto& to : tos) {
        if (!id.count(to)) return std::nullopt;
        g.add_edge(id[from], id[to]);
      }
    return g;
  }
  if (format == "adjacency_matrix") {
    size_t li = 0;
    while (li < lines.size() && trim(lines[li]).empty()) ++li;
    if (li >= lines.size()) return std::nullopt;
    auto header = split_ws(lines[li]);
    for (const auto& h : header) intern(h);
    ++li;
    int row = 0;
    for (; li < lines.size(); ++li) {
      std::string l = trim(lines[li]);
      if (l.empty()) continue;
      auto colon = l.find(':');
      if (colon == std::string::npos) return std::nullopt;
      if (trim(l.substr(0, colon)) != g.labels[row]) return std::nullopt;
      auto cells = split_ws(l.substr(colon + 1));
      if (cells.size() != header.size()) return std::nullopt;
      for (size_t c = 0; c < cells.size(); ++c)
        if (cells[c] == "1") g.add_edge(row, static_cast<int>(c));
      ++row;
    }
    if (row != g.n()) return std::nullopt;
    return g;
  }
  if (format == "dot") {
    std::string body;
    for (const auto& l : lines) body += l + "\n";
    auto open = body.find('{');
    auto close = body.rfind('}');
    if (open == std::string::npos || close == std::string::npos) return std::nullopt;
    for (const auto& stmt_raw : split(body.substr(open + 1, close - open - 1), ';')) {
      std::string stmt = trim(stmt_raw);
      if (stmt.empty()) continue;
      auto sep = stmt.find("--");
      if (sep == std::string::npos) {
        intern(stmt);
      } else {
        std::string a = trim(stmt.substr(0, sep)), b = trim(stmt.substr(sep + 2));
        g.add_edge(intern(a), intern(b));
      }
    }
    return g;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Isomorphism: degree sequence + iterated neighborhood refinement as a
// prefilter, then backtracking over color-compatible assignments.

namespace detail {

inline std::vector<uint64_t> wl_colors(const Graph& g, int rounds) {
  auto adj = g.adjacency();
  std::vector<uint64_t> color(g.n());
  for (int i = 0; i < g.n(); ++i) color[i] = adj[i].size();
  for (int r = 0; r < rounds; ++r) {
    std::vector<uint64_t> next(g.n());
    for (int i = 0; i < g.n(); ++i) {
      std::vector<uint64_t> ns;
      for (int j : adj[i]) ns.push_back(color[j]);
      std::sort(ns.begin(), ns.end());
      uint64_t h = hash_combine(0x9e3779b9, color[i]);
      for (uint64_t c : ns) h = hash_combine(h, c);
      next[i] = h;
    }
    color = next;
  }
  return color;
}

}  // namespace detail

inline bool is_isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.n() != g2.n() || g1.edges.size() != g2.edges.size()) return false;
  if (g1.n() > 48) throw err("size-cap", "isomorphism check limited to 48 nodes");
  auto d1 = g1.degrees(), d2 = g2.degrees();
  {
    auto s1 = d1, s2 = d2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }
  int rounds = std::min(g1.n(), 6);
  auto c1 = detail::wl_colors(g1, rounds), c2 = detail::wl_colors(g2, rounds);
  {
    auto s1 = c1, s2 = c2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return false;
  }

  // Backtracking: map g1 nodes in order of rarest color first.
  std::map<uint64_t, int> freq;
  for (uint64_t c : c1) ++freq[c];
  std::vector<int> order(g1.n());
  for (int i = 0; i < g1.n(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (freq[c1[a]] != freq[c1[b]]) return freq[c1[a]] < freq[c1[b]];
    if (d1[a] != d1[b]) return d1[a] > d1[b];
    return a < b;
  });
  std::vector<int> map1(g1.n(), -1), used2(g2.n(), 0);
  std::function<bool(size_t)> assign = [&](size_t step) -> bool {
    if (step == order.size()) return true;
    int v = order[step];
    for (int w = 0; w < g2.n(); ++w) {
      if (used2[w] || c1[v] != c2[w]) continue;
      bool ok = true;
      for (size_t prev = 0; prev < step && ok; ++prev) {
        int pv = order[prev];
        if (g1.has_edge(v, pv) != g2.has_edge(w, map1[pv])) ok = false;
      }
      if (!ok) continue;
      map1[v] = w;
      used2[w] = 1;
      if (assign(step + 1)) return true;
      used2[w] = 0;
      map1[v] = -1;
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------------------
// Shared helpers for the tasks

inline std::vector<int> bfs_shortest_path(const Graph& g, int src, int dst,
                                          std::vector<std::string>* trace) {
  auto adj = g.adjacency();
  std::vector<int> parent(g.n(), -2);
  std::vector<int> queue{src};
  parent[src] = -1;
  size_t head = 0;
  std::vector<int> visited{src};
  while (head < queue.size()) {
    int cur = queue[head++];
    if (trace) {
      std::vector<std::string> q, vis;
      for (size_t i = head; i < queue.size(); ++i) q.push_back(g.labels[queue[i]]);
      for (int v : visited) vis.push_back(g.labels[v]);
      std::sort(vis.begin(), vis.end());
      trace->push_back("visit " + g.labels[cur] + " | queue: [" + join(q, " ") +
                       "] | visited: {" + join(vis, " ") + "}");
    }
    if (cur == dst) break;
    for (int nb : adj[cur]) {
      if (parent[nb] != -2) continue;
      parent[nb] = cur;
      queue.push_back(nb);
      visited.push_back(nb);
    }
  }
  if (parent[dst] == -2) return {};
  std::vector<int> path;
  for (int at = dst; at != -1; at = parent[at]) path.push_back(at);
  std::reverse(path.begin(), path.end());
  if (trace)
    trace->push_back("reached " + g.labels[dst] + " at distance " +
                     std::to_string(path.size() - 1));
  return path;
}

inline std::vector<std::vector<int>> components(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  auto adj = g.adjacency();
  std::vector<std::vector<int>> out;
  for (int i = 0; i < g.n(); ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i}, members;
    comp[i] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      for (int nb : adj[cur])
        if (comp[nb] < 0) {
          comp[nb] = comp[i];
          stack.push_back(nb);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

inline Json graph_payload(const Graph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges) edges.push_back(Json::array({g.labels[a], g.labels[b]}));
  return Json{{"nodes", g.labels}, {"edges", edges}, {"topology", g.topology}};
}

inline Graph graph_from_payload(const Json& j) {
  Graph g;
  g.topology = j.at("topology").get<std::string>();
  std::map<std::string, int> id;
  for (const auto& l : j.at("nodes").get<std::vector<std::string>>()) {
    id[l] = g.n();
    g.labels.push_back(l);
  }
  for (const auto& e : j.at("edges")) g.add_edge(id.at(e[0].get<std::string>()),
                                                 id.at(e[1].get<std::string>()));
  return g;
}

}  // namespace symgen::graphs
