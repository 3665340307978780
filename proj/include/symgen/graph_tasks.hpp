#pragma once

#include "symgen/graphs.hpp"

// The four graph tasks over the topology/rendering machinery.

namespace symgen::graphs {

inline std::string render_block(const Graph& g, const std::string& format) {
  return "Graph (" + format + " format):\n" + render(g, format);
}

inline Graph sampled_graph(double level, Rng& rng) {
  return gen_topology(rng.pick(topology_tags()), level, rng);
}

// ---------------------------------------------------------------------------
// graph_pathfinding

inline TaskExample gen_pathfinding(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("graph_pathfinding", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    Graph g = sampled_graph(level, rng);
    auto comps = components(g);
    // Largest component with at least 3 nodes hosts the query.
    size_t best = 0;
    for (size_t i = 1; i < comps.size(); ++i)
      if (comps[i].size() > comps[best].size()) best = i;
    if (comps[best].size() < 3) continue;
    const auto& comp = comps[best];
    int src = comp[rng.below(comp.size())];
    int dst = src;
    for (int tries = 0; tries < 20 && dst == src; ++tries)
      dst = comp[rng.below(comp.size())];
    if (src == dst) continue;

    std::vector<std::string> trace;
    std::vector<int> path = bfs_shortest_path(g, src, dst, &trace);
    if (path.size() < 2) continue;
    std::vector<std::string> path_labels;
    for (int v : path) path_labels.push_back(g.labels[v]);
    std::string format = rng.pick(render_formats());

    TaskExample ex;
    ex.task_name = "graph_pathfinding";
    ex.level = level;
    ex.seed = seed;
    ex.prompt = render_block(g, format) + "\nFind a shortest path from node " +
                g.labels[src] + " to node " + g.labels[dst] +
                ".\nAnswer with the node sequence, separated by spaces.";
    ex.answer = join(path_labels, " ");
    ex.cot = join(trace, "\n");
    ex.payload = Json{{"graph", graph_payload(g)},
                      {"source", g.labels[src]},
                      {"target", g.labels[dst]},
                      {"distance", path.size() - 1},
                      {"format", format},
                      {"stat", static_cast<double>(g.n() + g.edges.size())}};
    return ex;
  }
  throw RetryExhausted("gen_pathfinding");
}

// Any valid path scores L*/len; a shortest path scores 1.
inline double score_pathfinding(const std::string& answer, const TaskExample& ex) {
  Graph g = graph_from_payload(ex.payload.at("graph"));
  std::map<std::string, int> id;
  for (int i = 0; i < g.n(); ++i) id[g.labels[i]] = i;
  std::vector<int> path;
  std::string cleaned = answer;
  for (char& c : cleaned)
    if (c == ',' || c == '-' || c == '>') c = ' ';
  for (const auto& tok : split_ws(cleaned)) {
    auto it = id.find(tok);
    if (it == id.end()) return 0.0;
    path.push_back(it->second);
  }
  if (path.size() < 2) return 0.0;
  if (g.labels[path.front()] != ex.payload.at("source").get<std::string>()) return 0.0;
  if (g.labels[path.back()] != ex.payload.at("target").get<std::string>()) return 0.0;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.has_edge(path[i], path[i + 1])) return 0.0;
  double opt = ex.payload.at("distance").get<double>();
  double len = static_cast<double>(path.size()) - 1;
  return opt / std::max(opt, len);
}

// ---------------------------------------------------------------------------
// graph_node_centrality

inline TaskExample gen_centrality(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("graph_node_centrality", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    Graph g = sampled_graph(level, rng);
    auto deg = g.degrees();
    int best = 0;
    for (int d : deg) best = std::max(best, d);
    if (best == 0) continue;
    std::vector<std::string> winners;
    for (int i = 0; i < g.n(); ++i)
      if (deg[i] == best) winners.push_back(g.labels[i]);
    std::sort(winners.begin(), winners.end());
    std::string format = rng.pick(render_formats());

    TaskExample ex;
    ex.task_name = "graph_node_centrality";
    ex.level = level;
    ex.seed = seed;
    ex.prompt = render_block(g, format) +
                "\nList every node with the highest degree (number of incident edges). "
                "Ties must all be listed.\nAnswer with the node names in ascending "
                "order, separated by spaces.";
    ex.answer = join(winners, " ");
    ex.payload = Json{{"graph", graph_payload(g)},
                      {"max_degree", best},
                      {"format", format},
                      {"stat", static_cast<double>(g.n() + g.edges.size())}};
    return ex;
  }
  throw RetryExhausted("gen_centrality");
}

inline double score_node_set(const std::string& answer, const TaskExample& ex) {
  std::set<std::string> gold, cand;
  for (const auto& t : split_ws(ex.answer)) gold.insert(t);
  std::string cleaned = answer;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  for (const auto& t : split_ws(cleaned)) cand.insert(lower(t));
  return cand == gold ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// graph_cycle_detection

inline TaskExample gen_cycle_detection(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("graph_cycle_detection", level, seed);
  const auto& knob = graph_knob();
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    int n = static_cast<int>(std::max<int64_t>(4, knob.resolve_int("nodes", level, rng)));
    // Acyclic backbone: a path or a random tree.
    Graph g = empty_graph(n, rng.chance(0.5) ? "path_backbone" : "tree_backbone");
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    if (g.topology == "path_backbone") {
      for (int i = 0; i + 1 < n; ++i) g.add_edge(order[i], order[i + 1]);
    } else {
      for (int i = 1; i < n; ++i) g.add_edge(order[i], order[rng.below(i)]);
    }
    // One chord closes exactly one cycle.
    int a = static_cast<int>(rng.below(n)), b = static_cast<int>(rng.below(n));
    if (a == b || g.has_edge(a, b)) continue;
    std::vector<int> tree_path = bfs_shortest_path(g, a, b, nullptr);
    if (tree_path.size() < 3) continue;  // cycle length >= 3 wanted
    g.add_edge(a, b);

    std::vector<std::string> cycle;
    for (int v : tree_path) cycle.push_back(g.labels[v]);
    std::sort(cycle.begin(), cycle.end());
    std::string format = rng.pick(render_formats());

    TaskExample ex;
    ex.task_name = "graph_cycle_detection";
    ex.level = level;
    ex.seed = seed;
    ex.prompt = render_block(g, format) +
                "\nThis graph contains exactly one cycle. List the nodes that form it."
                "\nAnswer with the node names in ascending order, separated by spaces.";
    ex.answer = join(cycle, " ");
    ex.payload = Json{{"graph", graph_payload(g)},
                      {"cycle", cycle},
                      {"format", format},
                      {"stat", static_cast<double>(g.n() + g.edges.size())}};
    return ex;
  }
  throw RetryExhausted("gen_cycle_detection");
}

// ---------------------------------------------------------------------------
// graph_isomorphism

// Degree-preserving double edge swap; may fail for tiny graphs.
inline std::optional<Graph> double_edge_swap(const Graph& g, Rng& rng) {
  std::vector<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
  if (edges.size() < 2) return std::nullopt;
  for (int tries = 0; tries < 200; ++tries) {
    auto [a, b] = edges[rng.below(edges.size())];
    auto [c, d] = edges[rng.below(edges.size())];
    if (rng.chance(0.5)) std::swap(c, d);
    std::set<int> distinct{a, b, c, d};
    if (distinct.size() != 4) continue;
    if (g.has_edge(a, c) || g.has_edge(b, d)) continue;
    Graph out = g;
    out.edges.erase({std::min(a, b), std::max(a, b)});
    out.edges.erase({std::min(c, d), std::max(c, d)});
    out.add_edge(a, c);
    out.add_edge(b, d);
    return out;
  }
  return std::nullopt;
}

inline TaskExample gen_isomorphism(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("graph_isomorphism", level, seed);
  bool positive = rng.chance(1.0 / 3.0);  // the class mix skews negative 2:1
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    Graph g1 = sampled_graph(level, rng);
    if (g1.edges.size() < 2) continue;

    Graph g2 = g1;
    if (positive) {
      // Random relabeling.
      std::vector<int> perm(g1.n());
      for (int i = 0; i < g1.n(); ++i) perm[i] = i;
      rng.shuffle(perm);
      g2.edges.clear();
      for (auto [a, b] : g1.edges) g2.add_edge(perm[a], perm[b]);
    } else {
      auto swapped = double_edge_swap(g1, rng);
      if (!swapped) continue;
      g2 = *swapped;
      if (is_isomorphic(g1, g2)) continue;  // swap landed on an isomorph; reject
      // Shuffle labels of the negative too, so labels never give it away.
      std::vector<int> perm(g2.n());
      for (int i = 0; i < g2.n(); ++i) perm[i] = i;
      rng.shuffle(perm);
      Graph relabeled = g2;
      relabeled.edges.clear();
      for (auto [a, b] : g2.edges) relabeled.add_edge(perm[a], perm[b]);
      g2 = relabeled;
    }
    std::string f1 = rng.pick(render_formats());
    std::string f2 = rng.pick(render_formats());
    std::string label = positive ? "True" : "False";

    TaskExample ex;
    ex.task_name = "graph_isomorphism";
    ex.level = level;
    ex.seed = seed;
    ex.prompt = "First graph (" + f1 + " format):\n" + render(g1, f1) + "\nSecond graph (" +
                f2 + " format):\n" + render(g2, f2) +
                "\nAre the two graphs isomorphic? Answer True or False.";
    ex.answer = label;
    ex.balancing_key = label;
    ex.payload = Json{{"g1", graph_payload(g1)},
                      {"g2", graph_payload(g2)},
                      {"isomorphic", positive},
                      {"stat", static_cast<double>(g1.n() + g1.edges.size())}};
    return ex;
  }
  throw RetryExhausted("gen_isomorphism");
}

inline double score_bool(const std::string& answer, const TaskExample& ex) {
  return normalize_element(answer) == normalize_element(ex.answer) ? 1.0 : 0.0;
}

}  // namespace symgen::graphs
