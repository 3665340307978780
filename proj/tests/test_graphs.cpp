#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>

#include "symgen/graph_tasks.hpp"

using namespace symgen;
using namespace symgen::graphs;

namespace {

// Brute-force isomorphism: all n! bijections.
bool factorial_isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.edges.size() != b.edges.size()) return false;
  std::vector<int> perm(a.n());
  for (int i = 0; i < a.n(); ++i) perm[i] = i;
  do {
    bool ok = true;
    for (auto [x, y] : a.edges)
      if (!b.has_edge(perm[x], perm[y])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Unit-weight Dijkstra, independent of the BFS implementation.
int dijkstra_distance(const Graph& g, int src, int dst) {
  const int inf = 1 << 20;
  std::vector<int> dist(g.n(), inf);
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> pq;
  dist[src] = 0;
  pq.push({0, src});
  auto adj = g.adjacency();
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (int nb : adj[v])
      if (d + 1 < dist[nb]) {
        dist[nb] = d + 1;
        pq.push({d + 1, nb});
      }
  }
  return dist[dst] >= inf ? -1 : dist[dst];
}

// DFS cycle extraction for a graph with exactly one cycle.
std::vector<std::string> dfs_cycle(const Graph& g) {
  auto adj = g.adjacency();
  std::vector<int> state(g.n(), 0), parent(g.n(), -1);
  std::vector<std::string> cycle;
  std::function<bool(int, int)> dfs = [&](int v, int from) -> bool {
    state[v] = 1;
    for (int nb : adj[v]) {
      if (nb == from) continue;
      if (state[nb] == 1) {
        // Walk back from v to nb.
        std::vector<int> nodes{nb};
        for (int at = v; at != nb; at = parent[at]) nodes.push_back(at);
        for (int x : nodes) cycle.push_back(g.labels[x]);
        return true;
      }
      if (state[nb] == 0) {
        parent[nb] = v;
        if (dfs(nb, v)) return true;
      }
    }
    state[v] = 2;
    return false;
  };
  for (int i = 0; i < g.n(); ++i)
    if (state[i] == 0 && dfs(i, -1)) break;
  std::sort(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

TEST_CASE("grid 2x2 has 4 nodes and 4 edges") {
  Graph g = gen_grid(2, 2);
  CHECK(g.n() == 4);
  CHECK(g.edges.size() == 4);
}

TEST_CASE("render/parse round-trips exactly for every format") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Graph g = sampled_graph(rng.uniform(0, 3), rng);
    for (const auto& f : render_formats()) {
      auto back = parse_graph(render(g, f), f);
      REQUIRE(back.has_value());
      CHECK(back->same_labeled(g));
    }
  }
}

TEST_CASE("barabasi-albert degree max exceeds the mean") {
  Rng rng(5);
  int hits = 0;
  for (int i = 0; i < 100; ++i) {
    Graph g = gen_barabasi_albert(12, 2, rng);
    auto d = g.degrees();
    double mean = 0;
    int mx = 0;
    for (int x : d) {
      mean += x;
      mx = std::max(mx, x);
    }
    mean /= d.size();
    if (mx >= mean) ++hits;
  }
  CHECK(hits == 100);
}

TEST_CASE("pathfinding: gold distance matches Dijkstra, scorer accepts geodesics") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    TaskExample ex = gen_pathfinding(seed % 3, seed, Budget::none());
    CHECK(score_pathfinding(ex.answer, ex) == 1.0);
    Graph g = graph_from_payload(ex.payload.at("graph"));
    std::map<std::string, int> id;
    for (int i = 0; i < g.n(); ++i) id[g.labels[i]] = i;
    int src = id[ex.payload.at("source").get<std::string>()];
    int dst = id[ex.payload.at("target").get<std::string>()];
    CHECK(dijkstra_distance(g, src, dst) == ex.payload.at("distance").get<int>());
  }
}

TEST_CASE("pathfinding scorer: any shortest path scores 1, longer decays, invalid 0") {
  // Cycle graph a-b-c-d-a: two distinct geodesics between opposite corners.
  Graph g = empty_graph(4, "cycle");
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  TaskExample ex;
  ex.payload = Json{{"graph", graph_payload(g)},
                    {"source", "a"},
                    {"target", "c"},
                    {"distance", 2}};
  ex.answer = "a b c";
  CHECK(score_pathfinding("a b c", ex) == 1.0);
  CHECK(score_pathfinding("a d c", ex) == 1.0);  // the alternative geodesic
  CHECK(score_pathfinding("a b a b c", ex) == doctest::Approx(0.5));
  CHECK(score_pathfinding("a c", ex) == 0.0);    // not an edge
  CHECK(score_pathfinding("a b", ex) == 0.0);    // wrong endpoint
  CHECK(score_pathfinding("zz", ex) == 0.0);
}

TEST_CASE("BFS trace replays to the gold distance") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    TaskExample ex = gen_pathfinding(1, seed, Budget::none());
    REQUIRE(ex.cot.has_value());
    auto lines = split(*ex.cot, '\n');
    REQUIRE(!lines.empty());
    std::string last = lines.back();
    auto pos = last.rfind("distance ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stoi(last.substr(pos + 9)) == ex.payload.at("distance").get<int>());
  }
}

TEST_CASE("centrality: star and complete graphs") {
  Graph star = empty_graph(5, "star");
  for (int i = 1; i < 5; ++i) star.add_edge(0, i);
  auto deg = star.degrees();
  CHECK(deg[0] == 4);
  TaskExample ex;
  ex.answer = "a";
  CHECK(score_node_set("a", ex) == 1.0);
  CHECK(score_node_set("a b", ex) == 0.0);

  // K4: all four nodes tie.
  Graph k4 = empty_graph(4, "complete");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  auto d4 = k4.degrees();
  for (int x : d4) CHECK(x == 3);
}

TEST_CASE("centrality answers equal a brute-force degree scan") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    TaskExample ex = gen_centrality(seed % 3, seed, Budget::none());
    CHECK(score_node_set(ex.answer, ex) == 1.0);
    Graph g = graph_from_payload(ex.payload.at("graph"));
    auto deg = g.degrees();
    int best = *std::max_element(deg.begin(), deg.end());
    std::vector<std::string> winners;
    for (int i = 0; i < g.n(); ++i)
      if (deg[i] == best) winners.push_back(g.labels[i]);
    std::sort(winners.begin(), winners.end());
    CHECK(join(winners, " ") == ex.answer);
  }
}

TEST_CASE("cycle detection: gold equals DFS extraction, length >= 3") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    TaskExample ex = gen_cycle_detection(seed % 3, seed, Budget::none());
    CHECK(score_node_set(ex.answer, ex) == 1.0);
    Graph g = graph_from_payload(ex.payload.at("graph"));
    auto cyc = dfs_cycle(g);
    CHECK(cyc.size() >= 3);
    CHECK(join(cyc, " ") == ex.answer);
    // Exactly one cycle: edges == nodes.
    CHECK(g.edges.size() == static_cast<size_t>(g.n()));
  }
}

TEST_CASE("triangle from a 2-edge path plus a chord") {
  Graph g = empty_graph(3, "path_backbone");
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  CHECK(dfs_cycle(g) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("isomorphism checker matches the factorial oracle on small graphs") {
  Rng rng(9);
  int done = 0;
  while (done < 400) {
    int n = 4 + static_cast<int>(rng.below(4));  // up to 7 nodes
    Graph a = gen_erdos_renyi(n, 0.4, rng);
    Graph b;
    double roll = rng.uniform();
    if (roll < 0.4) {
      b = a;
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      rng.shuffle(perm);
      b.edges.clear();
      for (auto [x, y] : a.edges) b.add_edge(perm[x], perm[y]);
    } else if (roll < 0.7) {
      auto s = double_edge_swap(a, rng);
      if (!s) continue;
      b = *s;
    } else {
      b = gen_erdos_renyi(n, 0.4, rng);
    }
    CHECK(is_isomorphic(a, b) == factorial_isomorphic(a, b));
    ++done;
  }
}

TEST_CASE("isomorphism task: permuted positives, certified negatives") {
  int positives = 0, negatives = 0;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    TaskExample ex = gen_isomorphism(seed % 3, seed, Budget::none());
    CHECK(score_bool(ex.answer, ex) == 1.0);
    CHECK(score_bool("true", ex) == (ex.answer == "True" ? 1.0 : 0.0));
    Graph g1 = graph_from_payload(ex.payload.at("g1"));
    Graph g2 = graph_from_payload(ex.payload.at("g2"));
    bool iso = is_isomorphic(g1, g2);
    CHECK(iso == (ex.answer == "True"));
    (iso ? positives : negatives)++;
  }
  CHECK(negatives > positives);  // the 2:1 skew shows up
}

TEST_CASE("self-isomorphism and size growth") {
  Rng rng(21);
  Graph g = sampled_graph(1, rng);
  CHECK(is_isomorphic(g, g));
  double lo = 0, hi = 0;
  const int n = 150;
  for (uint64_t s = 0; s < n; ++s) {
    lo += gen_pathfinding(0, s, Budget::none()).payload.at("stat").get<double>();
    hi += gen_pathfinding(2, s, Budget::none()).payload.at("stat").get<double>();
  }
  CHECK(hi / n > lo / n);
}

TEST_CASE("graph generators are deterministic") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(gen_pathfinding(1, seed, Budget::none()).to_json().dump() ==
          gen_pathfinding(1, seed, Budget::none()).to_json().dump());
    CHECK(gen_isomorphism(1, seed, Budget::none()).to_json().dump() ==
          gen_isomorphism(1, seed, Budget::none()).to_json().dump());
  }
}
