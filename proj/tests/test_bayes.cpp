#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "symgen/bayes_tasks.hpp"

using namespace symgen;
using namespace symgen::bayes;

namespace {

BayesNet single_node(const std::vector<Rational>& prior) {
  BayesNet net;
  NetNode n;
  n.name = "A";
  n.card = static_cast<int>(prior.size());
  n.cpd.kind = Cpd::Kind::tabular;
  n.cpd.table = {prior};
  net.nodes.push_back(n);
  return net;
}

}  // namespace

TEST_CASE("single node with empty evidence returns its prior") {
  BayesNet net = single_node({Rational(3, 10), Rational(7, 10)});
  auto d = variable_elimination(net, 0, {});
  CHECK(d[0] == Rational(3, 10));
  CHECK(d[1] == Rational(7, 10));
}

TEST_CASE("chain A->B conditioned on A reads off the CPD row") {
  BayesNet net = single_node({Rational(1, 2), Rational(1, 2)});
  NetNode b;
  b.name = "B";
  b.card = 2;
  b.parents = {0};
  b.cpd.kind = Cpd::Kind::tabular;
  b.cpd.table = {{Rational(9, 10), Rational(1, 10)}, {Rational(1, 4), Rational(3, 4)}};
  net.nodes.push_back(b);
  auto d = variable_elimination(net, 1, {{0, 1}});
  CHECK(d[0] == Rational(1, 4));
  CHECK(d[1] == Rational(3, 4));
}

TEST_CASE("noisy-OR and noisy-AND follow their closed forms") {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    Cpd c;
    c.kind = rng.chance(0.5) ? Cpd::Kind::noisy_or : Cpd::Kind::noisy_and;
    size_t np = 1 + rng.below(3);
    for (size_t p = 0; p < np; ++p) c.weights.push_back(Rational(rng.range(1, 9), 10));
    c.leak = Rational(rng.range(1, 3), 10);
    std::vector<int> pa;
    for (size_t p = 0; p < np; ++p) pa.push_back(static_cast<int>(rng.below(2)));
    Rational got = noisy_prob_one(c, pa);
    Rational acc(1);
    for (size_t p = 0; p < np; ++p) {
      bool active = pa[p] == 1;
      bool damps = c.kind == Cpd::Kind::noisy_or ? active : !active;
      if (damps) acc = acc * (Rational(1) - c.weights[p]);
    }
    Rational expect = c.kind == Cpd::Kind::noisy_or
                          ? Rational(1) - (Rational(1) - c.leak) * acc
                          : (Rational(1) - c.leak) * acc;
    CHECK(got == expect);
    CHECK(got >= Rational(0));
    CHECK(got <= Rational(1));
  }
}

TEST_CASE("variable elimination equals full-joint enumeration exactly") {
  Rng rng(77);
  int done = 0;
  while (done < 150) {
    BayesNet net = random_net(rng.uniform(0, 4), rng);
    if (net.nodes.size() > 8) continue;
    int target = static_cast<int>(rng.below(net.nodes.size()));
    std::map<int, int> evidence;
    for (size_t i = 0; i < net.nodes.size(); ++i)
      if (static_cast<int>(i) != target && rng.chance(0.25))
        evidence[static_cast<int>(i)] = static_cast<int>(rng.below(net.nodes[i].card));
    std::vector<Rational> fast, slow;
    try {
      fast = variable_elimination(net, target, evidence);
      slow = oracles::joint_posterior(net, target, evidence);
    } catch (const std::exception&) {
      continue;  // zero-probability evidence
    }
    REQUIRE(fast.size() == slow.size());
    for (size_t s = 0; s < fast.size(); ++s) CHECK(fast[s] == slow[s]);
    ++done;
  }
}

TEST_CASE("surgery: root intervention only replaces the root CPD") {
  BayesNet net = single_node({Rational(1, 2), Rational(1, 2)});
  NetNode b;
  b.name = "B";
  b.card = 2;
  b.parents = {0};
  b.cpd.kind = Cpd::Kind::tabular;
  b.cpd.table = {{Rational(9, 10), Rational(1, 10)}, {Rational(1, 4), Rational(3, 4)}};
  net.nodes.push_back(b);
  BayesNet cut = do_surgery(net, 0, 1);
  CHECK(cut.nodes[0].cpd.table[0][1] == Rational(1));
  CHECK(cut.nodes[1].cpd.table == net.nodes[1].cpd.table);
  CHECK_THROWS_AS(do_surgery(net, 9, 0), Error);

  // Intervening on a child leaves the parent's posterior at its prior.
  BayesNet cut_child = do_surgery(net, 1, 1);
  auto d = variable_elimination(cut_child, 0, {{1, 1}});
  CHECK(d[0] == Rational(1, 2));
  CHECK(d[1] == Rational(1, 2));
}

TEST_CASE("surgery + VE equals truncated-factorization brute force") {
  Rng rng(31);
  int done = 0;
  while (done < 80) {
    BayesNet net = random_net(rng.uniform(0, 3), rng);
    if (net.nodes.size() > 8 || net.nodes.size() < 2) continue;
    int target = static_cast<int>(rng.below(net.nodes.size()));
    int dovar = target;
    while (dovar == target) dovar = static_cast<int>(rng.below(net.nodes.size()));
    int doval = static_cast<int>(rng.below(net.nodes[dovar].card));
    BayesNet cut = do_surgery(net, dovar, doval);
    std::vector<Rational> fast, slow;
    try {
      fast = variable_elimination(cut, target, {});
      // Truncated factorization: the joint of the surgered net.
      slow = oracles::joint_posterior(cut, target, {});
    } catch (const std::exception&) {
      continue;
    }
    for (size_t s = 0; s < fast.size(); ++s) CHECK(fast[s] == slow[s]);
    ++done;
  }
}

TEST_CASE("distribution scorer: gold, reversed, uniform") {
  TaskExample ex;
  ex.payload = Json{{"gold", std::vector<std::string>{"3/4", "1/4"}}, {"precision", 6}};
  CHECK(score_distribution("0=0.750000\n1=0.250000", ex) == 1.0);
  CHECK(score_distribution("0.75 0.25", ex) == 1.0);
  // (1,0) vs (0,1) has maximal base-2 JSD -> score 0.
  TaskExample flip;
  flip.payload = Json{{"gold", std::vector<std::string>{"0", "1"}}, {"precision", 6}};
  CHECK(score_distribution("1 0", flip) == doctest::Approx(0.0));
  // Uniform answer vs (3/4, 1/4): 1 - JSD evaluated directly.
  double p[] = {0.5, 0.5}, q[] = {0.75, 0.25};
  double m0 = (p[0] + q[0]) / 2, m1 = (p[1] + q[1]) / 2;
  double jsd = 0.5 * (p[0] * std::log2(p[0] / m0) + p[1] * std::log2(p[1] / m1)) +
               0.5 * (q[0] * std::log2(q[0] / m0) + q[1] * std::log2(q[1] / m1));
  CHECK(score_distribution("0.5 0.5", ex) == doctest::Approx(1.0 - jsd));
  // Renormalization window.
  CHECK(score_distribution("0.74 0.24", ex) > 0.9);
  CHECK(score_distribution("0.4 0.2", ex) == 0.0);
  CHECK(score_distribution("nonsense", ex) == 0.0);
}

TEST_CASE("association and intervention examples verify against the joint oracle") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    TaskExample ex = gen_association(seed % 3, seed, Budget::none());
    CHECK(score_distribution(ex.answer, ex) == 1.0);
    BayesNet net = net_from_payload(ex.payload.at("net"));
    std::map<int, int> ev;
    for (const auto& e : ex.payload.at("evidence")) ev[e[0].get<int>()] = e[1].get<int>();
    auto gold = ex.payload.at("gold").get<std::vector<std::string>>();
    auto oracle = oracles::joint_posterior(net, ex.payload.at("target").get<int>(), ev);
    for (size_t s = 0; s < oracle.size(); ++s)
      CHECK(oracle[s] == *Rational::parse(gold[s]));
  }
  for (uint64_t seed = 0; seed < 50; ++seed) {
    TaskExample ex = gen_intervention(seed % 3, seed, Budget::none());
    CHECK(score_distribution(ex.answer, ex) == 1.0);
    BayesNet net = net_from_payload(ex.payload.at("net"));
    BayesNet cut = do_surgery(net, ex.payload.at("do_var").get<int>(),
                              ex.payload.at("do_value").get<int>());
    std::map<int, int> ev;
    for (const auto& e : ex.payload.at("evidence")) ev[e[0].get<int>()] = e[1].get<int>();
    auto gold = ex.payload.at("gold").get<std::vector<std::string>>();
    auto oracle = oracles::joint_posterior(cut, ex.payload.at("target").get<int>(), ev);
    for (size_t s = 0; s < oracle.size(); ++s)
      CHECK(oracle[s] == *Rational::parse(gold[s]));

    // Rung-1/Rung-2 divergence: the observational posterior differs.
    auto obs_ev = ev;
    obs_ev[ex.payload.at("do_var").get<int>()] = ex.payload.at("do_value").get<int>();
    auto obs = oracles::joint_posterior(net, ex.payload.at("target").get<int>(), obs_ev);
    double tv = 0;
    for (size_t s = 0; s < obs.size(); ++s)
      tv += std::abs(obs[s].to_double() - oracle[s].to_double());
    CHECK(tv / 2 > 0.05);
  }
}

TEST_CASE("network size grows with level and generation is deterministic") {
  double lo = 0, hi = 0;
  const int n = 150;
  for (uint64_t s = 0; s < n; ++s) {
    lo += gen_association(0, s, Budget::none()).payload.at("stat").get<double>();
    hi += gen_association(2, s, Budget::none()).payload.at("stat").get<double>();
  }
  CHECK(hi / n > lo / n);
  for (uint64_t seed = 0; seed < 5; ++seed)
    CHECK(gen_intervention(1, seed, Budget::none()).to_json().dump() ==
          gen_intervention(1, seed, Budget::none()).to_json().dump());
}
