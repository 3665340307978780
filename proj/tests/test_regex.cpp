#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symgen/regex_tasks.hpp"

using namespace symgen;
using namespace symgen::rx;

namespace {

// Language enumeration up to a length cap, straight off the AST.
std::set<std::string> lang(const Node& n, size_t maxlen, size_t cap = 200000) {
  std::set<std::string> out;
  switch (n.kind) {
    case Node::Kind::chars:
      if (maxlen >= 1)
        for (char c : n.chars) out.insert(std::string(1, c));
      return out;
    case Node::Kind::concat: {
      out.insert("");
      for (const auto& kid : n.kids) {
        std::set<std::string> next;
        auto right = lang(kid, maxlen, cap);
        for (const auto& a : out)
          for (const auto& b : right)
            if (a.size() + b.size() <= maxlen) next.insert(a + b);
        out = std::move(next);
        if (out.size() > cap) throw std::runtime_error("lang cap");
      }
      return out;
    }
    case Node::Kind::alt: {
      for (const auto& kid : n.kids)
        for (const auto& s : lang(kid, maxlen, cap)) out.insert(s);
      return out;
    }
    case Node::Kind::star:
    case Node::Kind::plus:
    case Node::Kind::opt:
    case Node::Kind::repeat: {
      int lo = n.kind == Node::Kind::plus ? 1 : n.kind == Node::Kind::repeat ? n.min_rep : 0;
      int hi = n.kind == Node::Kind::opt ? 1
               : n.kind == Node::Kind::repeat ? n.max_rep
                                              : static_cast<int>(maxlen) + 1;
      auto base = lang(n.kids[0], maxlen, cap);
      std::set<std::string> cur{""};
      std::set<std::string> total;
      for (int k = 0; k <= hi; ++k) {
        if (k >= lo)
          for (const auto& s : cur) total.insert(s);
        std::set<std::string> next;
        for (const auto& a : cur)
          for (const auto& b : base)
            if (a.size() + b.size() <= maxlen && !b.empty()) next.insert(a + b);
        if (next == cur || next.empty()) {
          if (k >= lo)
            for (const auto& s : next) total.insert(s);
          break;
        }
        cur = std::move(next);
        if (total.size() > cap) throw std::runtime_error("lang cap");
      }
      return total;
    }
  }
  return out;
}

std::set<std::string> strings_upto(size_t maxlen, const std::string& sigma) {
  std::set<std::string> out{""};
  std::vector<std::string> frontier{""};
  for (size_t l = 0; l < maxlen; ++l) {
    std::vector<std::string> next;
    for (const auto& s : frontier)
      for (char c : sigma) {
        next.push_back(s + c);
        out.insert(s + c);
      }
    frontier = std::move(next);
  }
  return out;
}

size_t lev(const std::string& a, const std::string& b) { return levenshtein(a, b); }

}  // namespace

TEST_CASE("basic matching and distances") {
  auto p = parse_pattern("a*");
  REQUIRE(p.has_value());
  CHECK(matches(*p, ""));
  CHECK(matches(*p, "aaa"));
  CHECK(dist_to_language(*p, "") == 0);
  auto q = parse_pattern("ab");
  REQUIRE(q.has_value());
  CHECK(dist_to_language(*q, "ax") == 1);
  CHECK(dist_to_language(*q, "ab") == 0);
  CHECK_FALSE(matches(*q, "abb"));
  auto r = parse_pattern("[a-c]{2,3}");
  REQUIRE(r.has_value());
  CHECK(matches(*r, "abc"));
  CHECK(matches(*r, "cc"));
  CHECK_FALSE(matches(*r, "a"));
  CHECK_FALSE(matches(*r, "abcd"));
  auto neg = parse_pattern("[^a-y0-9]+");
  REQUIRE(neg.has_value());
  CHECK(matches(*neg, "zz"));
  CHECK_FALSE(matches(*neg, "az"));
}

TEST_CASE("parse failures") {
  CHECK_FALSE(parse_pattern("a(").has_value());
  CHECK_FALSE(parse_pattern("[z-a]").has_value());
  CHECK_FALSE(parse_pattern("a{3,2}").has_value());
  CHECK_FALSE(parse_pattern("a{1,99}").has_value());
  CHECK_FALSE(parse_pattern("|a").has_value());
  CHECK_FALSE(parse_pattern("").has_value());
}

TEST_CASE("engine agrees with exhaustive language enumeration over {a,b}") {
  Rng rng(5);
  static const gramforge::Grammar grammar = gramforge::load_builtin("regex");
  int done = 0;
  auto universe = strings_upto(6, "ab");
  while (done < 120) {
    gramforge::DerivationControls c;
    c.max_depth = 6;
    std::string text = gramforge::sample_derivation(grammar, c, rng).channels[0];
    auto p = parse_pattern(text);
    if (!p || p->ast.size() > 8) continue;
    std::set<std::string> language;
    try {
      language = lang(p->ast, 8);
    } catch (const std::exception&) {
      continue;
    }
    for (const auto& s : universe) CHECK(matches(*p, s) == (language.count(s) > 0));
    ++done;
  }
}

TEST_CASE("distance equals brute-force minimum over bounded language strings") {
  Rng rng(6);
  static const gramforge::Grammar grammar = gramforge::load_builtin("regex");
  int done = 0;
  while (done < 300) {
    gramforge::DerivationControls c;
    c.max_depth = 6;
    std::string text = gramforge::sample_derivation(grammar, c, rng).channels[0];
    auto p = parse_pattern(text);
    if (!p || p->ast.size() > 9) continue;
    // Random probe string over a small alphabet.
    std::string s;
    size_t n = rng.below(7);
    for (size_t i = 0; i < n; ++i) s += "ab0"[rng.below(3)];
    std::set<std::string> language;
    try {
      language = lang(p->ast, s.size() + 3);
    } catch (const std::exception&) {
      continue;
    }
    if (language.empty()) continue;
    int brute = 1 << 28;
    for (const auto& w : language) brute = std::min<int>(brute, static_cast<int>(lev(s, w)));
    // Language strings longer than |s|+3 cannot beat |s|+3 - |s| = 3 < brute
    // only when brute <= 3; otherwise clamp the comparison.
    int fast = dist_to_language(*p, s);
    if (brute <= 3)
      CHECK(fast == brute);
    else
      CHECK(fast <= brute);
    CHECK((fast == 0) == matches(*p, s));
    ++done;
  }
}

TEST_CASE("distance zero iff match, triangle sanity") {
  Rng rng(7);
  for (uint64_t seed = 0; seed < 60; ++seed) {
    TaskExample ex = gen_regex_following(seed % 3, seed, Budget::none());
    auto p = parse_pattern(ex.payload.at("pattern").get<std::string>());
    REQUIRE(p.has_value());
    CHECK(matches(*p, ex.answer));
    CHECK(dist_to_language(*p, ex.answer) == 0);
    CHECK(score_following(ex.answer, ex) == 1.0);
    // Triangle sanity: the distance never exceeds |s| + shortest accepted.
    std::string probe;
    for (int i = 0; i < 5; ++i) probe += static_cast<char>('a' + rng.below(3));
    int shortest = chars_to_accept(p->nfa)[p->nfa.start];
    CHECK(dist_to_language(*p, probe) <= static_cast<int>(probe.size()) + shortest);
  }
}

TEST_CASE("following reward: dist 1 gives 0.5") {
  TaskExample ex;
  ex.payload = Json{{"pattern", "ab"}};
  CHECK(score_following("ab", ex) == 1.0);
  CHECK(score_following("ax", ex) == doctest::Approx(0.5));
  CHECK(score_following("xy", ex) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("induction: examples verify against the hidden target") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    TaskExample ex = gen_regex_induction(seed % 3, seed, Budget::none());
    CHECK(score_regex_induction(ex.answer, ex) == 1.0);
    auto p = parse_pattern(ex.payload.at("pattern").get<std::string>());
    REQUIRE(p.has_value());
    for (const auto& s : ex.payload.at("positives").get<std::vector<std::string>>())
      CHECK(matches(*p, s));
    for (const auto& s : ex.payload.at("negatives").get<std::vector<std::string>>())
      CHECK_FALSE(matches(*p, s));
  }
}

TEST_CASE("induction scoring: match-all pattern caps at one half before conciseness") {
  TaskExample ex;
  ex.payload = Json{{"pattern", "[a-b]{1,2}"},
                    {"positives", std::vector<std::string>{"a", "ab"}},
                    {"negatives", std::vector<std::string>{"zzz", "q"}}};
  // Matches everything in the subset: rejects nothing.
  double r = score_regex_induction("[a-z0-9]*", ex);
  CHECK(r <= 0.5);
  CHECK(score_regex_induction("((", ex) == 0.0);
  CHECK(score_regex_induction(ex.payload.at("pattern").get<std::string>(), ex) == 1.0);
}

TEST_CASE("regex generation is deterministic and pattern size grows") {
  for (uint64_t seed = 0; seed < 6; ++seed)
    CHECK(gen_regex_following(1, seed, Budget::none()).to_json().dump() ==
          gen_regex_following(1, seed, Budget::none()).to_json().dump());
  double lo = 0, hi = 0;
  const int n = 150;
  for (uint64_t s = 0; s < n; ++s) {
    lo += gen_regex_following(0, s, Budget::none()).payload.at("stat").get<double>();
    hi += gen_regex_following(2, s, Budget::none()).payload.at("stat").get<double>();
  }
  CHECK(hi / n > lo / n);
}
