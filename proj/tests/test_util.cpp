#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symgen/util/bigint.hpp"
#include "symgen/util/rational.hpp"
#include "symgen/util/rng.hpp"
#include "symgen/util/strings.hpp"

using namespace symgen;

// Plain quadratic edit distance, reference for the banded version.
static size_t lev_ref(const std::string& a, const std::string& b) {
  std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i)
    for (size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

TEST_CASE("bigint agrees with int64 on small operands") {
  Rng rng(42);
  for (int i = 0; i < 5000; ++i) {
    int64_t a = rng.range(-1000000, 1000000);
    int64_t b = rng.range(-1000000, 1000000);
    CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
    CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
    CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
    if (b != 0) {
      BigInt q, r;
      BigInt::divmod(BigInt(a), BigInt(b), q, r);
      CHECK(q == BigInt(a / b));
      CHECK(r == BigInt(a % b));
    }
    CHECK(BigInt::cmp(BigInt(a), BigInt(b)) == (a < b ? -1 : a > b ? 1 : 0));
  }
}

TEST_CASE("bigint multi-limb division identity") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    BigInt a(1), b(1);
    int la = 1 + static_cast<int>(rng.below(5));
    int lb = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < la; ++k) a = a * BigInt::from_u64(rng.next_u64() | 1);
    for (int k = 0; k < lb; ++k) b = b * BigInt::from_u64(rng.next_u64() | 1);
    if (rng.chance(0.5)) a = -a;
    if (rng.chance(0.5)) b = -b;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
  }
}

TEST_CASE("bigint string round-trip and known values") {
  CHECK(BigInt::parse("0").to_string() == "0");
  CHECK(BigInt::parse("-12345678901234567890123").to_string() ==
        "-12345678901234567890123");
  BigInt fact(1);
  for (int i = 2; i <= 30; ++i) fact = fact * BigInt(i);
  CHECK(fact.to_string() == "265252859812191058636308480000000");
  CHECK(BigInt(2).pow(100).to_string() == "1267650600228229401496703205376");
}

TEST_CASE("rational arithmetic and normalization") {
  Rational a(BigInt(3), BigInt(4)), b(BigInt(5), BigInt(6));
  CHECK((a + b) == Rational(BigInt(19), BigInt(12)));
  CHECK((a * b) == Rational(BigInt(5), BigInt(8)));
  CHECK((a - b) == Rational(BigInt(-1), BigInt(12)));
  CHECK((a / b) == Rational(BigInt(9), BigInt(10)));
  CHECK(Rational(BigInt(-6), BigInt(-8)) == Rational(BigInt(3), BigInt(4)));
  CHECK(Rational(BigInt(2), BigInt(-4)).den() == BigInt(2));
  CHECK(Rational(BigInt(2), BigInt(-4)).num() == BigInt(-1));
}

TEST_CASE("rational decimal rendering") {
  CHECK(Rational(BigInt(15), BigInt(2)).to_decimal_string() == "7.5");
  CHECK(Rational(BigInt(-1), BigInt(4)).to_decimal_string() == "-0.25");
  CHECK(Rational(BigInt(56)).to_decimal_string() == "56");
  CHECK_FALSE(Rational(BigInt(1), BigInt(3)).terminating());
  CHECK(Rational(BigInt(1), BigInt(3)).to_decimal_string(4) == "0.3333");
  CHECK(Rational(BigInt(2), BigInt(3)).to_decimal_string(4) == "0.6667");
  CHECK(Rational(BigInt(-2), BigInt(3)).to_decimal_string(2) == "-0.67");
}

TEST_CASE("rational rounding is half-to-even") {
  CHECK(Rational(BigInt(5), BigInt(2)).round_half_even() == BigInt(2));
  CHECK(Rational(BigInt(7), BigInt(2)).round_half_even() == BigInt(4));
  CHECK(Rational(BigInt(-5), BigInt(2)).round_half_even() == BigInt(-2));
  CHECK(Rational(BigInt(1), BigInt(8)).round_to_places(2) ==
        Rational(BigInt(12), BigInt(100)));
  CHECK(Rational(BigInt(3), BigInt(8)).round_to_places(2) ==
        Rational(BigInt(38), BigInt(100)));
}

TEST_CASE("rational parsing") {
  CHECK(*Rational::parse("4.5") == Rational(BigInt(9), BigInt(2)));
  CHECK(*Rational::parse(" -0.25 ") == Rational(BigInt(-1), BigInt(4)));
  CHECK(*Rational::parse("3/4") == Rational(BigInt(3), BigInt(4)));
  CHECK(*Rational::parse("56") == Rational(BigInt(56)));
  CHECK(*Rational::parse(".5") == Rational(BigInt(1), BigInt(2)));
  CHECK_FALSE(Rational::parse("abc").has_value());
  CHECK_FALSE(Rational::parse("1/0").has_value());
  CHECK_FALSE(Rational::parse("").has_value());
  CHECK_FALSE(Rational::parse("1.2.3").has_value());
}

TEST_CASE("rng determinism and bounds") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng r(5);
  for (int i = 0; i < 10000; ++i) {
    uint64_t v = r.below(7);
    CHECK(v < 7);
  }
  // Weighted sampling follows the weights.
  Rng w(9);
  int hits[2] = {0, 0};
  for (int i = 0; i < 100000; ++i) ++hits[w.weighted({1.0, 3.0})];
  double frac = hits[1] / 100000.0;
  CHECK(frac > 0.73);
  CHECK(frac < 0.77);
}

TEST_CASE("levenshtein matches reference DP") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("abc", "abc") == 0);
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    auto mk = [&](size_t n) {
      std::string s;
      for (size_t k = 0; k < n; ++k) s += static_cast<char>('a' + rng.below(3));
      return s;
    };
    std::string a = mk(rng.below(40)), b = mk(rng.below(40));
    CHECK(levenshtein(a, b) == lev_ref(a, b));
  }
}

TEST_CASE("string helpers") {
  CHECK(normalize_element("  Twenty  One ") == "twenty one");
  CHECK(canonical_newlines("a\r\nb\rc") == "a\nb\nc");
  CHECK(canonical_text("  \n a b \t\nx\n\n") == " a b\nx");
  CHECK(normalized_similarity("abc", "abc") == 1.0);
  CHECK(normalized_similarity("", "") == 1.0);
  CHECK(normalized_similarity("abcd", "abce") == doctest::Approx(0.75));
  CHECK(split_ws(" a  bb  c ") == std::vector<std::string>{"a", "bb", "c"});
}
