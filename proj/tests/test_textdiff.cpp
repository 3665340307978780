#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symgen/textdiff.hpp"

using namespace symgen;
using namespace symgen::textdiff;

namespace {

// Line-level Levenshtein with insert/delete only (substitution = 2), the
// cost model of a shortest edit script.
size_t line_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i)
    for (size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min(d[i - 1][j], d[i][j - 1]) + 1;
      if (a[i - 1] == b[j - 1]) d[i][j] = std::min(d[i][j], d[i - 1][j - 1]);
    }
  return d[a.size()][b.size()];
}

size_t script_cost(const std::string& src, const std::string& dst) {
  size_t cost = 0;
  for (const auto& op : edit_script(to_lines(src), to_lines(dst)))
    if (op.kind != EditOp::Kind::keep) ++cost;
  return cost;
}

}  // namespace

TEST_CASE("identical texts produce an empty diff; empty diff applies as identity") {
  std::string text = "alpha\nbeta\ngamma\n";
  CHECK(compute_diff(text, text).empty());
  CHECK(apply_patch(text, "") == text);
}

TEST_CASE("one-line substitution yields a single hunk with one - and one +") {
  std::string src = "a\nb\nc\nd\ne\nf\ng\nh\n";
  std::string dst = "a\nb\nc\nX\ne\nf\ng\nh\n";
  std::string diff = compute_diff(src, dst);
  int hunks = 0, dels = 0, inss = 0;
  for (const auto& line : split(diff, '\n')) {
    if (starts_with(line, "@@")) ++hunks;
    else if (starts_with(line, "-")) ++dels;
    else if (starts_with(line, "+")) ++inss;
  }
  CHECK(hunks == 1);
  CHECK(dels == 1);
  CHECK(inss == 1);
  CHECK(apply_patch(src, diff) == dst);
  // Three lines of context around line 4 cover source lines 1..7.
  CHECK(diff.find("@@ -1,7 +1,7 @@") == 0);
}

TEST_CASE("hunks split when changes are far apart and count-1 ranges drop the count") {
  std::vector<std::string> lines;
  for (int i = 0; i < 30; ++i) lines.push_back("line" + std::to_string(i));
  std::string src = from_lines(lines);
  lines[2] = "changed-early";
  lines[25] = "changed-late";
  std::string dst = from_lines(lines);
  std::string diff = compute_diff(src, dst);
  int hunks = 0;
  for (const auto& line : split(diff, '\n'))
    if (starts_with(line, "@@")) ++hunks;
  CHECK(hunks == 2);
  CHECK(apply_patch(src, diff) == dst);

  // A pure append at the end produces a one-sided hunk.
  std::string src2 = "only\n";
  std::string dst2 = "only\nadded\n";
  std::string d2 = compute_diff(src2, dst2);
  CHECK(apply_patch(src2, d2) == dst2);
}

TEST_CASE("patch mismatches raise") {
  std::string src = "a\nb\nc\n";
  std::string diff = compute_diff(src, "a\nX\nc\n");
  CHECK_THROWS_AS(apply_patch("a\nZ\nc\n", diff), Error);
  CHECK_THROWS_AS(apply_patch(src, "@@ garbage @@\n"), Error);
  // Header arithmetic that disagrees with the body is rejected.
  CHECK_THROWS_AS(apply_patch(src, "@@ -1,2 +1,1 @@\n-a\n+z\n"), Error);
}

TEST_CASE("random mutated pairs: round-trip exactness and optimal script length") {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    HistoryPair pair = random_pair(rng.uniform(0, 3), rng);
    std::string d_fwd = compute_diff(pair.older, pair.newer);
    std::string d_bwd = compute_diff(pair.newer, pair.older);
    CHECK(apply_patch(pair.older, d_fwd) == pair.newer);
    CHECK(apply_patch(pair.newer, d_bwd) == pair.older);
    CHECK(script_cost(pair.older, pair.newer) ==
          line_edit_distance(to_lines(pair.older), to_lines(pair.newer)));
  }
}

TEST_CASE("mutation budget bounds the script length") {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    HistoryPair pair = random_pair(rng.uniform(0, 2), rng);
    // Each mutation costs at most 2 edit operations (a substitution is a
    // delete plus an insert).
    CHECK(script_cost(pair.older, pair.newer) <=
          static_cast<size_t>(2 * pair.mutation_count));
  }
}

TEST_CASE("diff_prediction: self-score 1.0, empty-diff marker convention") {
  bool saw_marker = false;
  for (uint64_t seed = 0; seed < 120; ++seed) {
    TaskExample ex = gen_diff_prediction(seed % 3, seed, Budget::none());
    CHECK(score_diff_prediction(ex.answer, ex) == 1.0);
    if (ex.answer == kNoChangesMarker) {
      saw_marker = true;
      CHECK(ex.payload.at("source") == ex.payload.at("target"));
    } else {
      CHECK(apply_patch(ex.payload.at("source").get<std::string>(), ex.answer) ==
            ex.payload.at("target").get<std::string>());
    }
  }
  CHECK(saw_marker);
}

TEST_CASE("off-by-one hunk header scores below 1 but above 0.5 on a long gold") {
  // Find an instance whose diff text is reasonably long.
  for (uint64_t seed = 0;; ++seed) {
    TaskExample ex = gen_diff_prediction(2, seed, Budget::none());
    std::string gold = ex.payload.at("diff").get<std::string>();
    if (gold.size() < 200) continue;
    auto at = gold.find("@@ -");
    REQUIRE(at != std::string::npos);
    std::string wrong = gold;
    wrong[at + 4] = wrong[at + 4] == '1' ? '2' : '1';
    double r = score_diff_prediction(wrong, ex);
    CHECK(r < 1.0);
    CHECK(r > 0.5);
    break;
  }
}

TEST_CASE("diff_patching: self-score, diff-shaped answers are applied") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    TaskExample ex = gen_diff_patching(seed % 3, seed, Budget::none());
    CHECK(score_diff_patching(ex.answer, ex) == 1.0);
    std::string diff = ex.payload.at("diff").get<std::string>();
    if (!diff.empty()) {
      // Answering with the diff itself scores via its application result.
      CHECK(score_diff_patching(diff, ex) == 1.0);
    }
  }
  // Unparseable diff-looking answers fall back to raw-text similarity.
  TaskExample ex = gen_diff_patching(1, 7, Budget::none());
  double r = score_diff_patching("@@ mangled beyond repair", ex);
  CHECK(r >= 0.0);
  CHECK(r < 0.5);
}

TEST_CASE("similarity is 1 exactly iff byte equality after canonicalization") {
  TaskExample ex;
  ex.answer = "a b\nc\n";
  CHECK(score_diff_prediction("a b\r\nc \n", ex) == 1.0);  // newline + trailing ws
  CHECK(score_diff_prediction("a b\nd\n", ex) < 1.0);
}

TEST_CASE("textdiff generation is deterministic and mutation volume grows") {
  for (uint64_t seed = 0; seed < 6; ++seed)
    CHECK(gen_diff_prediction(1, seed, Budget::none()).to_json().dump() ==
          gen_diff_prediction(1, seed, Budget::none()).to_json().dump());
  double lo = 0, hi = 0;
  const int n = 150;
  for (uint64_t s = 0; s < n; ++s) {
    lo += gen_diff_patching(0, s, Budget::none()).payload.at("stat").get<double>();
    hi += gen_diff_patching(2, s, Budget::none()).payload.at("stat").get<double>();
  }
  CHECK(hi / n > lo / n);
}
