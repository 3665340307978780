#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symgen/core.hpp"

// Line-level shortest edit scripts rendered as unified diff hunks (context
// radius 3), patch application, stochastic document histories, and the
// diff_prediction / diff_patching tasks.
//
// Documents are canonical: LF newlines, and non-empty documents end with a
// final newline.

namespace symgen::textdiff {

inline constexpr int kContextRadius = 3;
inline constexpr size_t kCharCap = 20000;
inline const char* kNoChangesMarker = "NO CHANGES";

inline std::vector<std::string> to_lines(const std::string& text) {
  std::string s = canonical_newlines(text);
  if (s.empty()) return {};
  auto lines = split(s, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline std::string from_lines(const std::vector<std::string>& lines) {
  if (lines.empty()) return "";
  return join(lines, "\n") + "\n";
}

// ---------------------------------------------------------------------------
// Edit script

struct EditOp {
  enum class Kind { keep, del, ins };
  Kind kind;
  std::string line;
};

// LCS-based shortest edit script; at equal cost deletions come first.
inline std::vector<EditOp> edit_script(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = n; i-- > 0;)
    for (size_t j = m; j-- > 0;)
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1
                               : std::max(lcs[i + 1][j], lcs[i][j + 1]);
  std::vector<EditOp> ops;
  size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j] && lcs[i][j] == lcs[i + 1][j + 1] + 1) {
      ops.push_back({EditOp::Kind::keep, a[i]});
      ++i;
      ++j;
    } else if (i < n && (j >= m || lcs[i + 1][j] >= lcs[i][j + 1])) {
      ops.push_back({EditOp::Kind::del, a[i]});
      ++i;
    } else {
      ops.push_back({EditOp::Kind::ins, b[j]});
      ++j;
    }
  }
  return ops;
}

// ---------------------------------------------------------------------------
// Unified diff rendering

struct Hunk {
  size_t src_start = 0, src_count = 0;  // 1-based start (0 when count == 0)
  size_t dst_start = 0, dst_count = 0;
  std::vector<EditOp> ops;
};

inline std::vector<Hunk> make_hunks(const std::vector<EditOp>& ops) {
  // Indices of non-keep ops.
  std::vector<size_t> changes;
  for (size_t i = 0; i < ops.size(); ++i)
    if (ops[i].kind != EditOp::Kind::keep) changes.push_back(i);
  std::vector<Hunk> hunks;
  if (changes.empty()) return hunks;

  // Group changes whose context windows touch.
  std::vector<std::pair<size_t, size_t>> groups;  // [first, last] op index
  size_t gb = changes[0], ge = changes[0];
  for (size_t k = 1; k < changes.size(); ++k) {
    if (changes[k] - ge <= 2 * kContextRadius + 1) {
      ge = changes[k];
    } else {
      groups.push_back({gb, ge});
      gb = ge = changes[k];
    }
  }
  groups.push_back({gb, ge});

  // Line numbers per op position.
  std::vector<size_t> src_line(ops.size() + 1), dst_line(ops.size() + 1);
  size_t sl = 0, dl = 0;
  for (size_t i = 0; i < ops.size(); ++i) {
    src_line[i] = sl;
    dst_line[i] = dl;
    if (ops[i].kind != EditOp::Kind::ins) ++sl;
    if (ops[i].kind != EditOp::Kind::del) ++dl;
  }
  src_line[ops.size()] = sl;
  dst_line[ops.size()] = dl;

  for (auto [first, last] : groups) {
    size_t from = first >= kContextRadius ? first - kContextRadius : 0;
    size_t to = std::min(ops.size() - 1, last + kContextRadius);
    Hunk h;
    for (size_t i = from; i <= to; ++i) {
      h.ops.push_back(ops[i]);
      if (ops[i].kind != EditOp::Kind::ins) ++h.src_count;
      if (ops[i].kind != EditOp::Kind::del) ++h.dst_count;
    }
    h.src_start = h.src_count == 0 ? src_line[from] : src_line[from] + 1;
    h.dst_start = h.dst_count == 0 ? dst_line[from] : dst_line[from] + 1;
    hunks.push_back(std::move(h));
  }
  return hunks;
}

inline std::string render_range(size_t start, size_t count) {
  if (count == 1) return std::to_string(start);
  return std::to_string(start) + "," + std::to_string(count);
}

// Unified diff without file headers; the empty diff is the empty string.
inline std::string compute_diff(const std::string& src, const std::string& dst) {
  auto a = to_lines(src), b = to_lines(dst);
  auto hunks = make_hunks(edit_script(a, b));
  std::string out;
  for (const auto& h : hunks) {
    out += "@@ -" + render_range(h.src_start, h.src_count) + " +" +
           render_range(h.dst_start, h.dst_count) + " @@\n";
    for (const auto& op : h.ops) {
      char tag = op.kind == EditOp::Kind::keep ? ' ' : op.kind == EditOp::Kind::del ? '-' : '+';
      out += tag + op.line + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Patch application

inline std::optional<std::vector<Hunk>> parse_diff(const std::string& text) {
  std::vector<Hunk> hunks;
  auto lines = split(canonical_newlines(text), '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  size_t i = 0;
  auto parse_range = [](const std::string& s, size_t& start, size_t& count) {
    auto comma = s.find(',');
    try {
      if (comma == std::string::npos) {
        start = std::stoul(s);
        count = 1;
      } else {
        start = std::stoul(s.substr(0, comma));
        count = std::stoul(s.substr(comma + 1));
      }
    } catch (const std::exception&) {
      return false;
    }
    return true;
  };
  while (i < lines.size()) {
    const std::string& header = lines[i];
    if (!starts_with(header, "@@ -")) return std::nullopt;
    size_t plus = header.find(" +");
    size_t close = header.find(" @@", plus == std::string::npos ? 0 : plus);
    if (plus == std::string::npos || close == std::string::npos) return std::nullopt;
    Hunk h;
    if (!parse_range(header.substr(4, plus - 4), h.src_start, h.src_count)) return std::nullopt;
    if (!parse_range(header.substr(plus + 2, close - plus - 2), h.dst_start, h.dst_count))
      return std::nullopt;
    ++i;
    size_t seen_src = 0, seen_dst = 0;
    while (i < lines.size() && !starts_with(lines[i], "@@")) {
      const std::string& l = lines[i];
      if (l.empty() && seen_src == h.src_count && seen_dst == h.dst_count) break;
      if (l.empty()) return std::nullopt;
      EditOp op;
      op.line = l.substr(1);
      if (l[0] == ' ') op.kind = EditOp::Kind::keep;
      else if (l[0] == '-') op.kind = EditOp::Kind::del;
      else if (l[0] == '+') op.kind = EditOp::Kind::ins;
      else return std::nullopt;
      if (op.kind != EditOp::Kind::ins) ++seen_src;
      if (op.kind != EditOp::Kind::del) ++seen_dst;
      h.ops.push_back(op);
      ++i;
    }
    // Header arithmetic must match the body.
    if (seen_src != h.src_count || seen_dst != h.dst_count) return std::nullopt;
    hunks.push_back(std::move(h));
  }
  return hunks;
}

// Applies a unified diff; throws patch-mismatch when context or deleted
// lines disagree with the source.
inline std::string apply_patch(const std::string& src, const std::string& diff_text) {
  if (trim(diff_text).empty()) return from_lines(to_lines(src));
  auto hunks = parse_diff(diff_text);
  if (!hunks) throw err("patch-mismatch", "unparseable unified diff");
  auto a = to_lines(src);
  std::vector<std::string> out;
  size_t cursor = 0;  // 0-based index into a
  for (const auto& h : *hunks) {
    size_t start = h.src_count == 0 ? h.src_start : h.src_start - 1;
    if (start > a.size() || start < cursor)
      throw err("patch-mismatch", "hunk starts outside the source");
    for (size_t i = cursor; i < start; ++i) out.push_back(a[i]);
    cursor = start;
    for (const auto& op : h.ops) {
      if (op.kind == EditOp::Kind::ins) {
        out.push_back(op.line);
        continue;
      }
      if (cursor >= a.size() || a[cursor] != op.line)
        throw err("patch-mismatch", "source disagrees at line " + std::to_string(cursor + 1));
      if (op.kind == EditOp::Kind::keep) out.push_back(op.line);
      ++cursor;
    }
  }
  for (size_t i = cursor; i < a.size(); ++i) out.push_back(a[i]);
  return from_lines(out);
}

// ---------------------------------------------------------------------------
// Document histories

inline const DifficultyKnob& diff_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("lines", 6, 2.2, true, 40);
    knob.linear("mutations", 1, 1.1, true, 12);
    return knob;
  }();
  return k;
}

inline const std::vector<std::string>& lexicon() {
  static const std::vector<std::string> w = {
      "the",   "old",   "river", "turns", "north", "stone",  "light", "falls",  "slow",
      "wind",  "over",  "green", "hill",  "under", "grey",   "cloud", "a",      "quiet",
      "road",  "runs",  "past",  "mill",  "red",   "roof",   "long",  "summer", "rain",
      "warm",  "dust",  "field", "near",  "deep",  "water",  "birds", "cross",  "early",
      "sky",   "small", "boat",  "waits", "by",    "bridge"};
  return w;
}

inline std::string random_line(Rng& rng) {
  int words = 4 + static_cast<int>(rng.below(6));
  std::vector<std::string> out;
  for (int i = 0; i < words; ++i) out.push_back(lexicon()[rng.below(lexicon().size())]);
  return join(out, " ");
}

struct Mutation {
  std::string kind;  // insert_line, delete_line, substitute_word
  size_t line = 0;
};

// One mutation step; returns what happened for the log.
inline Mutation mutate(std::vector<std::string>& lines, Rng& rng) {
  Mutation m;
  double roll = rng.uniform();
  if (lines.empty() || roll < 0.3) {
    m.kind = "insert_line";
    m.line = rng.below(lines.size() + 1);
    lines.insert(lines.begin() + m.line, random_line(rng));
  } else if (roll < 0.55) {
    m.kind = "delete_line";
    m.line = rng.below(lines.size());
    lines.erase(lines.begin() + m.line);
  } else {
    m.kind = "substitute_word";
    m.line = rng.below(lines.size());
    auto words = split_ws(lines[m.line]);
    if (words.empty()) {
      lines[m.line] = random_line(rng);
    } else {
      words[rng.below(words.size())] = lexicon()[rng.below(lexicon().size())];
      lines[m.line] = join(words, " ");
    }
  }
  return m;
}

struct HistoryPair {
  std::string older;
  std::string newer;
  int mutation_count = 0;
};

inline HistoryPair random_pair(double level, Rng& rng) {
  const auto& knob = diff_knob();
  int n_lines = static_cast<int>(std::max<int64_t>(3, knob.resolve_int("lines", level, rng)));
  std::vector<std::string> lines;
  for (int i = 0; i < n_lines; ++i) lines.push_back(random_line(rng));
  HistoryPair pair;
  pair.older = from_lines(lines);
  pair.mutation_count =
      static_cast<int>(std::max<int64_t>(1, knob.resolve_int("mutations", level, rng)));
  for (int i = 0; i < pair.mutation_count; ++i) mutate(lines, rng);
  pair.newer = from_lines(lines);
  return pair;
}

// ---------------------------------------------------------------------------
// Tasks

inline TaskExample gen_diff_prediction(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("diff_prediction", level, seed);
  budget.checkpoint();
  HistoryPair pair = random_pair(level, rng);
  bool empty_case = rng.chance(0.06);
  bool forward = rng.chance(0.5);
  std::string src = forward ? pair.older : pair.newer;
  std::string dst = empty_case ? src : (forward ? pair.newer : pair.older);
  std::string diff = compute_diff(src, dst);
  std::string answer = diff.empty() ? kNoChangesMarker : diff;

  TaskExample ex;
  ex.task_name = "diff_prediction";
  ex.level = level;
  ex.seed = seed;
  ex.prompt =
      "Produce the unified diff that transforms SOURCE into TARGET.\nUse hunk headers "
      "'@@ -a,b +c,d @@' with 3 lines of context and no file headers. If the texts "
      "are identical, answer exactly: " + std::string(kNoChangesMarker) +
      "\n\nSOURCE:\n" + src + "\nTARGET:\n" + dst + "\nAnswer with only the diff.";
  ex.answer = answer;
  ex.payload = Json{{"source", src},
                    {"target", dst},
                    {"diff", diff},
                    {"mutations", pair.mutation_count},
                    {"stat", static_cast<double>(to_lines(src).size() + pair.mutation_count)}};
  return ex;
}

inline double score_diff_prediction(const std::string& answer, const TaskExample& ex) {
  std::string cand = canonical_text(answer);
  std::string gold = canonical_text(ex.answer);
  if (cand.size() > kCharCap) cand = cand.substr(0, kCharCap);
  return normalized_similarity(cand, gold);
}

inline TaskExample gen_diff_patching(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("diff_patching", level, seed);
  budget.checkpoint();
  HistoryPair pair = random_pair(level, rng);
  bool empty_case = rng.chance(0.06);
  bool forward = rng.chance(0.5);
  std::string src = forward ? pair.older : pair.newer;
  std::string dst = empty_case ? src : (forward ? pair.newer : pair.older);
  std::string diff = compute_diff(src, dst);

  TaskExample ex;
  ex.task_name = "diff_patching";
  ex.level = level;
  ex.seed = seed;
  ex.prompt =
      "Apply the following unified diff to SOURCE and output the patched text.\n\n"
      "SOURCE:\n" + src + "\nDIFF:\n" + (diff.empty() ? "(empty diff -- no changes)\n" : diff) +
      "\nAnswer with only the patched text.";
  ex.answer = dst;
  ex.payload = Json{{"source", src},
                    {"target", dst},
                    {"diff", diff},
                    {"mutations", pair.mutation_count},
                    {"stat", static_cast<double>(to_lines(src).size() + pair.mutation_count)}};
  return ex;
}

// Scored on character similarity with the target; an answer that is itself
// a parseable diff is applied to the source first and judged by its result.
inline double score_diff_patching(const std::string& answer, const TaskExample& ex) {
  std::string gold = canonical_text(ex.payload.at("target").get<std::string>());
  std::string cand = canonical_text(answer);
  if (starts_with(trim(cand), "@@")) {
    try {
      std::string applied =
          apply_patch(ex.payload.at("source").get<std::string>(), cand + "\n");
      cand = canonical_text(applied);
    } catch (const Error&) {
      // fall through: score the raw text
    }
  }
  if (cand.size() > kCharCap) cand = cand.substr(0, kCharCap);
  return normalized_similarity(cand, gold);
}

}  // namespace symgen::textdiff
