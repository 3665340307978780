#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

namespace symgen {

inline std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t b = 0;
  while (true) {
    size_t e = s.find(sep, b);
    if (e == std::string::npos) {
      out.push_back(s.substr(b));
      return out;
    }
    out.push_back(s.substr(b, e - b));
    b = e + 1;
  }
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// trim + lowercase + collapse internal whitespace runs to single spaces.
inline std::string normalize_element(const std::string& s) {
  std::string t = lower(trim(s));
  std::string out;
  bool in_ws = false;
  for (char c : t) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_ws = true;
    } else {
      if (in_ws && !out.empty()) out += ' ';
      in_ws = false;
      out += c;
    }
  }
  return out;
}

// CRLF/CR -> LF.
inline std::string canonical_newlines(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\r') {
      out += '\n';
      if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

// LF canonicalization + strip trailing spaces per line + drop leading and
// trailing blank lines. Used by the edit-distance scorers.
inline std::string canonical_text(const std::string& s) {
  std::vector<std::string> lines = split(canonical_newlines(s), '\n');
  for (std::string& line : lines) {
    size_t e = line.size();
    while (e > 0 && (line[e - 1] == ' ' || line[e - 1] == '\t')) --e;
    line.resize(e);
  }
  size_t b = 0, e = lines.size();
  while (b < e && lines[b].empty()) ++b;
  while (e > b && lines[e - 1].empty()) --e;
  return join(std::vector<std::string>(lines.begin() + b, lines.begin() + e), "\n");
}

// Banded Levenshtein with iterative band doubling; exact for all inputs.
inline size_t levenshtein(const std::string& a, const std::string& b) {
  const size_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  size_t band = std::max<size_t>(64, (n > m ? n - m : m - n) + 1);
  const size_t inf = n + m + 1;
  while (true) {
    if (band >= n + m) band = n + m;
    std::vector<size_t> prev(m + 1, inf), cur(m + 1, inf);
    for (size_t j = 0; j <= std::min(m, band); ++j) prev[j] = j;
    for (size_t i = 1; i <= n; ++i) {
      size_t lo = i > band ? i - band : 0;
      size_t hi = std::min(m, i + band);
      std::fill(cur.begin(), cur.end(), inf);
      if (lo == 0) cur[0] = i;
      for (size_t j = std::max<size_t>(lo, 1); j <= hi; ++j) {
        size_t best = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
        if (prev[j] + 1 < best) best = prev[j] + 1;
        if (cur[j - 1] + 1 < best) best = cur[j - 1] + 1;
        cur[j] = best;
      }
      std::swap(prev, cur);
    }
    size_t d = prev[m];
    if (d <= band || band >= n + m) return d;
    band *= 2;
  }
}

// 1 - d / max(|a|,|b|); equals 1 iff the strings are equal.
inline double normalized_similarity(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t d = levenshtein(a, b);
  return 1.0 - static_cast<double>(d) / static_cast<double>(std::max(a.size(), b.size()));
}

inline bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

// Case-insensitive edit distance between lowercased forms, used for
// nearest-name suggestions in error messages.
inline std::string nearest_of(const std::string& query, const std::vector<std::string>& names) {
  std::string best;
  size_t best_d = SIZE_MAX;
  for (const auto& name : names) {
    size_t d = levenshtein(lower(query), lower(name));
    if (d < best_d) {
      best_d = d;
      best = name;
    }
  }
  return best;
}

}  // namespace symgen
