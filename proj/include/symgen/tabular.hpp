#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symgen/core.hpp"
#include "symgen/util/rational.hpp"

// Ordered element domains (integers, English/French number words, dates,
// alphabetic strings), synthetic typed tables, a mini-SQL evaluator, and
// renderers/parsers for seven table formats.

namespace symgen::tabular {

inline constexpr int kInstanceRetryCap = 80;

// ---------------------------------------------------------------------------
// Number words

namespace words {

inline const char* kOnesEn[] = {"zero", "one", "two",   "three", "four",
                                "five", "six", "seven", "eight", "nine"};
inline const char* kTeensEn[] = {"ten",      "eleven",  "twelve",    "thirteen", "fourteen",
                                 "fifteen",  "sixteen", "seventeen", "eighteen", "nineteen"};
inline const char* kTensEn[] = {"",      "",      "twenty", "thirty",  "forty",
                                "fifty", "sixty", "seventy", "eighty", "ninety"};

// English 0..999: hyphen between tens and units, no "and" after hundreds.
inline std::string english(int n) {
  if (n < 0 || n > 999) throw err("domain", "english number words cover 0..999");
  if (n < 10) return kOnesEn[n];
  if (n < 20) return kTeensEn[n - 10];
  if (n < 100) {
    std::string out = kTensEn[n / 10];
    if (n % 10) out += std::string("-") + kOnesEn[n % 10];
    return out;
  }
  std::string out = std::string(kOnesEn[n / 100]) + " hundred";
  if (n % 100) out += " " + english(n % 100);
  return out;
}

// French 0..999, traditional hyphenation: compound tens are hyphenated,
// "et un"/"et onze" joints are spaced, "quatre-vingts"/"cents" take their
// plural s only when nothing follows.
inline std::string french(int n) {
  if (n < 0 || n > 999) throw err("domain", "french number words cover 0..999");
  static const char* ones[] = {"z\xc3\xa9ro", "un",   "deux", "trois", "quatre", "cinq",
                               "six",         "sept", "huit", "neuf"};
  static const char* teens[] = {"dix",      "onze",  "douze",    "treize",   "quatorze",
                                "quinze",   "seize", "dix-sept", "dix-huit", "dix-neuf"};
  static const char* tens[] = {"",          "",          "vingt",     "trente", "quarante",
                               "cinquante", "soixante"};
  auto under_hundred = [&](int m) -> std::string {
    if (m < 10) return ones[m];
    if (m < 20) return teens[m - 10];
    if (m < 70) {
      int t = m / 10, u = m % 10;
      if (u == 0) return tens[t];
      if (u == 1) return std::string(tens[t]) + " et un";
      return std::string(tens[t]) + "-" + ones[u];
    }
    if (m < 80) {
      int u = m - 60;  // 70..79 lean on soixante + 10..19
      if (u == 11) return "soixante et onze";
      return std::string("soixante-") + teens[u - 10];
    }
    int u = m - 80;  // 80..99 lean on quatre-vingt + 0..19
    if (u == 0) return "quatre-vingts";
    if (u < 10) return std::string("quatre-vingt-") + ones[u];
    return std::string("quatre-vingt-") + teens[u - 10];
  };
  if (n < 100) return under_hundred(n);
  int h = n / 100, r = n % 100;
  std::string out = h == 1 ? "cent" : std::string(ones[h]) + (r == 0 ? " cents" : " cent");
  if (r) out += " " + under_hundred(r);
  return out;
}

}  // namespace words

// ---------------------------------------------------------------------------
// Calendar days (for the date domain), civil-days conversion

namespace calendar {

inline int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  int64_t era = (y >= 0 ? y : y - 399) / 400;
  int yoe = static_cast<int>(y - era * 400);
  int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

inline void civil_from_days(int64_t z, int& y, int& m, int& d) {
  z += 719468;
  int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  int doe = static_cast<int>(z - era * 146097);
  int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  int yr = static_cast<int>(yoe + era * 400);
  int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  int mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = yr + (m <= 2);
}

inline std::string iso(int64_t day) {
  int y, m, d;
  civil_from_days(day, y, m, d);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, m, d);
  return buf;
}

inline std::optional<int64_t> parse_iso(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  for (size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  int y = std::stoi(s.substr(0, 4)), m = std::stoi(s.substr(5, 2)), d = std::stoi(s.substr(8, 2));
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  return days_from_civil(y, m, d);
}

}  // namespace calendar

// ---------------------------------------------------------------------------
// Ordered domains: a bijection rank <-> rendered element

struct OrderedDomain {
  enum class Kind { integers, english_words, french_words, dates, alpha_strings };
  Kind kind = Kind::integers;
  int64_t base = 0;  // rank 0 maps here (integer value or day number)

  std::string name() const {
    switch (kind) {
      case Kind::integers: return "integers";
      case Kind::english_words: return "English number words";
      case Kind::french_words: return "French number words";
      case Kind::dates: return "dates";
      case Kind::alpha_strings: return "alphabetic strings";
    }
    return "";
  }

  std::string element_at(int64_t rank) const {
    switch (kind) {
      case Kind::integers:
        return std::to_string(base + rank);
      case Kind::english_words:
        return words::english(static_cast<int>(base + rank));
      case Kind::french_words:
        return words::french(static_cast<int>(base + rank));
      case Kind::dates:
        return calendar::iso(base + rank);
      case Kind::alpha_strings: {
        int64_t i = base + rank + 1;  // bijective base-26
        std::string s;
        while (i > 0) {
          --i;
          s.insert(s.begin(), static_cast<char>('a' + i % 26));
          i /= 26;
        }
        return s;
      }
    }
    return "";
  }

  std::optional<int64_t> rank_of(const std::string& element) const {
    switch (kind) {
      case Kind::integers: {
        try {
          size_t used = 0;
          int64_t v = std::stoll(element, &used);
          if (used != element.size()) return std::nullopt;
          return v - base;
        } catch (const std::exception&) {
          return std::nullopt;
        }
      }
      case Kind::english_words:
      case Kind::french_words: {
        // Small universe: invert by table.
        for (int v = 0; v < 1000; ++v) {
          std::string w = kind == Kind::english_words ? words::english(v) : words::french(v);
          if (w == element) return v - base;
        }
        return std::nullopt;
      }
      case Kind::dates: {
        auto day = calendar::parse_iso(element);
        if (!day) return std::nullopt;
        return *day - base;
      }
      case Kind::alpha_strings: {
        int64_t i = 0;
        for (char c : element) {
          if (c < 'a' || c > 'z') return std::nullopt;
          i = i * 26 + (c - 'a' + 1);
        }
        return i - 1 - base;
      }
    }
    return std::nullopt;
  }
};

inline OrderedDomain random_domain(Rng& rng, int64_t span_needed) {
  OrderedDomain d;
  switch (rng.below(5)) {
    case 0:
      d.kind = OrderedDomain::Kind::integers;
      d.base = rng.range(-200, 900);
      break;
    case 1:
      d.kind = OrderedDomain::Kind::english_words;
      d.base = rng.range(0, std::max<int64_t>(1, 990 - span_needed));
      break;
    case 2:
      d.kind = OrderedDomain::Kind::french_words;
      d.base = rng.range(0, std::max<int64_t>(1, 990 - span_needed));
      break;
    case 3:
      d.kind = OrderedDomain::Kind::dates;
      d.base = calendar::days_from_civil(2000, 1, 1) + rng.range(0, 9000);
      break;
    default:
      d.kind = OrderedDomain::Kind::alpha_strings;
      d.base = rng.range(0, 5000);
      break;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Synthetic typed tables

struct Column {
  std::string name;
  std::string kind;  // price, rating, person_name, city, count, date, category
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<std::string>> rows;  // canonical cell strings

  bool operator==(const Table& o) const {
    if (columns.size() != o.columns.size() || rows != o.rows) return false;
    for (size_t i = 0; i < columns.size(); ++i)
      if (columns[i].name != o.columns[i].name) return false;
    return true;
  }
};

inline bool column_is_numeric(const std::string& kind) {
  return kind == "price" || kind == "rating" || kind == "count";
}

inline const DifficultyKnob& table_knob() {
  static const DifficultyKnob k = [] {
    DifficultyKnob knob;
    knob.linear("rows", 4, 1.6, true, 14);
    knob.linear("cols", 2, 0.5, true, 5);
    knob.linear("filters", 0, 0.5, true, 2);
    return knob;
  }();
  return k;
}

inline Table random_table(double level, Rng& rng) {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> kinds = {
      {"price", {"price", "cost", "total"}},
      {"rating", {"rating", "score"}},
      {"person_name", {"name", "customer", "owner"}},
      {"city", {"city", "location"}},
      {"count", {"count", "quantity", "stock"}},
      {"date", {"date", "day"}},
      {"category", {"category", "group"}},
  };
  static const std::vector<std::string> people = {"Alice", "Bruno", "Chen",  "Dalia", "Emir",
                                                  "Freya", "Goran", "Hana",  "Ivan",  "Julia"};
  static const std::vector<std::string> cities = {"Paris",  "Lille", "Oslo",   "Porto",
                                                  "Dublin", "Turin", "Zagreb", "Ghent"};
  static const std::vector<std::string> cats = {"alpha", "beta", "gamma", "delta"};

  const auto& knob = table_knob();
  int n_rows = static_cast<int>(std::max<int64_t>(3, knob.resolve_int("rows", level, rng)));
  int n_cols = static_cast<int>(std::max<int64_t>(2, knob.resolve_int("cols", level, rng)));

  std::vector<size_t> kind_order(kinds.size());
  for (size_t i = 0; i < kinds.size(); ++i) kind_order[i] = i;
  rng.shuffle(kind_order);

  Table t;
  for (int c = 0; c < n_cols && c < static_cast<int>(kinds.size()); ++c) {
    const auto& [kind, names] = kinds[kind_order[c]];
    t.columns.push_back({names[rng.below(names.size())], kind});
  }
  int64_t date_base = calendar::days_from_civil(2020, 1, 1) + rng.range(0, 2000);
  for (int r = 0; r < n_rows; ++r) {
    std::vector<std::string> row;
    for (const auto& col : t.columns) {
      if (col.kind == "price") {
        row.push_back(Rational(rng.range(100, 59999), 100).to_decimal_string(2));
      } else if (col.kind == "rating") {
        row.push_back(Rational(rng.range(0, 50), 10).to_decimal_string(1));
      } else if (col.kind == "person_name") {
        row.push_back(people[rng.below(people.size())]);
      } else if (col.kind == "city") {
        row.push_back(cities[rng.below(cities.size())]);
      } else if (col.kind == "count") {
        row.push_back(std::to_string(rng.range(0, 500)));
      } else if (col.kind == "date") {
        row.push_back(calendar::iso(date_base + rng.range(0, 60)));
      } else {
        row.push_back(cats[rng.below(cats.size())]);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------
// Mini-SQL

struct FilterPred {
  int column = 0;
  std::string cmp;  // < <= > >= = !=
  std::string literal;
};

struct MiniQuery {
  std::string agg;  // COUNT, SUM, AVG, MIN, MAX, COUNT_DISTINCT
  int target = -1;  // column index; -1 for COUNT over rows
  std::vector<FilterPred> filters;
  int group_by = -1;
};

inline std::string sql_text(const Table& t, const MiniQuery& q) {
  std::string sel;
  if (q.agg == "COUNT" && q.target < 0) {
    sel = "COUNT(*)";
  } else if (q.agg == "COUNT_DISTINCT") {
    sel = "COUNT(DISTINCT " + t.columns[q.target].name + ")";
  } else {
    sel = q.agg + "(" + t.columns[q.target].name + ")";
  }
  std::string out = "SELECT ";
  if (q.group_by >= 0) out += t.columns[q.group_by].name + ", ";
  out += sel + " FROM t";
  if (!q.filters.empty()) {
    std::vector<std::string> parts;
    for (const auto& f : q.filters) {
      bool numeric = column_is_numeric(t.columns[f.column].kind);
      std::string lit = numeric ? f.literal : "'" + f.literal + "'";
      parts.push_back(t.columns[f.column].name + " " + f.cmp + " " + lit);
    }
    out += " WHERE " + join(parts, " AND ");
  }
  if (q.group_by >= 0) out += " GROUP BY " + t.columns[q.group_by].name;
  return out + ";";
}

inline bool cell_passes(const Table& t, const FilterPred& f, const std::string& cell) {
  if (column_is_numeric(t.columns[f.column].kind)) {
    auto a = Rational::parse(cell), b = Rational::parse(f.literal);
    if (!a || !b) return false;
    int c = Rational::cmp(*a, *b);
    if (f.cmp == "<") return c < 0;
    if (f.cmp == "<=") return c <= 0;
    if (f.cmp == ">") return c > 0;
    if (f.cmp == ">=") return c >= 0;
    if (f.cmp == "=") return c == 0;
    return c != 0;
  }
  if (f.cmp == "=") return cell == f.literal;
  if (f.cmp == "!=") return cell != f.literal;
  // Dates compare lexicographically in ISO form.
  if (f.cmp == "<") return cell < f.literal;
  if (f.cmp == "<=") return cell <= f.literal;
  if (f.cmp == ">") return cell > f.literal;
  return cell >= f.literal;
}

struct QueryResult {
  bool grouped = false;
  std::string scalar;                       // canonical string rendering
  std::map<std::string, std::string> groups;
};

// Exact evaluation; SUM/AVG run on rationals. AVG renders exactly when the
// decimal terminates and rounds to 6 places otherwise.
inline std::string render_numeric(const Rational& v) {
  return v.terminating() && v.den() <= BigInt(100000000) ? v.to_decimal_string()
                                                         : v.to_decimal_string(6);
}

inline QueryResult eval_query(const Table& t, const MiniQuery& q) {
  auto rows_passing = [&](const std::vector<std::string>& row) {
    for (const auto& f : q.filters)
      if (!cell_passes(t, f, row[f.column])) return false;
    return true;
  };
  auto aggregate = [&](const std::vector<const std::vector<std::string>*>& rows) -> std::string {
    if (q.agg == "COUNT") return std::to_string(rows.size());
    if (q.agg == "COUNT_DISTINCT") {
      std::set<std::string> distinct;
      for (const auto* r : rows) distinct.insert((*r)[q.target]);
      return std::to_string(distinct.size());
    }
    bool numeric = column_is_numeric(t.columns[q.target].kind);
    if (q.agg == "MIN" || q.agg == "MAX") {
      if (rows.empty()) throw err("empty-aggregate", "MIN/MAX over no rows");
      if (numeric) {
        Rational best = *Rational::parse((*rows[0])[q.target]);
        for (const auto* r : rows) {
          Rational v = *Rational::parse((*r)[q.target]);
          if (q.agg == "MIN" ? v < best : v > best) best = v;
        }
        return render_numeric(best);
      }
      std::string best = (*rows[0])[q.target];
      for (const auto* r : rows) {
        const std::string& v = (*r)[q.target];
        if (q.agg == "MIN" ? v < best : v > best) best = v;
      }
      return best;
    }
    Rational total(0);
    for (const auto* r : rows) total = total + *Rational::parse((*r)[q.target]);
    if (q.agg == "SUM") return render_numeric(total);
    if (rows.empty()) throw err("empty-aggregate", "AVG over no rows");
    return render_numeric(total / Rational(static_cast<int64_t>(rows.size())));
  };

  QueryResult res;
  if (q.group_by < 0) {
    std::vector<const std::vector<std::string>*> rows;
    for (const auto& r : t.rows)
      if (rows_passing(r)) rows.push_back(&r);
    res.scalar = aggregate(rows);
    return res;
  }
  res.grouped = true;
  std::map<std::string, std::vector<const std::vector<std::string>*>> buckets;
  for (const auto& r : t.rows)
    if (rows_passing(r)) buckets[r[q.group_by]].push_back(&r);
  for (const auto& [key, rows] : buckets) res.groups[key] = aggregate(rows);
  return res;
}

}  // namespace symgen::tabular
