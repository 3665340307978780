#pragma once

#include <json.hpp>

#include "symgen/tabular.hpp"

// Table text formats. CSV, JSON, YAML, Markdown, and HTML round-trip
// exactly through parse_table; LaTeX and plain text are render-only.

namespace symgen::tabular {

inline const std::vector<std::string>& machine_formats() {
  static const std::vector<std::string> f = {"csv", "json", "yaml", "markdown", "html"};
  return f;
}

inline const std::vector<std::string>& all_formats() {
  static const std::vector<std::string> f = {"csv",  "json", "yaml", "markdown",
                                             "html", "latex", "plain"};
  return f;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  bool quote = s.find_first_of(",\"\n") != std::string::npos;
  if (!quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

inline std::string html_unescape(const std::string& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 5, "&amp;") == 0) {
      out += '&';
      i += 4;
    } else if (s.compare(i, 4, "&lt;") == 0) {
      out += '<';
      i += 3;
    } else if (s.compare(i, 4, "&gt;") == 0) {
      out += '>';
      i += 3;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace detail

inline std::string render_table(const Table& t, const std::string& format) {
  if (format == "csv") {
    std::string out;
    std::vector<std::string> hdr;
    for (const auto& c : t.columns) hdr.push_back(detail::csv_field(c.name));
    out += join(hdr, ",") + "\n";
    for (const auto& row : t.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(detail::csv_field(v));
      out += join(cells, ",") + "\n";
    }
    return out;
  }
  if (format == "json") {
    // ordered_json keeps the column order intact through a round-trip.
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c].name] = row[c];
      arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
  }
  if (format == "yaml") {
    std::string out;
    for (const auto& row : t.rows) {
      for (size_t c = 0; c < t.columns.size(); ++c)
        out += std::string(c == 0 ? "- " : "  ") + t.columns[c].name + ": " + row[c] + "\n";
    }
    return out;
  }
  if (format == "markdown") {
    std::string out = "|";
    for (const auto& c : t.columns) out += " " + c.name + " |";
    out += "\n|";
    for (size_t c = 0; c < t.columns.size(); ++c) out += " --- |";
    out += "\n";
    for (const auto& row : t.rows) {
      out += "|";
      for (const auto& v : row) out += " " + v + " |";
      out += "\n";
    }
    return out;
  }
  if (format == "html") {
    std::string out = "<table>\n  <tr>";
    for (const auto& c : t.columns) out += "<th>" + detail::html_escape(c.name) + "</th>";
    out += "</tr>\n";
    for (const auto& row : t.rows) {
      out += "  <tr>";
      for (const auto& v : row) out += "<td>" + detail::html_escape(v) + "</td>";
      out += "</tr>\n";
    }
    return out + "</table>\n";
  }
  if (format == "latex") {
    std::string out = "\\begin{tabular}{" + std::string(t.columns.size(), 'l') + "}\n";
    std::vector<std::string> hdr;
    for (const auto& c : t.columns) hdr.push_back(c.name);
    out += join(hdr, " & ") + " \\\\\n\\hline\n";
    for (const auto& row : t.rows) out += join(row, " & ") + " \\\\\n";
    return out + "\\end{tabular}\n";
  }
  if (format == "plain") {
    std::vector<size_t> width(t.columns.size());
    for (size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].name.size();
    for (const auto& row : t.rows)
      for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto pad = [&](const std::string& s, size_t w) {
      return s + std::string(w - s.size(), ' ');
    };
    std::string out;
    for (size_t c = 0; c < t.columns.size(); ++c)
      out += pad(t.columns[c].name, width[c]) + (c + 1 < t.columns.size() ? "  " : "");
    out += "\n";
    for (const auto& row : t.rows) {
      for (size_t c = 0; c < row.size(); ++c)
        out += pad(row[c], width[c]) + (c + 1 < row.size() ? "  " : "");
      out += "\n";
    }
    return out;
  }
  throw err("unknown-format", format);
}

// ---------------------------------------------------------------------------
// Parsers (machine formats only)

inline std::optional<Table> parse_table(const std::string& text, const std::string& format) {
  Table t;
  if (format == "csv") {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> cur;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    std::string s = canonical_newlines(text);
    for (size_t i = 0; i < s.size(); ++i) {
      char c = s[i];
      if (in_quotes) {
        if (c == '"' && i + 1 < s.size() && s[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          in_quotes = false;
        } else {
          field += c;
        }
        continue;
      }
      if (c == '"') {
        in_quotes = true;
        row_started = true;
      } else if (c == ',') {
        cur.push_back(field);
        field.clear();
        row_started = true;
      } else if (c == '\n') {
        if (row_started || !field.empty()) {
          cur.push_back(field);
          records.push_back(cur);
        }
        field.clear();
        cur.clear();
        row_started = false;
      } else {
        field += c;
        row_started = true;
      }
    }
    if (row_started || !field.empty()) {
      cur.push_back(field);
      records.push_back(cur);
    }
    if (records.empty()) return std::nullopt;
    for (const auto& name : records[0]) t.columns.push_back({name, ""});
    for (size_t r = 1; r < records.size(); ++r) {
      if (records[r].size() != t.columns.size()) return std::nullopt;
      t.rows.push_back(records[r]);
    }
    return t;
  }
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::parse(text, nullptr, false);
    if (!arr.is_array() || arr.empty()) return std::nullopt;
    for (const auto& [key, val] : arr[0].items()) {
      (void)val;
      t.columns.push_back({key, ""});
    }
    for (const auto& obj : arr) {
      if (!obj.is_object() || obj.size() != t.columns.size()) return std::nullopt;
      std::vector<std::string> row;
      for (const auto& col : t.columns) {
        if (!obj.contains(col.name) || !obj[col.name].is_string()) return std::nullopt;
        row.push_back(obj[col.name].get<std::string>());
      }
      t.rows.push_back(row);
    }
    return t;
  }
  if (format == "yaml") {
    std::vector<std::vector<std::pair<std::string, std::string>>> records;
    for (const auto& raw : split(canonical_newlines(text), '\n')) {
      if (trim(raw).empty()) continue;
      bool new_record = starts_with(raw, "- ");
      if (new_record) records.emplace_back();
      if (records.empty()) return std::nullopt;
      std::string body = trim(new_record ? raw.substr(2) : raw);
      auto colon = body.find(':');
      if (colon == std::string::npos) return std::nullopt;
      records.back().push_back({trim(body.substr(0, colon)), trim(body.substr(colon + 1))});
    }
    if (records.empty()) return std::nullopt;
    for (const auto& [key, value] : records[0]) {
      (void)value;
      t.columns.push_back({key, ""});
    }
    for (const auto& rec : records) {
      if (rec.size() != t.columns.size()) return std::nullopt;
      std::vector<std::string> row;
      for (size_t c = 0; c < rec.size(); ++c) {
        if (rec[c].first != t.columns[c].name) return std::nullopt;
        row.push_back(rec[c].second);
      }
      t.rows.push_back(row);
    }
    return t;
  }
  if (format == "markdown") {
    auto lines = split(canonical_newlines(text), '\n');
    auto cells_of = [](const std::string& line) {
      std::vector<std::string> cells;
      std::string body = trim(line);
      if (body.size() < 2 || body.front() != '|' || body.back() != '|') return cells;
      for (const auto& c : split(body.substr(1, body.size() - 2), '|')) cells.push_back(trim(c));
      return cells;
    };
    size_t li = 0;
    while (li < lines.size() && trim(lines[li]).empty()) ++li;
    if (li + 1 >= lines.size()) return std::nullopt;
    auto hdr = cells_of(lines[li]);
    if (hdr.empty()) return std::nullopt;
    for (const auto& h : hdr) t.columns.push_back({h, ""});
    ++li;  // separator row
    for (++li; li < lines.size(); ++li) {
      if (trim(lines[li]).empty()) continue;
      auto cells = cells_of(lines[li]);
      if (cells.size() != t.columns.size()) return std::nullopt;
      t.rows.push_back(cells);
    }
    return t;
  }
  if (format == "html") {
    // Minimal subset: <table>, <tr>, <th>, <td>.
    std::vector<std::vector<std::pair<bool, std::string>>> rows;  // (is_header, text)
    size_t i = 0;
    auto find_tag = [&](const std::string& tag, size_t from) {
      return text.find("<" + tag + ">", from);
    };
    size_t tr = find_tag("tr", i);
    while (tr != std::string::npos) {
      size_t end = text.find("</tr>", tr);
      if (end == std::string::npos) return std::nullopt;
      std::string body = text.substr(tr + 4, end - tr - 4);
      std::vector<std::pair<bool, std::string>> cells;
      size_t p = 0;
      while (true) {
        size_t th = body.find("<th>", p), td = body.find("<td>", p);
        bool header = th != std::string::npos && (td == std::string::npos || th < td);
        size_t open = header ? th : td;
        if (open == std::string::npos) break;
        std::string close = header ? "</th>" : "</td>";
        size_t stop = body.find(close, open);
        if (stop == std::string::npos) return std::nullopt;
        cells.push_back({header, detail::html_unescape(body.substr(open + 4, stop - open - 4))});
        p = stop + close.size();
      }
      rows.push_back(cells);
      tr = find_tag("tr", end);
    }
    if (rows.empty() || rows[0].empty()) return std::nullopt;
    for (const auto& [hdr, name] : rows[0]) {
      if (!hdr) return std::nullopt;
      t.columns.push_back({name, ""});
    }
    for (size_t r = 1; r < rows.size(); ++r) {
      std::vector<std::string> row;
      for (const auto& [hdr, v] : rows[r]) {
        if (hdr) return std::nullopt;
        row.push_back(v);
      }
      if (row.size() != t.columns.size()) return std::nullopt;
      t.rows.push_back(row);
    }
    return t;
  }
  return std::nullopt;
}

}  // namespace symgen::tabular
