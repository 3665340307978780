#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "symgen/util/error.hpp"
#include "symgen/util/rng.hpp"
#include "symgen/util/strings.hpp"

// Probabilistic grammar engine with synchronized multi-channel derivation,
// bushiness-controlled depth forcing, and state propagation for
// context-sensitive generation.
//
// DSL (one rule per line, see docs/grammar_dsl.md):
//
//   # gramforge v1
//   %channels en fol
//   %glue fol
//   S -> NP 'is' ADJ @en | ADJ '(' NP ')' @fol :: 2.5 :: note
//
// Symbols: bare words starting with an uppercase letter are nonterminals
// (and must appear as some rule's LHS); everything else is a terminal.
// Quoted terminals ('...') may contain spaces; $name[:arg...] invokes a
// macro resolver against the derivation state; <eps> is the empty RHS.

namespace symgen::gramforge {

struct Symbol {
  enum class Kind { nonterminal, terminal, macro };
  Kind kind = Kind::terminal;
  std::string text;               // symbol name or terminal text
  std::vector<std::string> args;  // macro arguments

  bool operator==(const Symbol& o) const {
    return kind == o.kind && text == o.text && args == o.args;
  }
};

struct Rule {
  std::string lhs;
  std::vector<std::vector<Symbol>> rhs;  // one sequence per channel
  double weight = 1.0;
  std::string transform;  // empty = none

  bool operator==(const Rule& o) const {
    return lhs == o.lhs && rhs == o.rhs && weight == o.weight &&
           transform == o.transform;
  }
};

// Derivation state: named string lists threaded through the tree.
struct DerivState {
  std::map<std::string, std::vector<std::string>> lists;

  const std::vector<std::string>& get(const std::string& name) const {
    static const std::vector<std::string> empty;
    auto it = lists.find(name);
    return it == lists.end() ? empty : it->second;
  }
  void push(const std::string& name, const std::string& value) {
    lists[name].push_back(value);
  }
  bool contains(const std::string& name, const std::string& value) const {
    const auto& l = get(name);
    return std::find(l.begin(), l.end(), value) != l.end();
  }
};

using MacroFn =
    std::function<std::string(const std::vector<std::string>&, DerivState&, Rng&)>;
using TransformFn = std::function<void(DerivState&, Rng&)>;

struct Toolset {
  std::map<std::string, MacroFn> macros;
  std::map<std::string, TransformFn> transforms;
};

struct Grammar {
  std::vector<std::string> channel_names;
  std::string start;
  std::vector<Rule> rules;
  std::set<std::string> nonterminals;
  std::set<std::string> terminals;
  std::set<std::string> glue_channels;  // rendered without separating spaces
  Toolset tools;
  std::map<std::string, std::vector<size_t>> by_lhs;

  size_t channel_index(const std::string& name) const {
    for (size_t i = 0; i < channel_names.size(); ++i)
      if (channel_names[i] == name) return i;
    throw err("undefined-symbol", "unknown channel " + name);
  }

  bool structurally_equal(const Grammar& o) const {
    return channel_names == o.channel_names && start == o.start &&
           rules == o.rules && glue_channels == o.glue_channels;
  }
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline bool is_nonterminal_word(const std::string& w) {
  return !w.empty() && w[0] >= 'A' && w[0] <= 'Z';
}

// Splits a channel RHS into symbols. Quoted terminals support \' and \\.
inline std::vector<Symbol> lex_symbols(const std::string& text, int line_no) {
  std::vector<Symbol> out;
  size_t i = 0;
  auto fail = [&](const std::string& m) {
    throw err("grammar-syntax", "line " + std::to_string(line_no) + ": " + m);
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == '\'') {
      std::string t;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size()) {
          t += text[i + 1] == 'n' ? '\n' : text[i + 1];
          i += 2;
        } else if (text[i] == '\'') {
          ++i;
          closed = true;
          break;
        } else {
          t += text[i++];
        }
      }
      if (!closed) fail("unterminated quoted terminal");
      out.push_back({Symbol::Kind::terminal, t, {}});
      continue;
    }
    size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string w = text.substr(b, i - b);
    if (w == "<eps>") {
      out.push_back({Symbol::Kind::terminal, "<eps>", {}});
    } else if (w[0] == '$') {
      auto parts = split(w.substr(1), ':');
      if (parts[0].empty()) fail("empty macro name");
      Symbol s{Symbol::Kind::macro, parts[0], {}};
      s.args.assign(parts.begin() + 1, parts.end());
      out.push_back(s);
    } else if (is_nonterminal_word(w)) {
      out.push_back({Symbol::Kind::nonterminal, w, {}});
    } else {
      out.push_back({Symbol::Kind::terminal, w, {}});
    }
  }
  return out;
}

}  // namespace detail

inline Grammar parse_grammar(const std::string& source, Toolset tools = {}) {
  Grammar g;
  g.tools = std::move(tools);
  auto lines = split(source, '\n');

  struct RawRule {
    int line_no;
    std::string lhs;
    std::vector<std::pair<std::vector<Symbol>, std::string>> channels;  // (syms, tag)
    double weight;
    std::string transform;
  };
  std::vector<RawRule> raw;

  for (size_t ln = 0; ln < lines.size(); ++ln) {
    int line_no = static_cast<int>(ln) + 1;
    std::string line = trim(lines[ln]);
    auto fail = [&](const std::string& m) {
      throw err("grammar-syntax", "line " + std::to_string(line_no) + ": " + m);
    };
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == '%') {
      auto words = split_ws(line);
      if (words[0] == "%channels") {
        g.channel_names.assign(words.begin() + 1, words.end());
        if (g.channel_names.empty()) fail("%channels needs at least one name");
      } else if (words[0] == "%start") {
        if (words.size() != 2) fail("%start needs one symbol");
        g.start = words[1];
      } else if (words[0] == "%glue") {
        g.glue_channels.insert(words.begin() + 1, words.end());
      } else {
        fail("unknown directive " + words[0]);
      }
      continue;
    }

    size_t arrow = line.find("->");
    if (arrow == std::string::npos) fail("missing '->'");
    std::string lhs = trim(line.substr(0, arrow));
    if (!detail::is_nonterminal_word(lhs) || split_ws(lhs).size() != 1)
      fail("LHS must be a single capitalized symbol");

    std::string rest = line.substr(arrow + 2);
    // Split off trailing ':: weight [:: transform]'. '::' inside quotes is
    // protected by lexing channel text afterwards, so only split on '::'
    // outside quotes.
    std::vector<std::string> segments;
    {
      std::string cur;
      bool quoted = false;
      for (size_t i = 0; i < rest.size(); ++i) {
        char c = rest[i];
        if (c == '\\' && quoted && i + 1 < rest.size()) {
          cur += c;
          cur += rest[++i];
          continue;
        }
        if (c == '\'') quoted = !quoted;
        if (!quoted && c == ':' && i + 1 < rest.size() && rest[i + 1] == ':') {
          segments.push_back(cur);
          cur.clear();
          ++i;
          continue;
        }
        cur += c;
      }
      if (quoted) fail("unterminated quoted terminal");
      segments.push_back(cur);
    }
    if (segments.size() > 3) fail("too many '::' sections");

    RawRule rr;
    rr.line_no = line_no;
    rr.lhs = lhs;
    rr.weight = 1.0;
    if (segments.size() >= 2) {
      std::string w = trim(segments[1]);
      try {
        size_t used = 0;
        rr.weight = std::stod(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        fail("bad weight '" + w + "'");
      }
      if (!(rr.weight > 0)) fail("rule weights must be positive");
    }
    if (segments.size() == 3) {
      rr.transform = trim(segments[2]);
      if (rr.transform.empty()) fail("empty transform name");
    }

    // Channels separated by '|' outside quotes.
    std::vector<std::string> chan_texts;
    {
      std::string cur;
      bool quoted = false;
      for (size_t i = 0; i < segments[0].size(); ++i) {
        char c = segments[0][i];
        if (c == '\\' && quoted && i + 1 < segments[0].size()) {
          cur += c;
          cur += segments[0][++i];
          continue;
        }
        if (c == '\'') quoted = !quoted;
        if (!quoted && c == '|') {
          chan_texts.push_back(cur);
          cur.clear();
          continue;
        }
        cur += c;
      }
      chan_texts.push_back(cur);
    }
    for (std::string& ct : chan_texts) {
      ct = trim(ct);
      std::string tag;
      // Optional trailing @channel tag.
      size_t at = ct.rfind('@');
      if (at != std::string::npos && at > 0 &&
          std::isspace(static_cast<unsigned char>(ct[at - 1])) &&
          ct.find('\'', at) == std::string::npos) {
        tag = ct.substr(at + 1);
        ct = trim(ct.substr(0, at));
      }
      rr.channels.push_back({detail::lex_symbols(ct, line_no), tag});
    }
    raw.push_back(std::move(rr));
  }

  if (raw.empty()) throw err("grammar-syntax", "grammar has no rules");
  if (g.channel_names.empty()) g.channel_names = {"text"};
  if (g.start.empty()) g.start = raw.front().lhs;

  for (const auto& rr : raw) g.nonterminals.insert(rr.lhs);
  if (!g.nonterminals.count(g.start))
    throw err("undefined-symbol", "start symbol " + g.start + " has no rules");

  const size_t n_chan = g.channel_names.size();
  for (const auto& rr : raw) {
    auto fail = [&](const std::string& kind, const std::string& m) {
      throw err(kind, "line " + std::to_string(rr.line_no) + ": " + m);
    };
    if (rr.channels.size() != n_chan)
      fail("arity-mismatch", "rule for " + rr.lhs + " has " +
                                 std::to_string(rr.channels.size()) +
                                 " channels, grammar declares " +
                                 std::to_string(n_chan));
    Rule rule;
    rule.lhs = rr.lhs;
    rule.weight = rr.weight;
    rule.transform = rr.transform;
    rule.rhs.resize(n_chan);
    bool tagged = !rr.channels[0].second.empty();
    for (size_t ci = 0; ci < rr.channels.size(); ++ci) {
      const auto& [syms, tag] = rr.channels[ci];
      if (tag.empty() == tagged)
        fail("grammar-syntax", "mix of tagged and untagged channels");
      size_t idx = tagged ? g.channel_index(tag) : ci;
      rule.rhs[idx] = syms;
    }

    // Drop <eps> markers; empty vector = epsilon.
    for (auto& seq : rule.rhs) {
      if (seq.size() == 1 && seq[0].kind == Symbol::Kind::terminal &&
          seq[0].text == "<eps>")
        seq.clear();
      for (const auto& s : seq)
        if (s.kind == Symbol::Kind::terminal && s.text == "<eps>")
          fail("grammar-syntax", "<eps> must stand alone");
    }

    // Per-nonterminal occurrence counts must agree across channels.
    std::map<std::string, size_t> counts0;
    for (const auto& s : rule.rhs[0])
      if (s.kind == Symbol::Kind::nonterminal) ++counts0[s.text];
    for (size_t c = 1; c < n_chan; ++c) {
      std::map<std::string, size_t> counts;
      for (const auto& s : rule.rhs[c])
        if (s.kind == Symbol::Kind::nonterminal) ++counts[s.text];
      if (counts != counts0)
        fail("arity-mismatch",
             "rule for " + rr.lhs + ": nonterminal occurrences differ between channels");
    }

    for (const auto& seq : rule.rhs) {
      for (const auto& s : seq) {
        if (s.kind == Symbol::Kind::nonterminal && !g.nonterminals.count(s.text))
          fail("undefined-symbol", "nonterminal " + s.text + " has no rules");
        if (s.kind == Symbol::Kind::macro && !g.tools.macros.count(s.text))
          fail("undefined-macro", "macro $" + s.text + " is not registered");
        if (s.kind == Symbol::Kind::terminal) g.terminals.insert(s.text);
      }
    }
    if (!rule.transform.empty() && !g.tools.transforms.count(rule.transform))
      fail("undefined-transform", "transform " + rule.transform + " is not registered");

    g.by_lhs[rule.lhs].push_back(g.rules.size());
    g.rules.push_back(std::move(rule));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Serialization (round-trips through parse_grammar)

inline std::string serialize_symbol(const Symbol& s) {
  switch (s.kind) {
    case Symbol::Kind::macro: {
      std::string out = "$" + s.text;
      for (const auto& a : s.args) out += ":" + a;
      return out;
    }
    case Symbol::Kind::nonterminal:
      return s.text;
    case Symbol::Kind::terminal: {
      bool bare = !s.text.empty() && !detail::is_nonterminal_word(s.text) &&
                  s.text[0] != '$' && s.text != "<eps>";
      for (char c : s.text)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '\'' || c == '|' ||
            c == '@' || c == ':' || c == '#' || c == '%')
          bare = false;
      if (bare) return s.text;
      std::string out = "'";
      for (char c : s.text) {
        if (c == '\n') {
          out += "\\n";
          continue;
        }
        if (c == '\\' || c == '\'') out += '\\';
        out += c;
      }
      return out + "'";
    }
  }
  return "";
}

inline std::string serialize(const Grammar& g) {
  std::string out = "# gramforge v1\n";
  out += "%channels " + join(g.channel_names, " ") + "\n";
  out += "%start " + g.start + "\n";
  if (!g.glue_channels.empty()) {
    out += "%glue";
    for (const auto& c : g.glue_channels) out += " " + c;
    out += "\n";
  }
  for (const auto& r : g.rules) {
    out += r.lhs + " ->";
    for (size_t c = 0; c < r.rhs.size(); ++c) {
      if (c) out += " |";
      if (r.rhs[c].empty()) {
        out += " <eps>";
      } else {
        for (const auto& s : r.rhs[c]) out += " " + serialize_symbol(s);
      }
      if (r.rhs.size() > 1) out += " @" + g.channel_names[c];
    }
    char w[32];
    std::snprintf(w, sizeof w, "%.10g", r.weight);
    out += " :: " + std::string(w);
    if (!r.transform.empty()) out += " :: " + r.transform;
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

struct DerivationControls {
  int min_depth = 0;
  int max_depth = 24;
  double bushiness = 0.0;  // in [0,1]
};

struct DerivNode {
  std::string nt;
  size_t rule_index = 0;
  std::vector<DerivNode> children;  // channel-0 scan order
  std::map<std::string, std::vector<std::string>> macro_values;
  int depth = 1;
};

struct Derivation {
  std::vector<std::string> channels;  // rendered per-channel strings
  std::vector<std::vector<std::string>> channel_tokens;
  DerivNode root;
  DerivState final_state;
  int depth = 0;
  int leaf_count = 0;
};

namespace detail {

constexpr int kDepthInf = 1 << 20;

// Minimum achievable derivation depth per nonterminal (fixpoint).
inline std::map<std::string, int> min_depths(const Grammar& g) {
  std::map<std::string, int> d;
  for (const auto& nt : g.nonterminals) d[nt] = kDepthInf;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      int worst = 0;
      for (const auto& s : r.rhs[0])
        if (s.kind == Symbol::Kind::nonterminal) worst = std::max(worst, d[s.text]);
      int v = worst >= kDepthInf ? kDepthInf : 1 + worst;
      if (v < d[r.lhs]) {
        d[r.lhs] = v;
        changed = true;
      }
    }
  }
  return d;
}

// Maximum reachable depth per nonterminal, saturated at `cap`.
inline std::map<std::string, int> max_depths(const Grammar& g, int cap) {
  std::map<std::string, int> d;
  for (const auto& nt : g.nonterminals) d[nt] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      int best = 0;
      for (const auto& s : r.rhs[0])
        if (s.kind == Symbol::Kind::nonterminal) best = std::max(best, d[s.text]);
      int v = std::min(cap, 1 + best);
      if (v > d[r.lhs]) {
        d[r.lhs] = v;
        changed = true;
      }
    }
  }
  return d;
}

struct Sampler {
  const Grammar& g;
  const DerivationControls& c;
  Rng& rng;
  std::map<std::string, int> dmin;
  std::map<std::string, int> dmax;

  DerivNode expand(const std::string& nt, int need, int room, DerivState& state) {
    // Rules eligible under the depth window.
    std::vector<size_t> eligible;
    std::vector<double> weights;
    for (size_t ri : g.by_lhs.at(nt)) {
      const Rule& r = g.rules[ri];
      bool ok = true;
      int reach = 1;
      for (const auto& s : r.rhs[0]) {
        if (s.kind != Symbol::Kind::nonterminal) continue;
        if (dmin.at(s.text) > room - 1) ok = false;
        reach = std::max(reach, std::min(room, 1 + dmax.at(s.text)));
      }
      if (ok && reach >= need) {
        eligible.push_back(ri);
        weights.push_back(r.weight);
      }
    }
    if (eligible.empty())
      throw err("infeasible-depth",
                "no rule for " + nt + " fits depth window [" +
                    std::to_string(need) + "," + std::to_string(room) + "]");

    const Rule& rule = g.rules[eligible[rng.weighted(weights)]];
    DerivNode node;
    node.nt = nt;
    node.rule_index = static_cast<size_t>(&rule - g.rules.data());

    // Decide which children are forced to carry the remaining depth.
    std::vector<size_t> child_positions;  // indices into rhs[0]
    for (size_t i = 0; i < rule.rhs[0].size(); ++i)
      if (rule.rhs[0][i].kind == Symbol::Kind::nonterminal) child_positions.push_back(i);

    std::vector<int> child_need(child_positions.size(), 0);
    if (need > 1 && !child_positions.empty()) {
      std::vector<size_t> capable;
      for (size_t k = 0; k < child_positions.size(); ++k) {
        const auto& sym = rule.rhs[0][child_positions[k]];
        if (dmax.at(sym.text) >= need - 1) capable.push_back(k);
      }
      // At least one capable branch must recurse; each other capable branch
      // joins with probability = bushiness, forcing lateral expansion.
      size_t chosen = capable[rng.below(capable.size())];
      for (size_t k : capable)
        if (k == chosen || rng.chance(c.bushiness)) child_need[k] = need - 1;
    }

    // Channel-0 scan: macros resolve against the running state, children
    // expand left to right, then the rule transform runs.
    size_t child_i = 0;
    for (const auto& sym : rule.rhs[0]) {
      if (sym.kind == Symbol::Kind::macro) {
        auto& fn = g.tools.macros.at(sym.text);
        node.macro_values[sym.text].push_back(fn(sym.args, state, rng));
      } else if (sym.kind == Symbol::Kind::nonterminal) {
        node.children.push_back(expand(sym.text, child_need[child_i], room - 1, state));
        ++child_i;
      }
    }
    // Macros that appear only in secondary channels still need values.
    for (size_t ch = 1; ch < rule.rhs.size(); ++ch) {
      std::map<std::string, size_t> seen;
      for (const auto& sym : rule.rhs[ch])
        if (sym.kind == Symbol::Kind::macro) ++seen[sym.text];
      for (const auto& [name, cnt] : seen) {
        auto& vals = node.macro_values[name];
        while (vals.size() < cnt)
          vals.push_back(g.tools.macros.at(name)({}, state, rng));
      }
    }
    if (!rule.transform.empty()) g.tools.transforms.at(rule.transform)(state, rng);

    node.depth = 1;
    for (const auto& ch : node.children) node.depth = std::max(node.depth, ch.depth + 1);
    return node;
  }
};

inline void render(const Grammar& g, const DerivNode& node, size_t channel,
                   std::vector<std::string>& out, int* leaves) {
  const Rule& rule = g.rules[node.rule_index];
  // Map (symbol, occurrence) -> child index, from channel-0 order.
  std::map<std::string, std::vector<size_t>> child_of;
  {
    size_t idx = 0;
    for (const auto& s : rule.rhs[0])
      if (s.kind == Symbol::Kind::nonterminal) child_of[s.text].push_back(idx++);
  }
  std::map<std::string, size_t> nt_seen, macro_seen;
  bool any_child = false;
  for (const auto& sym : rule.rhs[channel]) {
    switch (sym.kind) {
      case Symbol::Kind::terminal:
        out.push_back(sym.text);
        break;
      case Symbol::Kind::macro:
        out.push_back(node.macro_values.at(sym.text)[macro_seen[sym.text]++]);
        break;
      case Symbol::Kind::nonterminal: {
        any_child = true;
        size_t child = child_of.at(sym.text)[nt_seen[sym.text]++];
        render(g, node.children[child], channel, out, leaves);
        break;
      }
    }
  }
  if (!any_child && leaves) ++*leaves;
}

}  // namespace detail

inline constexpr int kSampleRetryCap = 200;

inline Derivation sample_derivation(const Grammar& g, const DerivationControls& c,
                                    Rng& rng, DerivState initial = {}) {
  if (c.min_depth > c.max_depth)
    throw err("domain", "min_depth exceeds max_depth");
  detail::Sampler s{g, c, rng, detail::min_depths(g),
                    detail::max_depths(g, c.max_depth + 1)};
  if (s.dmin.at(g.start) > c.max_depth)
    throw err("infeasible-depth", "grammar cannot finish within max_depth");
  if (s.dmax.at(g.start) < c.min_depth)
    throw err("infeasible-depth", "grammar cannot reach min_depth");

  for (int attempt = 0; attempt < kSampleRetryCap; ++attempt) {
    try {
      DerivState state = initial;
      Derivation d;
      d.root = s.expand(g.start, c.min_depth, c.max_depth, state);
      d.depth = d.root.depth;
      d.final_state = std::move(state);
      for (size_t ch = 0; ch < g.channel_names.size(); ++ch) {
        std::vector<std::string> toks;
        int leaves = 0;
        detail::render(g, d.root, ch, toks, ch == 0 ? &d.leaf_count : &leaves);
        std::string sep = g.glue_channels.count(g.channel_names[ch]) ? "" : " ";
        d.channels.push_back(join(toks, sep));
        d.channel_tokens.push_back(std::move(toks));
      }
      return d;
    } catch (const Error& e) {
      // Macro/transform level rejections (e.g. no declared variable yet)
      // are retried; structural errors are not.
      if (std::string(e.kind()) != "macro-reject") throw;
    }
  }
  throw RetryExhausted("sample_derivation: no valid derivation in " +
                       std::to_string(kSampleRetryCap) + " attempts");
}

// Signals "this derivation cannot proceed, try again" from a macro.
[[noreturn]] inline void macro_reject(const std::string& why) {
  throw err("macro-reject", why);
}

}  // namespace symgen::gramforge
