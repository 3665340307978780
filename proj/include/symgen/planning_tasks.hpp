#pragma once

#include "symgen/planning.hpp"

// The planning task itself: prompt/payload rendering, readers for both
// formats, plan scoring with a length penalty, and state-tracking traces.

namespace symgen::planning {

// ---------------------------------------------------------------------------
// PDDL-flavored s-expression payload

inline std::string render_pddl(const StripsDomain& d, const StripsInstance& inst) {
  auto lit_sexpr = [&](const Literal& l) {
    std::string s = "(" + d.predicates[l.pred].name;
    for (int p : l.args) s += " ?p" + std::to_string(p + 1);
    return s + ")";
  };
  std::string out = "(domain";
  out += " (:types";
  for (const auto& t : d.types) out += " " + t;
  out += ") (:predicates";
  for (const auto& p : d.predicates) {
    out += " (" + p.name;
    for (size_t i = 0; i < p.arg_types.size(); ++i)
      out += " ?p" + std::to_string(i + 1) + " - " + d.types[p.arg_types[i]];
    out += ")";
  }
  out += ")";
  for (const auto& s : d.actions) {
    out += " (:action " + s.name + " :parameters (";
    for (size_t i = 0; i < s.param_types.size(); ++i) {
      if (i) out += " ";
      out += "?p" + std::to_string(i + 1) + " - " + d.types[s.param_types[i]];
    }
    out += ") :precondition (and";
    for (const auto& l : s.pre) out += " " + lit_sexpr(l);
    out += ") :effect (and";
    for (const auto& l : s.add) out += " " + lit_sexpr(l);
    for (const auto& l : s.del) out += " (not " + lit_sexpr(l) + ")";
    out += "))";
  }
  out += ")";
  out += " (problem (:objects";
  for (size_t o = 0; o < inst.objects.size(); ++o)
    out += " " + inst.objects[o] + " - " + d.types[inst.object_types[o]];
  out += ") (:init";
  for (const auto& a : inst.init) {
    out += " (" + d.predicates[a.pred].name;
    for (int o : a.objs) out += " " + inst.objects[o];
    out += ")";
  }
  out += ") (:goal (and";
  for (const auto& a : inst.goal) {
    out += " (" + d.predicates[a.pred].name;
    for (int o : a.objs) out += " " + inst.objects[o];
    out += ")";
  }
  out += ")))";
  return out;
}

namespace detail {

struct Sexpr {
  std::string atom;
  std::vector<Sexpr> kids;
  bool is_atom() const { return kids.empty() && !atom.empty(); }
};

inline bool parse_sexpr_list(const std::string& s, size_t& i, std::vector<Sexpr>& out) {
  auto ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  std::function<bool(Sexpr&)> one = [&](Sexpr& e) -> bool {
    ws();
    if (i >= s.size()) return false;
    if (s[i] == '(') {
      ++i;
      ws();
      while (i < s.size() && s[i] != ')') {
        Sexpr kid;
        if (!one(kid)) return false;
        e.kids.push_back(std::move(kid));
        ws();
      }
      if (i >= s.size()) return false;
      ++i;
      // A pure list keeps atom empty; a list with a head keeps kids.
      return true;
    }
    size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' &&
           s[i] != ')')
      ++i;
    if (i == b) return false;
    e.atom = s.substr(b, i - b);
    return true;
  };
  while (true) {
    ws();
    if (i >= s.size()) return true;
    Sexpr e;
    if (!one(e)) return false;
    out.push_back(std::move(e));
  }
}

}  // namespace detail

// Rebuilds (domain, instance) from the payload text.
inline bool parse_pddl(const std::string& text, StripsDomain& d, StripsInstance& inst) {
  std::vector<detail::Sexpr> top;
  size_t i = 0;
  if (!detail::parse_sexpr_list(text, i, top) || top.size() != 2) return false;
  const auto& dom = top[0];
  const auto& prob = top[1];
  if (dom.kids.empty() || dom.kids[0].atom != "domain") return false;
  if (prob.kids.empty() || prob.kids[0].atom != "problem") return false;

  std::map<std::string, int> type_id, pred_id;
  auto arg_name_index = [](const std::string& a) {
    // "?p3" -> 2
    return std::stoi(a.substr(2)) - 1;
  };
  for (size_t k = 1; k < dom.kids.size(); ++k) {
    const auto& sec = dom.kids[k];
    if (sec.kids.empty()) return false;
    const std::string& head = sec.kids[0].atom;
    if (head == ":types") {
      for (size_t j = 1; j < sec.kids.size(); ++j) {
        type_id[sec.kids[j].atom] = static_cast<int>(d.types.size());
        d.types.push_back(sec.kids[j].atom);
      }
    } else if (head == ":predicates") {
      for (size_t j = 1; j < sec.kids.size(); ++j) {
        const auto& ps = sec.kids[j];
        Predicate p;
        p.name = ps.kids[0].atom;
        for (size_t t = 1; t + 2 < ps.kids.size() + 1; t += 3) {
          if (t + 2 >= ps.kids.size() + 1) break;
          if (ps.kids[t + 1].atom != "-") return false;
          p.arg_types.push_back(type_id.at(ps.kids[t + 2].atom));
        }
        pred_id[p.name] = static_cast<int>(d.predicates.size());
        d.predicates.push_back(p);
      }
    } else if (head == ":action") {
      ActionSchema s;
      s.name = sec.kids[1].atom;
      size_t j = 2;
      auto read_lits = [&](const detail::Sexpr& andexpr, std::vector<Literal>& pos,
                           std::vector<Literal>* neg) -> bool {
        if (andexpr.kids.empty() || andexpr.kids[0].atom != "and") return false;
        for (size_t q = 1; q < andexpr.kids.size(); ++q) {
          const auto& le = andexpr.kids[q];
          const detail::Sexpr* body = &le;
          bool negated = false;
          if (!le.kids.empty() && le.kids[0].atom == "not") {
            negated = true;
            body = &le.kids[1];
          }
          Literal lit;
          lit.pred = pred_id.at(body->kids[0].atom);
          for (size_t t = 1; t < body->kids.size(); ++t)
            lit.args.push_back(arg_name_index(body->kids[t].atom));
          if (negated) {
            if (!neg) return false;
            neg->push_back(lit);
          } else {
            pos.push_back(lit);
          }
        }
        return true;
      };
      while (j < sec.kids.size()) {
        const std::string& key = sec.kids[j].atom;
        if (key == ":parameters") {
          const auto& ps = sec.kids[j + 1];
          for (size_t t = 0; t + 2 < ps.kids.size() + 1; t += 3) {
            if (ps.kids[t + 1].atom != "-") return false;
            s.param_types.push_back(type_id.at(ps.kids[t + 2].atom));
          }
          j += 2;
        } else if (key == ":precondition") {
          if (!read_lits(sec.kids[j + 1], s.pre, nullptr)) return false;
          j += 2;
        } else if (key == ":effect") {
          if (!read_lits(sec.kids[j + 1], s.add, &s.del)) return false;
          j += 2;
        } else {
          return false;
        }
      }
      d.actions.push_back(std::move(s));
    }
  }

  std::map<std::string, int> obj_id;
  for (size_t k = 1; k < prob.kids.size(); ++k) {
    const auto& sec = prob.kids[k];
    const std::string& head = sec.kids[0].atom;
    if (head == ":objects") {
      for (size_t j = 1; j + 2 < sec.kids.size() + 1; j += 3) {
        if (sec.kids[j + 1].atom != "-") return false;
        obj_id[sec.kids[j].atom] = static_cast<int>(inst.objects.size());
        inst.objects.push_back(sec.kids[j].atom);
        inst.object_types.push_back(type_id.at(sec.kids[j + 2].atom));
      }
    } else if (head == ":init" || head == ":goal") {
      auto read_atom = [&](const detail::Sexpr& ae) {
        GroundAtom a;
        a.pred = pred_id.at(ae.kids[0].atom);
        for (size_t t = 1; t < ae.kids.size(); ++t) a.objs.push_back(obj_id.at(ae.kids[t].atom));
        return a;
      };
      if (head == ":init") {
        for (size_t j = 1; j < sec.kids.size(); ++j) inst.init.push_back(read_atom(sec.kids[j]));
      } else {
        const auto& andexpr = sec.kids[1];
        for (size_t j = 1; j < andexpr.kids.size(); ++j)
          inst.goal.push_back(read_atom(andexpr.kids[j]));
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Reader for the prompt's structured natural-language rendering

inline bool parse_nl(const std::string& text, StripsDomain& d, StripsInstance& inst) {
  auto lines = split(text, '\n');
  std::map<std::string, int> type_id, pred_id, obj_id;
  auto strip_dot = [](std::string s) {
    s = trim(s);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  auto split_call = [](const std::string& s, std::string& name, std::vector<std::string>& args) {
    auto lp = s.find('(');
    if (lp == std::string::npos) {
      name = trim(s);
      return !name.empty();
    }
    auto rp = s.rfind(')');
    if (rp == std::string::npos || rp < lp) return false;
    name = trim(s.substr(0, lp));
    std::string inside = s.substr(lp + 1, rp - lp - 1);
    if (!trim(inside).empty())
      for (const auto& part : split(inside, ',')) args.push_back(trim(part));
    return !name.empty();
  };

  size_t li = 0;
  auto expect_prefix = [&](const std::string& p, std::string& rest) {
    while (li < lines.size() && trim(lines[li]).empty()) ++li;
    if (li >= lines.size() || !starts_with(trim(lines[li]), p)) return false;
    rest = strip_dot(trim(lines[li]).substr(p.size()));
    ++li;
    return true;
  };

  std::string rest;
  if (!expect_prefix("Types:", rest)) return false;
  for (const auto& t : split(rest, ',')) {
    type_id[trim(t)] = static_cast<int>(d.types.size());
    d.types.push_back(trim(t));
  }
  if (!expect_prefix("Objects:", rest)) return false;
  for (const auto& o : split(rest, ',')) {
    std::string item = trim(o);
    auto lp = item.find('(');
    auto rp = item.find(')');
    if (lp == std::string::npos || rp == std::string::npos) return false;
    std::string name = trim(item.substr(0, lp));
    std::string type = trim(item.substr(lp + 1, rp - lp - 1));
    obj_id[name] = static_cast<int>(inst.objects.size());
    inst.objects.push_back(name);
    inst.object_types.push_back(type_id.at(type));
  }
  if (!expect_prefix("Predicates:", rest)) return false;
  {
    // Split on commas at paren depth zero.
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : rest) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        items.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) items.push_back(cur);
    for (const auto& it : items) {
      std::string name;
      std::vector<std::string> args;
      if (!split_call(trim(it), name, args)) return false;
      Predicate p;
      p.name = name;
      for (const auto& a : args) {
        auto colon = a.find(':');
        if (colon == std::string::npos) return false;
        p.arg_types.push_back(type_id.at(trim(a.substr(colon + 1))));
      }
      pred_id[p.name] = static_cast<int>(d.predicates.size());
      d.predicates.push_back(p);
    }
  }
  if (!expect_prefix("Actions:", rest)) return false;
  while (li < lines.size() && !starts_with(trim(lines[li]), "Initial state:")) {
    std::string header = strip_dot(trim(lines[li]));
    if (header.empty()) {
      ++li;
      continue;
    }
    if (header.back() == ':') header.pop_back();
    std::string name;
    std::vector<std::string> params;
    if (!split_call(header, name, params)) return false;
    ActionSchema s;
    s.name = name;
    std::map<std::string, int> param_index;
    for (const auto& p : params) {
      auto colon = p.find(':');
      if (colon == std::string::npos) return false;
      param_index[trim(p.substr(0, colon))] = static_cast<int>(s.param_types.size());
      s.param_types.push_back(type_id.at(trim(p.substr(colon + 1))));
    }
    ++li;
    auto read_lit_line = [&](const std::string& prefix, std::vector<Literal>& out) -> bool {
      std::string body;
      if (!expect_prefix(prefix, body)) return false;
      if (trim(body) == "none") return true;
      std::vector<std::string> items;
      std::string cur;
      int depth = 0;
      for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
          items.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!trim(cur).empty()) items.push_back(cur);
      for (const auto& it : items) {
        std::string lname;
        std::vector<std::string> largs;
        if (!split_call(trim(it), lname, largs)) return false;
        Literal lit;
        lit.pred = pred_id.at(lname);
        for (const auto& a : largs) lit.args.push_back(param_index.at(trim(a)));
        out.push_back(lit);
      }
      return true;
    };
    if (!read_lit_line("preconditions:", s.pre)) return false;
    if (!read_lit_line("adds:", s.add)) return false;
    if (!read_lit_line("deletes:", s.del)) return false;
    d.actions.push_back(std::move(s));
  }
  auto read_atoms = [&](const std::string& body, std::vector<GroundAtom>& out) -> bool {
    if (trim(body) == "empty") return true;
    std::vector<std::string> items;
    std::string cur;
    int depth = 0;
    for (char c : body) {
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        items.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!trim(cur).empty()) items.push_back(cur);
    for (const auto& it : items) {
      std::string name;
      std::vector<std::string> args;
      if (!split_call(trim(it), name, args)) return false;
      GroundAtom a;
      a.pred = pred_id.at(name);
      for (const auto& ar : args) a.objs.push_back(obj_id.at(ar));
      out.push_back(a);
    }
    return true;
  };
  if (!expect_prefix("Initial state:", rest) || !read_atoms(rest, inst.init)) return false;
  if (!expect_prefix("Goal:", rest) || !read_atoms(rest, inst.goal)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Trace

inline std::string plan_trace(const StripsDomain& d, const StripsInstance& inst,
                              const std::vector<std::string>& steps) {
  Grounding g = ground(d, inst);
  std::map<std::string, const GroundAction*> by_text;
  for (const auto& a : g.actions) by_text[a.text] = &a;
  StateBits cur = g.state_of(inst.init);
  StateBits goal = g.state_of(inst.goal);

  auto remaining = [&]() {
    std::vector<std::string> miss;
    for (const auto& a : inst.goal)
      if (!get_bit(cur, g.atom_ids.at(a))) miss.push_back(atom_text(d, inst, a));
    return miss;
  };
  std::vector<std::string> init_strs;
  for (const auto& a : inst.init) init_strs.push_back(atom_text(d, inst, a));
  std::string out =
      "Initial state: " + (init_strs.empty() ? "empty" : join(init_strs, ", ")) + "\n";
  auto miss0 = remaining();
  out += "Remaining goals: " + std::to_string(miss0.size()) +
         (miss0.empty() ? "" : " (" + join(miss0, ", ") + ")") + "\n";
  int step_no = 0;
  for (const auto& s : steps) {
    auto it = by_text.find(s);
    if (it == by_text.end() || !subset_of(it->second->pre, cur))
      throw err("invalid-plan", "step " + std::to_string(step_no + 1) + " is not applicable");
    std::vector<std::string> added, deleted;
    for (size_t i = 0; i < g.atoms.size(); ++i) {
      if (get_bit(it->second->add, i) && !get_bit(cur, i))
        added.push_back(atom_text(d, inst, g.atoms[i]));
      if (get_bit(it->second->del, i) && get_bit(cur, i) && !get_bit(it->second->add, i))
        deleted.push_back(atom_text(d, inst, g.atoms[i]));
    }
    for (size_t w = 0; w < cur.size(); ++w)
      cur[w] = (cur[w] & ~it->second->del[w]) | it->second->add[w];
    auto miss = remaining();
    ++step_no;
    out += "Step " + std::to_string(step_no) + ": " + s +
           " | added: " + (added.empty() ? "none" : join(added, ", ")) +
           " | deleted: " + (deleted.empty() ? "none" : join(deleted, ", ")) +
           " | remaining goals: " + std::to_string(miss.size()) +
           (miss.empty() ? "" : " (" + join(miss, ", ") + ")") + "\n";
  }
  if (!subset_of(goal, cur)) throw err("invalid-plan", "plan does not reach the goal");
  return out;
}

// ---------------------------------------------------------------------------
// Task surface

inline TaskExample gen_planning(double level, uint64_t seed, const Budget& budget) {
  Rng rng = example_rng("planning", level, seed);
  for (int attempt = 0; attempt < kInstanceRetryCap; ++attempt) {
    budget.checkpoint();
    StripsDomain d = gen_domain(level, rng);
    if (d.actions.empty()) continue;
    auto cert = gen_instance(d, level, rng);
    if (!cert) continue;

    TaskExample ex;
    ex.task_name = "planning";
    ex.level = level;
    ex.seed = seed;
    ex.prompt =
        "You are given a planning problem.\n\n" + render_nl(d, cert->instance) +
        "\nAn action is applicable when all its preconditions hold; applying it adds "
        "its add-atoms and removes its delete-atoms. Find a sequence of actions that "
        "reaches the goal from the initial state (shorter is better).\n"
        "Answer with one action per line, formatted like: " +
        cert->gold.steps.front() + "";
    ex.answer = join(cert->gold.steps, "\n");
    ex.cot = plan_trace(d, cert->instance, cert->gold.steps);
    ex.payload = Json{{"pddl", render_pddl(d, cert->instance)},
                      {"optimal_length", cert->gold.steps.size()},
                      {"gold_plan", cert->gold.steps},
                      {"stat", static_cast<double>(cert->gold.steps.size())}};
    return ex;
  }
  throw RetryExhausted("gen_planning");
}

// Any valid goal-reaching plan earns L*/max(L*, len); invalid plans earn 0.
inline double score_planning(const std::string& answer, const TaskExample& ex) {
  StripsDomain d;
  StripsInstance inst;
  if (!parse_pddl(ex.payload.at("pddl").get<std::string>(), d, inst)) return 0.0;
  Grounding g = ground(d, inst);

  std::vector<std::string> steps;
  for (const auto& raw : split(canonical_newlines(answer), '\n')) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    // Accept "name(a, b)", "name(a,b)" and "name a b".
    std::string name;
    std::vector<std::string> args;
    auto lp = line.find('(');
    if (lp != std::string::npos) {
      auto rp = line.rfind(')');
      if (rp == std::string::npos || rp < lp) return 0.0;
      name = trim(line.substr(0, lp));
      std::string inside = line.substr(lp + 1, rp - lp - 1);
      if (!trim(inside).empty())
        for (const auto& part : split(inside, ',')) args.push_back(trim(part));
    } else {
      auto parts = split_ws(line);
      if (parts.empty()) return 0.0;
      name = parts[0];
      args.assign(parts.begin() + 1, parts.end());
    }
    steps.push_back(action_text(name, args));
  }
  if (steps.empty()) return 0.0;

  auto final_state = simulate(g, g.state_of(inst.init), steps);
  if (!final_state) return 0.0;
  if (!subset_of(g.state_of(inst.goal), *final_state)) return 0.0;
  double opt = ex.payload.at("optimal_length").get<double>();
  return opt / std::max(opt, static_cast<double>(steps.size()));
}

}  // namespace symgen::planning
