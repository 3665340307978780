#pragma once

#include "symgen/algebra_tasks.hpp"
#include "symgen/bayes_tasks.hpp"
#include "symgen/cfg_tasks.hpp"
#include "symgen/core.hpp"
#include "symgen/graph_tasks.hpp"
#include "symgen/logic_tasks.hpp"
#include "symgen/planning_tasks.hpp"
#include "symgen/regex_tasks.hpp"
#include "symgen/tabular_tasks.hpp"
#include "symgen/textdiff.hpp"
#include "symgen/tinypy_tasks.hpp"

// The task registry: every generator and scorer behind the uniform
// generate/score contract. The catalog lists the 26 task families; the
// tagging variant of `parsing` is addressable by name but not listed as a
// separate family.

namespace symgen::detail {

inline const std::vector<Task>& task_registry() {
  static const std::vector<Task> registry = [] {
    std::vector<Task> t;
    auto add = [&](Task task) { t.push_back(std::move(task)); };

    add({"arithmetics", "evaluate an arithmetic expression exactly",
         algebra::arith_knob(), true, true, algebra::gen_arithmetics,
         algebra::score_arithmetics});
    add({"symbolic_arithmetics", "simplify an algebraic expression",
         algebra::symbolic_knob(), false, true, algebra::gen_symbolic,
         algebra::score_symbolic});
    add({"equation_system", "solve a linear system for one variable",
         algebra::eqsys_knob(), false, true, algebra::gen_equation_system,
         algebra::score_equation_system});
    add({"sequential_induction", "infer a recurrence from a sequence prefix",
         algebra::induction_knob(), false, true, algebra::gen_sequential_induction,
         algebra::score_induction});

    add({"logic_nli", "first-order entailment over verbalized formulas",
         logic::logic_knob(), false, true, logic::gen_logic_nli,
         logic::score_logic_label});
    add({"evidence_retrieval", "minimal premise subset for an entailment",
         logic::logic_knob(), false, true, logic::gen_evidence_retrieval,
         logic::score_evidence});

    add({"planning", "sequential plan for a random STRIPS problem",
         planning::planning_knob(), true, true, planning::gen_planning,
         planning::score_planning});

    add({"parsability", "classify a string as unambiguous/ambiguous/unparsable",
         cfg_tasks::cfg_knob(), true, true, cfg_tasks::gen_parsability,
         cfg_tasks::score_label});
    add({"parsing", "produce the unique parse tree of a token string",
         cfg_tasks::cfg_knob(), false, true, cfg_tasks::gen_parsing,
         cfg_tasks::score_parsing});
    add({"tagging", "tag each token with its parent nonterminal and depth",
         cfg_tasks::cfg_knob(), false, /*listed=*/false, cfg_tasks::gen_tagging,
         cfg_tasks::score_tagging});
    add({"continuation", "all valid next tokens of a prefix",
         cfg_tasks::cfg_knob(), false, true, cfg_tasks::gen_continuation,
         cfg_tasks::score_continuation});

    add({"graph_pathfinding", "shortest path in an undirected graph",
         graphs::graph_knob(), true, true, graphs::gen_pathfinding,
         graphs::score_pathfinding});
    add({"graph_node_centrality", "all nodes of maximal degree",
         graphs::graph_knob(), false, true, graphs::gen_centrality,
         graphs::score_node_set});
    add({"graph_cycle_detection", "node set of the unique cycle",
         graphs::graph_knob(), false, true, graphs::gen_cycle_detection,
         graphs::score_node_set});
    add({"graph_isomorphism", "decide whether two graphs are isomorphic",
         graphs::graph_knob(), false, true, graphs::gen_isomorphism,
         graphs::score_bool});

    add({"bayesian_association", "posterior marginal under observation",
         bayes::bayes_knob(), false, true, bayes::gen_association,
         bayes::score_distribution});
    add({"bayesian_intervention", "posterior under a do-intervention",
         bayes::bayes_knob(), false, true, bayes::gen_intervention,
         bayes::score_distribution});

    add({"regex_following", "produce a string matching a pattern",
         rx::regex_knob(), false, true, rx::gen_regex_following,
         rx::score_following});
    add({"regex_induction", "infer a pattern from examples",
         rx::regex_knob(), false, true, rx::gen_regex_induction,
         rx::score_regex_induction});

    add({"set_intersection", "intersection of two rendered sets",
         tabular::set_knob(), false, true, tabular::gen_set_intersection,
         tabular::score_jaccard_sets});
    add({"set_missing_element", "elements removed from a contiguous run",
         tabular::set_knob(), false, true, tabular::gen_missing_element,
         tabular::score_jaccard_sets});
    add({"set_equality", "decide whether two sets are equal",
         tabular::set_knob(), false, true, tabular::gen_set_equality,
         tabular::score_set_equality});
    add({"table_qa", "answer a SQL query over a synthetic table",
         tabular::table_knob(), false, true, tabular::gen_table_qa,
         tabular::score_table_qa});
    add({"table_conversion", "convert a table between text formats",
         tabular::table_knob(), false, true, tabular::gen_table_conversion,
         tabular::score_table_conversion});

    add({"diff_prediction", "produce the unified diff between two texts",
         textdiff::diff_knob(), false, true, textdiff::gen_diff_prediction,
         textdiff::score_diff_prediction});
    add({"diff_patching", "apply a unified diff to a source text",
         textdiff::diff_knob(), false, true, textdiff::gen_diff_patching,
         textdiff::score_diff_patching});

    add({"code_execution", "predict the stdout of a synthetic program",
         tinypy::tinypy_knob(), false, true, tinypy::gen_code_execution,
         tinypy::score_code_execution});
    return t;
  }();
  return registry;
}

}  // namespace symgen::detail
