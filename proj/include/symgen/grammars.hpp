#pragma once

#include "symgen/gramforge.hpp"

// Builtin grammar assets and the macro/transform toolset they rely on.
// Callers seed derivation state before sampling:
//   english_fol: lists "adjectives", "names"
//   tinypy:      list "pool" (unused variable names)

namespace symgen::gramforge {

inline Toolset standard_tools() {
  Toolset t;

  // $pick:LIST — uniform element of a state list.
  t.macros["pick"] = [](const std::vector<std::string>& args, DerivState& st, Rng& rng) {
    const auto& list = st.get(args.at(0));
    if (list.empty()) macro_reject("empty list " + args.at(0));
    return list[rng.below(list.size())];
  };
  // $int:LO:HI — uniform integer literal.
  t.macros["int"] = [](const std::vector<std::string>& args, DerivState&, Rng& rng) {
    int64_t lo = std::stoll(args.at(0)), hi = std::stoll(args.at(1));
    return std::to_string(rng.range(lo, hi));
  };
  // $dec1:LO:HI — one-decimal literal, e.g. "3.5".
  t.macros["dec1"] = [](const std::vector<std::string>& args, DerivState&, Rng& rng) {
    int64_t lo = std::stoll(args.at(0)), hi = std::stoll(args.at(1));
    int64_t tenths = rng.range(lo * 10, hi * 10);
    std::string s = std::to_string(tenths / 10) + "." + std::to_string(std::llabs(tenths % 10));
    return tenths < 0 && tenths / 10 == 0 ? "-" + s : s;
  };
  // $brace_range:LO:HI — "{m,n}" with LO <= m <= n <= HI.
  t.macros["brace_range"] = [](const std::vector<std::string>& args, DerivState&, Rng& rng) {
    int64_t lo = std::stoll(args.at(0)), hi = std::stoll(args.at(1));
    int64_t m = rng.range(lo, hi), n = rng.range(m, hi);
    return "{" + std::to_string(m) + "," + std::to_string(n) + "}";
  };
  // $newvar — take an unused name from "pool"; committed into "declared"
  // by the commit_decl transform once the statement finishes.
  t.macros["newvar"] = [](const std::vector<std::string>&, DerivState& st, Rng& rng) {
    auto& pool = st.lists["pool"];
    if (pool.empty()) macro_reject("variable pool exhausted");
    size_t i = rng.below(pool.size());
    std::string name = pool[i];
    pool.erase(pool.begin() + i);
    st.push("newly", name);
    return name;
  };
  // $newloop — fresh name, immediately declared, protected from assignment.
  t.macros["newloop"] = [](const std::vector<std::string>&, DerivState& st, Rng& rng) {
    auto& pool = st.lists["pool"];
    if (pool.empty()) macro_reject("variable pool exhausted");
    size_t i = rng.below(pool.size());
    std::string name = pool[i];
    pool.erase(pool.begin() + i);
    st.push("declared", name);
    st.push("protected", name);
    st.push("loopstack", name);
    return name;
  };
  // $looptop — innermost loop counter.
  t.macros["looptop"] = [](const std::vector<std::string>&, DerivState& st, Rng&) {
    const auto& stack = st.get("loopstack");
    if (stack.empty()) macro_reject("no enclosing loop");
    return stack.back();
  };
  // $var — any declared variable.
  t.macros["var"] = [](const std::vector<std::string>&, DerivState& st, Rng& rng) {
    const auto& vars = st.get("declared");
    if (vars.empty()) macro_reject("no declared variable");
    return vars[rng.below(vars.size())];
  };
  // $assignable — declared variable that is not a protected loop counter.
  t.macros["assignable"] = [](const std::vector<std::string>&, DerivState& st, Rng& rng) {
    std::vector<std::string> ok;
    for (const auto& v : st.get("declared"))
      if (!st.contains("protected", v)) ok.push_back(v);
    if (ok.empty()) macro_reject("no assignable variable");
    return ok[rng.below(ok.size())];
  };

  t.transforms["commit_decl"] = [](DerivState& st, Rng&) {
    for (const auto& v : st.get("newly")) st.push("declared", v);
    st.lists["newly"].clear();
  };
  t.transforms["pop_loop"] = [](DerivState& st, Rng&) {
    auto& stack = st.lists["loopstack"];
    if (stack.empty()) return;
    std::string name = stack.back();
    stack.pop_back();
    auto& prot = st.lists["protected"];
    prot.erase(std::remove(prot.begin(), prot.end(), name), prot.end());
  };
  return t;
}

// ---------------------------------------------------------------------------

inline const char* kEnglishFolSource = R"(# gramforge v1
%channels en fol
%glue fol
%start S
S -> U @en | U @fol :: 4
S -> 'if' U ', then' U @en | '(' U '=>' U ')' @fol :: 1.1
S -> 'either' U 'or' U @en | '(' U '|' U ')' @fol :: 0.9
S -> U ', and' U @en | '(' U '&' U ')' @fol :: 0.7
U -> N 'is' A @en | A '(' N ')' @fol :: 3
U -> N 'is not' A @en | '~' A '(' N ')' @fol :: 1.4
U -> 'everyone who is' A 'is' B @en | '![X]:(' A '(X)=>' B '(X))' @fol :: 2.2
U -> 'everyone is' A 'or' B @en | '![X]:(' A '(X)|' B '(X))' @fol :: 0.8
U -> 'someone is both' A 'and' B @en | '?[X]:(' A '(X)&' B '(X))' @fol :: 1.1
U -> 'someone is' A @en | '?[X]:' A '(X)' @fol :: 1
U -> 'no one is' A @en | '![X]:~' A '(X)' @fol :: 1
U -> N 'is' M @en | N '=' M @fol :: 0.5
U -> N 'is not' M @en | '~(' N '=' M ')' @fol :: 0.5
U -> 'everyone who is' A 'is' N @en | '![X]:(' A '(X)=>X=' N ')' @fol :: 0.45
A -> $pick:adjectives @en | $pick:adjectives @fol
B -> $pick:adjectives @en | $pick:adjectives @fol
N -> $pick:names @en | $pick:names @fol
M -> $pick:names @en | $pick:names @fol
)";

inline const char* kSimpleEnglishSource = R"(# gramforge v1
%start S
S -> NP VP
NP -> Det Noun :: 2
NP -> Det Adj Noun :: 1.2
NP -> Name :: 1.5
VP -> Verb NP :: 2
VP -> Verb :: 1
VP -> Verb NP PP :: 0.7
PP -> Prep NP
Det -> the :: 2
Det -> a :: 1
Noun -> dog
Noun -> cat
Noun -> bird
Noun -> garden
Noun -> house
Noun -> book
Adj -> small
Adj -> old
Adj -> happy
Adj -> green
Verb -> sees
Verb -> likes
Verb -> finds
Verb -> sleeps
Name -> mary
Name -> john
Prep -> in
Prep -> near
)";

// Generates grammar-DSL sources: every sample defines S first and A later,
// so all nonterminal references resolve and the text parses back.
inline const char* kCfgMetaSource = R"(# gramforge v1
%start G
G -> SLine SMore ALine AMore
SMore -> SLine SMore :: 0.9
SMore -> <eps> :: 1
AMore -> ALine AMore :: 0.6
AMore -> <eps> :: 1
SLine -> 'S' '->' Syms '\n'
ALine -> 'A' '->' Syms '\n'
Syms -> Sym Syms :: 1.5
Syms -> Sym :: 1
Syms -> '<eps>' :: 0.25
Sym -> 'S' :: 0.8
Sym -> 'A' :: 0.8
Sym -> a :: 1
Sym -> b :: 1
Sym -> c :: 0.7
Sym -> '(' :: 0.3
Sym -> ')' :: 0.3
)";

inline const char* kRegexSource = R"(# gramforge v1
%glue text
%start R
R -> Alt
Alt -> Cat '|' Alt :: 0.6
Alt -> Cat :: 2.4
Cat -> Piece Cat :: 1.7
Cat -> Piece Piece :: 1
Piece -> Atom Quant :: 0.9
Piece -> Atom :: 2.4
Atom -> Char :: 2.6
Atom -> Class :: 0.9
Atom -> '(' Alt ')' :: 0.7
Quant -> '*' :: 1
Quant -> '+' :: 1.2
Quant -> '?' :: 1
Quant -> $brace_range:1:4 :: 0.8
Class -> '[' CBody ']' :: 3
Class -> '[^' CBody ']' :: 1
CBody -> CItem CBody :: 1.2
CBody -> CItem :: 1
CItem -> Char :: 2
CItem -> Range :: 1
Range -> 'a-d' :: 1
Range -> 'b-e' :: 1
Range -> '0-3' :: 1
Char -> a :: 1.4
Char -> b :: 1.4
Char -> c :: 1.2
Char -> d :: 1
Char -> e :: 0.8
Char -> '0' :: 0.7
Char -> '1' :: 0.7
Char -> '2' :: 0.5
)";

// Straight-line assignments, prints, branches, bounded for-loops and
// while-loops over a generation-enforced decreasing counter. Layout tokens
// 'NL' / 'IND' / 'DED' are translated to newlines and indentation by the
// tinypy renderer.
inline const char* kTinypySource = R"(# gramforge v1
%start Program
Program -> First Stmts LastPrint
First -> $newvar '=' IntLit 'NL' :: 1 :: commit_decl
LastPrint -> print '(' $var ')' 'NL'
Stmts -> Stmt Stmts :: 1.6
Stmts -> Stmt :: 1
Stmt -> Assign :: 2.4
Stmt -> Print :: 2
Stmt -> If :: 1.1
Stmt -> For :: 0.9
Stmt -> While :: 0.7
Assign -> $newvar '=' Expr 'NL' :: 1.4 :: commit_decl
Assign -> $assignable '=' Expr 'NL' :: 1
Assign -> $assignable '=' FloatLit 'NL' :: 0.35
Print -> print '(' Expr ')' 'NL'
If -> if Cond ':' 'NL' 'IND' Block 'DED' :: 1.2
If -> if Cond ':' 'NL' 'IND' Block 'DED' else ':' 'NL' 'IND' Block 'DED' :: 1
If -> if Cond ':' 'NL' 'IND' Block 'DED' elif Cond ':' 'NL' 'IND' Block 'DED' else ':' 'NL' 'IND' Block 'DED' :: 0.5
For -> for $newloop in range '(' $int:1:5 ')' ':' 'NL' 'IND' Block 'DED' :: 1 :: pop_loop
While -> $newloop '=' $int:1:6 'NL' while $looptop '>' '0' ':' 'NL' 'IND' Block $looptop '=' $looptop '-' '1' 'NL' 'DED' :: 1 :: pop_loop
Block -> Stmt Block :: 0.9
Block -> Stmt :: 1
Cond -> Sum Cmp Sum
Cmp -> '<' :: 1
Cmp -> '>' :: 1
Cmp -> '<=' :: 0.7
Cmp -> '>=' :: 0.7
Cmp -> '==' :: 0.8
Cmp -> '!=' :: 0.6
Expr -> Sum
Sum -> Sum AddOp Term :: 1.2
Sum -> Term :: 2
AddOp -> '+' :: 1
AddOp -> '-' :: 1
Term -> Term MulOp Factor :: 0.8
Term -> Factor :: 2
MulOp -> '*' :: 1
MulOp -> '//' :: 0.45
MulOp -> '%' :: 0.45
Factor -> $var :: 2.2
Factor -> IntLit :: 1.6
Factor -> '(' Sum ')' :: 0.6
IntLit -> $int:0:9 :: 2
IntLit -> $int:10:40 :: 0.7
FloatLit -> $dec1:0:9
)";

// Builtin grammar registry. The divisor restriction for tinypy ('//' and
// '%' apply only to nonzero literals) is enforced by the tinypy generator's
// rejection pass rather than the grammar.
inline Grammar load_builtin(const std::string& name) {
  const char* src = nullptr;
  if (name == "english_fol") src = kEnglishFolSource;
  else if (name == "simple_english") src = kSimpleEnglishSource;
  else if (name == "cfg_meta") src = kCfgMetaSource;
  else if (name == "regex") src = kRegexSource;
  else if (name == "tinypy") src = kTinypySource;
  if (!src)
    throw err("unknown-builtin",
              "no builtin grammar '" + name +
                  "' (available: cfg_meta, english_fol, regex, simple_english, tinypy)");
  return parse_grammar(src, standard_tools());
}

}  // namespace symgen::gramforge
