#ifndef LDQL_ALGEBRA_H
#define LDQL_ALGEBRA_H

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ldql/rdf.h"

namespace ldql {

struct Variable {
  std::string name;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// A triple-pattern slot: constant RDF term or variable. Blank nodes are not
/// allowed in patterns.
using TermOrVar = std::variant<RdfTerm, Variable>;

inline bool is_var(const TermOrVar& t) { return std::holds_alternative<Variable>(t); }
inline const Variable& as_var(const TermOrVar& t) { return std::get<Variable>(t); }
inline const RdfTerm& as_term(const TermOrVar& t) { return std::get<RdfTerm>(t); }

struct TriplePattern {
  TermOrVar s, p, o;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Filter/BIND expressions: equality tests and boolean connectives over
/// variables and constants.
struct Expr {
  enum class Kind { Eq, Neq, And, Or, Not, Const, Var };

  Kind kind;
  ExprPtr lhs, rhs;  // Eq/Neq/And/Or both, Not lhs only
  RdfTerm constant;  // Const
  Variable var;      // Var

  static ExprPtr eq(ExprPtr a, ExprPtr b);
  static ExprPtr neq(ExprPtr a, ExprPtr b);
  static ExprPtr logical_and(ExprPtr a, ExprPtr b);
  static ExprPtr logical_or(ExprPtr a, ExprPtr b);
  static ExprPtr logical_not(ExprPtr a);
  static ExprPtr constant_term(RdfTerm t);
  static ExprPtr variable(Variable v);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);
std::set<Variable> expr_vars(const ExprPtr& e);
std::set<std::string> expr_uris(const ExprPtr& e);

struct GraphPattern;
using PatternPtr = std::shared_ptr<const GraphPattern>;

/// SPARQL graph patterns restricted to AND, OPT, UNION, FILTER, GRAPH and
/// BIND over basic graph patterns, with set semantics.
struct GraphPattern {
  enum class Kind { Bgp, And, Opt, Union, Filter, Graph, Bind };

  Kind kind;
  std::vector<TriplePattern> triples;  // Bgp (kept sorted, deduplicated)
  PatternPtr left, right;              // And/Opt/Union; Filter/Graph/Bind use left
  ExprPtr expr;                        // Filter/Bind
  Variable bind_var;                   // Bind
  TermOrVar graph_term;                // Graph: URI or variable

  static PatternPtr bgp(std::vector<TriplePattern> triples);
  static PatternPtr empty_bgp() { return bgp({}); }
  static PatternPtr p_and(PatternPtr a, PatternPtr b);
  static PatternPtr opt(PatternPtr a, PatternPtr b);
  static PatternPtr p_union(PatternPtr a, PatternPtr b);
  static PatternPtr filter(PatternPtr a, ExprPtr e);
  /// `g` must be a URI term or a variable.
  static PatternPtr graph(TermOrVar g, PatternPtr a);
  /// `v` must not occur in `a` (standard BIND well-formedness).
  static PatternPtr bind(PatternPtr a, ExprPtr e, Variable v);
};

bool pattern_equal(const PatternPtr& a, const PatternPtr& b);

/// Every variable occurring anywhere in the pattern (incl. FILTER/BIND
/// expressions and GRAPH variables).
std::set<Variable> vars_of_pattern(const GraphPattern& p);
std::set<std::string> pattern_uris(const GraphPattern& p);
/// All triple patterns occurring in BGPs anywhere inside `p`.
std::vector<TriplePattern> triple_patterns_of(const GraphPattern& p);

using SolutionMapping = std::map<Variable, RdfTerm>;
using SolutionSet = std::set<SolutionMapping>;

bool compatible(const SolutionMapping& a, const SolutionMapping& b);
SolutionSet join(const SolutionSet& a, const SolutionSet& b);
SolutionSet set_union(const SolutionSet& a, const SolutionSet& b);
/// Projection per the LDQL semantics: dom(out) = dom(in) ∩ vars.
SolutionSet project(const SolutionSet& a, const std::set<Variable>& vars);

/// Set-semantics evaluation of `p` over `active` within dataset `ds`.
/// Total: filter/bind errors drop the condition or the binding, never throw.
SolutionSet eval_pattern(const GraphPattern& p, const std::set<RdfTriple>& active,
                         const RdfDataset& ds);

/// Variables guaranteed bound in every solution of `p`.
std::set<Variable> sbvars_pattern(const GraphPattern& p);

}  // namespace ldql

#endif
