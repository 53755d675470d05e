#ifndef LDQL_TRANSLATE_H
#define LDQL_TRANSLATE_H

#include "ldql/ast.h"
#include "ldql/oracles.h"

namespace ldql {

/// Translates a PP-pattern into an LDQL query such that the context-based
/// evaluation of the pattern equals the ∅-seed evaluation of the query, with
/// exact solution domains ({alpha,beta} ∩ V). Internal variables come from
/// the reserved namespace.
QueryPtr translate_pp(const PpPattern& p);

struct NautilodTranslation {
  QueryPtr query;
  Variable out;  // the free variable carrying the navigation result
};

/// Translates a NautiLOD expression into an LDQL query with one free
/// variable: for start URIs u in dom(adoc), u' is reached by the expression
/// iff {out -> u'} is in the {u}-seed evaluation of the query.
NautilodTranslation translate_nautilod(const NautilodExpr& n);

/// Translates reachability-based SPARQL evaluation into a basic LDQL query
/// over the criterion's LPE: epsilon for None, an unrestricted star for All,
/// and a star over per-triple-pattern navigation subqueries for Match.
QueryPtr translate_reachability(ReachCriterion c, const PatternPtr& p);

}  // namespace ldql

#endif
