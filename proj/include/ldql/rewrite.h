#ifndef LDQL_REWRITE_H
#define LDQL_REWRITE_H

#include <stdexcept>
#include <vector>

#include "ldql/ast.h"

namespace ldql {

/// Draws variables from the reserved `_g` namespace, which the parser
/// rejects, so generated names can never capture user variables.
class FreshVars {
 public:
  Variable next() { return Variable{"_g" + std::to_string(counter_++)}; }

 private:
  int counter_ = 0;
};

/// Rewrites an LPE into one built from epsilon, navigation subqueries and
/// star only; link patterns, concatenation, alternation and tests are
/// compiled away. Semantics are preserved (nested subquery LPEs are rewritten
/// too).
LpePtr desugar(const LpePtr& l);
LpePtr desugar(const LpePtr& l, FreshVars& fresh);
QueryPtr desugar_query(const QueryPtr& q);

/// Strongly bound variables of a query: variables bound in every solution
/// mapping the query can produce.
std::set<Variable> sbvars_query(const LdqlQuery& q);

class NormalFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NormalFormOptions {
  size_t node_guard = 100000;  // abort when the rewritten query grows past this
};

/// Distributes UNION over AND, SEED and projection until the query is a
/// top-level UNION of UNION-free conjunctions. Queries already in that shape
/// are returned unchanged. LPE subqueries are left untouched. Throws
/// NormalFormError when the rewritten query exceeds the node guard.
QueryPtr rewrite_union_normal_form(const QueryPtr& q, const NormalFormOptions& opts = {});

bool is_union_normal_form(const LdqlQuery& q);
bool is_union_free_normal_form(const LdqlQuery& q);

/// Flattens nested UNION (resp. AND) nodes into the operand list.
std::vector<QueryPtr> union_branches(const QueryPtr& q);
std::vector<QueryPtr> and_units(const QueryPtr& q);

}  // namespace ldql

#endif
