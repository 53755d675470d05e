#ifndef LDQL_SEMANTICS_H
#define LDQL_SEMANTICS_H

#include <stdexcept>

#include "ldql/ast.h"

namespace ldql {

/// Raised when the denotational result of a (SEED ?v q) subquery cannot be
/// enumerated: the subquery yields solutions for a generic fresh context URI,
/// so its union over all URIs is infinite.
class NonEnumerableError : public std::runtime_error {
 public:
  NonEnumerableError(const Variable& v, const std::string& detail)
      : std::runtime_error("non-enumerable result for SEED ?" + v.name + ": " + detail),
        var(v) {}

  Variable var;
};

/// Denotational reference evaluation of an LDQL query over a fully
/// materialized web. The union over all URIs in the SEED-variable clause is
/// computed over the finite set of relevant URIs (dom(adoc), URIs in the
/// web's data, URIs in the query); a fresh witness URI outside that set
/// detects the remaining contributions, raising NonEnumerableError rather
/// than returning a wrong finite answer.
SolutionSet eval_query(const LdqlQuery& q, const WebOfLinkedData& w,
                       const std::set<std::string>& seeds);

/// Context-based reference evaluation of an LPE. Contexts outside dom(adoc)
/// yield the empty set for every LPE.
std::set<std::string> eval_lpe(const Lpe& l, const WebOfLinkedData& w,
                               const std::string& ctx);

}  // namespace ldql

#endif
