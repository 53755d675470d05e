#ifndef LDQL_PRINTER_H
#define LDQL_PRINTER_H

#include <string>

#include "ldql/ast.h"

namespace ldql {

/// Canonical textual form; parse_query(serialize_query(q)) reproduces q for
/// any query free of reserved (generated) variable names.
std::string serialize_query(const LdqlQuery& q);
std::string serialize_lpe(const Lpe& l);
std::string serialize_pattern(const GraphPattern& p);
std::string serialize_expr(const Expr& e);

std::string serialize_term(const RdfTerm& t);
std::string serialize_mapping(const SolutionMapping& m);

}  // namespace ldql

#endif
