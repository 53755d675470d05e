#ifndef LDQL_TESTS_HELPERS_H
#define LDQL_TESTS_HELPERS_H

#include <string>

#include "ldql/parser.h"
#include "ldql/printer.h"
#include "ldql/rdf.h"
#include "ldql/semantics.h"

namespace ldql::test {

inline std::string fixture(const std::string& name) {
  return std::string(LDQL_FIXTURE_DIR) + "/" + name;
}

inline WebOfLinkedData wex() { return load_web_file(fixture("wex.ldw")); }

inline RdfTerm uri(const std::string& u) { return RdfTerm::uri(u); }
inline RdfTerm lit(const std::string& l) { return RdfTerm::literal(l); }
inline Variable var(const std::string& n) { return Variable{n}; }

inline RdfTriple triple(const std::string& s, const std::string& p, const std::string& o) {
  return make_triple(uri(s), uri(p), uri(o));
}

inline SolutionMapping mapping(
    std::initializer_list<std::pair<std::string, RdfTerm>> bindings) {
  SolutionMapping m;
  for (const auto& [name, term] : bindings) m.emplace(Variable{name}, term);
  return m;
}

// The running-example queries.
inline QueryPtr q_ex() { return parse_query("SEED ?x << eps , { ?x <p1> ?w } >>"); }
inline QueryPtr q_ex_prime() {
  return parse_query("<< {_ <p1> _}* / [{_ <p2> _}] , { ?x <p1> ?y . ?x <p2> ?z } >>");
}
inline QueryPtr q_ex_second() {
  return LdqlQuery::q_and(q_ex(), q_ex_prime());
}

}  // namespace ldql::test

#endif
