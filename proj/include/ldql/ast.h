#ifndef LDQL_AST_H
#define LDQL_AST_H

#include <memory>
#include <set>
#include <string>

#include "ldql/algebra.h"
#include "ldql/rdf.h"

namespace ldql {

struct LdqlQuery;
using QueryPtr = std::shared_ptr<const LdqlQuery>;

struct Lpe;
using LpePtr = std::shared_ptr<const Lpe>;

/// Link path expressions: nested regular expressions over link patterns.
struct Lpe {
  enum class Kind { Epsilon, Pattern, Concat, Alt, Star, Test, NavSub };

  Kind kind;
  LinkPattern pattern;  // Pattern
  LpePtr left, right;   // Concat/Alt both, Star/Test left
  Variable var;         // NavSub
  QueryPtr sub;         // NavSub

  static LpePtr epsilon();
  static LpePtr link(LinkPattern lp);
  static LpePtr concat(LpePtr a, LpePtr b);
  static LpePtr alt(LpePtr a, LpePtr b);
  static LpePtr star(LpePtr a);
  static LpePtr test(LpePtr a);
  static LpePtr nav(Variable v, QueryPtr q);
};

/// LDQL queries: basic queries pairing an LPE with a SPARQL pattern, seed
/// operators, conjunction, disjunction, and projection.
struct LdqlQuery {
  enum class Kind { Basic, SeedUris, SeedVar, And, Union, Project };

  Kind kind;
  LpePtr lpe;                       // Basic
  PatternPtr pattern;               // Basic
  std::set<std::string> seed_uris;  // SeedUris (may be empty)
  Variable seed_var;                // SeedVar
  QueryPtr left, right;             // And/Union both; SeedUris/SeedVar/Project left
  std::set<Variable> project_vars;  // Project

  static QueryPtr basic(LpePtr lpe, PatternPtr pattern);
  static QueryPtr seed(std::set<std::string> uris, QueryPtr q);
  static QueryPtr seed(Variable v, QueryPtr q);
  static QueryPtr q_and(QueryPtr a, QueryPtr b);
  static QueryPtr q_union(QueryPtr a, QueryPtr b);
  static QueryPtr project(std::set<Variable> vars, QueryPtr q);
};

bool lpe_equal(const LpePtr& a, const LpePtr& b);
bool query_equal(const QueryPtr& a, const QueryPtr& b);

/// URIs mentioned anywhere in the query: seed sets, link patterns, graph
/// patterns, and expressions, recursing through nested subqueries.
std::set<std::string> query_uris(const LdqlQuery& q);
std::set<std::string> lpe_uris(const Lpe& l);

/// Variables mentioned anywhere (patterns, SEED variables, projections and
/// NavSub variables), recursing through nested subqueries.
std::set<Variable> query_vars(const LdqlQuery& q);
std::set<Variable> lpe_vars(const Lpe& l);

size_t query_node_count(const LdqlQuery& q);

}  // namespace ldql

#endif
