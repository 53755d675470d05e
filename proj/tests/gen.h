#ifndef LDQL_TESTS_GEN_H
#define LDQL_TESTS_GEN_H

#include <random>

#include "ldql/ast.h"
#include "ldql/oracles.h"

namespace ldql::gen {

using Rng = std::mt19937_64;

struct WebOptions {
  int max_docs = 5;
  int max_triples_per_doc = 4;
  // Register every URI occurring in the data in adoc (keeps the executor's
  // lookup bound provable); when false some data URIs stay unretrievable.
  bool cover_data_uris = true;
  bool blanks = true;
};

WebOfLinkedData web(Rng& rng, const WebOptions& opts = {});

/// Random seed set drawn from dom(adoc) (possibly empty).
std::set<std::string> seeds(Rng& rng, const WebOfLinkedData& w);

/// Graph pattern over the shared URI/literal/variable pools. `allow_graph`
/// excludes the GRAPH operator (the reachability formalism has no named
/// graphs in scope). Passing the target web biases triple patterns toward
/// abstractions of its actual data.
PatternPtr pattern(Rng& rng, int depth, bool allow_graph = true,
                   const WebOfLinkedData* web = nullptr);

/// Arbitrary LPE; when `nav` is false the expression is pattern/regex only.
LpePtr lpe(Rng& rng, int depth, bool nav, const WebOfLinkedData* web = nullptr);

/// A query that the analyzer certifies by construction: SEED-variable units
/// appear only in conjunctions behind units that strongly bind them, with
/// inner queries whose evaluation is refusal-free.
QueryPtr certified_query(Rng& rng, int depth, const WebOfLinkedData* web = nullptr);

/// Arbitrary query, possibly uncertified, but refusal-free under the
/// reference evaluator (SEED-variable subqueries are unsatisfiable at a
/// generic context).
QueryPtr query(Rng& rng, int depth, const WebOfLinkedData* web = nullptr);

PpPtr pp(Rng& rng, int depth, bool allow_star = true);
PpPattern pp_pattern(Rng& rng, int depth);
NautilodPtr nautilod(Rng& rng, int depth);

}  // namespace ldql::gen

#endif
