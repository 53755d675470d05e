#ifndef LDQL_ORACLES_H
#define LDQL_ORACLES_H

#include <memory>
#include <string>
#include <vector>

#include "ldql/algebra.h"
#include "ldql/rdf.h"

namespace ldql {

// ---------------------------------------------------------------------------
// Property-path patterns under context-based semantics
// ---------------------------------------------------------------------------

struct PpExpr;
using PpPtr = std::shared_ptr<const PpExpr>;

struct PpExpr {
  enum class Kind { Pred, NegSet, Seq, Alt, Star };

  Kind kind;
  std::string pred;                 // Pred
  std::vector<std::string> negated; // NegSet (non-empty)
  PpPtr left, right;

  static PpPtr pred_uri(std::string p);
  static PpPtr neg_set(std::vector<std::string> uris);
  static PpPtr seq(PpPtr a, PpPtr b);
  static PpPtr alt(PpPtr a, PpPtr b);
  static PpPtr star(PpPtr a);
};

/// Endpoint of a PP-pattern: URI, literal, or variable.
using PpEndpoint = TermOrVar;

struct PpPattern {
  PpEndpoint alpha;
  PpPtr pp;
  PpEndpoint beta;
};

/// Context-based evaluation of a PP-pattern: each navigation step reads only
/// the subject-matching triples of the current URI's authoritative document.
/// Star is the reflexive clause over terms(W) plus all concatenation powers.
SolutionSet eval_pp_ctxt(const PpPattern& p, const WebOfLinkedData& w);

/// The context selector: subject-matching triples of data(adoc(u)) for
/// retrievable URIs, empty for every other term.
std::set<RdfTriple> context_selector(const WebOfLinkedData& w, const RdfTerm& a);

/// The pair relation {(a,b) | b reachable from a via pp} over terms(w);
/// eval_pp_ctxt is its endpoint unification.
std::set<std::pair<RdfTerm, RdfTerm>> pp_relation(const PpExpr& pp,
                                                  const WebOfLinkedData& w);

// ---------------------------------------------------------------------------
// NautiLOD (without action rules)
// ---------------------------------------------------------------------------

struct NautilodExpr;
using NautilodPtr = std::shared_ptr<const NautilodExpr>;

struct NautilodExpr {
  enum class Kind { Fwd, Bwd, AnyFwd, Seq, Alt, Star, AskTest };

  Kind kind;
  std::string pred;  // Fwd/Bwd
  NautilodPtr left, right;
  PatternPtr ask;  // AskTest

  static NautilodPtr fwd(std::string p);
  static NautilodPtr bwd(std::string p);
  static NautilodPtr any_fwd();
  static NautilodPtr seq(NautilodPtr a, NautilodPtr b);
  static NautilodPtr alt(NautilodPtr a, NautilodPtr b);
  static NautilodPtr star(NautilodPtr a);
  static NautilodPtr ask_test(NautilodPtr a, PatternPtr p);
};

/// NautiLOD evaluation from a retrievable start URI; results may include
/// literals and blank nodes, but navigation continues only through URIs in
/// dom(adoc). The start URI must be retrievable (caller error otherwise).
std::set<RdfTerm> eval_nautilod(const NautilodExpr& n, const WebOfLinkedData& w,
                                const std::string& start);

// ---------------------------------------------------------------------------
// Reachability-based SPARQL semantics
// ---------------------------------------------------------------------------

enum class ReachCriterion { All, None, Match };

struct ReachableDocSet {
  std::set<std::string> doc_ids;
  ReachCriterion criterion;
  std::set<std::string> seeds;
};

/// Least fixpoint of the two reachability conditions: seed documents, plus
/// targets of link graph edges from reachable documents whose label passes
/// the criterion.
ReachableDocSet reachable_docs(ReachCriterion c, const std::set<std::string>& seeds,
                               const GraphPattern& p, const WebOfLinkedData& w);

/// Evaluation of `p` over the union of all reachable documents' triples,
/// with an empty named-graph set.
SolutionSet eval_reach(const GraphPattern& p, ReachCriterion c,
                       const std::set<std::string>& seeds, const WebOfLinkedData& w);

/// Whether some triple pattern of `p` matches `t` under some mapping (the
/// c_Match criterion test).
bool matches_some_triple_pattern(const GraphPattern& p, const RdfTriple& t);

// ---------------------------------------------------------------------------
// Surface syntax
// ---------------------------------------------------------------------------

/// PP patterns: `<a> <p>/!(<u>|<v>)|<q>* ?y` — endpoints are URIs, literals
/// or variables; expressions use `/`, `|`, `*`, `!(...)` and parentheses.
PpPattern parse_pp_pattern(const std::string& text);

/// NautiLOD expressions: `<p>`, `<p>^`, `<>` (any forward), `/`, `|`, `*`,
/// `[ASK pattern]` and parentheses.
NautilodPtr parse_nautilod(const std::string& text);

std::string serialize_pp_pattern(const PpPattern& p);
std::string serialize_nautilod(const NautilodExpr& n);

}  // namespace ldql

#endif
