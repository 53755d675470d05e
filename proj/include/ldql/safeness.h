#ifndef LDQL_SAFENESS_H
#define LDQL_SAFENESS_H

#include <memory>
#include <string>
#include <vector>

#include "ldql/ast.h"
#include "ldql/rewrite.h"

namespace ldql {

struct SafenessCertificate;
using CertPtr = std::shared_ptr<const SafenessCertificate>;

struct LpeSafety;
using LpeSafetyPtr = std::shared_ptr<const LpeSafety>;

struct UnitEvidence;
using UnitEvidencePtr = std::shared_ptr<const UnitEvidence>;

/// Evidence that an LPE can be executed with finitely many lookups: leaves
/// are epsilon and link patterns, structural nodes list their children, and
/// navigation subqueries carry a certificate for the inner query.
struct LpeSafety {
  std::vector<LpeSafetyPtr> children;
  CertPtr nav_query;  // NavSub nodes only
};

/// Evidence that a unit is Web-safe on its own: basic queries carry LPE
/// evidence, projections and constant SEEDs carry a certificate for their
/// subquery, and composite (AND/UNION) units carry a certificate for the
/// whole unit.
struct UnitEvidence {
  enum class Kind { Basic, Project, SeedUris, Composite };

  Kind kind;
  LpeSafetyPtr lpe;  // Basic
  CertPtr sub;       // Project / SeedUris / Composite
};

struct Justification {
  enum class Kind { Safe, SeedVarBound };

  Kind kind;
  UnitEvidencePtr safe_unit;      // Safe
  Variable var;                   // SeedVarBound: the SEED variable
  std::vector<size_t> providers;  // SeedVarBound: earlier order positions binding it
  CertPtr inner;                  // SeedVarBound: certificate for the subquery
};

/// An execution order for the units of one UNION-free conjunct, with one
/// justification per placed unit.
struct ConjunctOrdering {
  std::vector<size_t> order;  // permutation of the conjunct's unit indices
  std::vector<Justification> justifications;
};

struct SafenessCertificate {
  QueryPtr normal_form;
  std::vector<ConjunctOrdering> conjuncts;  // one per UNION branch
};

struct Refusal {
  std::string where;
  std::vector<Variable> blocked_vars;  // SEED variables that no earlier unit binds
  std::string detail;
};

/// Outcome of the sufficient syntactic test. NotCertified is not a proof of
/// unsafety; the condition is sufficient only.
struct SafenessReport {
  enum class Verdict { Certified, NotCertified };

  Verdict verdict = Verdict::NotCertified;
  CertPtr certificate;
  std::vector<Refusal> refusals;

  bool certified() const { return verdict == Verdict::Certified; }
};

/// Rewrites `q` to UNION normal form and searches, per UNION-free conjunct,
/// an execution order in which every unit is either Web-safe on its own or a
/// (SEED ?v q') whose variable is strongly bound by earlier units.
/// Throws NormalFormError when the normal-form rewrite exceeds its guard.
SafenessReport is_websafe_syntactic(const QueryPtr& q, const NormalFormOptions& opts = {});

struct OrderResult {
  bool found = false;
  std::vector<size_t> order;
  std::vector<Justification> justifications;
  std::vector<Variable> blocked_vars;  // when not found
};

/// Greedy order search over the units of one conjunct. Admissibility of a
/// unit only depends on the union of sbvars of the already placed units,
/// which grows monotonically, so the greedy search finds an order whenever
/// any valid order exists.
OrderResult find_order(const std::vector<QueryPtr>& units,
                       const NormalFormOptions& opts = {});

/// Re-checks one conjunct ordering against its units: permutation coverage,
/// evidence shapes, and SEED-variable bindings.
bool validate_ordering(const std::vector<QueryPtr>& units,
                       const ConjunctOrdering& ordering,
                       const NormalFormOptions& opts = {});

/// Independently re-checks every obligation of the certificate against `q`:
/// the normal form is recomputed and compared structurally, permutations are
/// checked for completeness, and SEED-variable justifications are checked
/// against recomputed sbvars.
bool validate_certificate(const QueryPtr& q, const SafenessCertificate& c,
                          const NormalFormOptions& opts = {});

}  // namespace ldql

#endif
