#ifndef LDQL_EXECUTOR_H
#define LDQL_EXECUTOR_H

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>

#include "ldql/ast.h"
#include "ldql/safeness.h"

namespace ldql {

/// Dereferencing abstraction for query execution. Lookups are memoized for
/// the lifetime of the service (the queried Web is assumed fixed during
/// execution), and the service counts distinct dereference attempts; cache
/// hits are not counted again. Implementations provide `fetch`; `lookup` is
/// safe to call concurrently.
class LookupService {
 public:
  virtual ~LookupService() = default;

  /// Returns the retrieved document, or nullptr when the URI is not
  /// retrievable. The pointer stays valid for the service's lifetime.
  const Document* lookup(const std::string& uri);

  size_t distinct_attempts() const;
  size_t successes() const;
  size_t failures() const;
  std::set<std::string> attempted() const;

 protected:
  virtual std::optional<Document> fetch(const std::string& uri) = 0;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::optional<Document>> cache_;
  size_t successes_ = 0;
};

/// Serves lookups from an in-memory web fixture.
class FixtureLookup : public LookupService {
 public:
  explicit FixtureLookup(const WebOfLinkedData& w) : w_(w) {}

 protected:
  std::optional<Document> fetch(const std::string& uri) override;

 private:
  const WebOfLinkedData& w_;
};

/// Wraps another service and injects pseudo-random response latency. Results
/// are unchanged; used to check that execution results do not depend on
/// lookup timing.
class ChaosLookup : public LookupService {
 public:
  ChaosLookup(LookupService& inner, uint64_t seed) : inner_(inner), state_(seed | 1) {}

 protected:
  std::optional<Document> fetch(const std::string& uri) override;

 private:
  LookupService& inner_;
  uint64_t state_;
};

struct ExecutionTrace {
  std::set<std::string> attempted;
  size_t successes = 0;
  size_t failures = 0;
  size_t lpe_steps = 0;
  size_t basic_executions = 0;
  size_t conjunct_joins = 0;
  double wall_millis = 0.0;
};

/// Raised when execution is requested for a query the analyzer does not
/// certify Web-safe.
class NotCertifiedError : public std::runtime_error {
 public:
  explicit NotCertifiedError(SafenessReport report)
      : std::runtime_error("query not certified Web-safe"), report(std::move(report)) {}

  SafenessReport report;
};

/// Lookup-driven evaluation of an LPE from a context URI. Equals
/// eval_lpe(l, w, ctx) whenever `lk` faithfully serves the finite web w.
/// Navigation subqueries are certified before execution; an uncertifiable
/// subquery raises NotCertifiedError.
std::set<std::string> exec_lpe(const Lpe& l, const std::string& ctx, LookupService& lk,
                               ExecutionTrace* trace = nullptr);

/// Executes a basic query: evaluates the LPE from every seed, retrieves the
/// selected URIs into a dataset, and evaluates the pattern over its default
/// graph. Refuses (NotCertifiedError) when the LPE is not certified Web-safe.
SolutionSet exec_basic(const LpePtr& lpe, const PatternPtr& pattern,
                       const std::set<std::string>& seeds, LookupService& lk,
                       ExecutionTrace* trace = nullptr);

/// Executes the units of one UNION-free conjunct in the certified order:
/// an iterative join pipeline in which SEED-variable units draw their seed
/// URIs from the bindings accumulated so far. The ordering is re-validated
/// defensively; a mismatch raises NotCertifiedError.
SolutionSet exec_union_free(const std::vector<QueryPtr>& units,
                            const ConjunctOrdering& ordering,
                            const std::set<std::string>& seeds, LookupService& lk,
                            ExecutionTrace* trace = nullptr);

/// Full lookup-driven execution: certifies the query, rewrites it to UNION
/// normal form, and executes each conjunct per the certificate. Raises
/// NotCertifiedError (with the analyzer's report) for uncertified queries.
SolutionSet exec_query(const LdqlQuery& q, const std::set<std::string>& seeds,
                       LookupService& lk, ExecutionTrace* trace = nullptr,
                       const NormalFormOptions& opts = {});

/// Dereferences URIs over HTTP with content negotiation for the N-Triples
/// subset. Non-2xx responses, timeouts, parse failures and over-deep
/// redirect chains all map to "not retrievable". The authoritative URI of a
/// retrieved document is the request URI before any redirect.
class HttpLookup : public LookupService {
 public:
  struct Options {
    int timeout_seconds = 10;
    int max_redirects = 5;
    int per_host_delay_millis = 0;  // politeness delay between requests to a host
  };

  HttpLookup() = default;
  explicit HttpLookup(Options options) : options_(options) {}

 protected:
  std::optional<Document> fetch(const std::string& uri) override;

 private:
  Options options_ = Options();
  std::map<std::string, std::int64_t> last_request_ms_;
};

}  // namespace ldql

#endif
