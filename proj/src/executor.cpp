#include "ldql/executor.h"

#include <chrono>
#include <deque>
#include <thread>

namespace ldql {

const Document* LookupService::lookup(const std::string& uri) {
  std::lock_guard<std::mutex> guard(mu_);
  auto it = cache_.find(uri);
  if (it == cache_.end()) {
    // Distinct dereference attempt; the result is pinned for this execution.
    it = cache_.emplace(uri, fetch(uri)).first;
    if (it->second) ++successes_;
  }
  return it->second ? &*it->second : nullptr;
}

size_t LookupService::distinct_attempts() const {
  std::lock_guard<std::mutex> guard(mu_);
  return cache_.size();
}

size_t LookupService::successes() const {
  std::lock_guard<std::mutex> guard(mu_);
  return successes_;
}

size_t LookupService::failures() const {
  std::lock_guard<std::mutex> guard(mu_);
  return cache_.size() - successes_;
}

std::set<std::string> LookupService::attempted() const {
  std::lock_guard<std::mutex> guard(mu_);
  std::set<std::string> out;
  for (const auto& [uri, doc] : cache_) out.insert(uri);
  return out;
}

std::optional<Document> FixtureLookup::fetch(const std::string& uri) {
  const Document* d = w_.lookup(uri);
  if (!d) return std::nullopt;
  return *d;
}

std::optional<Document> ChaosLookup::fetch(const std::string& uri) {
  state_ ^= state_ << 13;
  state_ ^= state_ >> 7;
  state_ ^= state_ << 17;
  std::this_thread::sleep_for(std::chrono::microseconds(state_ % 500));
  const Document* d = inner_.lookup(uri);
  if (!d) return std::nullopt;
  return *d;
}

namespace {

class Executor {
 public:
  Executor(LookupService& lk, ExecutionTrace* trace, const NormalFormOptions& opts)
      : lk_(lk), trace_(trace), opts_(opts) {}

  // Algorithm 2 (ExecLPE), with the repeat-until star loop implemented as a
  // visited-set closure over context URIs.
  std::set<std::string> lpe(const Lpe& l, const LpeSafety& safety, const std::string& ctx) {
    if (trace_) ++trace_->lpe_steps;
    const Document* d_ctx = lk_.lookup(ctx);
    if (!d_ctx) return {};
    switch (l.kind) {
      case Lpe::Kind::Epsilon:
        return {ctx};
      case Lpe::Kind::Pattern:
        return link_pattern_step(l.pattern, *d_ctx, ctx);
      case Lpe::Kind::Concat: {
        std::set<std::string> out;
        for (const auto& mid : lpe(*l.left, *safety.children[0], ctx)) {
          auto part = lpe(*l.right, *safety.children[1], mid);
          out.insert(part.begin(), part.end());
        }
        return out;
      }
      case Lpe::Kind::Alt: {
        auto out = lpe(*l.left, *safety.children[0], ctx);
        auto rhs = lpe(*l.right, *safety.children[1], ctx);
        out.insert(rhs.begin(), rhs.end());
        return out;
      }
      case Lpe::Kind::Star: {
        std::set<std::string> visited{ctx};
        std::deque<std::string> frontier{ctx};
        while (!frontier.empty()) {
          std::string u = frontier.front();
          frontier.pop_front();
          for (const auto& r : lpe(*l.left, *safety.children[0], u)) {
            if (visited.insert(r).second) frontier.push_back(r);
          }
        }
        return visited;
      }
      case Lpe::Kind::Test:
        return lpe(*l.left, *safety.children[0], ctx).empty()
                   ? std::set<std::string>{}
                   : std::set<std::string>{ctx};
      case Lpe::Kind::NavSub: {
        std::set<std::string> out;
        for (const auto& m : certified(*safety.nav_query, {ctx})) {
          auto it = m.find(l.var);
          if (it != m.end() && it->second.is_uri()) out.insert(it->second.value);
        }
        return out;
      }
    }
    return {};
  }

  // Algorithm 1: union the LPE evaluations over the seeds, retrieve the
  // selected URIs, and evaluate the pattern over the assembled dataset.
  SolutionSet basic(const Lpe& l, const LpeSafety& safety, const GraphPattern& pattern,
                    const std::set<std::string>& seeds) {
    if (trace_) ++trace_->basic_executions;
    std::set<std::string> selected;
    for (const auto& u : seeds) {
      auto part = lpe(l, safety, u);
      selected.insert(part.begin(), part.end());
    }
    RdfDataset ds;
    for (const auto& u : selected) {
      const Document* d = lk_.lookup(u);
      if (!d) continue;
      ds.default_graph.insert(d->data.begin(), d->data.end());
      ds.named.emplace(u, d->data);
    }
    return eval_pattern(pattern, ds.default_graph, ds);
  }

  // Algorithm 3, dispatched over the whole certificate: a UNION of
  // union-free conjuncts, each run as an iterative join pipeline.
  SolutionSet certified(const SafenessCertificate& cert, const std::set<std::string>& seeds) {
    SolutionSet out;
    auto branches = union_branches(cert.normal_form);
    for (size_t b = 0; b < branches.size(); ++b) {
      SolutionSet part = conjunct(and_units(branches[b]), cert.conjuncts[b], seeds);
      out.insert(part.begin(), part.end());
    }
    return out;
  }

  SolutionSet conjunct(const std::vector<QueryPtr>& units, const ConjunctOrdering& ordering,
                       const std::set<std::string>& seeds) {
    SolutionSet omega;
    omega.insert(SolutionMapping{});
    for (size_t pos = 0; pos < ordering.order.size(); ++pos) {
      const QueryPtr& u = units[ordering.order[pos]];
      const Justification& j = ordering.justifications[pos];
      SolutionSet tmp;
      if (j.kind == Justification::Kind::SeedVarBound) {
        std::set<std::string> harvested;
        for (const auto& m : omega) {
          auto it = m.find(j.var);
          if (it != m.end() && it->second.is_uri()) harvested.insert(it->second.value);
        }
        for (const auto& seed : harvested) {
          // Join with the seed binding: a per-seed solution that binds the
          // SEED variable to some other URI must not pair up with rows that
          // carry that other URI.
          SolutionSet binder;
          binder.insert(SolutionMapping{{j.var, RdfTerm::uri(seed)}});
          SolutionSet part = join(certified(*j.inner, {seed}), binder);
          tmp.insert(part.begin(), part.end());
        }
      } else {
        tmp = unit(u, *j.safe_unit, seeds);
      }
      if (trace_) ++trace_->conjunct_joins;
      omega = join(omega, tmp);
    }
    return omega;
  }

  SolutionSet unit(const QueryPtr& q, const UnitEvidence& ev,
                   const std::set<std::string>& seeds) {
    switch (ev.kind) {
      case UnitEvidence::Kind::Basic:
        return basic(*q->lpe, *ev.lpe, *q->pattern, seeds);
      case UnitEvidence::Kind::Project:
        return project(certified(*ev.sub, seeds), q->project_vars);
      case UnitEvidence::Kind::SeedUris:
        return certified(*ev.sub, q->seed_uris);
      case UnitEvidence::Kind::Composite:
        return certified(*ev.sub, seeds);
    }
    return {};
  }

 private:
  std::set<std::string> link_pattern_step(const LinkPattern& lp, const Document& d_ctx,
                                          const std::string& ctx) {
    std::set<std::string> out;
    const LinkPatternSlot* slots[3] = {&lp.s, &lp.p, &lp.o};
    for (const auto& t : d_ctx.data) {
      const RdfTerm* xs[3] = {&t.s, &t.p, &t.o};
      bool agrees = true;
      for (int i = 0; i < 3 && agrees; ++i) {
        switch (slots[i]->kind) {
          case LinkPatternSlot::Kind::Wildcard:
            break;
          case LinkPatternSlot::Kind::Context:
            agrees = xs[i]->is_uri() && xs[i]->value == ctx;
            break;
          case LinkPatternSlot::Kind::Term:
            agrees = *xs[i] == slots[i]->term;
            break;
        }
      }
      if (!agrees) continue;
      for (int i = 0; i < 3; ++i) {
        if (slots[i]->kind != LinkPatternSlot::Kind::Wildcard) continue;
        if (!xs[i]->is_uri()) continue;
        if (lk_.lookup(xs[i]->value)) out.insert(xs[i]->value);
      }
    }
    return out;
  }

  LookupService& lk_;
  ExecutionTrace* trace_;
  NormalFormOptions opts_;
};

// Builds LPE safety evidence, throwing the analyzer's refusal on failure.
LpeSafetyPtr require_lpe_safety(const LpePtr& l) {
  QueryPtr probe = LdqlQuery::basic(l, GraphPattern::empty_bgp());
  SafenessReport report = is_websafe_syntactic(probe);
  if (!report.certified()) throw NotCertifiedError(std::move(report));
  // The probe certifies as a single basic conjunct; pull out the LPE evidence.
  const Justification& j = report.certificate->conjuncts.at(0).justifications.at(0);
  return j.safe_unit->lpe;
}

void finish_trace(ExecutionTrace* trace, LookupService& lk,
                  std::chrono::steady_clock::time_point start) {
  if (!trace) return;
  trace->attempted = lk.attempted();
  trace->successes = lk.successes();
  trace->failures = lk.failures();
  trace->wall_millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
}

}  // namespace

std::set<std::string> exec_lpe(const Lpe& l, const std::string& ctx, LookupService& lk,
                               ExecutionTrace* trace) {
  auto start = std::chrono::steady_clock::now();
  LpePtr copy = std::make_shared<const Lpe>(l);
  LpeSafetyPtr safety = require_lpe_safety(copy);
  Executor ex(lk, trace, {});
  auto out = ex.lpe(*copy, *safety, ctx);
  finish_trace(trace, lk, start);
  return out;
}

SolutionSet exec_basic(const LpePtr& lpe, const PatternPtr& pattern,
                       const std::set<std::string>& seeds, LookupService& lk,
                       ExecutionTrace* trace) {
  auto start = std::chrono::steady_clock::now();
  LpeSafetyPtr safety = require_lpe_safety(lpe);
  Executor ex(lk, trace, {});
  SolutionSet out = ex.basic(*lpe, *safety, *pattern, seeds);
  finish_trace(trace, lk, start);
  return out;
}

SolutionSet exec_union_free(const std::vector<QueryPtr>& units,
                            const ConjunctOrdering& ordering,
                            const std::set<std::string>& seeds, LookupService& lk,
                            ExecutionTrace* trace) {
  auto start = std::chrono::steady_clock::now();
  if (!validate_ordering(units, ordering)) {
    SafenessReport report;
    report.verdict = SafenessReport::Verdict::NotCertified;
    report.refusals.push_back(
        Refusal{"conjunct", {}, "supplied ordering fails defensive re-validation"});
    throw NotCertifiedError(std::move(report));
  }
  Executor ex(lk, trace, {});
  SolutionSet out = ex.conjunct(units, ordering, seeds);
  finish_trace(trace, lk, start);
  return out;
}

SolutionSet exec_query(const LdqlQuery& q, const std::set<std::string>& seeds,
                       LookupService& lk, ExecutionTrace* trace,
                       const NormalFormOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  QueryPtr copy = std::make_shared<const LdqlQuery>(q);
  SafenessReport report = is_websafe_syntactic(copy, opts);
  if (!report.certified()) throw NotCertifiedError(std::move(report));
  Executor ex(lk, trace, opts);
  SolutionSet out = ex.certified(*report.certificate, seeds);
  finish_trace(trace, lk, start);
  return out;
}

}  // namespace ldql
