#include "ldql/semantics.h"

#include <deque>

namespace ldql {

namespace {

class Evaluator {
 public:
  Evaluator(const WebOfLinkedData& w, std::set<std::string> relevant)
      : w_(w), relevant_(std::move(relevant)) {}

  SolutionSet query(const LdqlQuery& q, const std::set<std::string>& seeds) {
    switch (q.kind) {
      case LdqlQuery::Kind::Basic: {
        std::set<std::string> selected;
        for (const auto& u : seeds) {
          auto part = lpe(*q.lpe, u);
          selected.insert(part.begin(), part.end());
        }
        RdfDataset ds = build_dataset(w_, selected);
        return eval_pattern(*q.pattern, ds.default_graph, ds);
      }
      case LdqlQuery::Kind::SeedUris:
        return query(*q.left, q.seed_uris);
      case LdqlQuery::Kind::SeedVar:
        return seed_var(q);
      case LdqlQuery::Kind::And:
        return join(query(*q.left, seeds), query(*q.right, seeds));
      case LdqlQuery::Kind::Union:
        return set_union(query(*q.left, seeds), query(*q.right, seeds));
      case LdqlQuery::Kind::Project:
        return project(query(*q.left, seeds), q.project_vars);
    }
    return {};
  }

  std::set<std::string> lpe(const Lpe& l, const std::string& ctx) {
    if (!w_.retrievable(ctx)) return {};
    switch (l.kind) {
      case Lpe::Kind::Epsilon:
        return {ctx};
      case Lpe::Kind::Pattern: {
        std::set<std::string> out;
        const Document* d = w_.lookup(ctx);
        for (const auto& t : d->data) {
          for (const auto& via : uris_of(t)) {
            if (!w_.retrievable(via)) continue;  // no link graph edge otherwise
            if (matches(t, via, l.pattern, ctx)) out.insert(via);
          }
        }
        return out;
      }
      case Lpe::Kind::Concat: {
        std::set<std::string> out;
        for (const auto& mid : lpe(*l.left, ctx)) {
          auto part = lpe(*l.right, mid);
          out.insert(part.begin(), part.end());
        }
        return out;
      }
      case Lpe::Kind::Alt: {
        auto out = lpe(*l.left, ctx);
        auto rhs = lpe(*l.right, ctx);
        out.insert(rhs.begin(), rhs.end());
        return out;
      }
      case Lpe::Kind::Star: {
        // Least fixpoint of the unbounded concatenation union.
        std::set<std::string> visited{ctx};
        std::deque<std::string> frontier{ctx};
        while (!frontier.empty()) {
          std::string u = frontier.front();
          frontier.pop_front();
          for (const auto& r : lpe(*l.left, u)) {
            if (visited.insert(r).second) frontier.push_back(r);
          }
        }
        return visited;
      }
      case Lpe::Kind::Test:
        return lpe(*l.left, ctx).empty() ? std::set<std::string>{}
                                         : std::set<std::string>{ctx};
      case Lpe::Kind::NavSub: {
        std::set<std::string> out;
        for (const auto& m : query(*l.sub, {ctx})) {
          auto it = m.find(l.var);
          if (it != m.end() && it->second.is_uri()) out.insert(it->second.value);
        }
        return out;
      }
    }
    return {};
  }

 private:
  SolutionSet seed_var(const LdqlQuery& q) {
    // Contribution of a generic URI: nonempty means the full union over all
    // URIs is infinite.
    std::string witness = fresh_witness();
    SolutionSet generic = contribution(q, witness);
    if (!generic.empty()) {
      throw NonEnumerableError(
          q.seed_var, "the subquery has solutions for a generic context URI, so "
                      "infinitely many URIs contribute");
    }
    SolutionSet out;
    for (const auto& u : relevant_) {
      auto part = contribution(q, u);
      out.insert(part.begin(), part.end());
    }
    return out;
  }

  SolutionSet contribution(const LdqlQuery& q, const std::string& u) {
    SolutionSet inner = query(*q.left, {u});
    SolutionSet binder;
    binder.insert(SolutionMapping{{q.seed_var, RdfTerm::uri(u)}});
    return join(inner, binder);
  }

  std::string fresh_witness() {
    for (;;) {
      std::string candidate = "urn:ldql:witness#" + std::to_string(witness_counter_++);
      if (!relevant_.count(candidate)) return candidate;
    }
  }

  const WebOfLinkedData& w_;
  std::set<std::string> relevant_;
  int witness_counter_ = 0;
};

std::set<std::string> relevant_uris(const WebOfLinkedData& w) {
  std::set<std::string> out = w.data_uris();
  for (const auto& [uri, doc] : w.adoc()) out.insert(uri);
  return out;
}

}  // namespace

SolutionSet eval_query(const LdqlQuery& q, const WebOfLinkedData& w,
                       const std::set<std::string>& seeds) {
  std::set<std::string> relevant = relevant_uris(w);
  auto mentioned = query_uris(q);
  relevant.insert(mentioned.begin(), mentioned.end());
  Evaluator ev(w, std::move(relevant));
  return ev.query(q, seeds);
}

std::set<std::string> eval_lpe(const Lpe& l, const WebOfLinkedData& w,
                               const std::string& ctx) {
  std::set<std::string> relevant = relevant_uris(w);
  auto mentioned = lpe_uris(l);
  relevant.insert(mentioned.begin(), mentioned.end());
  relevant.insert(ctx);
  Evaluator ev(w, std::move(relevant));
  return ev.lpe(l, ctx);
}

}  // namespace ldql
