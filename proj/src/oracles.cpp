#include "ldql/oracles.h"

#include <deque>

namespace ldql {

namespace {

PpPtr make_pp(PpExpr e) { return std::make_shared<const PpExpr>(std::move(e)); }
NautilodPtr make_n(NautilodExpr e) { return std::make_shared<const NautilodExpr>(std::move(e)); }

}  // namespace

PpPtr PpExpr::pred_uri(std::string p) {
  return make_pp({Kind::Pred, std::move(p), {}, nullptr, nullptr});
}
PpPtr PpExpr::neg_set(std::vector<std::string> uris) {
  if (uris.empty()) throw WebError("negated property set must be non-empty");
  return make_pp({Kind::NegSet, {}, std::move(uris), nullptr, nullptr});
}
PpPtr PpExpr::seq(PpPtr a, PpPtr b) {
  return make_pp({Kind::Seq, {}, {}, std::move(a), std::move(b)});
}
PpPtr PpExpr::alt(PpPtr a, PpPtr b) {
  return make_pp({Kind::Alt, {}, {}, std::move(a), std::move(b)});
}
PpPtr PpExpr::star(PpPtr a) {
  return make_pp({Kind::Star, {}, {}, std::move(a), nullptr});
}

NautilodPtr NautilodExpr::fwd(std::string p) {
  return make_n({Kind::Fwd, std::move(p), nullptr, nullptr, nullptr});
}
NautilodPtr NautilodExpr::bwd(std::string p) {
  return make_n({Kind::Bwd, std::move(p), nullptr, nullptr, nullptr});
}
NautilodPtr NautilodExpr::any_fwd() {
  return make_n({Kind::AnyFwd, {}, nullptr, nullptr, nullptr});
}
NautilodPtr NautilodExpr::seq(NautilodPtr a, NautilodPtr b) {
  return make_n({Kind::Seq, {}, std::move(a), std::move(b), nullptr});
}
NautilodPtr NautilodExpr::alt(NautilodPtr a, NautilodPtr b) {
  return make_n({Kind::Alt, {}, std::move(a), std::move(b), nullptr});
}
NautilodPtr NautilodExpr::star(NautilodPtr a) {
  return make_n({Kind::Star, {}, std::move(a), nullptr, nullptr});
}
NautilodPtr NautilodExpr::ask_test(NautilodPtr a, PatternPtr p) {
  return make_n({Kind::AskTest, {}, std::move(a), nullptr, std::move(p)});
}

// ---------------------------------------------------------------------------
// Context-based PP semantics
// ---------------------------------------------------------------------------

std::set<RdfTriple> context_selector(const WebOfLinkedData& w, const RdfTerm& a) {
  std::set<RdfTriple> out;
  if (!a.is_uri()) return out;
  const Document* d = w.lookup(a.value);
  if (!d) return out;
  for (const auto& t : d->data) {
    if (t.s == a) out.insert(t);
  }
  return out;
}

namespace {

using TermPair = std::pair<RdfTerm, RdfTerm>;

std::set<TermPair> compose(const std::set<TermPair>& a, const std::set<TermPair>& b) {
  std::set<TermPair> out;
  for (const auto& [x, m1] : a) {
    for (const auto& [m2, y] : b) {
      if (m1 == m2) out.insert({x, y});
    }
  }
  return out;
}

}  // namespace

std::set<TermPair> pp_relation(const PpExpr& pp, const WebOfLinkedData& w) {
  switch (pp.kind) {
    case PpExpr::Kind::Pred: {
      std::set<TermPair> out;
      RdfTerm p = RdfTerm::uri(pp.pred);
      for (const auto& [uri, doc_id] : w.adoc()) {
        for (const auto& t : context_selector(w, RdfTerm::uri(uri))) {
          if (t.p == p) out.insert({t.s, t.o});
        }
      }
      return out;
    }
    case PpExpr::Kind::NegSet: {
      std::set<TermPair> out;
      for (const auto& [uri, doc_id] : w.adoc()) {
        for (const auto& t : context_selector(w, RdfTerm::uri(uri))) {
          bool excluded = false;
          for (const auto& u : pp.negated) {
            if (t.p == RdfTerm::uri(u)) excluded = true;
          }
          if (!excluded) out.insert({t.s, t.o});
        }
      }
      return out;
    }
    case PpExpr::Kind::Seq:
      return compose(pp_relation(*pp.left, w), pp_relation(*pp.right, w));
    case PpExpr::Kind::Alt: {
      auto out = pp_relation(*pp.left, w);
      auto rhs = pp_relation(*pp.right, w);
      out.insert(rhs.begin(), rhs.end());
      return out;
    }
    case PpExpr::Kind::Star: {
      // Reflexive pairs over terms(W) plus all concatenation powers.
      std::set<TermPair> out;
      for (const auto& t : w.terms()) out.insert({t, t});
      std::set<TermPair> base = pp_relation(*pp.left, w);
      std::set<TermPair> power = base;
      for (;;) {
        size_t before = out.size();
        out.insert(power.begin(), power.end());
        if (out.size() == before) break;
        power = compose(power, base);
      }
      return out;
    }
  }
  return {};
}

SolutionSet eval_pp_ctxt(const PpPattern& p, const WebOfLinkedData& w) {
  SolutionSet out;
  for (const auto& [a, b] : pp_relation(*p.pp, w)) {
    SolutionMapping m;
    bool ok = true;
    for (const auto& [endpoint, value] : {std::pair{p.alpha, a}, std::pair{p.beta, b}}) {
      if (is_var(endpoint)) {
        auto [it, fresh] = m.emplace(as_var(endpoint), value);
        if (!fresh && it->second != value) ok = false;
      } else if (as_term(endpoint) != value) {
        ok = false;
      }
    }
    if (ok) out.insert(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// NautiLOD semantics
// ---------------------------------------------------------------------------

std::set<RdfTerm> eval_nautilod(const NautilodExpr& n, const WebOfLinkedData& w,
                                const std::string& start) {
  if (!w.retrievable(start)) {
    throw std::invalid_argument("NautiLOD start URI <" + start + "> is not retrievable");
  }
  const Document& d = *w.lookup(start);
  RdfTerm u = RdfTerm::uri(start);
  switch (n.kind) {
    case NautilodExpr::Kind::Fwd: {
      std::set<RdfTerm> out;
      RdfTerm p = RdfTerm::uri(n.pred);
      for (const auto& t : d.data) {
        if (t.s == u && t.p == p) out.insert(t.o);
      }
      return out;
    }
    case NautilodExpr::Kind::Bwd: {
      std::set<RdfTerm> out;
      RdfTerm p = RdfTerm::uri(n.pred);
      for (const auto& t : d.data) {
        if (t.o == u && t.p == p) out.insert(t.s);
      }
      return out;
    }
    case NautilodExpr::Kind::AnyFwd: {
      std::set<RdfTerm> out;
      for (const auto& t : d.data) {
        if (t.s == u) out.insert(t.o);
      }
      return out;
    }
    case NautilodExpr::Kind::Seq: {
      std::set<RdfTerm> out;
      for (const auto& mid : eval_nautilod(*n.left, w, start)) {
        if (!mid.is_uri() || !w.retrievable(mid.value)) continue;
        auto part = eval_nautilod(*n.right, w, mid.value);
        out.insert(part.begin(), part.end());
      }
      return out;
    }
    case NautilodExpr::Kind::Alt: {
      auto out = eval_nautilod(*n.left, w, start);
      auto rhs = eval_nautilod(*n.right, w, start);
      out.insert(rhs.begin(), rhs.end());
      return out;
    }
    case NautilodExpr::Kind::Star: {
      // {u} plus all powers; navigation continues through retrievable URIs.
      std::set<RdfTerm> reached{u};
      std::deque<std::string> frontier{start};
      std::set<std::string> expanded{start};
      while (!frontier.empty()) {
        std::string ctx = frontier.front();
        frontier.pop_front();
        for (const auto& r : eval_nautilod(*n.left, w, ctx)) {
          reached.insert(r);
          if (r.is_uri() && w.retrievable(r.value) && expanded.insert(r.value).second) {
            frontier.push_back(r.value);
          }
        }
      }
      return reached;
    }
    case NautilodExpr::Kind::AskTest: {
      std::set<RdfTerm> out;
      for (const auto& r : eval_nautilod(*n.left, w, start)) {
        if (!r.is_uri() || !w.retrievable(r.value)) continue;
        const Document& rd = *w.lookup(r.value);
        RdfDataset ds;
        ds.default_graph = rd.data;
        if (!eval_pattern(*n.ask, rd.data, ds).empty()) out.insert(r);
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Reachability-based semantics
// ---------------------------------------------------------------------------

namespace {

bool unify_triple_pattern(const TriplePattern& tp, const RdfTriple& t) {
  std::map<Variable, RdfTerm> binding;
  const TermOrVar* slots[3] = {&tp.s, &tp.p, &tp.o};
  const RdfTerm* terms[3] = {&t.s, &t.p, &t.o};
  for (int i = 0; i < 3; ++i) {
    if (is_var(*slots[i])) {
      auto [it, fresh] = binding.emplace(as_var(*slots[i]), *terms[i]);
      if (!fresh && it->second != *terms[i]) return false;
    } else if (as_term(*slots[i]) != *terms[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool matches_some_triple_pattern(const GraphPattern& p, const RdfTriple& t) {
  for (const auto& tp : triple_patterns_of(p)) {
    if (unify_triple_pattern(tp, t)) return true;
  }
  return false;
}

ReachableDocSet reachable_docs(ReachCriterion c, const std::set<std::string>& seeds,
                               const GraphPattern& p, const WebOfLinkedData& w) {
  ReachableDocSet out{{}, c, seeds};
  std::deque<std::string> frontier;
  for (const auto& u : seeds) {
    const Document* d = w.lookup(u);
    if (d && out.doc_ids.insert(d->id).second) frontier.push_back(d->id);
  }
  auto passes = [&](const RdfTriple& t) {
    switch (c) {
      case ReachCriterion::All: return true;
      case ReachCriterion::None: return false;
      case ReachCriterion::Match: return matches_some_triple_pattern(p, t);
    }
    return false;
  };
  while (!frontier.empty()) {
    std::string id = frontier.front();
    frontier.pop_front();
    for (const auto& t : w.doc(id).data) {
      if (!passes(t)) continue;
      for (const auto& via : uris_of(t)) {
        const Document* tgt = w.lookup(via);
        if (tgt && out.doc_ids.insert(tgt->id).second) frontier.push_back(tgt->id);
      }
    }
  }
  return out;
}

SolutionSet eval_reach(const GraphPattern& p, ReachCriterion c,
                       const std::set<std::string>& seeds, const WebOfLinkedData& w) {
  ReachableDocSet reachable = reachable_docs(c, seeds, p, w);
  RdfDataset ds;
  for (const auto& id : reachable.doc_ids) {
    const auto& data = w.doc(id).data;
    ds.default_graph.insert(data.begin(), data.end());
  }
  return eval_pattern(p, ds.default_graph, ds);
}

}  // namespace ldql
