#include "ldql/rewrite.h"

namespace ldql {

namespace {

PatternPtr graph_of(Variable v, PatternPtr inner) {
  return GraphPattern::graph(TermOrVar{std::move(v)}, std::move(inner));
}

// A pattern with no solutions over any graph.
PatternPtr unsatisfiable_pattern() {
  RdfTerm marker = RdfTerm::uri("urn:ldql:unsat");
  return GraphPattern::filter(GraphPattern::empty_bgp(),
                              Expr::neq(Expr::constant_term(marker),
                                        Expr::constant_term(marker)));
}

// Encodes one wildcard position of a link pattern: the harvested variable
// `out` sits in position `wild`, `+` slots become the graph variable `u`,
// other wildcards become throwaway fresh variables.
QueryPtr link_pattern_branch(const LinkPattern& lp, int wild, const Variable& out,
                             const Variable& u, FreshVars& fresh) {
  const LinkPatternSlot* slots[3] = {&lp.s, &lp.p, &lp.o};
  TermOrVar pos[3];
  for (int i = 0; i < 3; ++i) {
    if (i == wild) {
      pos[i] = out;
      continue;
    }
    switch (slots[i]->kind) {
      case LinkPatternSlot::Kind::Context:
        pos[i] = u;
        break;
      case LinkPatternSlot::Kind::Term:
        pos[i] = slots[i]->term;
        break;
      case LinkPatternSlot::Kind::Wildcard:
        pos[i] = fresh.next();
        break;
    }
  }
  PatternPtr bgp = GraphPattern::bgp({TriplePattern{pos[0], pos[1], pos[2]}});
  return LdqlQuery::basic(Lpe::epsilon(), graph_of(u, std::move(bgp)));
}

LpePtr desugar_link_pattern(const LinkPattern& lp, FreshVars& fresh) {
  Variable out = fresh.next();
  Variable u = fresh.next();
  const LinkPatternSlot* slots[3] = {&lp.s, &lp.p, &lp.o};
  QueryPtr q;
  for (int i = 0; i < 3; ++i) {
    if (slots[i]->kind != LinkPatternSlot::Kind::Wildcard) continue;
    QueryPtr branch = link_pattern_branch(lp, i, out, u, fresh);
    q = q ? LdqlQuery::q_union(std::move(q), std::move(branch)) : std::move(branch);
  }
  if (!q) {
    // No wildcard: matches no edge (the via URI has no slot to sit in).
    q = LdqlQuery::basic(Lpe::epsilon(), unsatisfiable_pattern());
  }
  return Lpe::nav(out, std::move(q));
}

}  // namespace

LpePtr desugar(const LpePtr& l, FreshVars& fresh) {
  switch (l->kind) {
    case Lpe::Kind::Epsilon:
      return l;
    case Lpe::Kind::Pattern:
      return desugar_link_pattern(l->pattern, fresh);
    case Lpe::Kind::Star:
      return Lpe::star(desugar(l->left, fresh));
    case Lpe::Kind::NavSub: {
      // Rewrite the LPEs inside the subquery as well.
      struct Rec {
        FreshVars& fresh;
        QueryPtr query(const QueryPtr& q) {
          switch (q->kind) {
            case LdqlQuery::Kind::Basic:
              return LdqlQuery::basic(desugar(q->lpe, fresh), q->pattern);
            case LdqlQuery::Kind::SeedUris:
              return LdqlQuery::seed(q->seed_uris, query(q->left));
            case LdqlQuery::Kind::SeedVar:
              return LdqlQuery::seed(q->seed_var, query(q->left));
            case LdqlQuery::Kind::And:
              return LdqlQuery::q_and(query(q->left), query(q->right));
            case LdqlQuery::Kind::Union:
              return LdqlQuery::q_union(query(q->left), query(q->right));
            case LdqlQuery::Kind::Project:
              return LdqlQuery::project(q->project_vars, query(q->left));
          }
          return q;
        }
      } rec{fresh};
      return Lpe::nav(l->var, rec.query(l->sub));
    }
    case Lpe::Kind::Concat: {
      LpePtr r1 = desugar(l->left, fresh);
      LpePtr r2 = desugar(l->right, fresh);
      Variable v = fresh.next();
      Variable x = fresh.next();
      QueryPtr first =
          LdqlQuery::basic(std::move(r1), graph_of(x, GraphPattern::empty_bgp()));
      QueryPtr second = LdqlQuery::seed(
          x, LdqlQuery::basic(std::move(r2), graph_of(v, GraphPattern::empty_bgp())));
      return Lpe::nav(v, LdqlQuery::q_and(std::move(first), std::move(second)));
    }
    case Lpe::Kind::Alt: {
      LpePtr r1 = desugar(l->left, fresh);
      LpePtr r2 = desugar(l->right, fresh);
      Variable v = fresh.next();
      QueryPtr q = LdqlQuery::q_union(
          LdqlQuery::basic(std::move(r1), graph_of(v, GraphPattern::empty_bgp())),
          LdqlQuery::basic(std::move(r2), graph_of(v, GraphPattern::empty_bgp())));
      return Lpe::nav(v, std::move(q));
    }
    case Lpe::Kind::Test: {
      LpePtr r1 = desugar(l->left, fresh);
      Variable v = fresh.next();
      Variable x = fresh.next();
      QueryPtr probe = LdqlQuery::project(
          {v}, LdqlQuery::seed(v, LdqlQuery::basic(std::move(r1),
                                                   graph_of(x, GraphPattern::empty_bgp()))));
      QueryPtr q = LdqlQuery::q_and(
          LdqlQuery::basic(Lpe::epsilon(), graph_of(v, GraphPattern::empty_bgp())),
          std::move(probe));
      return Lpe::nav(v, std::move(q));
    }
  }
  return l;
}

LpePtr desugar(const LpePtr& l) {
  FreshVars fresh;
  return desugar(l, fresh);
}

QueryPtr desugar_query(const QueryPtr& q) {
  FreshVars fresh;
  switch (q->kind) {
    case LdqlQuery::Kind::Basic:
      return LdqlQuery::basic(desugar(q->lpe, fresh), q->pattern);
    case LdqlQuery::Kind::SeedUris:
      return LdqlQuery::seed(q->seed_uris, desugar_query(q->left));
    case LdqlQuery::Kind::SeedVar:
      return LdqlQuery::seed(q->seed_var, desugar_query(q->left));
    case LdqlQuery::Kind::And:
      return LdqlQuery::q_and(desugar_query(q->left), desugar_query(q->right));
    case LdqlQuery::Kind::Union:
      return LdqlQuery::q_union(desugar_query(q->left), desugar_query(q->right));
    case LdqlQuery::Kind::Project:
      return LdqlQuery::project(q->project_vars, desugar_query(q->left));
  }
  return q;
}

std::set<Variable> sbvars_query(const LdqlQuery& q) {
  switch (q.kind) {
    case LdqlQuery::Kind::Basic:
      return sbvars_pattern(*q.pattern);
    case LdqlQuery::Kind::And: {
      auto out = sbvars_query(*q.left);
      auto rhs = sbvars_query(*q.right);
      out.insert(rhs.begin(), rhs.end());
      return out;
    }
    case LdqlQuery::Kind::Union: {
      auto a = sbvars_query(*q.left);
      auto b = sbvars_query(*q.right);
      std::set<Variable> out;
      for (const auto& v : a) {
        if (b.count(v)) out.insert(v);
      }
      return out;
    }
    case LdqlQuery::Kind::Project: {
      auto inner = sbvars_query(*q.left);
      std::set<Variable> out;
      for (const auto& v : inner) {
        if (q.project_vars.count(v)) out.insert(v);
      }
      return out;
    }
    case LdqlQuery::Kind::SeedUris:
      return sbvars_query(*q.left);
    case LdqlQuery::Kind::SeedVar: {
      auto out = sbvars_query(*q.left);
      out.insert(q.seed_var);
      return out;
    }
  }
  return {};
}

namespace {

bool is_unit(const LdqlQuery& q) {
  switch (q.kind) {
    case LdqlQuery::Kind::Basic:
      return true;
    case LdqlQuery::Kind::Project:
    case LdqlQuery::Kind::SeedUris:
    case LdqlQuery::Kind::SeedVar:
      return is_union_free_normal_form(*q.left);
    default:
      return false;
  }
}

struct Normalizer {
  size_t guard;
  size_t produced = 0;

  void account(const QueryPtr& q) {
    produced += query_node_count(*q);
    if (produced > guard) {
      throw NormalFormError("UNION normal form exceeds the node guard of " +
                            std::to_string(guard) + " nodes");
    }
  }

  // Returns the branches of the UNION normal form, each UNION-free.
  std::vector<QueryPtr> branches(const QueryPtr& q) {
    switch (q->kind) {
      case LdqlQuery::Kind::Basic:
        account(q);
        return {q};
      case LdqlQuery::Kind::Union: {
        auto out = branches(q->left);
        auto rhs = branches(q->right);
        out.insert(out.end(), rhs.begin(), rhs.end());
        return out;
      }
      case LdqlQuery::Kind::And: {
        auto lhs = branches(q->left);
        auto rhs = branches(q->right);
        std::vector<QueryPtr> out;
        out.reserve(lhs.size() * rhs.size());
        for (const auto& a : lhs) {
          for (const auto& b : rhs) {
            QueryPtr conjunct = LdqlQuery::q_and(a, b);
            account(conjunct);
            out.push_back(std::move(conjunct));
          }
        }
        return out;
      }
      case LdqlQuery::Kind::Project: {
        std::vector<QueryPtr> out;
        for (const auto& c : branches(q->left)) {
          out.push_back(LdqlQuery::project(q->project_vars, c));
        }
        return out;
      }
      case LdqlQuery::Kind::SeedUris: {
        std::vector<QueryPtr> out;
        for (const auto& c : branches(q->left)) {
          out.push_back(LdqlQuery::seed(q->seed_uris, c));
        }
        return out;
      }
      case LdqlQuery::Kind::SeedVar: {
        std::vector<QueryPtr> out;
        for (const auto& c : branches(q->left)) {
          out.push_back(LdqlQuery::seed(q->seed_var, c));
        }
        return out;
      }
    }
    return {};
  }
};

}  // namespace

bool is_union_free_normal_form(const LdqlQuery& q) {
  if (q.kind == LdqlQuery::Kind::And) {
    return is_union_free_normal_form(*q.left) && is_union_free_normal_form(*q.right);
  }
  return is_unit(q);
}

bool is_union_normal_form(const LdqlQuery& q) {
  if (q.kind == LdqlQuery::Kind::Union) {
    return is_union_normal_form(*q.left) && is_union_normal_form(*q.right);
  }
  return is_union_free_normal_form(q);
}

std::vector<QueryPtr> union_branches(const QueryPtr& q) {
  if (q->kind == LdqlQuery::Kind::Union) {
    auto out = union_branches(q->left);
    auto rhs = union_branches(q->right);
    out.insert(out.end(), rhs.begin(), rhs.end());
    return out;
  }
  return {q};
}

std::vector<QueryPtr> and_units(const QueryPtr& q) {
  if (q->kind == LdqlQuery::Kind::And) {
    auto out = and_units(q->left);
    auto rhs = and_units(q->right);
    out.insert(out.end(), rhs.begin(), rhs.end());
    return out;
  }
  return {q};
}

QueryPtr rewrite_union_normal_form(const QueryPtr& q, const NormalFormOptions& opts) {
  if (is_union_normal_form(*q)) return q;
  Normalizer n{opts.node_guard};
  std::vector<QueryPtr> branches = n.branches(q);
  QueryPtr out = branches.front();
  for (size_t i = 1; i < branches.size(); ++i) {
    out = LdqlQuery::q_union(std::move(out), branches[i]);
  }
  return out;
}

}  // namespace ldql
