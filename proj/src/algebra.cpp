#include "ldql/algebra.h"

#include <algorithm>

namespace ldql {

namespace {

ExprPtr make_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

PatternPtr make_pattern(GraphPattern p) {
  return std::make_shared<const GraphPattern>(std::move(p));
}

}  // namespace

ExprPtr Expr::eq(ExprPtr a, ExprPtr b) {
  return make_expr({Kind::Eq, std::move(a), std::move(b), {}, {}});
}
ExprPtr Expr::neq(ExprPtr a, ExprPtr b) {
  return make_expr({Kind::Neq, std::move(a), std::move(b), {}, {}});
}
ExprPtr Expr::logical_and(ExprPtr a, ExprPtr b) {
  return make_expr({Kind::And, std::move(a), std::move(b), {}, {}});
}
ExprPtr Expr::logical_or(ExprPtr a, ExprPtr b) {
  return make_expr({Kind::Or, std::move(a), std::move(b), {}, {}});
}
ExprPtr Expr::logical_not(ExprPtr a) {
  return make_expr({Kind::Not, std::move(a), nullptr, {}, {}});
}
ExprPtr Expr::constant_term(RdfTerm t) {
  return make_expr({Kind::Const, nullptr, nullptr, std::move(t), {}});
}
ExprPtr Expr::variable(Variable v) {
  return make_expr({Kind::Var, nullptr, nullptr, {}, std::move(v)});
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Const:
      return a->constant == b->constant;
    case Expr::Kind::Var:
      return a->var == b->var;
    case Expr::Kind::Not:
      return expr_equal(a->lhs, b->lhs);
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

std::set<Variable> expr_vars(const ExprPtr& e) {
  std::set<Variable> out;
  if (!e) return out;
  if (e->kind == Expr::Kind::Var) {
    out.insert(e->var);
    return out;
  }
  for (const ExprPtr* child : {&e->lhs, &e->rhs}) {
    if (*child) {
      auto sub = expr_vars(*child);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

std::set<std::string> expr_uris(const ExprPtr& e) {
  std::set<std::string> out;
  if (!e) return out;
  if (e->kind == Expr::Kind::Const && e->constant.is_uri()) out.insert(e->constant.value);
  for (const ExprPtr* child : {&e->lhs, &e->rhs}) {
    if (*child) {
      auto sub = expr_uris(*child);
      out.insert(sub.begin(), sub.end());
    }
  }
  return out;
}

PatternPtr GraphPattern::bgp(std::vector<TriplePattern> triples) {
  for (const auto& tp : triples) {
    for (const TermOrVar* slot : {&tp.s, &tp.p, &tp.o}) {
      if (!is_var(*slot) && as_term(*slot).is_blank()) {
        throw WebError("blank nodes are not allowed in graph patterns");
      }
    }
    if (!is_var(tp.s) && as_term(tp.s).is_literal()) {
      throw WebError("triple pattern subject may not be a literal");
    }
    if (!is_var(tp.p) && !as_term(tp.p).is_uri()) {
      throw WebError("triple pattern predicate must be a URI");
    }
  }
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  GraphPattern p{Kind::Bgp, std::move(triples), nullptr, nullptr, nullptr, {}, {}};
  return make_pattern(std::move(p));
}

PatternPtr GraphPattern::p_and(PatternPtr a, PatternPtr b) {
  return make_pattern({Kind::And, {}, std::move(a), std::move(b), nullptr, {}, {}});
}
PatternPtr GraphPattern::opt(PatternPtr a, PatternPtr b) {
  return make_pattern({Kind::Opt, {}, std::move(a), std::move(b), nullptr, {}, {}});
}
PatternPtr GraphPattern::p_union(PatternPtr a, PatternPtr b) {
  return make_pattern({Kind::Union, {}, std::move(a), std::move(b), nullptr, {}, {}});
}
PatternPtr GraphPattern::filter(PatternPtr a, ExprPtr e) {
  return make_pattern({Kind::Filter, {}, std::move(a), nullptr, std::move(e), {}, {}});
}

PatternPtr GraphPattern::graph(TermOrVar g, PatternPtr a) {
  if (!is_var(g) && !as_term(g).is_uri()) {
    throw WebError("GRAPH argument must be a URI or a variable");
  }
  return make_pattern({Kind::Graph, {}, std::move(a), nullptr, nullptr, {}, std::move(g)});
}

PatternPtr GraphPattern::bind(PatternPtr a, ExprPtr e, Variable v) {
  if (vars_of_pattern(*a).count(v)) {
    throw WebError("BIND target ?" + v.name + " already occurs in the pattern");
  }
  return make_pattern({Kind::Bind, {}, std::move(a), nullptr, std::move(e), std::move(v), {}});
}

bool pattern_equal(const PatternPtr& a, const PatternPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case GraphPattern::Kind::Bgp:
      return a->triples == b->triples;
    case GraphPattern::Kind::And:
    case GraphPattern::Kind::Opt:
    case GraphPattern::Kind::Union:
      return pattern_equal(a->left, b->left) && pattern_equal(a->right, b->right);
    case GraphPattern::Kind::Filter:
      return pattern_equal(a->left, b->left) && expr_equal(a->expr, b->expr);
    case GraphPattern::Kind::Graph:
      return a->graph_term == b->graph_term && pattern_equal(a->left, b->left);
    case GraphPattern::Kind::Bind:
      return a->bind_var == b->bind_var && expr_equal(a->expr, b->expr) &&
             pattern_equal(a->left, b->left);
  }
  return false;
}

std::set<Variable> vars_of_pattern(const GraphPattern& p) {
  std::set<Variable> out;
  auto merge = [&out](std::set<Variable> vs) { out.insert(vs.begin(), vs.end()); };
  switch (p.kind) {
    case GraphPattern::Kind::Bgp:
      for (const auto& tp : p.triples) {
        for (const TermOrVar* slot : {&tp.s, &tp.p, &tp.o}) {
          if (is_var(*slot)) out.insert(as_var(*slot));
        }
      }
      break;
    case GraphPattern::Kind::And:
    case GraphPattern::Kind::Opt:
    case GraphPattern::Kind::Union:
      merge(vars_of_pattern(*p.left));
      merge(vars_of_pattern(*p.right));
      break;
    case GraphPattern::Kind::Filter:
      merge(vars_of_pattern(*p.left));
      merge(expr_vars(p.expr));
      break;
    case GraphPattern::Kind::Graph:
      if (is_var(p.graph_term)) out.insert(as_var(p.graph_term));
      merge(vars_of_pattern(*p.left));
      break;
    case GraphPattern::Kind::Bind:
      merge(vars_of_pattern(*p.left));
      merge(expr_vars(p.expr));
      out.insert(p.bind_var);
      break;
  }
  return out;
}

std::set<std::string> pattern_uris(const GraphPattern& p) {
  std::set<std::string> out;
  auto merge = [&out](std::set<std::string> us) { out.insert(us.begin(), us.end()); };
  switch (p.kind) {
    case GraphPattern::Kind::Bgp:
      for (const auto& tp : p.triples) {
        for (const TermOrVar* slot : {&tp.s, &tp.p, &tp.o}) {
          if (!is_var(*slot) && as_term(*slot).is_uri()) out.insert(as_term(*slot).value);
        }
      }
      break;
    case GraphPattern::Kind::And:
    case GraphPattern::Kind::Opt:
    case GraphPattern::Kind::Union:
      merge(pattern_uris(*p.left));
      merge(pattern_uris(*p.right));
      break;
    case GraphPattern::Kind::Filter:
      merge(pattern_uris(*p.left));
      merge(expr_uris(p.expr));
      break;
    case GraphPattern::Kind::Graph:
      if (!is_var(p.graph_term)) out.insert(as_term(p.graph_term).value);
      merge(pattern_uris(*p.left));
      break;
    case GraphPattern::Kind::Bind:
      merge(pattern_uris(*p.left));
      merge(expr_uris(p.expr));
      break;
  }
  return out;
}

std::vector<TriplePattern> triple_patterns_of(const GraphPattern& p) {
  std::vector<TriplePattern> out;
  if (p.kind == GraphPattern::Kind::Bgp) {
    out = p.triples;
    return out;
  }
  for (const PatternPtr* child : {&p.left, &p.right}) {
    if (*child) {
      auto sub = triple_patterns_of(**child);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return out;
}

bool compatible(const SolutionMapping& a, const SolutionMapping& b) {
  const SolutionMapping& small = a.size() <= b.size() ? a : b;
  const SolutionMapping& big = a.size() <= b.size() ? b : a;
  for (const auto& [v, t] : small) {
    auto it = big.find(v);
    if (it != big.end() && it->second != t) return false;
  }
  return true;
}

SolutionSet join(const SolutionSet& a, const SolutionSet& b) {
  SolutionSet out;
  for (const auto& m1 : a) {
    for (const auto& m2 : b) {
      if (!compatible(m1, m2)) continue;
      SolutionMapping merged = m1;
      merged.insert(m2.begin(), m2.end());
      out.insert(std::move(merged));
    }
  }
  return out;
}

SolutionSet set_union(const SolutionSet& a, const SolutionSet& b) {
  SolutionSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

SolutionSet project(const SolutionSet& a, const std::set<Variable>& vars) {
  SolutionSet out;
  for (const auto& m : a) {
    SolutionMapping kept;
    for (const auto& [v, t] : m) {
      if (vars.count(v)) kept.emplace(v, t);
    }
    out.insert(std::move(kept));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

// Three-valued expression result: a term, a boolean, or error.
struct ExprValue {
  enum class Kind { Term, Bool, Error } kind = Kind::Error;
  RdfTerm term;
  bool boolean = false;

  static ExprValue error() { return {}; }
  static ExprValue of_bool(bool b) { return {Kind::Bool, {}, b}; }
  static ExprValue of_term(RdfTerm t) { return {Kind::Term, std::move(t), false}; }
};

ExprValue eval_expr(const Expr& e, const SolutionMapping& m) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return ExprValue::of_term(e.constant);
    case Expr::Kind::Var: {
      auto it = m.find(e.var);
      if (it == m.end()) return ExprValue::error();
      return ExprValue::of_term(it->second);
    }
    case Expr::Kind::Eq:
    case Expr::Kind::Neq: {
      ExprValue a = eval_expr(*e.lhs, m);
      ExprValue b = eval_expr(*e.rhs, m);
      if (a.kind == ExprValue::Kind::Error || b.kind == ExprValue::Kind::Error) {
        return ExprValue::error();
      }
      bool equal;
      if (a.kind != b.kind) {
        equal = false;
      } else if (a.kind == ExprValue::Kind::Term) {
        equal = a.term == b.term;
      } else {
        equal = a.boolean == b.boolean;
      }
      return ExprValue::of_bool(e.kind == Expr::Kind::Eq ? equal : !equal);
    }
    case Expr::Kind::Not: {
      ExprValue a = eval_expr(*e.lhs, m);
      if (a.kind != ExprValue::Kind::Bool) return ExprValue::error();
      return ExprValue::of_bool(!a.boolean);
    }
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      // SPARQL three-valued tables: false&&err = false, true||err = true.
      ExprValue a = eval_expr(*e.lhs, m);
      ExprValue b = eval_expr(*e.rhs, m);
      auto as_bool = [](const ExprValue& v) -> std::optional<bool> {
        if (v.kind == ExprValue::Kind::Bool) return v.boolean;
        return std::nullopt;
      };
      std::optional<bool> ba = as_bool(a), bb = as_bool(b);
      if (e.kind == Expr::Kind::And) {
        if ((ba && !*ba) || (bb && !*bb)) return ExprValue::of_bool(false);
        if (ba && bb) return ExprValue::of_bool(true);
        return ExprValue::error();
      }
      if ((ba && *ba) || (bb && *bb)) return ExprValue::of_bool(true);
      if (ba && bb) return ExprValue::of_bool(false);
      return ExprValue::error();
    }
  }
  return ExprValue::error();
}

bool expr_holds(const ExprPtr& e, const SolutionMapping& m) {
  if (!e) return false;
  ExprValue v = eval_expr(*e, m);
  return v.kind == ExprValue::Kind::Bool && v.boolean;
}

// Extends `m` by matching `tp` against `t`; nullopt on mismatch.
std::optional<SolutionMapping> match_triple(const TriplePattern& tp, const RdfTriple& t,
                                            const SolutionMapping& m) {
  SolutionMapping out = m;
  const TermOrVar* slots[3] = {&tp.s, &tp.p, &tp.o};
  const RdfTerm* terms[3] = {&t.s, &t.p, &t.o};
  for (int i = 0; i < 3; ++i) {
    if (is_var(*slots[i])) {
      auto [it, fresh] = out.emplace(as_var(*slots[i]), *terms[i]);
      if (!fresh && it->second != *terms[i]) return std::nullopt;
    } else if (as_term(*slots[i]) != *terms[i]) {
      return std::nullopt;
    }
  }
  return out;
}

SolutionSet eval_bgp(const std::vector<TriplePattern>& triples,
                     const std::set<RdfTriple>& graph) {
  SolutionSet current;
  current.insert(SolutionMapping{});
  for (const auto& tp : triples) {
    SolutionSet next;
    for (const auto& m : current) {
      for (const auto& t : graph) {
        if (auto extended = match_triple(tp, t, m)) next.insert(std::move(*extended));
      }
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

}  // namespace

SolutionSet eval_pattern(const GraphPattern& p, const std::set<RdfTriple>& active,
                         const RdfDataset& ds) {
  switch (p.kind) {
    case GraphPattern::Kind::Bgp:
      return eval_bgp(p.triples, active);
    case GraphPattern::Kind::And:
      return join(eval_pattern(*p.left, active, ds), eval_pattern(*p.right, active, ds));
    case GraphPattern::Kind::Union:
      return set_union(eval_pattern(*p.left, active, ds),
                       eval_pattern(*p.right, active, ds));
    case GraphPattern::Kind::Opt: {
      SolutionSet a = eval_pattern(*p.left, active, ds);
      SolutionSet b = eval_pattern(*p.right, active, ds);
      SolutionSet out;
      for (const auto& m1 : a) {
        bool joined = false;
        for (const auto& m2 : b) {
          if (!compatible(m1, m2)) continue;
          SolutionMapping merged = m1;
          merged.insert(m2.begin(), m2.end());
          out.insert(std::move(merged));
          joined = true;
        }
        if (!joined) out.insert(m1);
      }
      return out;
    }
    case GraphPattern::Kind::Filter: {
      SolutionSet a = eval_pattern(*p.left, active, ds);
      SolutionSet out;
      for (const auto& m : a) {
        if (expr_holds(p.expr, m)) out.insert(m);
      }
      return out;
    }
    case GraphPattern::Kind::Graph: {
      if (!is_var(p.graph_term)) {
        auto it = ds.named.find(as_term(p.graph_term).value);
        if (it == ds.named.end()) return {};
        return eval_pattern(*p.left, it->second, ds);
      }
      const Variable& gv = as_var(p.graph_term);
      SolutionSet out;
      for (const auto& [name, graph] : ds.named) {
        SolutionSet sub = eval_pattern(*p.left, graph, ds);
        RdfTerm name_term = RdfTerm::uri(name);
        for (const auto& m : sub) {
          auto it = m.find(gv);
          if (it != m.end() && it->second != name_term) continue;
          SolutionMapping extended = m;
          extended.emplace(gv, name_term);
          out.insert(std::move(extended));
        }
      }
      return out;
    }
    case GraphPattern::Kind::Bind: {
      SolutionSet a = eval_pattern(*p.left, active, ds);
      SolutionSet out;
      for (const auto& m : a) {
        ExprValue v = eval_expr(*p.expr, m);
        if (v.kind == ExprValue::Kind::Term) {
          SolutionMapping extended = m;
          extended.emplace(p.bind_var, v.term);
          out.insert(std::move(extended));
        } else {
          out.insert(m);  // evaluation error: binding omitted, mapping kept
        }
      }
      return out;
    }
  }
  return {};
}

std::set<Variable> sbvars_pattern(const GraphPattern& p) {
  switch (p.kind) {
    case GraphPattern::Kind::Bgp:
      return vars_of_pattern(p);
    case GraphPattern::Kind::And: {
      auto out = sbvars_pattern(*p.left);
      auto rhs = sbvars_pattern(*p.right);
      out.insert(rhs.begin(), rhs.end());
      return out;
    }
    case GraphPattern::Kind::Union: {
      auto a = sbvars_pattern(*p.left);
      auto b = sbvars_pattern(*p.right);
      std::set<Variable> out;
      for (const auto& v : a) {
        if (b.count(v)) out.insert(v);
      }
      return out;
    }
    case GraphPattern::Kind::Opt:
    case GraphPattern::Kind::Filter:
    case GraphPattern::Kind::Bind:
      return sbvars_pattern(*p.left);
    case GraphPattern::Kind::Graph: {
      auto out = sbvars_pattern(*p.left);
      if (is_var(p.graph_term)) out.insert(as_var(p.graph_term));
      return out;
    }
  }
  return {};
}

}  // namespace ldql
