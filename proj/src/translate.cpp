#include "ldql/translate.h"

#include "ldql/rewrite.h"

namespace ldql {

namespace {

bool is_literal_endpoint(const PpEndpoint& e) {
  return !is_var(e) && as_term(e).is_literal();
}

std::set<Variable> endpoint_vars(const PpEndpoint& a, const PpEndpoint& b) {
  std::set<Variable> out;
  if (is_var(a)) out.insert(as_var(a));
  if (is_var(b)) out.insert(as_var(b));
  return out;
}

ExprPtr endpoint_expr(const PpEndpoint& e) {
  if (is_var(e)) return Expr::variable(as_var(e));
  return Expr::constant_term(as_term(e));
}

QueryPtr union_fold(std::vector<QueryPtr> branches) {
  QueryPtr out = branches.front();
  for (size_t i = 1; i < branches.size(); ++i) {
    out = LdqlQuery::q_union(std::move(out), branches[i]);
  }
  return out;
}

PatternPtr union_fold_patterns(std::vector<PatternPtr> branches) {
  PatternPtr out = branches.front();
  for (size_t i = 1; i < branches.size(); ++i) {
    out = GraphPattern::p_union(std::move(out), branches[i]);
  }
  return out;
}

class PpTranslator {
 public:
  QueryPtr translate(const PpEndpoint& alpha, const PpExpr& r, const PpEndpoint& beta) {
    switch (r.kind) {
      case PpExpr::Kind::Pred: {
        if (is_literal_endpoint(alpha)) return unsatisfiable(alpha);
        PatternPtr bgp =
            GraphPattern::bgp({TriplePattern{alpha, RdfTerm::uri(r.pred), beta}});
        return seeded(alpha, LdqlQuery::basic(Lpe::epsilon(), std::move(bgp)));
      }
      case PpExpr::Kind::NegSet: {
        if (is_literal_endpoint(alpha)) return unsatisfiable(alpha);
        Variable p = fresh_.next();
        PatternPtr bgp = GraphPattern::bgp({TriplePattern{alpha, p, beta}});
        ExprPtr cond;
        for (const auto& u : r.negated) {
          ExprPtr one = Expr::neq(Expr::variable(p),
                                  Expr::constant_term(RdfTerm::uri(u)));
          cond = cond ? Expr::logical_and(std::move(cond), std::move(one)) : std::move(one);
        }
        QueryPtr q = seeded(alpha, LdqlQuery::basic(Lpe::epsilon(),
                                                    GraphPattern::filter(bgp, cond)));
        return LdqlQuery::project(endpoint_vars(alpha, beta), std::move(q));
      }
      case PpExpr::Kind::Seq: {
        Variable mid = fresh_.next();
        QueryPtr q = LdqlQuery::q_and(translate(alpha, *r.left, mid),
                                      translate(mid, *r.right, beta));
        return LdqlQuery::project(endpoint_vars(alpha, beta), std::move(q));
      }
      case PpExpr::Kind::Alt:
        return LdqlQuery::q_union(translate(alpha, *r.left, beta),
                                  translate(alpha, *r.right, beta));
      case PpExpr::Kind::Star:
        return star(alpha, r, beta);
    }
    return nullptr;
  }

 private:
  // (SEED alpha ...) for variable and URI starting points.
  QueryPtr seeded(const PpEndpoint& alpha, QueryPtr q) {
    if (is_var(alpha)) return LdqlQuery::seed(as_var(alpha), std::move(q));
    return LdqlQuery::seed(std::set<std::string>{as_term(alpha).value}, std::move(q));
  }

  // Literal starting points translate to an unsatisfiable query.
  QueryPtr unsatisfiable(const PpEndpoint& alpha) {
    Variable a = fresh_.next();
    Variable b = fresh_.next();
    ExprPtr value = endpoint_expr(alpha);
    PatternPtr p = GraphPattern::bind(GraphPattern::empty_bgp(), value, a);
    p = GraphPattern::bind(std::move(p), value, b);
    p = GraphPattern::filter(std::move(p),
                             Expr::neq(Expr::variable(a), Expr::variable(b)));
    return LdqlQuery::basic(Lpe::epsilon(), std::move(p));
  }

  // Zero-length clause of star: alpha = beta and the value occurs in the
  // web's data. Enumerated by seeding every URI and scanning its document
  // for the value in each term position where both endpoints are legal.
  QueryPtr reflexive(const PpEndpoint& alpha, const PpEndpoint& beta) {
    if (!is_var(alpha) && !is_var(beta) && !(as_term(alpha) == as_term(beta))) {
      return nullptr;  // distinct constants never satisfy alpha = beta
    }
    bool literal = is_literal_endpoint(alpha) || is_literal_endpoint(beta);
    std::vector<PatternPtr> positions;
    ExprPtr equality = Expr::eq(endpoint_expr(alpha), endpoint_expr(beta));
    auto add_position = [&](int pos) {
      // Two triple patterns agreeing on the other positions, one holding
      // alpha and one holding beta; joined, then filtered on alpha = beta.
      TermOrVar other1 = fresh_.next();
      TermOrVar other2 = fresh_.next();
      TermOrVar tp1[3];
      TermOrVar tp2[3];
      int assigned = 0;
      for (int i = 0; i < 3; ++i) {
        if (i == pos) {
          tp1[i] = alpha;
          tp2[i] = beta;
        } else {
          const TermOrVar& shared = assigned++ == 0 ? other1 : other2;
          tp1[i] = shared;
          tp2[i] = shared;
        }
      }
      PatternPtr joined = GraphPattern::p_and(
          GraphPattern::bgp({TriplePattern{tp1[0], tp1[1], tp1[2]}}),
          GraphPattern::bgp({TriplePattern{tp2[0], tp2[1], tp2[2]}}));
      positions.push_back(GraphPattern::filter(std::move(joined), equality));
    };
    if (!literal) {
      add_position(0);
      add_position(1);
    }
    add_position(2);
    Variable f = fresh_.next();
    QueryPtr q = LdqlQuery::seed(
        f, LdqlQuery::basic(Lpe::epsilon(), union_fold_patterns(std::move(positions))));
    return LdqlQuery::project(endpoint_vars(alpha, beta), std::move(q));
  }

  // One-or-more clause of star: navigate (?v : Q_s(?v))* from alpha and
  // finish with one more step from the last retrievable context.
  QueryPtr star(const PpEndpoint& alpha, const PpExpr& r, const PpEndpoint& beta) {
    std::vector<QueryPtr> branches;
    if (QueryPtr refl = reflexive(alpha, beta)) branches.push_back(std::move(refl));
    if (is_literal_endpoint(alpha)) {
      // A literal cannot seed navigation; peel one step off: r* = r/r* here.
      Variable mid = fresh_.next();
      QueryPtr q = LdqlQuery::q_and(translate(alpha, *r.left, mid),
                                    translate(mid, r, beta));
      branches.push_back(
          LdqlQuery::project(endpoint_vars(alpha, beta), std::move(q)));
    } else {
      Variable v = fresh_.next();
      Variable z = fresh_.next();
      Variable u = fresh_.next();
      QueryPtr step = LdqlQuery::q_and(
          LdqlQuery::basic(Lpe::epsilon(),
                           GraphPattern::graph(TermOrVar{u}, GraphPattern::empty_bgp())),
          translate(u, *r.left, v));
      LpePtr walk = Lpe::star(Lpe::nav(v, std::move(step)));
      QueryPtr seeded_walk = seeded(
          alpha, LdqlQuery::basic(std::move(walk),
                                  GraphPattern::graph(TermOrVar{z},
                                                      GraphPattern::empty_bgp())));
      QueryPtr q = LdqlQuery::q_and(std::move(seeded_walk), translate(z, *r.left, beta));
      branches.push_back(
          LdqlQuery::project(endpoint_vars(alpha, beta), std::move(q)));
    }
    return union_fold(std::move(branches));
  }

  FreshVars fresh_;
};

}  // namespace

QueryPtr translate_pp(const PpPattern& p) {
  PpTranslator t;
  return t.translate(p.alpha, *p.pp, p.beta);
}

// ---------------------------------------------------------------------------
// NautiLOD
// ---------------------------------------------------------------------------

namespace {

void collect_ask_vars(const NautilodExpr& n, std::set<Variable>& out) {
  if (n.ask) {
    auto vs = vars_of_pattern(*n.ask);
    out.insert(vs.begin(), vs.end());
  }
  for (const NautilodPtr* child : {&n.left, &n.right}) {
    if (*child) collect_ask_vars(**child, out);
  }
}

bool eps_capable(const NautilodExpr& n) {
  switch (n.kind) {
    case NautilodExpr::Kind::Star:
      return true;
    case NautilodExpr::Kind::Seq:
      return eps_capable(*n.left) && eps_capable(*n.right);
    case NautilodExpr::Kind::Alt:
      return eps_capable(*n.left) || eps_capable(*n.right);
    default:
      // A trailing ASK test is never a plain empty word; its endpoint stays
      // conditional and is handled as a test item of the decomposition.
      return false;
  }
}

class NdTranslator {
 public:
  explicit NdTranslator(Variable out) : out_(std::move(out)) {}

  // trans_N: the LPE simulation of a NautiLOD expression, exact for
  // intermediate navigation (endpoints in dom(adoc)).
  LpePtr trans(const NautilodExpr& n) {
    switch (n.kind) {
      case NautilodExpr::Kind::Fwd:
        return Lpe::link(make_link_pattern(LinkPatternSlot::context(),
                                           LinkPatternSlot::of(RdfTerm::uri(n.pred)),
                                           LinkPatternSlot::wildcard()));
      case NautilodExpr::Kind::Bwd:
        return Lpe::link(make_link_pattern(LinkPatternSlot::wildcard(),
                                           LinkPatternSlot::of(RdfTerm::uri(n.pred)),
                                           LinkPatternSlot::context()));
      case NautilodExpr::Kind::AnyFwd: {
        Variable x = fresh_.next();
        Variable u = fresh_.next();
        Variable p = fresh_.next();
        PatternPtr bgp = GraphPattern::bgp({TriplePattern{u, p, x}});
        return Lpe::nav(x, LdqlQuery::basic(Lpe::epsilon(),
                                            GraphPattern::graph(TermOrVar{u}, bgp)));
      }
      case NautilodExpr::Kind::Seq:
        return Lpe::concat(trans(*n.left), trans(*n.right));
      case NautilodExpr::Kind::Alt:
        return Lpe::alt(trans(*n.left), trans(*n.right));
      case NautilodExpr::Kind::Star:
        return Lpe::star(trans(*n.left));
      case NautilodExpr::Kind::AskTest: {
        Variable x = fresh_.next();
        QueryPtr probe = LdqlQuery::basic(
            Lpe::epsilon(), GraphPattern::graph(TermOrVar{x}, n.ask));
        return Lpe::concat(trans(*n.left), Lpe::test(Lpe::nav(x, std::move(probe))));
      }
    }
    return nullptr;
  }

  struct Decomp {
    // (prefix, final atom): prefix may be null for a single atom.
    std::vector<std::pair<NautilodPtr, NautilodPtr>> atoms;
    // (tested expression, ASK pattern) for words ending in a test.
    std::vector<std::pair<NautilodPtr, PatternPtr>> asks;
  };

  // Last-step decomposition: n = n1/e1 | ... | nk/ek | m1[ASK P1] | ... with
  // the e_i base symbols.
  Decomp decomp(const NautilodPtr& n) {
    switch (n->kind) {
      case NautilodExpr::Kind::Fwd:
      case NautilodExpr::Kind::Bwd:
      case NautilodExpr::Kind::AnyFwd:
        return {{{nullptr, n}}, {}};
      case NautilodExpr::Kind::AskTest:
        return {{}, {{n->left, n->ask}}};
      case NautilodExpr::Kind::Seq: {
        Decomp out;
        Decomp rhs = decomp(n->right);
        for (auto& [pre, atom] : rhs.atoms) {
          out.atoms.push_back({pre ? NautilodExpr::seq(n->left, pre) : n->left, atom});
        }
        for (auto& [m, ask] : rhs.asks) {
          out.asks.push_back({NautilodExpr::seq(n->left, m), ask});
        }
        if (eps_capable(*n->right)) {
          // An empty word of the right factor keeps the left endpoint only
          // when it is retrievable (the sequencing guard); an empty ASK test
          // is exactly that restriction.
          out.asks.push_back({n->left, GraphPattern::empty_bgp()});
        }
        return out;
      }
      case NautilodExpr::Kind::Alt: {
        Decomp out = decomp(n->left);
        Decomp rhs = decomp(n->right);
        out.atoms.insert(out.atoms.end(), rhs.atoms.begin(), rhs.atoms.end());
        out.asks.insert(out.asks.end(), rhs.asks.begin(), rhs.asks.end());
        return out;
      }
      case NautilodExpr::Kind::Star: {
        Decomp out;
        Decomp inner = decomp(n->left);
        for (auto& [pre, atom] : inner.atoms) {
          out.atoms.push_back({pre ? NautilodExpr::seq(n, pre) : n, atom});
        }
        for (auto& [m, ask] : inner.asks) {
          out.asks.push_back({NautilodExpr::seq(n, m), ask});
        }
        return out;
      }
    }
    return {};
  }

  QueryPtr build(const NautilodPtr& n) {
    Decomp d = decomp(n);
    std::vector<QueryPtr> branches;
    for (const auto& [pre, atom] : d.atoms) {
      LpePtr lpe = pre ? trans(*pre) : Lpe::epsilon();
      branches.push_back(LdqlQuery::basic(std::move(lpe), final_pattern(*atom)));
    }
    for (const auto& [m, ask] : d.asks) {
      branches.push_back(
          LdqlQuery::basic(trans(*m), GraphPattern::graph(TermOrVar{out_}, ask)));
    }
    if (eps_capable(*n)) {
      branches.push_back(LdqlQuery::basic(
          Lpe::epsilon(), GraphPattern::graph(TermOrVar{out_}, GraphPattern::empty_bgp())));
    }
    return LdqlQuery::project({out_}, union_fold(std::move(branches)));
  }

 private:
  // The final navigation step evaluated as a SPARQL pattern over the last
  // retrieved document (its named graph), so that literals and blank nodes
  // can be returned.
  PatternPtr final_pattern(const NautilodExpr& atom) {
    Variable u = fresh_.next();
    switch (atom.kind) {
      case NautilodExpr::Kind::Fwd: {
        PatternPtr bgp =
            GraphPattern::bgp({TriplePattern{u, RdfTerm::uri(atom.pred), out_}});
        return GraphPattern::graph(TermOrVar{u}, std::move(bgp));
      }
      case NautilodExpr::Kind::Bwd: {
        PatternPtr bgp =
            GraphPattern::bgp({TriplePattern{out_, RdfTerm::uri(atom.pred), u}});
        return GraphPattern::graph(TermOrVar{u}, std::move(bgp));
      }
      case NautilodExpr::Kind::AnyFwd: {
        Variable p = fresh_.next();
        PatternPtr bgp = GraphPattern::bgp({TriplePattern{u, p, out_}});
        return GraphPattern::graph(TermOrVar{u}, std::move(bgp));
      }
      default:
        throw std::logic_error("final_pattern: not a base symbol");
    }
  }

  Variable out_;
  FreshVars fresh_;
};

}  // namespace

NautilodTranslation translate_nautilod(const NautilodExpr& n) {
  std::set<Variable> used;
  collect_ask_vars(n, used);
  Variable out{"x"};
  for (int i = 1; used.count(out); ++i) out = Variable{"x" + std::to_string(i)};
  NdTranslator t(out);
  NautilodPtr copy = std::make_shared<const NautilodExpr>(n);
  return NautilodTranslation{t.build(copy), out};
}

// ---------------------------------------------------------------------------
// Reachability
// ---------------------------------------------------------------------------

QueryPtr translate_reachability(ReachCriterion c, const PatternPtr& p) {
  switch (c) {
    case ReachCriterion::None:
      return LdqlQuery::basic(Lpe::epsilon(), p);
    case ReachCriterion::All: {
      LpePtr any = Lpe::link(make_link_pattern(LinkPatternSlot::wildcard(),
                                               LinkPatternSlot::wildcard(),
                                               LinkPatternSlot::wildcard()));
      return LdqlQuery::basic(Lpe::star(std::move(any)), p);
    }
    case ReachCriterion::Match: {
      std::vector<TriplePattern> tps = triple_patterns_of(*p);
      if (tps.empty()) {
        // No triple pattern can ever match a data link; equivalent to None.
        return LdqlQuery::basic(Lpe::epsilon(), p);
      }
      FreshVars fresh;
      Variable s = fresh.next();
      Variable pv = fresh.next();
      Variable o = fresh.next();
      LpePtr steps;
      for (const auto& tp : tps) {
        PatternPtr pk = GraphPattern::bgp({TriplePattern{s, pv, o}});
        const TermOrVar* slots[3] = {&tp.s, &tp.p, &tp.o};
        const Variable* mine[3] = {&s, &pv, &o};
        for (int i = 0; i < 3; ++i) {
          if (!is_var(*slots[i])) {
            pk = GraphPattern::filter(pk, Expr::eq(Expr::variable(*mine[i]),
                                                   Expr::constant_term(as_term(*slots[i]))));
          }
        }
        // Repeated variables in the triple pattern force equal positions.
        for (int i = 0; i < 3; ++i) {
          for (int j = i + 1; j < 3; ++j) {
            if (is_var(*slots[i]) && is_var(*slots[j]) &&
                as_var(*slots[i]) == as_var(*slots[j])) {
              pk = GraphPattern::filter(pk, Expr::eq(Expr::variable(*mine[i]),
                                                     Expr::variable(*mine[j])));
            }
          }
        }
        QueryPtr qk = LdqlQuery::basic(Lpe::epsilon(), std::move(pk));
        for (const Variable* v : {&s, &pv, &o}) {
          LpePtr arm = Lpe::nav(*v, qk);
          steps = steps ? Lpe::alt(std::move(steps), std::move(arm)) : std::move(arm);
        }
      }
      return LdqlQuery::basic(Lpe::star(std::move(steps)), p);
    }
  }
  return nullptr;
}

}  // namespace ldql
