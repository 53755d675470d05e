#include "ldql/safeness.h"

#include <algorithm>

namespace ldql {

namespace {

struct Analyzer {
  const NormalFormOptions& opts;
  std::vector<Refusal> refusals;

  CertPtr certify_query(const QueryPtr& q) {
    QueryPtr nf = rewrite_union_normal_form(q, opts);
    std::vector<ConjunctOrdering> orderings;
    bool ok = true;
    auto branches = union_branches(nf);
    for (size_t b = 0; b < branches.size(); ++b) {
      auto units = and_units(branches[b]);
      OrderResult r = search_order(units, "conjunct " + std::to_string(b + 1));
      if (!r.found) {
        ok = false;
        continue;
      }
      orderings.push_back(ConjunctOrdering{std::move(r.order), std::move(r.justifications)});
    }
    if (!ok) return nullptr;
    return std::make_shared<const SafenessCertificate>(
        SafenessCertificate{std::move(nf), std::move(orderings)});
  }

  OrderResult search_order(const std::vector<QueryPtr>& units, const std::string& where) {
    OrderResult result;
    std::vector<bool> placed(units.size(), false);
    std::set<Variable> bound;
    // Admissibility only depends on `bound`, the union of sbvars of placed
    // units, which grows monotonically; placing any admissible unit never
    // disables another, so appending greedily is complete.
    for (size_t step = 0; step < units.size(); ++step) {
      bool progressed = false;
      for (size_t i = 0; i < units.size() && !progressed; ++i) {
        if (placed[i]) continue;
        Justification j;
        if (!admissible(units[i], bound, result.order, units, j)) continue;
        placed[i] = true;
        result.order.push_back(i);
        result.justifications.push_back(std::move(j));
        auto sv = sbvars_query(*units[i]);
        bound.insert(sv.begin(), sv.end());
        progressed = true;
      }
      if (!progressed) break;
    }
    if (result.order.size() == units.size()) {
      result.found = true;
      return result;
    }
    Refusal refusal;
    refusal.where = where;
    for (size_t i = 0; i < units.size(); ++i) {
      if (placed[i]) continue;
      if (units[i]->kind == LdqlQuery::Kind::SeedVar) {
        refusal.blocked_vars.push_back(units[i]->seed_var);
      }
    }
    refusal.detail = refusal.blocked_vars.empty()
                         ? "a remaining unit is not Web-safe and not a SEED-variable query"
                         : "no earlier unit strongly binds the SEED variable(s)";
    result.blocked_vars = refusal.blocked_vars;
    refusals.push_back(std::move(refusal));
    return result;
  }

  bool admissible(const QueryPtr& unit, const std::set<Variable>& bound,
                  const std::vector<size_t>& order, const std::vector<QueryPtr>& units,
                  Justification& out) {
    if (UnitEvidencePtr ev = certify_unit(unit)) {
      out.kind = Justification::Kind::Safe;
      out.safe_unit = std::move(ev);
      return true;
    }
    if (unit->kind == LdqlQuery::Kind::SeedVar && bound.count(unit->seed_var)) {
      CertPtr inner = certify_query(unit->left);
      if (!inner) return false;
      out.kind = Justification::Kind::SeedVarBound;
      out.var = unit->seed_var;
      for (size_t pos = 0; pos < order.size(); ++pos) {
        if (sbvars_query(*units[order[pos]]).count(unit->seed_var)) {
          out.providers.push_back(pos);
        }
      }
      out.inner = std::move(inner);
      return true;
    }
    return false;
  }

  // Web-safety of a single UNION-free unit on its own (condition (i)).
  UnitEvidencePtr certify_unit(const QueryPtr& unit) {
    switch (unit->kind) {
      case LdqlQuery::Kind::Basic: {
        LpeSafetyPtr lpe = certify_lpe(unit->lpe);
        if (!lpe) return nullptr;
        return std::make_shared<const UnitEvidence>(
            UnitEvidence{UnitEvidence::Kind::Basic, std::move(lpe), nullptr});
      }
      case LdqlQuery::Kind::Project:
      case LdqlQuery::Kind::SeedUris: {
        CertPtr sub = certify_query(unit->left);
        if (!sub) return nullptr;
        auto kind = unit->kind == LdqlQuery::Kind::Project ? UnitEvidence::Kind::Project
                                                           : UnitEvidence::Kind::SeedUris;
        return std::make_shared<const UnitEvidence>(UnitEvidence{kind, nullptr, std::move(sub)});
      }
      case LdqlQuery::Kind::And:
      case LdqlQuery::Kind::Union: {
        // Composite units (only seen through the public order search) are
        // certified as whole queries.
        CertPtr sub = certify_query(unit);
        if (!sub) return nullptr;
        return std::make_shared<const UnitEvidence>(
            UnitEvidence{UnitEvidence::Kind::Composite, nullptr, std::move(sub)});
      }
      case LdqlQuery::Kind::SeedVar:
        return nullptr;
    }
    return nullptr;
  }

  LpeSafetyPtr certify_lpe(const LpePtr& l) {
    switch (l->kind) {
      case Lpe::Kind::Epsilon:
      case Lpe::Kind::Pattern:
        return std::make_shared<const LpeSafety>(LpeSafety{{}, nullptr});
      case Lpe::Kind::NavSub: {
        CertPtr sub = certify_query(l->sub);
        if (!sub) return nullptr;
        return std::make_shared<const LpeSafety>(LpeSafety{{}, std::move(sub)});
      }
      default: {
        std::vector<LpeSafetyPtr> children;
        for (const LpePtr* child : {&l->left, &l->right}) {
          if (!*child) continue;
          LpeSafetyPtr sub = certify_lpe(*child);
          if (!sub) return nullptr;
          children.push_back(std::move(sub));
        }
        return std::make_shared<const LpeSafety>(LpeSafety{std::move(children), nullptr});
      }
    }
  }
};

}  // namespace

SafenessReport is_websafe_syntactic(const QueryPtr& q, const NormalFormOptions& opts) {
  Analyzer a{opts, {}};
  SafenessReport report;
  CertPtr cert = a.certify_query(q);
  if (cert) {
    report.verdict = SafenessReport::Verdict::Certified;
    report.certificate = std::move(cert);
  } else {
    report.verdict = SafenessReport::Verdict::NotCertified;
    report.refusals = std::move(a.refusals);
  }
  return report;
}

OrderResult find_order(const std::vector<QueryPtr>& units, const NormalFormOptions& opts) {
  Analyzer a{opts, {}};
  return a.search_order(units, "conjunct");
}

namespace {

struct Validator {
  const NormalFormOptions& opts;

  bool check_cert(const QueryPtr& q, const SafenessCertificate& c) {
    QueryPtr nf;
    try {
      nf = rewrite_union_normal_form(q, opts);
    } catch (const NormalFormError&) {
      return false;
    }
    if (!query_equal(nf, c.normal_form)) return false;
    auto branches = union_branches(nf);
    if (branches.size() != c.conjuncts.size()) return false;
    for (size_t b = 0; b < branches.size(); ++b) {
      if (!check_ordering(and_units(branches[b]), c.conjuncts[b])) return false;
    }
    return true;
  }

  bool check_ordering(const std::vector<QueryPtr>& units, const ConjunctOrdering& ord) {
    if (ord.order.size() != units.size()) return false;
    if (ord.justifications.size() != units.size()) return false;
    std::vector<bool> seen(units.size(), false);
    for (size_t idx : ord.order) {
      if (idx >= units.size() || seen[idx]) return false;
      seen[idx] = true;
    }
    std::set<Variable> bound;
    for (size_t pos = 0; pos < ord.order.size(); ++pos) {
      const QueryPtr& unit = units[ord.order[pos]];
      const Justification& j = ord.justifications[pos];
      switch (j.kind) {
        case Justification::Kind::Safe:
          if (!j.safe_unit || !check_unit(unit, *j.safe_unit)) return false;
          break;
        case Justification::Kind::SeedVarBound: {
          if (unit->kind != LdqlQuery::Kind::SeedVar) return false;
          if (unit->seed_var != j.var) return false;
          if (!bound.count(j.var)) return false;
          if (j.providers.empty()) return false;
          for (size_t p : j.providers) {
            if (p >= pos) return false;
            if (!sbvars_query(*units[ord.order[p]]).count(j.var)) return false;
          }
          if (!j.inner || !check_cert(unit->left, *j.inner)) return false;
          break;
        }
      }
      auto sv = sbvars_query(*unit);
      bound.insert(sv.begin(), sv.end());
    }
    return true;
  }

  bool check_unit(const QueryPtr& unit, const UnitEvidence& ev) {
    switch (ev.kind) {
      case UnitEvidence::Kind::Basic:
        return unit->kind == LdqlQuery::Kind::Basic && ev.lpe &&
               check_lpe(unit->lpe, *ev.lpe);
      case UnitEvidence::Kind::Project:
        return unit->kind == LdqlQuery::Kind::Project && ev.sub &&
               check_cert(unit->left, *ev.sub);
      case UnitEvidence::Kind::SeedUris:
        return unit->kind == LdqlQuery::Kind::SeedUris && ev.sub &&
               check_cert(unit->left, *ev.sub);
      case UnitEvidence::Kind::Composite:
        return (unit->kind == LdqlQuery::Kind::And ||
                unit->kind == LdqlQuery::Kind::Union) &&
               ev.sub && check_cert(unit, *ev.sub);
    }
    return false;
  }

  bool check_lpe(const LpePtr& l, const LpeSafety& s) {
    switch (l->kind) {
      case Lpe::Kind::Epsilon:
      case Lpe::Kind::Pattern:
        return s.children.empty() && !s.nav_query;
      case Lpe::Kind::NavSub:
        return s.nav_query && check_cert(l->sub, *s.nav_query);
      default: {
        std::vector<const LpePtr*> children;
        for (const LpePtr* child : {&l->left, &l->right}) {
          if (*child) children.push_back(child);
        }
        if (children.size() != s.children.size()) return false;
        for (size_t i = 0; i < children.size(); ++i) {
          if (!s.children[i] || !check_lpe(*children[i], *s.children[i])) return false;
        }
        return true;
      }
    }
  }
};

}  // namespace

bool validate_certificate(const QueryPtr& q, const SafenessCertificate& c,
                          const NormalFormOptions& opts) {
  Validator v{opts};
  return v.check_cert(q, c);
}

bool validate_ordering(const std::vector<QueryPtr>& units, const ConjunctOrdering& ordering,
                       const NormalFormOptions& opts) {
  Validator v{opts};
  return v.check_ordering(units, ordering);
}

}  // namespace ldql
