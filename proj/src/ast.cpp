#include "ldql/ast.h"

namespace ldql {

namespace {

LpePtr make_lpe(Lpe l) { return std::make_shared<const Lpe>(std::move(l)); }
QueryPtr make_query(LdqlQuery q) { return std::make_shared<const LdqlQuery>(std::move(q)); }

}  // namespace

LpePtr Lpe::epsilon() {
  return make_lpe({Kind::Epsilon, {}, nullptr, nullptr, {}, nullptr});
}
LpePtr Lpe::link(LinkPattern lp) {
  return make_lpe({Kind::Pattern, std::move(lp), nullptr, nullptr, {}, nullptr});
}
LpePtr Lpe::concat(LpePtr a, LpePtr b) {
  return make_lpe({Kind::Concat, {}, std::move(a), std::move(b), {}, nullptr});
}
LpePtr Lpe::alt(LpePtr a, LpePtr b) {
  return make_lpe({Kind::Alt, {}, std::move(a), std::move(b), {}, nullptr});
}
LpePtr Lpe::star(LpePtr a) {
  return make_lpe({Kind::Star, {}, std::move(a), nullptr, {}, nullptr});
}
LpePtr Lpe::test(LpePtr a) {
  return make_lpe({Kind::Test, {}, std::move(a), nullptr, {}, nullptr});
}
LpePtr Lpe::nav(Variable v, QueryPtr q) {
  return make_lpe({Kind::NavSub, {}, nullptr, nullptr, std::move(v), std::move(q)});
}

QueryPtr LdqlQuery::basic(LpePtr lpe, PatternPtr pattern) {
  return make_query({Kind::Basic, std::move(lpe), std::move(pattern), {}, {}, nullptr,
                     nullptr, {}});
}
QueryPtr LdqlQuery::seed(std::set<std::string> uris, QueryPtr q) {
  return make_query({Kind::SeedUris, nullptr, nullptr, std::move(uris), {}, std::move(q),
                     nullptr, {}});
}
QueryPtr LdqlQuery::seed(Variable v, QueryPtr q) {
  return make_query({Kind::SeedVar, nullptr, nullptr, {}, std::move(v), std::move(q),
                     nullptr, {}});
}
QueryPtr LdqlQuery::q_and(QueryPtr a, QueryPtr b) {
  return make_query({Kind::And, nullptr, nullptr, {}, {}, std::move(a), std::move(b), {}});
}
QueryPtr LdqlQuery::q_union(QueryPtr a, QueryPtr b) {
  return make_query({Kind::Union, nullptr, nullptr, {}, {}, std::move(a), std::move(b), {}});
}
QueryPtr LdqlQuery::project(std::set<Variable> vars, QueryPtr q) {
  return make_query({Kind::Project, nullptr, nullptr, {}, {}, std::move(q), nullptr,
                     std::move(vars)});
}

bool lpe_equal(const LpePtr& a, const LpePtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Lpe::Kind::Epsilon:
      return true;
    case Lpe::Kind::Pattern:
      return a->pattern == b->pattern;
    case Lpe::Kind::Concat:
    case Lpe::Kind::Alt:
      return lpe_equal(a->left, b->left) && lpe_equal(a->right, b->right);
    case Lpe::Kind::Star:
    case Lpe::Kind::Test:
      return lpe_equal(a->left, b->left);
    case Lpe::Kind::NavSub:
      return a->var == b->var && query_equal(a->sub, b->sub);
  }
  return false;
}

bool query_equal(const QueryPtr& a, const QueryPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case LdqlQuery::Kind::Basic:
      return lpe_equal(a->lpe, b->lpe) && pattern_equal(a->pattern, b->pattern);
    case LdqlQuery::Kind::SeedUris:
      return a->seed_uris == b->seed_uris && query_equal(a->left, b->left);
    case LdqlQuery::Kind::SeedVar:
      return a->seed_var == b->seed_var && query_equal(a->left, b->left);
    case LdqlQuery::Kind::And:
    case LdqlQuery::Kind::Union:
      return query_equal(a->left, b->left) && query_equal(a->right, b->right);
    case LdqlQuery::Kind::Project:
      return a->project_vars == b->project_vars && query_equal(a->left, b->left);
  }
  return false;
}

std::set<std::string> lpe_uris(const Lpe& l) {
  std::set<std::string> out;
  switch (l.kind) {
    case Lpe::Kind::Epsilon:
      break;
    case Lpe::Kind::Pattern:
      for (const LinkPatternSlot* slot : {&l.pattern.s, &l.pattern.p, &l.pattern.o}) {
        if (slot->kind == LinkPatternSlot::Kind::Term && slot->term.is_uri()) {
          out.insert(slot->term.value);
        }
      }
      break;
    case Lpe::Kind::Concat:
    case Lpe::Kind::Alt:
    case Lpe::Kind::Star:
    case Lpe::Kind::Test:
      for (const LpePtr* child : {&l.left, &l.right}) {
        if (*child) {
          auto sub = lpe_uris(**child);
          out.insert(sub.begin(), sub.end());
        }
      }
      break;
    case Lpe::Kind::NavSub: {
      auto sub = query_uris(*l.sub);
      out.insert(sub.begin(), sub.end());
      break;
    }
  }
  return out;
}

std::set<std::string> query_uris(const LdqlQuery& q) {
  std::set<std::string> out;
  auto merge = [&out](std::set<std::string> us) { out.insert(us.begin(), us.end()); };
  switch (q.kind) {
    case LdqlQuery::Kind::Basic:
      merge(lpe_uris(*q.lpe));
      merge(pattern_uris(*q.pattern));
      break;
    case LdqlQuery::Kind::SeedUris:
      out = q.seed_uris;
      merge(query_uris(*q.left));
      break;
    case LdqlQuery::Kind::SeedVar:
    case LdqlQuery::Kind::Project:
      merge(query_uris(*q.left));
      break;
    case LdqlQuery::Kind::And:
    case LdqlQuery::Kind::Union:
      merge(query_uris(*q.left));
      merge(query_uris(*q.right));
      break;
  }
  return out;
}

std::set<Variable> lpe_vars(const Lpe& l) {
  std::set<Variable> out;
  switch (l.kind) {
    case Lpe::Kind::Epsilon:
    case Lpe::Kind::Pattern:
      break;
    case Lpe::Kind::Concat:
    case Lpe::Kind::Alt:
    case Lpe::Kind::Star:
    case Lpe::Kind::Test:
      for (const LpePtr* child : {&l.left, &l.right}) {
        if (*child) {
          auto sub = lpe_vars(**child);
          out.insert(sub.begin(), sub.end());
        }
      }
      break;
    case Lpe::Kind::NavSub: {
      out.insert(l.var);
      auto sub = query_vars(*l.sub);
      out.insert(sub.begin(), sub.end());
      break;
    }
  }
  return out;
}

std::set<Variable> query_vars(const LdqlQuery& q) {
  std::set<Variable> out;
  auto merge = [&out](std::set<Variable> vs) { out.insert(vs.begin(), vs.end()); };
  switch (q.kind) {
    case LdqlQuery::Kind::Basic:
      merge(lpe_vars(*q.lpe));
      merge(vars_of_pattern(*q.pattern));
      break;
    case LdqlQuery::Kind::SeedUris:
      merge(query_vars(*q.left));
      break;
    case LdqlQuery::Kind::SeedVar:
      out.insert(q.seed_var);
      merge(query_vars(*q.left));
      break;
    case LdqlQuery::Kind::Project:
      out.insert(q.project_vars.begin(), q.project_vars.end());
      merge(query_vars(*q.left));
      break;
    case LdqlQuery::Kind::And:
    case LdqlQuery::Kind::Union:
      merge(query_vars(*q.left));
      merge(query_vars(*q.right));
      break;
  }
  return out;
}

namespace {

size_t lpe_node_count(const Lpe& l) {
  size_t n = 1;
  for (const LpePtr* child : {&l.left, &l.right}) {
    if (*child) n += lpe_node_count(**child);
  }
  if (l.sub) n += query_node_count(*l.sub);
  return n;
}

size_t pattern_node_count(const GraphPattern& p) {
  size_t n = 1 + p.triples.size();
  for (const PatternPtr* child : {&p.left, &p.right}) {
    if (*child) n += pattern_node_count(**child);
  }
  return n;
}

}  // namespace

size_t query_node_count(const LdqlQuery& q) {
  size_t n = 1;
  if (q.lpe) n += lpe_node_count(*q.lpe);
  if (q.pattern) n += pattern_node_count(*q.pattern);
  for (const QueryPtr* child : {&q.left, &q.right}) {
    if (*child) n += query_node_count(**child);
  }
  return n;
}

}  // namespace ldql
