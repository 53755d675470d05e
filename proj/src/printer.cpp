#include "ldql/printer.h"

#include <sstream>

namespace ldql {

namespace {

std::string quote_literal(const std::string& lex) {
  std::string out = "\"";
  for (char c : lex) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::string slot_text(const LinkPatternSlot& s) {
  switch (s.kind) {
    case LinkPatternSlot::Kind::Context: return "+";
    case LinkPatternSlot::Kind::Wildcard: return "_";
    case LinkPatternSlot::Kind::Term: return serialize_term(s.term);
  }
  return {};
}

std::string term_or_var(const TermOrVar& t) {
  if (is_var(t)) return "?" + as_var(t).name;
  return serialize_term(as_term(t));
}

// Precedence levels: 0 alternation, 1 concatenation, 2 star, 3 atoms.
int lpe_prec(const Lpe& l) {
  switch (l.kind) {
    case Lpe::Kind::Alt: return 0;
    case Lpe::Kind::Concat: return 1;
    case Lpe::Kind::Star: return 2;
    default: return 3;
  }
}

std::string lpe_text(const Lpe& l, int min_prec) {
  std::string out;
  switch (l.kind) {
    case Lpe::Kind::Epsilon:
      out = "eps";
      break;
    case Lpe::Kind::Pattern:
      out = "{" + slot_text(l.pattern.s) + " " + slot_text(l.pattern.p) + " " +
            slot_text(l.pattern.o) + "}";
      break;
    case Lpe::Kind::Concat:
      out = lpe_text(*l.left, 1) + "/" + lpe_text(*l.right, 2);
      break;
    case Lpe::Kind::Alt:
      out = lpe_text(*l.left, 0) + "|" + lpe_text(*l.right, 1);
      break;
    case Lpe::Kind::Star:
      out = lpe_text(*l.left, 3) + "*";
      break;
    case Lpe::Kind::Test:
      out = "[" + lpe_text(*l.left, 0) + "]";
      break;
    case Lpe::Kind::NavSub:
      out = "(?" + l.var.name + " : " + serialize_query(*l.sub) + ")";
      break;
  }
  if (lpe_prec(l) < min_prec) return "(" + out + ")";
  return out;
}

std::string expr_text(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return serialize_term(e.constant);
    case Expr::Kind::Var:
      return "?" + e.var.name;
    case Expr::Kind::Eq:
    case Expr::Kind::Neq:
      return expr_text(*e.lhs) + (e.kind == Expr::Kind::Eq ? " = " : " != ") +
             expr_text(*e.rhs);
    case Expr::Kind::Not:
      return "!(" + expr_text(*e.lhs) + ")";
    case Expr::Kind::And:
    case Expr::Kind::Or:
      return "(" + expr_text(*e.lhs) + (e.kind == Expr::Kind::And ? " && " : " || ") +
             expr_text(*e.rhs) + ")";
  }
  return {};
}

}  // namespace

std::string serialize_term(const RdfTerm& t) {
  switch (t.kind) {
    case RdfTerm::Kind::Uri: return "<" + t.value + ">";
    case RdfTerm::Kind::Blank: return "_:" + t.value;
    case RdfTerm::Kind::Literal: return quote_literal(t.value);
  }
  return {};
}

std::string serialize_expr(const Expr& e) { return expr_text(e); }

std::string serialize_pattern(const GraphPattern& p) {
  switch (p.kind) {
    case GraphPattern::Kind::Bgp: {
      if (p.triples.empty()) return "{ }";
      std::string out = "{ ";
      bool first = true;
      for (const auto& tp : p.triples) {
        if (!first) out += " . ";
        first = false;
        out += term_or_var(tp.s) + " " + term_or_var(tp.p) + " " + term_or_var(tp.o);
      }
      out += " }";
      return out;
    }
    case GraphPattern::Kind::And:
      return "(" + serialize_pattern(*p.left) + " AND " + serialize_pattern(*p.right) + ")";
    case GraphPattern::Kind::Union:
      return "(" + serialize_pattern(*p.left) + " UNION " + serialize_pattern(*p.right) + ")";
    case GraphPattern::Kind::Opt:
      return "(" + serialize_pattern(*p.left) + " OPT " + serialize_pattern(*p.right) + ")";
    case GraphPattern::Kind::Filter:
      return "(" + serialize_pattern(*p.left) + " FILTER " + serialize_expr(*p.expr) + ")";
    case GraphPattern::Kind::Graph:
      return "(GRAPH " + term_or_var(p.graph_term) + " " + serialize_pattern(*p.left) + ")";
    case GraphPattern::Kind::Bind:
      return "(" + serialize_pattern(*p.left) + " BIND (" + serialize_expr(*p.expr) +
             " AS ?" + p.bind_var.name + "))";
  }
  return {};
}

std::string serialize_lpe(const Lpe& l) { return lpe_text(l, 0); }

std::string serialize_query(const LdqlQuery& q) {
  switch (q.kind) {
    case LdqlQuery::Kind::Basic:
      return "<< " + serialize_lpe(*q.lpe) + " , " + serialize_pattern(*q.pattern) + " >>";
    case LdqlQuery::Kind::SeedUris: {
      std::string out = "SEED {";
      for (const auto& u : q.seed_uris) out += " <" + u + ">";
      out += q.seed_uris.empty() ? "}" : " }";
      return out + " " + serialize_query(*q.left);
    }
    case LdqlQuery::Kind::SeedVar:
      return "SEED ?" + q.seed_var.name + " " + serialize_query(*q.left);
    case LdqlQuery::Kind::And:
      return "(" + serialize_query(*q.left) + " AND " + serialize_query(*q.right) + ")";
    case LdqlQuery::Kind::Union:
      return "(" + serialize_query(*q.left) + " UNION " + serialize_query(*q.right) + ")";
    case LdqlQuery::Kind::Project: {
      std::string out = "PROJECT {";
      for (const auto& v : q.project_vars) out += " ?" + v.name;
      out += q.project_vars.empty() ? "}" : " }";
      return out + " (" + serialize_query(*q.left) + ")";
    }
  }
  return {};
}

std::string serialize_mapping(const SolutionMapping& m) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, t] : m) {
    if (!first) out << " ";
    first = false;
    out << "?" << v.name << "=" << serialize_term(t);
  }
  if (m.empty()) out << "{}";
  return out.str();
}

}  // namespace ldql
