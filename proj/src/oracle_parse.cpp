#include "ldql/oracles.h"
#include "ldql/parser.h"
#include "ldql/printer.h"
#include "tokenizer.h"

namespace ldql {

namespace {

using detail::Tok;
using detail::TokenStream;

// PP expressions: prim := <p> | !(<u>|...) | "(" pp ")"; precedence * > / > |.
class PpParser {
 public:
  explicit PpParser(TokenStream& ts) : ts_(ts) {}

  PpPattern pattern() {
    PpEndpoint alpha = endpoint();
    PpPtr pp = expr();
    PpEndpoint beta = endpoint();
    return PpPattern{std::move(alpha), std::move(pp), std::move(beta)};
  }

  PpPtr expr() { return alt(); }

 private:
  PpEndpoint endpoint() {
    if (ts_.at(Tok::Var)) return Variable{ts_.next().text};
    if (ts_.at(Tok::Iri)) return RdfTerm::uri(ts_.next().text);
    if (ts_.at(Tok::Literal)) return RdfTerm::literal(ts_.next().text);
    ts_.fail("expected a PP-pattern endpoint (URI, literal or variable)");
  }

  PpPtr alt() {
    PpPtr e = seq();
    while (ts_.at(Tok::Pipe)) {
      ts_.next();
      e = PpExpr::alt(std::move(e), seq());
    }
    return e;
  }

  PpPtr seq() {
    PpPtr e = postfix();
    while (ts_.at(Tok::Slash)) {
      ts_.next();
      e = PpExpr::seq(std::move(e), postfix());
    }
    return e;
  }

  PpPtr postfix() {
    PpPtr e = prim();
    while (ts_.at(Tok::Star)) {
      ts_.next();
      e = PpExpr::star(std::move(e));
    }
    return e;
  }

  PpPtr prim() {
    if (ts_.at(Tok::Iri)) return PpExpr::pred_uri(ts_.next().text);
    if (ts_.at(Tok::Bang)) {
      ts_.next();
      ts_.expect(Tok::LParen, "'(' after '!'");
      std::vector<std::string> uris;
      uris.push_back(ts_.expect(Tok::Iri, "a URI inside the negated set").text);
      while (ts_.at(Tok::Pipe)) {
        ts_.next();
        uris.push_back(ts_.expect(Tok::Iri, "a URI inside the negated set").text);
      }
      ts_.expect(Tok::RParen, "')' closing the negated set");
      return PpExpr::neg_set(std::move(uris));
    }
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      PpPtr e = alt();
      ts_.expect(Tok::RParen, "')' closing the group");
      return e;
    }
    ts_.fail("expected a property-path expression");
  }

  TokenStream& ts_;
};

// NautiLOD: prim := <p> | <p>^ | <> | "(" ne ")"; postfix * and [ASK pattern].
class NautilodParser {
 public:
  explicit NautilodParser(TokenStream& ts) : ts_(ts) {}

  NautilodPtr expr() { return alt(); }

 private:
  NautilodPtr alt() {
    NautilodPtr e = seq();
    while (ts_.at(Tok::Pipe)) {
      ts_.next();
      e = NautilodExpr::alt(std::move(e), seq());
    }
    return e;
  }

  NautilodPtr seq() {
    NautilodPtr e = postfix();
    while (ts_.at(Tok::Slash)) {
      ts_.next();
      e = NautilodExpr::seq(std::move(e), postfix());
    }
    return e;
  }

  NautilodPtr postfix() {
    NautilodPtr e = prim();
    for (;;) {
      if (ts_.at(Tok::Star)) {
        ts_.next();
        e = NautilodExpr::star(std::move(e));
        continue;
      }
      if (ts_.at(Tok::LBracket)) {
        ts_.next();
        ts_.expect_word("ASK");
        PatternPtr p = detail::parse_pattern_at(ts_);
        ts_.expect(Tok::RBracket, "']' closing the ASK test");
        e = NautilodExpr::ask_test(std::move(e), std::move(p));
        continue;
      }
      return e;
    }
  }

  NautilodPtr prim() {
    if (ts_.at(Tok::AnyFwd)) {
      ts_.next();
      return NautilodExpr::any_fwd();
    }
    if (ts_.at(Tok::Iri)) {
      std::string p = ts_.next().text;
      if (ts_.at(Tok::Caret)) {
        ts_.next();
        return NautilodExpr::bwd(std::move(p));
      }
      return NautilodExpr::fwd(std::move(p));
    }
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      NautilodPtr e = alt();
      ts_.expect(Tok::RParen, "')' closing the group");
      return e;
    }
    ts_.fail("expected a NautiLOD expression");
  }

  TokenStream& ts_;
};

void expect_end(TokenStream& ts) {
  if (!ts.at(Tok::End)) ts.fail("trailing content");
}

int pp_prec(const PpExpr& e) {
  switch (e.kind) {
    case PpExpr::Kind::Alt: return 0;
    case PpExpr::Kind::Seq: return 1;
    case PpExpr::Kind::Star: return 2;
    default: return 3;
  }
}

std::string pp_text(const PpExpr& e, int min_prec) {
  std::string out;
  switch (e.kind) {
    case PpExpr::Kind::Pred:
      out = "<" + e.pred + ">";
      break;
    case PpExpr::Kind::NegSet: {
      out = "!(";
      for (size_t i = 0; i < e.negated.size(); ++i) {
        if (i) out += "|";
        out += "<" + e.negated[i] + ">";
      }
      out += ")";
      break;
    }
    case PpExpr::Kind::Seq:
      out = pp_text(*e.left, 1) + "/" + pp_text(*e.right, 2);
      break;
    case PpExpr::Kind::Alt:
      out = pp_text(*e.left, 0) + "|" + pp_text(*e.right, 1);
      break;
    case PpExpr::Kind::Star:
      out = pp_text(*e.left, 3) + "*";
      break;
  }
  if (pp_prec(e) < min_prec) return "(" + out + ")";
  return out;
}

int nd_prec(const NautilodExpr& e) {
  switch (e.kind) {
    case NautilodExpr::Kind::Alt: return 0;
    case NautilodExpr::Kind::Seq: return 1;
    case NautilodExpr::Kind::Star:
    case NautilodExpr::Kind::AskTest: return 2;
    default: return 3;
  }
}

std::string nd_text(const NautilodExpr& e, int min_prec) {
  std::string out;
  switch (e.kind) {
    case NautilodExpr::Kind::Fwd:
      out = "<" + e.pred + ">";
      break;
    case NautilodExpr::Kind::Bwd:
      out = "<" + e.pred + ">^";
      break;
    case NautilodExpr::Kind::AnyFwd:
      out = "<>";
      break;
    case NautilodExpr::Kind::Seq:
      out = nd_text(*e.left, 1) + "/" + nd_text(*e.right, 2);
      break;
    case NautilodExpr::Kind::Alt:
      out = nd_text(*e.left, 0) + "|" + nd_text(*e.right, 1);
      break;
    case NautilodExpr::Kind::Star:
      out = nd_text(*e.left, 3) + "*";
      break;
    case NautilodExpr::Kind::AskTest:
      out = nd_text(*e.left, 3) + "[ASK " + serialize_pattern(*e.ask) + "]";
      break;
  }
  if (nd_prec(e) < min_prec) return "(" + out + ")";
  return out;
}

}  // namespace

PpPattern parse_pp_pattern(const std::string& text) {
  detail::TokenStream ts(detail::tokenize(text));
  PpParser p(ts);
  PpPattern out = p.pattern();
  expect_end(ts);
  return out;
}

NautilodPtr parse_nautilod(const std::string& text) {
  detail::TokenStream ts(detail::tokenize(text));
  NautilodParser p(ts);
  NautilodPtr out = p.expr();
  expect_end(ts);
  return out;
}

std::string serialize_pp_pattern(const PpPattern& p) {
  auto endpoint = [](const PpEndpoint& e) {
    if (is_var(e)) return "?" + as_var(e).name;
    return serialize_term(as_term(e));
  };
  return endpoint(p.alpha) + " " + pp_text(*p.pp, 0) + " " + endpoint(p.beta);
}

std::string serialize_nautilod(const NautilodExpr& n) { return nd_text(n, 0); }

}  // namespace ldql
