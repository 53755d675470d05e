#include "ldql/parser.h"

#include <cctype>

#include "tokenizer.h"

namespace ldql {
namespace detail {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> tokenize(const std::string& input) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok kind, std::string text, int l, int c) {
    out.push_back(Token{kind, std::move(text), l, c});
  };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < input.size(); ++k, ++i) {
      if (input[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < input.size()) {
    char c = input[i];
    int l = line, cl = col;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '<') {
      if (i + 1 < input.size() && input[i + 1] == '<') {
        push(Tok::OpenBasic, "<<", l, cl);
        advance(2);
        continue;
      }
      if (i + 1 < input.size() && input[i + 1] == '>') {
        push(Tok::AnyFwd, "<>", l, cl);
        advance(2);
        continue;
      }
      size_t end = input.find('>', i);
      if (end == std::string::npos) throw ParseError("unterminated URI", l, cl);
      push(Tok::Iri, input.substr(i + 1, end - i - 1), l, cl);
      advance(end - i + 1);
      continue;
    }
    if (c == '>') {
      if (i + 1 < input.size() && input[i + 1] == '>') {
        push(Tok::CloseBasic, ">>", l, cl);
        advance(2);
        continue;
      }
      throw ParseError("unexpected '>'", l, cl);
    }
    if (c == '?') {
      size_t end = i + 1;
      while (end < input.size() && is_name_char(input[end])) ++end;
      if (end == i + 1) throw ParseError("expected variable name after '?'", l, cl);
      std::string name = input.substr(i + 1, end - i - 1);
      if (name.rfind("_g", 0) == 0) {
        throw ParseError("variable names beginning with '_g' are reserved", l, cl);
      }
      push(Tok::Var, name, l, cl);
      advance(end - i);
      continue;
    }
    if (c == '"') {
      std::string lex;
      size_t j = i + 1;
      for (; j < input.size(); ++j) {
        if (input[j] == '\\') {
          if (j + 1 >= input.size()) throw ParseError("dangling escape in literal", l, cl);
          char e = input[++j];
          switch (e) {
            case 'n': lex.push_back('\n'); break;
            case 't': lex.push_back('\t'); break;
            case '"': lex.push_back('"'); break;
            case '\\': lex.push_back('\\'); break;
            default: throw ParseError("unknown escape in literal", l, cl);
          }
        } else if (input[j] == '"') {
          break;
        } else {
          lex.push_back(input[j]);
        }
      }
      if (j >= input.size()) throw ParseError("unterminated literal", l, cl);
      push(Tok::Literal, lex, l, cl);
      advance(j - i + 1);
      continue;
    }
    if (c == '_') {
      if (i + 1 < input.size() && input[i + 1] == ':') {
        throw ParseError("blank nodes are not allowed in query syntax", l, cl);
      }
      push(Tok::Underscore, "_", l, cl);
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t end = i;
      while (end < input.size() && is_name_char(input[end])) ++end;
      push(Tok::Word, input.substr(i, end - i), l, cl);
      advance(end - i);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < input.size() && input[i + 1] == b;
    };
    if (two('&', '&')) { push(Tok::AndAnd, "&&", l, cl); advance(2); continue; }
    if (two('|', '|')) { push(Tok::OrOr, "||", l, cl); advance(2); continue; }
    if (two('!', '=')) { push(Tok::Neq, "!=", l, cl); advance(2); continue; }
    switch (c) {
      case '{': push(Tok::LBrace, "{", l, cl); break;
      case '}': push(Tok::RBrace, "}", l, cl); break;
      case '(': push(Tok::LParen, "(", l, cl); break;
      case ')': push(Tok::RParen, ")", l, cl); break;
      case '[': push(Tok::LBracket, "[", l, cl); break;
      case ']': push(Tok::RBracket, "]", l, cl); break;
      case '.': push(Tok::Dot, ".", l, cl); break;
      case ',': push(Tok::Comma, ",", l, cl); break;
      case '/': push(Tok::Slash, "/", l, cl); break;
      case '|': push(Tok::Pipe, "|", l, cl); break;
      case '*': push(Tok::Star, "*", l, cl); break;
      case '+': push(Tok::Plus, "+", l, cl); break;
      case ':': push(Tok::Colon, ":", l, cl); break;
      case '^': push(Tok::Caret, "^", l, cl); break;
      case '=': push(Tok::Eq, "=", l, cl); break;
      case '!': push(Tok::Bang, "!", l, cl); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    advance(1);
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

}  // namespace detail

namespace {

using detail::Tok;
using detail::TokenStream;

class Parser {
 public:
  explicit Parser(TokenStream& ts) : ts_(ts) {}

  QueryPtr query() {
    if (ts_.at(Tok::OpenBasic)) return basic();
    if (ts_.at_word("SEED")) {
      ts_.next();
      if (ts_.at(Tok::LBrace)) {
        std::set<std::string> uris;
        ts_.next();
        while (ts_.at(Tok::Iri)) uris.insert(ts_.next().text);
        ts_.expect(Tok::RBrace, "'}' after seed URI set");
        return LdqlQuery::seed(std::move(uris), query());
      }
      Variable v = variable();
      return LdqlQuery::seed(v, query());
    }
    if (ts_.at_word("PROJECT")) {
      ts_.next();
      ts_.expect(Tok::LBrace, "'{' before projection variables");
      std::set<Variable> vars;
      while (ts_.at(Tok::Var)) vars.insert(Variable{ts_.next().text});
      ts_.expect(Tok::RBrace, "'}' after projection variables");
      ts_.expect(Tok::LParen, "'(' around projected query");
      QueryPtr q = query();
      ts_.expect(Tok::RParen, "')' after projected query");
      return LdqlQuery::project(std::move(vars), std::move(q));
    }
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      QueryPtr lhs = query();
      if (ts_.at_word("AND")) {
        ts_.next();
        QueryPtr rhs = query();
        ts_.expect(Tok::RParen, "')' after conjunction");
        return LdqlQuery::q_and(std::move(lhs), std::move(rhs));
      }
      if (ts_.at_word("UNION")) {
        ts_.next();
        QueryPtr rhs = query();
        ts_.expect(Tok::RParen, "')' after union");
        return LdqlQuery::q_union(std::move(lhs), std::move(rhs));
      }
      ts_.fail("expected 'AND' or 'UNION'");
    }
    ts_.fail("expected a query");
  }

  LpePtr lpe() { return lpe_alt(); }

  PatternPtr pattern() {
    if (ts_.at(Tok::LBrace)) return bgp();
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      if (ts_.at_word("GRAPH")) {
        ts_.next();
        TermOrVar g = graph_name();
        PatternPtr sub = pattern();
        ts_.expect(Tok::RParen, "')' after GRAPH pattern");
        return GraphPattern::graph(std::move(g), std::move(sub));
      }
      PatternPtr lhs = pattern();
      if (ts_.at_word("AND") || ts_.at_word("UNION") || ts_.at_word("OPT")) {
        std::string op = ts_.next().text;
        PatternPtr rhs = pattern();
        ts_.expect(Tok::RParen, "')' after pattern");
        if (op == "AND") return GraphPattern::p_and(std::move(lhs), std::move(rhs));
        if (op == "UNION") return GraphPattern::p_union(std::move(lhs), std::move(rhs));
        return GraphPattern::opt(std::move(lhs), std::move(rhs));
      }
      if (ts_.at_word("FILTER")) {
        ts_.next();
        ExprPtr e = expr();
        ts_.expect(Tok::RParen, "')' after FILTER");
        return GraphPattern::filter(std::move(lhs), std::move(e));
      }
      if (ts_.at_word("BIND")) {
        ts_.next();
        ts_.expect(Tok::LParen, "'(' after BIND");
        ExprPtr e = bind_value();
        ts_.expect_word("AS");
        Variable v = variable();
        ts_.expect(Tok::RParen, "')' after BIND target");
        ts_.expect(Tok::RParen, "')' after BIND pattern");
        try {
          return GraphPattern::bind(std::move(lhs), std::move(e), std::move(v));
        } catch (const WebError& e2) {
          ts_.fail(e2.what());
        }
      }
      ts_.fail("expected 'AND', 'UNION', 'OPT', 'FILTER', 'BIND' or 'GRAPH'");
    }
    ts_.fail("expected a graph pattern");
  }

  ExprPtr expr() { return expr_or(); }

  void end() {
    if (!ts_.at(Tok::End)) ts_.fail("trailing content after query");
  }

 private:
  QueryPtr basic() {
    ts_.expect(Tok::OpenBasic, "'<<'");
    LpePtr l = lpe();
    ts_.expect(Tok::Comma, "',' between LPE and pattern");
    PatternPtr p = pattern();
    ts_.expect(Tok::CloseBasic, "'>>' closing the basic query");
    return LdqlQuery::basic(std::move(l), std::move(p));
  }

  Variable variable() {
    const auto& t = ts_.expect(Tok::Var, "a variable");
    return Variable{t.text};
  }

  LpePtr lpe_alt() {
    LpePtr l = lpe_concat();
    while (ts_.at(Tok::Pipe)) {
      ts_.next();
      l = Lpe::alt(std::move(l), lpe_concat());
    }
    return l;
  }

  LpePtr lpe_concat() {
    LpePtr l = lpe_postfix();
    while (ts_.at(Tok::Slash)) {
      ts_.next();
      l = Lpe::concat(std::move(l), lpe_postfix());
    }
    return l;
  }

  LpePtr lpe_postfix() {
    LpePtr l = lpe_primary();
    while (ts_.at(Tok::Star)) {
      ts_.next();
      l = Lpe::star(std::move(l));
    }
    return l;
  }

  LpePtr lpe_primary() {
    if (ts_.at_word("eps")) {
      ts_.next();
      return Lpe::epsilon();
    }
    if (ts_.at(Tok::LBrace)) return link_pattern();
    if (ts_.at(Tok::LBracket)) {
      ts_.next();
      LpePtr l = lpe();
      ts_.expect(Tok::RBracket, "']' closing the test");
      return Lpe::test(std::move(l));
    }
    if (ts_.at(Tok::LParen)) {
      if (ts_.peek(1).kind == Tok::Var && ts_.peek(2).kind == Tok::Colon) {
        ts_.next();
        Variable v = variable();
        ts_.next();  // ':'
        QueryPtr q = query();
        ts_.expect(Tok::RParen, "')' closing the navigation subquery");
        return Lpe::nav(std::move(v), std::move(q));
      }
      ts_.next();
      LpePtr l = lpe();
      ts_.expect(Tok::RParen, "')' closing the LPE group");
      return l;
    }
    ts_.fail("expected an LPE");
  }

  LpePtr link_pattern() {
    ts_.expect(Tok::LBrace, "'{' opening a link pattern");
    LinkPatternSlot s = link_slot(false);
    LinkPatternSlot p = link_slot(false);
    LinkPatternSlot o = link_slot(true);
    ts_.expect(Tok::RBrace, "'}' closing the link pattern");
    try {
      return Lpe::link(make_link_pattern(std::move(s), std::move(p), std::move(o)));
    } catch (const WebError& e) {
      ts_.fail(e.what());
    }
  }

  LinkPatternSlot link_slot(bool allow_literal) {
    if (ts_.at(Tok::Plus)) {
      ts_.next();
      return LinkPatternSlot::context();
    }
    if (ts_.at(Tok::Underscore)) {
      ts_.next();
      return LinkPatternSlot::wildcard();
    }
    if (ts_.at(Tok::Iri)) return LinkPatternSlot::of(RdfTerm::uri(ts_.next().text));
    if (ts_.at(Tok::Literal)) {
      if (!allow_literal) ts_.fail("literal not allowed in this link pattern position");
      return LinkPatternSlot::of(RdfTerm::literal(ts_.next().text));
    }
    ts_.fail("expected '+', '_', a URI or a literal");
  }

  PatternPtr bgp() {
    ts_.expect(Tok::LBrace, "'{' opening a basic graph pattern");
    std::vector<TriplePattern> triples;
    while (!ts_.at(Tok::RBrace)) {
      TermOrVar s = pattern_term();
      TermOrVar p = pattern_term();
      TermOrVar o = pattern_term();
      triples.push_back(TriplePattern{std::move(s), std::move(p), std::move(o)});
      if (ts_.at(Tok::Dot)) {
        ts_.next();
      } else {
        break;
      }
    }
    ts_.expect(Tok::RBrace, "'}' closing the basic graph pattern");
    try {
      return GraphPattern::bgp(std::move(triples));
    } catch (const WebError& e) {
      ts_.fail(e.what());
    }
  }

  TermOrVar pattern_term() {
    if (ts_.at(Tok::Var)) return Variable{ts_.next().text};
    if (ts_.at(Tok::Iri)) return RdfTerm::uri(ts_.next().text);
    if (ts_.at(Tok::Literal)) return RdfTerm::literal(ts_.next().text);
    ts_.fail("expected a URI, literal or variable");
  }

  TermOrVar graph_name() {
    if (ts_.at(Tok::Var)) return Variable{ts_.next().text};
    if (ts_.at(Tok::Iri)) return RdfTerm::uri(ts_.next().text);
    ts_.fail("expected a URI or variable after GRAPH");
  }

  ExprPtr bind_value() {
    if (ts_.at(Tok::Var)) return Expr::variable(Variable{ts_.next().text});
    if (ts_.at(Tok::Iri)) return Expr::constant_term(RdfTerm::uri(ts_.next().text));
    if (ts_.at(Tok::Literal)) return Expr::constant_term(RdfTerm::literal(ts_.next().text));
    ts_.fail("expected a URI, literal or variable in BIND");
  }

  ExprPtr expr_or() {
    ExprPtr e = expr_and();
    while (ts_.at(Tok::OrOr)) {
      ts_.next();
      e = Expr::logical_or(std::move(e), expr_and());
    }
    return e;
  }

  ExprPtr expr_and() {
    ExprPtr e = expr_not();
    while (ts_.at(Tok::AndAnd)) {
      ts_.next();
      e = Expr::logical_and(std::move(e), expr_not());
    }
    return e;
  }

  ExprPtr expr_not() {
    if (ts_.at(Tok::Bang)) {
      ts_.next();
      return Expr::logical_not(expr_not());
    }
    return expr_atom();
  }

  ExprPtr expr_atom() {
    if (ts_.at(Tok::LParen)) {
      ts_.next();
      ExprPtr e = expr_or();
      ts_.expect(Tok::RParen, "')' closing the expression");
      return e;
    }
    ExprPtr lhs = expr_prim();
    if (ts_.at(Tok::Eq)) {
      ts_.next();
      return Expr::eq(std::move(lhs), expr_prim());
    }
    if (ts_.at(Tok::Neq)) {
      ts_.next();
      return Expr::neq(std::move(lhs), expr_prim());
    }
    ts_.fail("expected '=' or '!=' in comparison");
  }

  ExprPtr expr_prim() {
    if (ts_.at(Tok::Var)) return Expr::variable(Variable{ts_.next().text});
    if (ts_.at(Tok::Iri)) return Expr::constant_term(RdfTerm::uri(ts_.next().text));
    if (ts_.at(Tok::Literal)) return Expr::constant_term(RdfTerm::literal(ts_.next().text));
    ts_.fail("expected a URI, literal or variable");
  }

  TokenStream& ts_;
};

}  // namespace

namespace detail {

QueryPtr parse_query_at(TokenStream& ts) {
  Parser p(ts);
  return p.query();
}

PatternPtr parse_pattern_at(TokenStream& ts) {
  Parser p(ts);
  return p.pattern();
}

}  // namespace detail

QueryPtr parse_query(const std::string& text) {
  detail::TokenStream ts(detail::tokenize(text));
  Parser p(ts);
  QueryPtr q = p.query();
  p.end();
  return q;
}

PatternPtr parse_pattern(const std::string& text) {
  detail::TokenStream ts(detail::tokenize(text));
  Parser p(ts);
  PatternPtr out = p.pattern();
  p.end();
  return out;
}

LpePtr parse_lpe(const std::string& text) {
  detail::TokenStream ts(detail::tokenize(text));
  Parser p(ts);
  LpePtr out = p.lpe();
  p.end();
  return out;
}

}  // namespace ldql
