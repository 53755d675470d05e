#ifndef LDQL_SRC_TOKENIZER_H
#define LDQL_SRC_TOKENIZER_H

#include <string>
#include <vector>

#include "ldql/parser.h"

namespace ldql {
namespace detail {

enum class Tok {
  Iri,        // <...>
  Var,        // ?name
  Literal,    // "..."
  Word,       // keyword or bare identifier
  OpenBasic,  // <<
  CloseBasic, // >>
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Dot,
  Comma,
  Slash,
  Pipe,
  Star,
  Plus,
  Underscore,
  Colon,
  Caret,
  AnyFwd,     // <>
  Eq,
  Neq,
  AndAnd,
  OrOr,
  Bang,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(const std::string& input);

class TokenStream;

// In-stream entry points shared with the oracle surface parsers.
QueryPtr parse_query_at(TokenStream& ts);
PatternPtr parse_pattern_at(TokenStream& ts);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(const char* w) const {
    return peek().kind == Tok::Word && peek().text == w;
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (!at(kind)) fail("expected " + what);
    return next();
  }
  void expect_word(const char* w) {
    if (!at_word(w)) fail(std::string("expected '") + w + "'");
    next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace detail
}  // namespace ldql

#endif
