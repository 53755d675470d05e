#ifndef LDQL_PARSER_H
#define LDQL_PARSER_H

#include <stdexcept>
#include <string>

#include "ldql/ast.h"

namespace ldql {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}

  int line;
  int col;
};

/// Parses the textual LDQL syntax:
///
///   query   := "<<" lpe "," pattern ">>" | SEED {<u>...} query | SEED ?v query
///            | "(" query (AND|UNION) query ")" | PROJECT {?v...} "(" query ")"
///   lpe     := eps | {s p o} | lpe "/" lpe | lpe "|" lpe | lpe "*"
///            | "[" lpe "]" | "(" ?v ":" query ")"         (precedence * > / > |)
///   pattern := { t . t ... } | "(" pattern (AND|UNION|OPT) pattern ")"
///            | "(" pattern FILTER expr ")" | "(" pattern BIND "(" e AS ?v ")" ")"
///            | "(" GRAPH (<u>|?v) pattern ")"
///
/// Variable names beginning with `_g` are reserved for generated variables
/// and rejected.
QueryPtr parse_query(const std::string& text);

PatternPtr parse_pattern(const std::string& text);
LpePtr parse_lpe(const std::string& text);

}  // namespace ldql

#endif
