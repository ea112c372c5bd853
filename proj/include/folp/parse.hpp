#pragma once
// Concrete syntax: lexer, recursive-descent parser and canonical printer.
//
// Lexical classes for identifiers:
//   p<digits>  justification variable        c<digits>  justification constant
//   P<digits>  predicate symbol              forall/exists/box/gen  keywords
//   any other lowercase-led identifier       individual variable
// Uppercase-led identifiers that are not P<digits> are lexical errors.
//
// Binary connectives and binary term operators always carry explicit
// parentheses, so the grammar is self-delimiting; quantifier and modality
// bodies extend maximally to the right.  Whitespace is insignificant.

#include <map>
#include <string>
#include <string_view>

#include "folp/ast.hpp"

namespace folp {

// Predicate arities are fixed on first use.  A table can be shared across
// several parses (e.g. all formulas of one proof or model file) to enforce
// file-wide consistency.
struct PredTable {
  std::map<std::string, size_t> arity;
  // Records pred/n, throwing Error{Arity} on a mismatch with an earlier use.
  void note(const std::string& pred, size_t n);
};

// Both parsers consume the whole input; trailing tokens are syntax errors.
// Errors carry 1-based line:column positions.
Term parse_term(std::string_view src);
Formula parse_formula(std::string_view src, PredTable* preds = nullptr);

// Canonical printing; parse(print(x)) == x, and printing a parsed canonical
// string reproduces it byte for byte.  Index sets print in sorted order.
std::string print(const Term& t);
std::string print(const Formula& f);

}  // namespace folp
