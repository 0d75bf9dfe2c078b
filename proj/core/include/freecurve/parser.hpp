#pragma once

#include <freecurve/polynomial.hpp>

#include <string_view>
#include <vector>

namespace freecurve {

/// Result of parsing an expression. When the text is a single product at top
/// level (no top-level + or -), `factors` lists the expanded non-constant
/// factors in order, repeated for powers; otherwise it holds only `poly`.
struct ParsedExpression {
  HomogeneousPolynomial poly;
  std::vector<HomogeneousPolynomial> factors;
};

/// Grammar (whitespace insignificant):
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('+'|'-') unary | power
///   power   := atom ('^' integer)?
///   atom    := integer ['/' integer] | 'x' | 'y' | 'z' | '(' expr ')'
///
/// Throws ParseError (Syntax or NonHomogeneous) with a character offset.
ParsedExpression parse_expression(std::string_view text);

inline HomogeneousPolynomial parse_polynomial(std::string_view text) {
  return parse_expression(text).poly;
}

}  // namespace freecurve
