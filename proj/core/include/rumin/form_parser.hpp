#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rumin/poly_form.hpp"

namespace rumin {

/// Syntax tree of a form expression. Grammar, loosest binding first:
///   sum     := wedge (('+' | '-') wedge)*
///   wedge   := product ('^' product)*          left-associative
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | primary
///   primary := number | name | 'sqrt' '(' sum ')' | '(' sum ')'
/// Names: x1..xn, y1..yn, t (coordinates), dx1..dxn, dy1..dyn, theta.
struct FormExpr {
  enum class Kind { Number, Name, Negate, Add, Sub, Mul, Div, Wedge, Sqrt };
  Kind kind = Kind::Number;
  Rational value;    // Number
  std::string name;  // Name
  std::vector<FormExpr> args;
  int line = 1;
  int column = 1;
};

/// Throws ParseError ("line:col: message") on lexical or syntax errors.
FormExpr parse_form_expr(std::string_view text);

/// Evaluates the tree over H^n. Throws ParseError for unknown names, grade
/// mismatches in + and -, products of two positive-degree forms, and
/// division by anything but a nonzero constant. sqrt of a constant that is
/// not a rational square becomes the exact binary value of the double root.
PolyForm elaborate(const FormExpr& e, const HeisParams& params);

inline PolyForm parse_form(std::string_view text, const HeisParams& params) {
  return elaborate(parse_form_expr(text), params);
}

/// Parses a constant expression ("1/3", "sqrt(2)/2", "0.25").
Rational parse_constant(std::string_view text);

/// Printer whose output parses back to an equal form.
std::string print_form(const PolyForm& w);

}  // namespace rumin
