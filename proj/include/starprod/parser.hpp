#pragma once

#include <memory>
#include <string>

#include "starprod/chart.hpp"

namespace starprod {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  int position;
};

/// Expression tree for the CLI input language: rational literals, variables
/// z1..zN and zb1..zbN, binary + - *, unary -, and non-negative integer
/// powers. Nodes are immutable and shared.
struct Expression {
  enum class Kind { kConstant, kVariable, kAdd, kSub, kMul, kNeg, kPow };
  Kind kind;
  Rational value;          // kConstant
  int var_index = 0;       // kVariable, 0-based
  bool conjugated = false; // kVariable: zb vs z
  std::shared_ptr<const Expression> lhs, rhs;  // children; unary ops use lhs
  int exponent = 0;        // kPow
};

using ExprPtr = std::shared_ptr<const Expression>;

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := rational | var | '(' expr ')' | '-' base
/// Variable indices must lie in 1..dim.
ExprPtr parse_expression(const std::string& text, int dim);

/// Canonical rendering; parse_expression(to_string(e), dim) reproduces e.
std::string to_string(const ExprPtr& expr);

bool expressions_equal(const ExprPtr& a, const ExprPtr& b);

/// Lowers to a polynomial chart function (s_power 0).
ChartFunction lower(const ExprPtr& expr, int dim);

}  // namespace starprod
