#include "starprod/parser.hpp"

#include <cctype>

namespace starprod {

namespace {

struct Parser {
  const std::string& text;
  int dim;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, static_cast<int>(pos)); }

  std::string read_digits() {
    std::string out;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      out.push_back(text[pos++]);
    if (out.empty()) fail("expected digits");
    return out;
  }

  ExprPtr expr() {
    ExprPtr node = term();
    while (true) {
      if (consume('+')) {
        auto e = std::make_shared<Expression>();
        e->kind = Expression::Kind::kAdd;
        e->lhs = node;
        e->rhs = term();
        node = e;
      } else if (consume('-')) {
        auto e = std::make_shared<Expression>();
        e->kind = Expression::Kind::kSub;
        e->lhs = node;
        e->rhs = term();
        node = e;
      } else {
        return node;
      }
    }
  }

  ExprPtr term() {
    ExprPtr node = factor();
    while (consume('*')) {
      auto e = std::make_shared<Expression>();
      e->kind = Expression::Kind::kMul;
      e->lhs = node;
      e->rhs = factor();
      node = e;
    }
    return node;
  }

  ExprPtr factor() {
    ExprPtr node = base();
    if (consume('^')) {
      skip_ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected non-negative integer exponent");
      auto e = std::make_shared<Expression>();
      e->kind = Expression::Kind::kPow;
      e->lhs = node;
      e->exponent = std::stoi(read_digits());
      node = e;
    }
    return node;
  }

  ExprPtr base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    const char c = text[pos];
    if (c == '(') {
      ++pos;
      ExprPtr inner = expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos;
      auto e = std::make_shared<Expression>();
      e->kind = Expression::Kind::kNeg;
      e->lhs = base();
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      std::string den;
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_digits();
      }
      auto e = std::make_shared<Expression>();
      e->kind = Expression::Kind::kConstant;
      e->value = rational_from_string(den.empty() ? num : num + "/" + den);
      return e;
    }
    if (c == 'z') {
      const std::size_t start = pos;
      ++pos;
      bool conjugated = false;
      if (pos < text.size() && text[pos] == 'b') {
        conjugated = true;
        ++pos;
      }
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
        pos = start;
        fail("expected variable like z1 or zb1");
      }
      const int index = std::stoi(read_digits());
      if (index < 1 || index > dim) {
        pos = start;
        fail("variable index out of range 1.." + std::to_string(dim));
      }
      auto e = std::make_shared<Expression>();
      e->kind = Expression::Kind::kVariable;
      e->var_index = index - 1;
      e->conjugated = conjugated;
      return e;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

bool needs_parens(const ExprPtr& e) {
  return e->kind != Expression::Kind::kConstant && e->kind != Expression::Kind::kVariable;
}

}  // namespace

ExprPtr parse_expression(const std::string& text, int dim) {
  Parser p{text, dim};
  ExprPtr out = p.expr();
  if (!p.at_end()) p.fail("trailing input");
  return out;
}

std::string to_string(const ExprPtr& e) {
  switch (e->kind) {
    case Expression::Kind::kConstant:
      return to_decimal_string(e->value);
    case Expression::Kind::kVariable:
      return (e->conjugated ? "zb" : "z") + std::to_string(e->var_index + 1);
    case Expression::Kind::kAdd:
      return "(" + to_string(e->lhs) + " + " + to_string(e->rhs) + ")";
    case Expression::Kind::kSub:
      return "(" + to_string(e->lhs) + " - " + to_string(e->rhs) + ")";
    case Expression::Kind::kMul:
      return "(" + to_string(e->lhs) + " * " + to_string(e->rhs) + ")";
    case Expression::Kind::kNeg:
      return needs_parens(e->lhs) ? "-(" + to_string(e->lhs) + ")" : "-" + to_string(e->lhs);
    case Expression::Kind::kPow: {
      const std::string body = to_string(e->lhs);
      const std::string wrapped = needs_parens(e->lhs) ? "(" + body + ")" : body;
      return wrapped + "^" + std::to_string(e->exponent);
    }
  }
  return {};
}

bool expressions_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Expression::Kind::kConstant:
      return a->value == b->value;
    case Expression::Kind::kVariable:
      return a->var_index == b->var_index && a->conjugated == b->conjugated;
    case Expression::Kind::kNeg:
      return expressions_equal(a->lhs, b->lhs);
    case Expression::Kind::kPow:
      return a->exponent == b->exponent && expressions_equal(a->lhs, b->lhs);
    default:
      return expressions_equal(a->lhs, b->lhs) && expressions_equal(a->rhs, b->rhs);
  }
}

ChartFunction lower(const ExprPtr& e, int dim) {
  switch (e->kind) {
    case Expression::Kind::kConstant:
      return ChartFunction::constant(dim, HRational(e->value));
    case Expression::Kind::kVariable:
      return ChartFunction::variable(dim, e->var_index, e->conjugated);
    case Expression::Kind::kAdd:
      return lower(e->lhs, dim) + lower(e->rhs, dim);
    case Expression::Kind::kSub:
      return lower(e->lhs, dim) - lower(e->rhs, dim);
    case Expression::Kind::kMul:
      return lower(e->lhs, dim) * lower(e->rhs, dim);
    case Expression::Kind::kNeg:
      return -lower(e->lhs, dim);
    case Expression::Kind::kPow: {
      ChartFunction base = lower(e->lhs, dim);
      ChartFunction out = ChartFunction::constant(dim, HRational(1));
      for (int k = 0; k < e->exponent; ++k) out = out * base;
      return out;
    }
  }
  return ChartFunction(dim);
}

}  // namespace starprod
