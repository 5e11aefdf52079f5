#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "starprod/parser.hpp"

using namespace starprod;

namespace {

ExprPtr random_expression(std::mt19937& rng, int dim, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 1);
  std::uniform_int_distribution<int> coord(0, dim - 1), num(0, 9), den(1, 9), expo(0, 3);
  auto node = std::make_shared<Expression>();
  switch (kind(rng)) {
    case 0:
      node->kind = Expression::Kind::kConstant;
      node->value = make_rational(num(rng), den(rng));
      break;
    case 1:
      node->kind = Expression::Kind::kVariable;
      node->var_index = coord(rng);
      node->conjugated = rng() % 2 == 0;
      break;
    case 2:
    case 3:
    case 4: {
      node->kind = kind(rng) % 2 ? Expression::Kind::kAdd
                                 : (rng() % 2 ? Expression::Kind::kSub : Expression::Kind::kMul);
      node->lhs = random_expression(rng, dim, depth - 1);
      node->rhs = random_expression(rng, dim, depth - 1);
      break;
    }
    case 5:
      node->kind = Expression::Kind::kNeg;
      node->lhs = random_expression(rng, dim, depth - 1);
      break;
    default:
      node->kind = Expression::Kind::kPow;
      node->lhs = random_expression(rng, dim, depth - 1);
      node->exponent = expo(rng);
      break;
  }
  return node;
}

}  // namespace

TEST_CASE("grammar examples") {
  const ExprPtr e1 = parse_expression("z1*zb1 + 2", 1);
  const ChartFunction f1 = lower(e1, 1);
  const ChartFunction expected1 =
      ChartFunction::monomial(1, {1, 1}, HRational(1)) + ChartFunction::constant(1, HRational(2));
  CHECK(f1 == expected1);

  const ChartFunction f2 = lower(parse_expression("z1^2*zb2", 2), 2);
  CHECK(f2 == ChartFunction::monomial(2, {2, 0, 0, 1}, HRational(1)));

  CHECK_THROWS_AS(parse_expression("z3", 2), ParseError);
}

TEST_CASE("errors carry a position") {
  try {
    parse_expression("z1 + * z2", 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);
  }
  try {
    parse_expression("z1 * zb9", 3);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 5);
  }
  CHECK_THROWS_AS(parse_expression("(z1", 1), ParseError);
  CHECK_THROWS_AS(parse_expression("z1 z2", 2), ParseError);
  CHECK_THROWS_AS(parse_expression("z1^-2", 1), ParseError);
}

TEST_CASE("powers and unary minus follow the grammar") {
  // '-' binds inside the base, so -z1^2 parses as (-z1)^2.
  const ChartFunction f = lower(parse_expression("-z1^2", 1), 1);
  CHECK(f == ChartFunction::monomial(1, {2, 0}, HRational(1)));
  const ChartFunction g = lower(parse_expression("-(z1^2)", 1), 1);
  CHECK(g == ChartFunction::monomial(1, {2, 0}, HRational(-1)));

  CHECK(lower(parse_expression("z1^0", 1), 1) == ChartFunction::constant(1, HRational(1)));
  CHECK(lower(parse_expression("3/2", 1), 1) ==
        ChartFunction::constant(1, HRational(make_rational(3, 2))));
}

TEST_CASE("round-trip through the canonical rendering") {
  std::mt19937 rng(321321);
  const int dim = 3;
  for (int trial = 0; trial < 50; ++trial) {
    const ExprPtr original = random_expression(rng, dim, 4);
    const std::string text = to_string(original);
    const ExprPtr reparsed = parse_expression(text, dim);
    CHECK(expressions_equal(original, reparsed));
    // Lowering is invariant under the round trip.
    CHECK(lower(original, dim) == lower(reparsed, dim));
  }
}
