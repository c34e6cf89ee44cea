#include <random>

#include "helpers.hpp"
#include "jetinv/properties.hpp"

using namespace jetinv;
using testing::E;

TEST_SUITE("exprparse") {

TEST_CASE("the order-two invariant parses to the constructed expression") {
  const Expr x = Symbol::x(), b = Symbol::param("b");
  Expr built = Expr(Symbol::jet(2)) * pow(1 + x * x, mpq_class(3, 2)) * exp(b * arctan(x));
  CHECK(parse_expr(testing::kI2) == built);
}

TEST_CASE("jet tokens") {
  CHECK(parse_expr("y'") == Expr(Symbol::jet(1)));
  CHECK(parse_expr("y'''") == Expr(Symbol::jet(3)));
  CHECK(parse_expr("y^(4)") == Expr(Symbol::jet(4)));
  // jet marks start at order 1; y^(0) is an ordinary power
  CHECK(parse_expr("y^(0)") == Expr(1));
  CHECK(E("jet(5)") == Expr(Symbol::jet(5)));
  CHECK(parse_expr("q + 1") == Expr(Symbol::param("q")) + 1);
}

TEST_CASE("realization files") {
  Realization n17 = testing::R(testing::kN17);
  REQUIRE(n17.dim() == 3);
  REQUIRE(n17.params.size() == 1);
  CHECK(n17.params[0].name == "b");
  CHECK(n17.basis[2].xi == parse_expr("-(1+x^2)"));
  CHECK(n17.basis[2].eta == parse_expr("(b-x)*y"));

  Realization n1 = testing::R("e1 = D[x]");
  REQUIRE(n1.dim() == 1);
  CHECK(n1.basis[0].xi == Expr(1));
  CHECK(n1.basis[0].eta.is_zero());

  Realization series = parse_realization("e(k=1..3) = x^k*D[y]");
  REQUIRE(series.dim() == 3);
  CHECK(series.basis[2].eta == pow(Expr(Symbol::x()), 3));
}

TEST_CASE("parse errors carry a span") {
  try {
    parse_expr("1 + * 2");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.span().column == 5);
  }
  try {
    parse_realization("e1 = D[x]\ne3 = D[y]\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 2);
  }
  CHECK_THROWS_AS(parse_vector_field("y'*D[x]"), ArityError);
  CHECK_THROWS_AS(parse_expr("sin(x"), ParseError);
}

TEST_CASE("constraints") {
  Constraint c = Constraint::parse("abs<=1 ne 0 ne 1");
  CHECK(Constraint::parse(c.str()).str() == c.str());
  CHECK(c.satisfied(Scalar::ratio(1, 2)));
  CHECK(c.satisfied(Scalar(-1)));
  CHECK_FALSE(c.satisfied(Scalar(0)));
  CHECK_FALSE(c.satisfied(Scalar(1)));
  CHECK_FALSE(c.satisfied(Scalar(2)));

  Constraint rel = Constraint::parse("> a < 1 ne 0");
  CHECK(rel.satisfied(Scalar::ratio(1, 2), {{"a", Scalar::ratio(1, 3)}}));
  CHECK_FALSE(rel.satisfied(Scalar::ratio(1, 4), {{"a", Scalar::ratio(1, 3)}}));
}

TEST_CASE("printing and parsing round-trip on random trees") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    Expr e = simplify(random_tree(rng, 3));
    INFO(to_string(e));
    CHECK(parse_expr(to_string(e)) == e);
  }
}

}  // TEST_SUITE
