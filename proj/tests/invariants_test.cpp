#include "helpers.hpp"

using namespace jetinv;
using testing::E;

namespace {

// Lie determinant written out by hand for N=17 at nu = 1: rows (xi, eta, eta^1).
Expr n17_determinant_by_hand() {
  ExprMatrix m(3, 3);
  m << Expr(0), E("1"), E("0"),
       Expr(0), E("x"), E("1"),
       E("-(1+x^2)"), E("(b-x)*y"), E("-(y - (b+x)*y')");
  return symbolic_determinant(m);
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("Lie determinants") {
  Realization n17 = testing::R(testing::kN17);
  ZeroPolicy p = with_params({}, n17.params);
  Expr det = lie_determinant(n17, p);
  CHECK(testing::same(det, E("-(1+x^2)"), p));
  CHECK(testing::same(det, n17_determinant_by_hand(), p));

  Expr d1 = lie_determinant(testing::R("e1 = D[x]"), {});
  CHECK(d1.is_const());

  Expr d3 = lie_determinant(testing::R("e1 = D[x]\ne2 = y*D[x]"), {});
  CHECK(equal_up_to_constant(d3, E("(y')^2"), {}).has_value());
}

TEST_CASE("single invariants") {
  Realization n17 = testing::R(testing::kN17);
  ZeroPolicy p = with_params({}, n17.params);
  CHECK(verify_invariant(n17, E(testing::kI2), p));
  CHECK_FALSE(verify_invariant(n17, E("y''"), p));

  Realization n9 = testing::R("e1 = D[y]\ne2 = D[x]\ne3 = x*D[y]");
  CHECK(verify_invariant(n9, E("y''"), {}));
  CHECK_FALSE(verify_invariant(n9, E("y'"), {}));
}

TEST_CASE("bases") {
  Realization n5 = testing::R("e1 = D[x]\ne2 = x*D[x]");
  BasisCheck b5 = verify_basis(n5, {E("y"), E("y''/(y')^2")}, {}, E("1/y'"));
  CHECK(b5.ok());
  CHECK(b5.nu == 1);
  CHECK(b5.expected == 2);

  // a repeated member is not independent
  CHECK_FALSE(verify_basis(n5, {E("y"), E("y^2")}, {}).independent);
  // a non-invariant member is reported
  BasisCheck bad = verify_basis(n5, {E("y"), E("y'")}, {});
  CHECK_FALSE(bad.invariants);
  CHECK(bad.failed_member == 1);

  Realization n17 = testing::R(testing::kN17);
  ZeroPolicy p = with_params({}, n17.params);
  BasisCheck b17 = verify_basis(n17, {E(testing::kI2)}, p, E("1+x^2"));
  CHECK(b17.ok());
  CHECK(b17.expected == 1);

  // y alone generates y' for the translation row
  BasisCheck b1 = verify_basis(testing::R("e1 = D[x]"), {E("y")}, {}, E("1"));
  CHECK(b1.ok());
  CHECK(b1.generated == 2);
}

TEST_CASE("operators of invariant differentiation") {
  Realization n17 = testing::R(testing::kN17);
  ZeroPolicy p = with_params({}, n17.params);
  CHECK(verify_iod(n17, E("1+x^2"), p));
  CHECK_FALSE(verify_iod(n17, E("1"), p));

  CHECK(verify_iod(testing::R("e1 = D[y]\ne2 = D[x]\ne3 = x*D[y]"), E("1"), {}));
  CHECK(verify_iod(testing::R("e1 = D[x]\ne2 = x*D[x]"), E("1/y'"), {}));
  CHECK_FALSE(verify_iod(testing::R("e1 = D[x]\ne2 = x*D[x]"), E("y'"), {}));

  CHECK(testing::same(invariant_derivative(E("y"), E("y'")), E("y*y''")));

  // the derivative of an invariant is again an invariant
  Expr next = invariant_derivative(E("1+x^2"), E(testing::kI2));
  CHECK(verify_invariant(n17, next, p));
}

TEST_CASE("numeric flow") {
  Realization n17 = instantiate(testing::R(testing::kN17), {{"b", Scalar::ratio(1, 2)}});
  FlowOptions opt;
  opt.trials = 10;
  FlowResult ok = numeric_flow_check(n17, E("y''*(1+x^2)^(3/2)*exp(1/2*arctan(x))"), opt);
  CHECK(ok.pass);
  CHECK(ok.max_drift < opt.tol);

  Realization n9 = testing::R("e1 = D[y]\ne2 = D[x]\ne3 = x*D[y]");
  FlowResult bad = numeric_flow_check(n9, E("y'"), opt);
  CHECK_FALSE(bad.pass);
  CHECK(bad.max_drift > 1e-2);
  CHECK(bad.worst_field == 2);
}

}  // TEST_SUITE
