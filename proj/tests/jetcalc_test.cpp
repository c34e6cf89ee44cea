#include <random>

#include "helpers.hpp"
#include "jetinv/properties.hpp"

using namespace jetinv;
using testing::E;

namespace {

// eta^k = D_x eta^(k-1) - y^(k) D_x xi, written out independently of prolong()
std::vector<Expr> recursion(const VectorField& v, int n) {
  std::vector<Expr> out;
  Expr prev = v.eta;
  for (int k = 1; k <= n; ++k) {
    Expr next = total_derivative(prev) - Expr(Symbol::jet(k)) * total_derivative(v.xi);
    out.push_back(next);
    prev = next;
  }
  return out;
}

}  // namespace

TEST_SUITE("jetcalc") {

TEST_CASE("jet order") {
  CHECK(jet_order(E("y''*x")) == 2);
  CHECK(jet_order(E("x + b")) == 0);
  CHECK(jet_order(E("S(5)")) == 5);
  CHECK(jet_order(E("y")) == 0);
}

TEST_CASE("total derivative") {
  CHECK(testing::same(total_derivative(E("(b-x)*y")), E("-y + (b-x)*y'")));
  CHECK(total_derivative(E("y^(4)")) == E("y^(5)"));
  CHECK(total_derivative(E("exp(x)")) == E("exp(x)"));
}

TEST_CASE("prolongations of the worked example fields") {
  ProlongedField p2 = prolong(testing::F("x*D[y]"), 2);
  CHECK(p2.etas[0] == Expr(1));
  CHECK(p2.etas[1].is_zero());

  ProlongedField p3 = prolong(testing::F("-(1+x^2)*D[x] + (b-x)*y*D[y]"), 2);
  CHECK(testing::same(p3.etas[0], E("-(y - (b+x)*y')")));
  CHECK(testing::same(p3.etas[1], E("(b+3*x)*y''")));

  CHECK(testing::zero(apply(p3, E(testing::kI2))));
}

TEST_CASE("prolongation agrees with the recursion for random fields") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    VectorField v{random_plane_polynomial(rng, 3, 4), random_plane_polynomial(rng, 3, 4)};
    ProlongedField p = prolong(v, 4);
    auto r = recursion(v, 4);
    for (int k = 0; k < 4; ++k) CHECK(testing::zero(p.etas[static_cast<std::size_t>(k)] - r[static_cast<std::size_t>(k)]));
  }
}

TEST_CASE("contraction identity on random functions") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    VectorField v{random_plane_polynomial(rng, 2, 3), random_plane_polynomial(rng, 2, 3)};
    Expr e = random_polynomial(rng, 2, 3);
    Expr residual = apply(prolong(v, 3), total_derivative(e)) - total_derivative(apply(prolong(v, 2), e)) +
                    total_derivative(v.xi) * total_derivative(e);
    CHECK(testing::zero(residual));
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(apply(prolong(testing::F("D[x]"), 1), E("y''")), OrderError);
  CHECK_THROWS_AS(check_planar(VectorField{E("y'"), Expr(0)}), ArityError);
}

}  // TEST_SUITE
