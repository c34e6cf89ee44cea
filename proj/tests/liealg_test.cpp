#include "helpers.hpp"

using namespace jetinv;
using testing::E;

namespace {

bool same_field(const VectorField& a, const VectorField& b) {
  return testing::zero(a.xi - b.xi) && testing::zero(a.eta - b.eta);
}

}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("brackets") {
  CHECK(same_field(lie_bracket(testing::F("D[y]"), testing::F("y*D[x]")), testing::F("D[x]")));
  Realization n17 = testing::R(testing::kN17);
  VectorField b13 = lie_bracket(n17.basis[0], n17.basis[2]);
  CHECK(same_field(b13, testing::F("(b-x)*D[y]")));
  // (b - x) dy = b e1 - e2
  CHECK(same_field(b13, E("b") * n17.basis[0] + Expr(-1) * n17.basis[1]));
}

TEST_CASE("structure constants of the A_{4.8} realization at b = 1/3") {
  Realization r = testing::R("e1 = D[x]\ne2 = D[y]\ne3 = y*D[x]\ne4 = (1+1/3)*x*D[x] + y*D[y]");
  StructureConstants sc = closure_check(r, {});
  const Scalar b = Scalar::ratio(1, 3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        Scalar want(0);
        auto set = [&](std::size_t a, std::size_t c, std::size_t out, Scalar v) {
          if (i == a && j == c && k == out) want = v;
          if (i == c && j == a && k == out) want = -v;
        };
        set(1, 2, 0, Scalar(1));          // [e2,e3] = e1
        set(0, 3, 0, Scalar(1) + b);      // [e1,e4] = (1+b) e1
        set(1, 3, 1, Scalar(1));          // [e2,e4] = e2
        set(2, 3, 2, b);                  // [e3,e4] = b e3
        CHECK(sc(i, j, k) == want);
      }
    }
  }
  CHECK(sc.antisymmetric());
  CHECK(sc.satisfies_jacobi());
}

TEST_CASE("non-closed span") {
  CHECK_THROWS_AS(closure_check(testing::R("e1 = D[x]\ne2 = x^2*D[y]"), {}), NotClosedError);
}

TEST_CASE("rank sequences, nu and invariant counts") {
  Realization n17 = testing::R(testing::kN17);
  ZeroPolicy p = with_params({}, n17.params);
  auto r17 = rank_sequence(n17, 2, p);
  CHECK(r17[0] == 2);
  CHECK(r17[1] == 3);
  CHECK(nu(n17, p) == 1);
  CHECK(invariant_count(n17, 0, p) == 0);
  CHECK(invariant_count(n17, 1, p) == 0);
  CHECK(invariant_count(n17, 2, p) == 1);

  Realization n9 = testing::R("e1 = D[y]\ne2 = D[x]\ne3 = x*D[y]");
  auto r9 = rank_sequence(n9, 1, {});
  CHECK(r9[0] == 2);
  CHECK(r9[1] == 3);

  Realization n31 = testing::R("e1 = D[y]\ne2 = -x*D[y]\ne3 = 1/2*x^2*D[y]\ne4 = D[x]");
  CHECK(rank_sequence(n31, 2, {}) == std::vector<int>{2, 3, 4});
  CHECK(nu(n31, {}) == 2);

  CHECK(invariant_count(testing::R("e1 = D[x]"), 0, {}) == 1);
}

TEST_CASE("parameters are instantiated before numeric work") {
  Realization n17 = testing::R(testing::kN17);
  Realization at = instantiate(n17, {{"b", Scalar::ratio(1, 2)}});
  CHECK(at.params.empty());
  CHECK(testing::same(at.basis[2].eta, E("(1/2 - x)*y")));
}

}  // TEST_SUITE
