#include "helpers.hpp"
#include "jetinv/verify.hpp"

using namespace jetinv;
using testing::E;

namespace {

PointTransformation reciprocal_y() { return PointTransformation(E("x"), E("1/y"), E("x"), E("1/y")); }

}  // namespace

TEST_SUITE("transform") {

TEST_CASE("pushforward under y -> 1/y") {
  PointTransformation t = reciprocal_y();
  CHECK(same_field(pushforward(testing::F("D[y]"), t), testing::F("-y^2*D[y]"), {}));
  CHECK(same_field(pushforward(testing::F("y*D[y]"), t), testing::F("-y*D[y]"), {}));
  CHECK(same_field(pushforward(testing::F("D[x]"), t), testing::F("D[x]"), {}));
}

TEST_CASE("swap and scaling") {
  PointTransformation s = PointTransformation::swap_xy();
  CHECK(same_field(pushforward(testing::F("y*D[x]"), s), testing::F("x*D[y]"), {}));
  PointTransformation k = PointTransformation::scaling(Scalar(2), Scalar(3));
  // x~ = 2x, y~ = 3y: x D[y] becomes (x~/2) * 3 D[y~]
  CHECK(same_field(pushforward(testing::F("x*D[y]"), k), testing::F("3/2*x*D[y]"), {}));
}

TEST_CASE("pushforward preserves brackets") {
  PointTransformation t(E("x + y^2"), E("y"), E("x - y^2"), E("y"));
  VectorField v = testing::F("x*D[x] + y*D[y]"), w = testing::F("y^2*D[x] + x*D[y]");
  CHECK(same_field(pushforward(lie_bracket(v, w), t), lie_bracket(pushforward(v, t), pushforward(w, t)), {}));
}

TEST_CASE("A_{4.8} reduction") {
  for (const Scalar& b : {Scalar::ratio(1, 3), Scalar(3), Scalar(-1), Scalar::ratio(-5, 2)}) {
    INFO(b.str());
    A48Reduction red = reduce_a48(b);
    CHECK(red.field_by_field);
    REQUIRE(red.reduced.dim() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(same_field(red.reduced.basis[k], red.expected.basis[k], {}));
  }
  // |b'| > 1 lands on the second form with b = 1/b'
  A48Reduction three = reduce_a48(Scalar(3));
  CHECK(same_field(three.expected.basis[3], testing::F("(1+1/3)*x*D[x] + 1/3*y*D[y]"), {}));
}

TEST_CASE("real-to-complex rows") {
  const Catalog& cat = Catalog::builtin();
  for (const auto& t2 : cat.table2()) {
    for (const auto& inst : cat.default_instantiations(t2.row.source)) {
      CatalogEntry entry = cat.get(t2.row.source, inst.params, {}, std::nullopt, inst.case_name);
      INFO("row " << t2.row.n1 << " on " << entry_label(entry));
      Table2Result res = apply_table2(t2.row, entry.realization, entry.params, entry.policy({}));
      CHECK(res.roundtrip);
      CHECK(res.brackets_preserved);
      CHECK(res.after_closed);
      CHECK(res.conjugation_law);
    }
  }
}

TEST_CASE("errors") {
  ScalarMatrix m(2, 2);
  m << Scalar(1), Scalar(2), Scalar(2), Scalar(4);
  CHECK_THROWS_AS(change_basis(testing::R("e1 = D[x]\ne2 = D[y]"), m), SingularMatrixError);
  CHECK_THROWS_AS(PointTransformation(E("x"), E("1/y"), E("x"), E("y")), DomainError);
}

}  // TEST_SUITE
