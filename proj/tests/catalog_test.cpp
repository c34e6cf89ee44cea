#include <set>

#include "helpers.hpp"
#include "jetinv/notation.hpp"

using namespace jetinv;
using testing::E;

TEST_SUITE("catalog") {

TEST_CASE("every row is present") {
  const Catalog& cat = Catalog::builtin();
  for (int n = 1; n <= 56; ++n) CHECK_MESSAGE(cat.contains(std::to_string(n)), n);
  for (const char* s : {"1*", "3*", "5*", "21*"}) CHECK_MESSAGE(cat.contains(s), s);

  std::set<std::string> rows;
  for (const auto& t : cat.table2()) rows.insert(t.row.n1);
  CHECK(rows == std::set<std::string>{"1", "2", "3", "4", "7", "17", "18", "19"});

  // ids are listed in catalog order
  for (std::size_t k = 1; k < cat.ids().size(); ++k) CHECK(id_less(cat.ids()[k - 1], cat.ids()[k]));
}

TEST_CASE("id order") {
  CHECK(id_less("17", "17*"));
  CHECK(id_less("17*", "17t"));
  CHECK(id_less("17t", "18"));
  CHECK(id_less("9", "10"));
}

TEST_CASE("symbolic and numeric instantiation") {
  const Catalog& cat = Catalog::builtin();
  CatalogEntry sym = cat.get("17", {{"b", E("b")}});
  REQUIRE(sym.symbolic.size() == 1);
  CHECK(sym.symbolic[0].name == "b");
  REQUIRE(sym.invariants.size() == 1);
  CHECK(testing::same(sym.invariants[0], E(testing::kI2)));

  CatalogEntry num = cat.get("17", {{"b", E("1/2")}});
  CHECK(num.symbolic.empty());
  CHECK(num.params.at("b") == Scalar::ratio(1, 2));
  CHECK(testing::same(num.invariants[0], E("y''*(1+x^2)^(3/2)*exp(1/2*arctan(x))")));
}

TEST_CASE("slot functions") {
  const Catalog& cat = Catalog::builtin();
  CatalogEntry six = cat.get("6", {}, {{"xi1", E("x^2")}});
  REQUIRE(six.invariants.size() == 2);
  CHECK(testing::same(six.invariants[0], E("x")));
  CHECK(testing::same(six.invariants[1], E("-2*y'''")));

  // defaults: eta_k = exp(l_k x), l = 1, -1, 2, -2
  CatalogEntry fifty = cat.get("50");
  REQUIRE(fifty.r == 4);
  REQUIRE(fifty.realization.dim() == 5);
  CHECK(testing::same(fifty.realization.basis[1].eta, E("exp(x)")));
  CHECK(testing::same(fifty.realization.basis[2].eta, E("exp(-x)")));
  CHECK(testing::same(fifty.realization.basis[3].eta, E("exp(2*x)")));
  CHECK(testing::same(fifty.realization.basis[4].eta, E("exp(-2*x)")));
  // K() annihilates every eta_k
  for (std::size_t k = 1; k < 5; ++k) {
    Bindings sub;
    Expr eta = fifty.realization.basis[k].eta;
    for (int j = 0; j <= 4; ++j) sub[Symbol::jet(j)] = notation::derivative(eta, j);
    CHECK(testing::zero(substitute(fifty.invariants[0], sub)));
  }

  CatalogEntry zero = cat.get("56", {}, {}, 0);
  CHECK(zero.realization.dim() == 5);
  CatalogEntry three = cat.get("56", {}, {}, 3);
  CHECK(three.realization.dim() == 8);
}

TEST_CASE("cases") {
  const Catalog& cat = Catalog::builtin();
  const CatalogRecord& rec = cat.record("39");
  REQUIRE(rec.cases.size() == 2);
  CatalogEntry one = cat.get("39", {{"b", E("1")}});
  CHECK(one.case_name == "b=1");
  CHECK(one.invariants.size() == 2);
  CatalogEntry other = cat.get("39", {{"b", E("1/3")}});
  CHECK(other.case_name == "b!=1");
  CHECK(other.invariants.size() == 1);
  CHECK(other.has_errata());
}

TEST_CASE("notation") {
  CHECK(testing::same(notation::Q(2), E("y*y'' - 2*(y')^2")));
  CHECK(testing::same(notation::K({E("exp(x)"), E("exp(-x)")}), E("y'' - y")));
  CHECK_THROWS_AS(notation::K({E("exp(x)"), E("2*exp(x)")}), IndependenceError);
  CHECK(testing::same(E("Q(2)"), notation::Q(2)));
  CHECK(jet_order(notation::S(5)) == 5);
}

TEST_CASE("instantiation errors") {
  const Catalog& cat = Catalog::builtin();
  CHECK_THROWS_AS(cat.get("14", {{"a", E("1")}}), ConstraintError);
  CHECK_THROWS_AS(cat.get("50", {}, {}, 7), ConstraintError);
  CHECK_THROWS_AS(cat.get("50", {}, {}, 3), ConstraintError);
  CHECK_THROWS_AS(cat.get("17", {}, {}, 2), ConstraintError);
  CHECK_THROWS_AS(cat.get("6", {}, {{"xi7", E("x^3")}}), ConstraintError);
  CHECK_THROWS_AS(cat.get("50", {}, {{"eta1", E("exp(x)")}, {"eta2", E("2*exp(x)")}}), IndependenceError);
}

TEST_CASE("catalog text errors") {
  CHECK_THROWS_AS(Catalog::parse("entry 1\ne1 = D[x]\n"), ParseError);
  CHECK_THROWS_AS(Catalog::parse("entry 1\nbogus line\nend\n"), ParseError);
  try {
    Catalog::parse("entry 1\ne1 = D[x]\ninvariant = y +\nend\n").get("1");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 3);
  }
  Catalog small = Catalog::parse("entry 1\ne1 = D[x]\ninvariant = y\niod = 1\nliedet = const\nend\n");
  CHECK(small.ids() == std::vector<std::string>{"1"});
}

}  // TEST_SUITE
