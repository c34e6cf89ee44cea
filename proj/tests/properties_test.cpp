#include "helpers.hpp"
#include "jetinv/properties.hpp"
#include "jetinv/verify.hpp"

using namespace jetinv;

TEST_SUITE("properties") {

TEST_CASE("engine-wide suites") {
  for (std::uint64_t seed : {20240611ULL, 5ULL}) {
    auto results = run_property_suites(seed);
    CHECK(results.size() == 8);
    for (const auto& [name, res] : results) {
      INFO(seed, " ", name, ": ", res.witness);
      CHECK(res.status == Status::Pass);
    }
  }
}

TEST_CASE("per-entry properties on the shipped instances") {
  const Catalog& cat = Catalog::builtin();
  for (const auto& id : cat.ids()) {
    for (const auto& inst : cat.default_instantiations(id)) {
      CatalogEntry entry = cat.get(id, inst.params, {}, std::nullopt, inst.case_name);
      CheckResult res = entry_properties(entry, entry.realization, entry.invariants, entry.iod, entry.policy({}));
      INFO(entry_label(entry), ": ", res.witness);
      CHECK(res.status == Status::Pass);
    }
  }
}

TEST_CASE("a wrong multiplier is caught") {
  CatalogEntry entry = Catalog::builtin().get("17", {{"b", testing::E("1/2")}});
  CheckResult res =
      entry_properties(entry, entry.realization, entry.invariants, testing::E("1"), entry.policy({}));
  CHECK(res.status == Status::Fail);
}

}  // TEST_SUITE
