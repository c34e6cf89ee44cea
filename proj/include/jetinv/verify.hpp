#pragma once

#include <set>
#include <string>
#include <vector>

#include "jetinv/catalog.hpp"
#include "jetinv/invariants.hpp"

namespace jetinv {

// Check classes of an entry report, in report order.
const std::vector<std::string>& check_names();

struct VerifyOptions {
  ZeroPolicy policy;
  FlowOptions flow;
  // Check classes to run: closure, inv, iod, liedet, flow, props. "inv"
  // also runs the independence and counting check. Empty runs all.
  std::set<std::string> only;
  // Verify the printed realization and cells instead of the effective ones.
  bool printed = false;

  bool enabled(const std::string& check) const;
};

// Runs the enabled checks on an instantiated entry. Exceptions inside a
// check are reported as Error with the message as witness.
VerificationReport verify_entry(const CatalogEntry& entry, const VerifyOptions& options);

// Label used in reports: id, case and numeric parameters.
std::string entry_label(const CatalogEntry& entry);

// Per-entry property checks: bracket antisymmetry and Jacobi, the
// [e^(oo), D_x] contraction on a random function, closure of the invariants
// under lambda*D_x, and the multiplier scaling checks.
CheckResult entry_properties(const CatalogEntry& entry, const Realization& r, const std::vector<Expr>& invariants,
                             const Expr& lambda, const ZeroPolicy& policy);

}  // namespace jetinv
