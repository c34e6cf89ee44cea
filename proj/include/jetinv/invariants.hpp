#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetinv/lie.hpp"

namespace jetinv {

// Rows (xi_i, eta_i, eta_i^1, ..., eta_i^nu) of the prolonged basis.
ExprMatrix lie_matrix(const Realization& r, int nu);

// Determinant by Laplace expansion with memoized minors.
Expr symbolic_determinant(const ExprMatrix& m);

struct LieDeterminant {
  Expr value;
  int nu = 0;
  std::vector<int> columns;  // column subset of the Lie matrix used
};

// First maximal minor (column subsets in lexicographic order) of the Lie
// matrix at order nu that does not vanish identically.
LieDeterminant lie_determinant_info(const Realization& r, const ZeroPolicy& policy);
Expr lie_determinant(const Realization& r, const ZeroPolicy& policy);

// Every prolonged basis field annihilates I.
bool verify_invariant(const Realization& r, const Expr& invariant, const ZeroPolicy& policy);

struct BasisCheck {
  bool invariants = false;   // (a) every member is an invariant
  bool independent = false;  // (b) Jacobian has full rank
  bool count = false;        // (c) generated invariants of order <= nu+1 have rank d_{nu+1}
  int failed_member = -1;    // first member failing (a)
  int jacobian_rank = 0;
  int nu = 0;
  int expected = 0;  // d_{nu+1}
  int counted = 0;   // members of order <= nu+1
  int generated = 0;  // rank of those members and their lambda*D_x iterates of order <= nu+1

  bool ok() const { return invariants && independent && count; }
  std::string describe() const;
};

// With lambda, (c) also counts the iterates lambda*D_x I of the members,
// since a table basis only lists generators.
BasisCheck verify_basis(const Realization& r, const std::vector<Expr>& basis, const ZeroPolicy& policy,
                        const std::optional<Expr>& lambda = std::nullopt);

// e_i^(m) lambda = lambda * D_x xi_i for every basis field, m = order of lambda.
bool verify_iod(const Realization& r, const Expr& lambda, const ZeroPolicy& policy);

// lambda * D_x I.
Expr invariant_derivative(const Expr& lambda, const Expr& invariant);

struct FlowOptions {
  int trials = 5;
  double t_end = 0.5;
  double h = 1e-3;
  double tol = 1e-6;
  std::uint64_t seed = 20240611;
  int restarts = 200;
};

struct FlowResult {
  bool pass = true;
  double max_drift = 0;  // largest relative drift over all trajectories
  int trajectories = 0;
  int restarts = 0;
  int worst_field = -1;  // basis field with the largest drift
};

// Integrates the flow of every prolonged basis field with RK4 from random
// jet points and watches I along the trajectories. Throws FlowSingularError
// when no regular trajectory can be found for some field.
FlowResult numeric_flow_check(const Realization& r, const Expr& invariant, const FlowOptions& options,
                              const ZeroPolicy& policy = {});

enum class Status { Pass, Fail, Skip, Error };
std::string status_name(Status s);

struct CheckResult {
  Status status = Status::Skip;
  std::string witness;
};

struct VerificationReport {
  std::string entry;
  std::map<std::string, CheckResult> checks;
  ParamValues params;
  std::uint64_t seed = 0;
  double wall_seconds = 0;

  // Pass iff no enabled check failed.
  bool passed() const;
};

}  // namespace jetinv
