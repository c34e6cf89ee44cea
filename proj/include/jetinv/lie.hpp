#pragma once

#include <string>
#include <vector>

#include "jetinv/constraint.hpp"
#include "jetinv/jet.hpp"
#include "jetinv/numeric.hpp"
#include "jetinv/zero_test.hpp"

namespace jetinv {

struct Realization {
  std::vector<VectorField> basis;
  std::vector<ParamDecl> params;
  std::string label;

  std::size_t dim() const { return basis.size(); }
};

// [e_i, e_j] = sum_k c(i, j, k) e_k
class StructureConstants {
 public:
  explicit StructureConstants(std::size_t r = 0) : r_(r), c_(r * r * r) {}

  std::size_t dim() const { return r_; }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * r_ + j) * r_ + k]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * r_ + j) * r_ + k];
  }

  bool antisymmetric() const;
  bool satisfies_jacobi() const;
  // Table after the basis change e~_i = sum_j m(i, j) e_j.
  StructureConstants transformed(const ScalarMatrix& m) const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

  // Parameter values substituted before the constants were computed.
  ParamValues params;

 private:
  std::size_t r_;
  std::vector<Scalar> c_;
};

VectorField lie_bracket(const VectorField& v, const VectorField& w);

// Policy with the realization's parameter constraints added.
ZeroPolicy with_params(const ZeroPolicy& policy, const std::vector<ParamDecl>& params);

// Substitutes values for parameters. Parameters without a value are sampled
// inside their constraints from the policy seed; the values used are
// returned through *used.
Realization instantiate(const Realization& r, const ParamValues& values);
Realization instantiate_sampled(const Realization& r, const ZeroPolicy& policy, ParamValues* used = nullptr);

// IndependenceError unless the fields are independent over the constants.
void check_independent(const Realization& r, const ZeroPolicy& policy);

// NotClosedError naming the first pair whose bracket leaves the span.
StructureConstants closure_check(const Realization& r, const ZeroPolicy& policy);

// r x (k+2) matrix of (xi_i, eta_i, eta_i^1, ..., eta_i^k).
ExprMatrix coefficient_matrix(const Realization& r, int k);

std::vector<int> rank_sequence(const Realization& r, int n_max, const ZeroPolicy& policy);
int nu(const Realization& r, const ZeroPolicy& policy);
int invariant_count(const Realization& r, int n, const ZeroPolicy& policy);

}  // namespace jetinv
