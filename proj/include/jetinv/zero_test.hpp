#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "jetinv/constraint.hpp"
#include "jetinv/evaluator.hpp"
#include "jetinv/expr.hpp"

namespace jetinv {

struct ZeroPolicy {
  int trials = 20;
  double tol = 1e-9;
  std::uint64_t seed = 20240611;
  // Constraints for parameters left symbolic; undeclared parameters are free.
  std::vector<ParamDecl> params;
  // Sample coordinates from [0.1, 2] only (maps defined on a half plane).
  bool positive_coordinates = false;
};

// Random point for the given symbols: coordinates and the multiplier from
// [-2,-0.1] U [0.1,2] plus a small imaginary jitter, parameters as rationals
// inside their constraints.
Point random_point(const std::vector<Symbol>& symbols, const ZeroPolicy& policy,
                   std::mt19937_64& rng);

// Identity oracle: exact on constants, randomized evaluation otherwise.
bool is_zero(const Expr& e, const ZeroPolicy& policy);

// c with a - c*b identically zero, if such a constant exists.
std::optional<Scalar> equal_up_to_constant(const Expr& a, const Expr& b, const ZeroPolicy& policy);

}  // namespace jetinv
