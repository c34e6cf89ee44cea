#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <vector>

#include "jetinv/evaluator.hpp"
#include "jetinv/expr.hpp"
#include "jetinv/scalar.hpp"

namespace Eigen {

template <>
struct NumTraits<jetinv::Expr> : GenericNumTraits<jetinv::Expr> {
  using Real = jetinv::Expr;
  using NonInteger = jetinv::Expr;
  using Literal = jetinv::Expr;
  using Nested = jetinv::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 10,
    MulCost = 10
  };
};

template <>
struct NumTraits<jetinv::Scalar> : GenericNumTraits<jetinv::Scalar> {
  using Real = jetinv::Scalar;
  using NonInteger = jetinv::Scalar;
  using Literal = jetinv::Scalar;
  using Nested = jetinv::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
};

}  // namespace Eigen

namespace jetinv {

using ExprMatrix = Eigen::Matrix<Expr, Eigen::Dynamic, Eigen::Dynamic>;
using ScalarMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Numeric rank with singular values below rel_tol * sigma_max treated as zero.
template <typename Derived>
int numeric_rank(const Eigen::MatrixBase<Derived>& m, double rel_tol = 1e-8);

// Rank by exact Gaussian elimination.
int exact_rank(ScalarMatrix m);
Scalar exact_determinant(ScalarMatrix m);
// Throws SingularMatrixError when m is singular.
ScalarMatrix exact_inverse(const ScalarMatrix& m);

// Evaluates every entry of m at one point.
Eigen::MatrixXcd evaluate(const ExprMatrix& m, const Point& p, double* max_magnitude = nullptr);

// Exact value of every entry when all of them reduce to constants after
// substituting the rational point.
std::optional<ScalarMatrix> evaluate_exact(const ExprMatrix& m, const Bindings& point);

// True if e is built from +, *, and integer powers only.
bool is_rational_function(const Expr& e);

}  // namespace jetinv

#include "jetinv/numeric_impl.hpp"
