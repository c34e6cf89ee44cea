#pragma once

#include <Eigen/SVD>

namespace jetinv {

template <typename Derived>
int numeric_rank(const Eigen::MatrixBase<Derived>& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_tol * s(0)) ++r;
  }
  return r;
}

}  // namespace jetinv
