#include "jetinv/numeric.hpp"

#include <utility>

#include "jetinv/errors.hpp"

namespace jetinv {

namespace {

// Row echelon form in place; returns the rank and the determinant sign/pivot
// product when the matrix is square.
int eliminate(ScalarMatrix& m, Scalar* det) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Scalar d(1);
  int rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r) {
      if (!m(r, c).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      d = Scalar(0);
      continue;
    }
    if (pivot != rank) {
      m.row(pivot).swap(m.row(rank));
      d = -d;
    }
    const Scalar p = m(rank, c);
    d *= p;
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      if (m(r, c).is_zero()) continue;
      Scalar f = m(r, c) / p;
      for (Eigen::Index k = c; k < cols; ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  if (det) *det = rank == rows && rows == cols ? d : Scalar(0);
  return rank;
}

}  // namespace

int exact_rank(ScalarMatrix m) { return eliminate(m, nullptr); }

Scalar exact_determinant(ScalarMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  Scalar d;
  eliminate(m, &d);
  return d;
}

ScalarMatrix exact_inverse(const ScalarMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw SingularMatrixError("inverse of a non-square matrix");
  ScalarMatrix a(n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      a(r, c) = m(r, c);
      a(r, n + c) = Scalar(r == c ? 1 : 0);
    }
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = c; r < n; ++r) {
      if (!a(r, c).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrixError("matrix is singular");
    if (pivot != c) a.row(pivot).swap(a.row(c));
    Scalar p = a(c, c);
    for (Eigen::Index k = 0; k < 2 * n; ++k) a(c, k) /= p;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      Scalar f = a(r, c);
      for (Eigen::Index k = 0; k < 2 * n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return a.rightCols(n);
}

Eigen::MatrixXcd evaluate(const ExprMatrix& m, const Point& p, double* max_magnitude) {
  std::vector<Expr> entries;
  entries.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) entries.push_back(m(r, c));
  }
  auto values = Evaluator(std::move(entries))(p, max_magnitude);
  return Eigen::Map<Eigen::MatrixXcd>(values.data(), m.rows(), m.cols());
}

std::optional<ScalarMatrix> evaluate_exact(const ExprMatrix& m, const Bindings& point) {
  ScalarMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      Expr v = substitute(m(r, c), point);
      if (!v.is_const()) return std::nullopt;
      out(r, c) = v.value();
    }
  }
  return out;
}

bool is_rational_function(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::Sym: return true;
    case Expr::Kind::Fun: return false;
    case Expr::Kind::Pow:
      return e.exponent().get_den() == 1 && is_rational_function(e.base());
    default:
      for (const auto& u : e.operands()) {
        if (!is_rational_function(u)) return false;
      }
      return true;
  }
}

}  // namespace jetinv
