#pragma once

#include <string>
#include <vector>

#include "jetinv/lie.hpp"

namespace jetinv {

// Point transformation of the plane. New coordinates are written with the
// same symbols x, y: forward gives (x~, y~) in terms of (x, y), inverse gives
// (x, y) in terms of (x~, y~).
class PointTransformation {
 public:
  // Throws DomainError unless inverse(forward(x, y)) = (x, y) and
  // forward(inverse(x, y)) = (x, y) under the policy.
  PointTransformation(Expr fx, Expr fy, Expr ix, Expr iy, const ZeroPolicy& policy = {});

  const Expr& forward_x() const { return fx_; }
  const Expr& forward_y() const { return fy_; }
  const Expr& inverse_x() const { return ix_; }
  const Expr& inverse_y() const { return iy_; }

  static PointTransformation swap_xy();
  static PointTransformation scaling(const Scalar& a, const Scalar& b);

 private:
  Expr fx_, fy_, ix_, iy_;
};

VectorField pushforward(const VectorField& v, const PointTransformation& t);
Realization pushforward(const Realization& r, const PointTransformation& t);

// e~_i = sum_j m(i, j) e_j. Throws SingularMatrixError unless m is invertible.
Realization change_basis(const Realization& r, const ScalarMatrix& m);

// Componentwise zero test of two fields.
bool same_field(const VectorField& a, const VectorField& b, const ZeroPolicy& policy);

struct Table2Row {
  std::string n1;      // row label
  std::string source;  // catalog entry the map acts on
  std::string target;  // complex canonical form label (opaque)
  std::string map_x, map_y, inverse_x, inverse_y;
  std::vector<std::vector<std::string>> matrix;  // entries as text, may use parameters
  bool positive_domain = false;
};

struct Table2Result {
  Realization before;
  Realization after;
  ScalarMatrix matrix;
  bool roundtrip = false;
  bool brackets_preserved = false;  // pushforward([v,w]) = [pushforward v, pushforward w]
  bool after_closed = false;
  bool conjugation_law = false;  // structure constants of after = transformed(before)
  std::string failure;

  bool ok() const { return roundtrip && brackets_preserved && after_closed && conjugation_law; }
};

// Applies the row's variable map and basis change to an instantiated source
// realization (numeric parameter values).
Table2Result apply_table2(const Table2Row& row, const Realization& source, const ParamValues& params,
                          const ZeroPolicy& policy);

// Reduction of Lie's A_{4.8} form <dy, dx, x dy, x dx + (1+b') y dy> to the
// two realizations <dx, dy, y dx, (1+b) x dx + y dy> (|b'| <= 1, b = b') and
// <dx, y dx, -dy, (1+b) x dx + b y dy> (|b'| > 1, b = 1/b').
struct A48Reduction {
  Realization lie_form;
  Realization reduced;
  Realization expected;
  bool field_by_field = false;  // canonical equality of every field
};
A48Reduction reduce_a48(const Scalar& b_prime);

}  // namespace jetinv
