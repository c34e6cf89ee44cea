#pragma once

#include <vector>

#include "jetinv/expr.hpp"

namespace jetinv {

// xi*D[x] + eta*D[y] on the plane.
struct VectorField {
  Expr xi;
  Expr eta;

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

// Coefficients of the order-n prolongation; etas[k-1] is eta^k.
struct ProlongedField {
  VectorField base;
  int order = 0;
  std::vector<Expr> etas;

  // Coefficient list (xi, eta, eta^1, ..., eta^n).
  std::vector<Expr> coefficients() const;
};

// Highest k with y^(k) occurring (0 for y or no jet variable at all).
int jet_order(const Expr& e);

// D_x e with y^(0..max_order) treated as jet coordinates.
Expr total_derivative(const Expr& e, int max_order);
Expr total_derivative(const Expr& e);

ProlongedField prolong(const VectorField& v, int n);

// xi*e_x + eta*e_y + sum eta^k * e_{y^(k)}; OrderError if e is of higher
// order than the prolongation.
Expr apply(const ProlongedField& p, const Expr& e);

// The vector field applied to a function of (x, y) only.
Expr apply(const VectorField& v, const Expr& f);

// ArityError unless xi and eta live on the plane.
void check_planar(const VectorField& v);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& c, const VectorField& v);

}  // namespace jetinv
