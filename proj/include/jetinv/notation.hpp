#pragma once

#include <vector>

#include "jetinv/expr.hpp"
#include "jetinv/zero_test.hpp"

// Shorthand expressions used by the invariant tables.
namespace jetinv::notation {

// k-th total derivative (d^k/dx^k for functions of x alone).
Expr derivative(const Expr& f, int k);

// S_n = (k+1)^2 (y^(k))^2 y^(k+3) - 3(k+1)(k+3) y^(k) y^(k+1) y^(k+2)
//       + 2(k+2)(k+3) (y^(k+1))^3 with k = n - 3.
Expr S(int n);
// Q_n = (k+1) y^(k) y^(k+2) - (k+2) (y^(k+1))^2 with k = n - 2.
Expr Q(int n);
Expr Qt3();
Expr B0();
Expr B1();
Expr R4();
Expr U5();
// The printed expansion carries B1^2 on the y''' y' (y'')^4 term; the
// corrected one carries B1.
Expr Ut5(bool as_printed = false);
Expr V7();
// phi^(i) psi^(j) - phi^(j) psi^(i)
Expr P(int i, int j, const Expr& phi, const Expr& psi);
// Wronskian with respect to x. Throws IndependenceError if it vanishes.
Expr W(const std::vector<Expr>& fs, const ZeroPolicy& policy = {});
// c_1..c_r of eta^(r) + c_1 eta^(r-1) + ... + c_r eta = 0 satisfied by all
// the functions. Throws IndependenceError if they are dependent.
std::vector<Scalar> ode_coefficients(const std::vector<Expr>& etas, const ZeroPolicy& policy = {});
// y^(r) + c_1 y^(r-1) + ... + c_r y
Expr K(const std::vector<Expr>& etas, const ZeroPolicy& policy = {});

}  // namespace jetinv::notation
