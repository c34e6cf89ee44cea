#pragma once

#include <doctest.h>

#include "jetinv/catalog.hpp"
#include "jetinv/errors.hpp"
#include "jetinv/invariants.hpp"

namespace testing {

inline jetinv::Expr E(const char* text) { return jetinv::parse_expr(text, jetinv::notation_context()); }

inline jetinv::Realization R(const char* text) { return jetinv::parse_realization(text, jetinv::notation_context()); }

inline jetinv::VectorField F(const char* text) { return jetinv::parse_vector_field(text); }

inline bool zero(const jetinv::Expr& e, const jetinv::ZeroPolicy& p = {}) { return jetinv::is_zero(e, p); }

inline bool same(const jetinv::Expr& a, const jetinv::Expr& b, const jetinv::ZeroPolicy& p = {}) {
  return jetinv::is_zero(a - b, p);
}

inline const char* kN17 =
    "param b >= 0\n"
    "e1 = D[y]\n"
    "e2 = x*D[y]\n"
    "e3 = -(1+x^2)*D[x] + (b-x)*y*D[y]\n";

inline const char* kI2 = "y''*(1+x^2)^(3/2)*exp(b*arctan(x))";

}  // namespace testing
