#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/invariants.hpp"

namespace jetinv {

// Random expression tree over x, y, y', y'' and small rationals using every
// node kind. Fractional powers and ln only wrap positive-definite arguments.
Expr random_tree(std::mt19937_64& rng, int depth);

// Random polynomial in x, y, y^(1..max_order) with small integer coefficients.
Expr random_polynomial(std::mt19937_64& rng, int max_order, int terms);

// Random polynomial in x and y only.
Expr random_plane_polynomial(std::mt19937_64& rng, int degree, int terms);

// Engine-wide property suites, each returning one named result:
//   simplify, product_rule, diff_commute, scalar_exact, prolong_formula,
//   prolong_linear, order_bound, pushforward_brackets.
std::vector<std::pair<std::string, CheckResult>> run_property_suites(std::uint64_t seed);

}  // namespace jetinv
