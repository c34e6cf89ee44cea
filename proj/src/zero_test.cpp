#include "jetinv/zero_test.hpp"

#include <cmath>
#include <stdexcept>

#include "jetinv/errors.hpp"

namespace jetinv {

Point random_point(const std::vector<Symbol>& symbols, const ZeroPolicy& policy,
                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::uniform_real_distribution<double> jitter(0.5e-3, 1e-3);
  std::bernoulli_distribution sign(0.5);

  std::vector<ParamDecl> decls = policy.params;
  for (const auto& s : symbols) {
    if (s.kind() != Symbol::Kind::Param) continue;
    bool declared = false;
    for (const auto& d : decls) declared = declared || d.name == s.name();
    if (!declared) decls.push_back({s.name(), {}});
  }
  ParamValues params = sample_params(decls, rng);

  Point p;
  for (const auto& s : symbols) {
    if (s.kind() == Symbol::Kind::Param) {
      p[s] = params.at(s.name()).to_complex();
    } else {
      double re = mag(rng);
      if (!policy.positive_coordinates && sign(rng)) re = -re;
      p[s] = Complex(re, jitter(rng));
    }
  }
  return p;
}

bool is_zero(const Expr& e, const ZeroPolicy& policy) {
  Expr s = simplify(e);
  if (s.is_const()) return s.value().is_zero();
  Evaluator ev({s});
  std::mt19937_64 rng(policy.seed);
  int singular = 0;
  for (int t = 0; t < policy.trials; ++t) {
    Point p = random_point(ev.variables(), policy, rng);
    double peak = 0;
    try {
      Complex v = ev(p, &peak).front();
      if (std::abs(v) > policy.tol * (1.0 + peak)) return false;
    } catch (const DomainError&) {
      ++singular;
    }
  }
  if (2 * singular > policy.trials) {
    throw InconclusiveError("zero test inconclusive: " + std::to_string(singular) + " of " +
                            std::to_string(policy.trials) + " points singular");
  }
  return true;
}

std::optional<Scalar> equal_up_to_constant(const Expr& a, const Expr& b, const ZeroPolicy& policy) {
  Expr sa = simplify(a), sb = simplify(b);
  if (sb.is_zero()) throw std::invalid_argument("equal_up_to_constant: second argument is zero");
  if (sa.is_const() && sb.is_const()) return sa.value() / sb.value();
  Evaluator both({sa, sb});
  Evaluator eb({sb});
  std::mt19937_64 rng(policy.seed ^ 0x9e3779b97f4a7c15ULL);
  std::optional<Complex> ratio;
  for (int t = 0; t < policy.trials && !ratio; ++t) {
    Point p = random_point(both.variables(), policy, rng);
    try {
      // b is judged against its own intermediates; a may carry a large constant
      double peak = 0;
      Complex vb = eb(p, &peak).front();
      if (std::abs(vb) > 1e-6 * (1.0 + peak)) ratio = both(p).front() / vb;
    } catch (const DomainError&) {
    }
  }
  if (!ratio) throw InconclusiveError("equal_up_to_constant: no usable sample point");
  // Large constants need a tight tolerance to keep integer resolution.
  std::optional<Scalar> last;
  for (double tol : {1e-13, 1e-11, 1e-8}) {
    auto c = Scalar::rationalize(*ratio, tol, 1000000);
    if (!c || (last && *c == *last)) continue;
    last = c;
    if (is_zero(sa - Expr(*c) * sb, policy)) return c;
  }
  return std::nullopt;
}

}  // namespace jetinv
