#include "jetinv/properties.hpp"

#include <cmath>

#include "jetinv/errors.hpp"
#include "jetinv/evaluator.hpp"
#include "jetinv/transform.hpp"

namespace jetinv {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Expr leaf(std::mt19937_64& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0: return Symbol::x();
    case 1: return Symbol::y();
    case 2: return Symbol::jet(1);
    case 3: return Symbol::jet(2);
    default: {
      int num = uniform(rng, -5, 5);
      return rational(num == 0 ? 1 : num, uniform(rng, 1, 4));
    }
  }
}

// 1 + u^2, nonzero on the real points the checks use
Expr positive(const Expr& u) { return Expr::raw_sum({Expr(1), Expr::raw_pow(u, 2)}); }

Expr random_scalar(std::mt19937_64& rng) {
  return Scalar(mpq_class(uniform(rng, -4, 4), uniform(rng, 1, 3)), mpq_class(uniform(rng, -1, 1), 2));
}

Expr random_x_polynomial(std::mt19937_64& rng, int degree) {
  std::vector<Expr> terms;
  for (int d = 0; d <= degree; ++d) terms.push_back(rational(uniform(rng, -3, 3), uniform(rng, 1, 2)) * pow(Symbol::x(), d));
  return make_sum(terms);
}

ZeroPolicy real_policy(std::uint64_t seed) {
  ZeroPolicy p;
  p.seed = seed;
  p.positive_coordinates = true;
  return p;
}

CheckResult pass(std::string what) { return {Status::Pass, std::move(what)}; }
CheckResult fail(std::string what) { return {Status::Fail, std::move(what)}; }

CheckResult simplify_suite(std::mt19937_64& rng, std::uint64_t seed) {
  const ZeroPolicy pol = real_policy(seed);
  int compared = 0;
  for (int t = 0; t < 1000; ++t) {
    Expr raw = random_tree(rng, 4);
    Expr s = simplify(raw);
    if (!(simplify(s) == s)) return fail("simplify not idempotent on " + to_string(raw));
    std::mt19937_64 prng(seed + static_cast<std::uint64_t>(t));
    std::vector<Symbol> vars = {Symbol::x(), Symbol::y(), Symbol::jet(1), Symbol::jet(2)};
    for (int k = 0; k < 3; ++k) {
      Point p = random_point(vars, pol, prng);
      for (auto& [sym, v] : p) v = v.real();
      try {
        double mag_a = 0, mag_b = 0;
        Complex a = eval(raw, p, &mag_a), b = eval(s, p, &mag_b);
        // trig of a huge argument is ill-conditioned in double precision
        if (std::max(mag_a, mag_b) > 1e6) continue;
        if (std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a))) {
          return fail("value changed by simplify: " + to_string(raw));
        }
        ++compared;
      } catch (const DomainError&) {
      }
    }
  }
  return pass(std::to_string(compared) + " point comparisons on 1000 trees");
}

CheckResult product_rule_suite(std::mt19937_64& rng, std::uint64_t seed) {
  const ZeroPolicy pol = real_policy(seed);
  const Symbol syms[] = {Symbol::x(), Symbol::y(), Symbol::jet(1)};
  for (int t = 0; t < 100; ++t) {
    Expr f = simplify(random_tree(rng, 3)), g = simplify(random_tree(rng, 3));
    const Symbol& s = syms[t % 3];
    Expr r = diff(f * g, s) - (diff(f, s) * g + f * diff(g, s));
    if (!is_zero(r, pol)) return fail("product rule fails for " + to_string(f) + " and " + to_string(g));
    Expr q = diff(f / (Expr(2) + pow(g, 2)), s) -
             (diff(f, s) * (Expr(2) + pow(g, 2)) - f * Expr(2) * g * diff(g, s)) / pow(Expr(2) + pow(g, 2), 2);
    if (!is_zero(q, pol)) return fail("quotient rule fails for " + to_string(f) + " and " + to_string(g));
  }
  return pass("100 pairs");
}

CheckResult diff_commute_suite(std::mt19937_64& rng, std::uint64_t seed) {
  const ZeroPolicy pol = real_policy(seed);
  const Symbol syms[] = {Symbol::x(), Symbol::y(), Symbol::jet(1), Symbol::jet(2)};
  for (int t = 0; t < 100; ++t) {
    Expr f = simplify(random_tree(rng, 3));
    const Symbol& a = syms[uniform(rng, 0, 3)];
    const Symbol& b = syms[uniform(rng, 0, 3)];
    if (!is_zero(diff(diff(f, a), b) - diff(diff(f, b), a), pol)) {
      return fail("mixed partials differ for " + to_string(f));
    }
  }
  return pass("100 trees");
}

CheckResult scalar_suite(std::mt19937_64& rng) {
  auto draw = [&] {
    return Scalar(mpq_class(uniform(rng, -50, 50), uniform(rng, 1, 30)), mpq_class(uniform(rng, -50, 50), uniform(rng, 1, 30)));
  };
  for (int t = 0; t < 1000; ++t) {
    Scalar a = draw(), b = draw(), c = draw();
    if (!((a + b) - b == a)) return fail("(a+b)-b != a for a = " + a.str());
    if (!(a * (b + c) == a * b + a * c)) return fail("distributivity fails");
    if (!((a * b).conj() == a.conj() * b.conj())) return fail("conjugation not multiplicative");
    if (!b.is_zero() && !((a * b) / b == a)) return fail("(a*b)/b != a");
  }
  Scalar third = Scalar::ratio(1, 3);
  if (!(third + third + third == Scalar(1))) return fail("1/3 + 1/3 + 1/3 != 1");
  if (!(Scalar::i() * Scalar::i() == Scalar(-1))) return fail("i^2 != -1");
  return pass("1000 triples, exact");
}

// Hand-expanded first and second prolongation coefficients.
std::pair<Expr, Expr> prolong_by_hand(const VectorField& v) {
  const Symbol x = Symbol::x(), y = Symbol::y();
  const Expr p = Symbol::jet(1), q = Symbol::jet(2);
  const Expr& xi = v.xi;
  const Expr& eta = v.eta;
  Expr eta1 = diff(eta, x) + (diff(eta, y) - diff(xi, x)) * p - diff(xi, y) * pow(p, 2);
  Expr eta2 = diff(diff(eta, x), x) + (Expr(2) * diff(diff(eta, x), y) - diff(diff(xi, x), x)) * p +
              (diff(diff(eta, y), y) - Expr(2) * diff(diff(xi, x), y)) * pow(p, 2) - diff(diff(xi, y), y) * pow(p, 3) +
              (diff(eta, y) - Expr(2) * diff(xi, x) - Expr(3) * diff(xi, y) * p) * q;
  return {eta1, eta2};
}

VectorField random_field(std::mt19937_64& rng, int t) {
  if (t % 5 == 4) {
    // a few non-polynomial fields
    return {sin(Expr(Symbol::x())) + Expr(Symbol::y()), exp(Expr(Symbol::x())) * pow(Symbol::y(), 2)};
  }
  return {random_plane_polynomial(rng, 3, 4), random_plane_polynomial(rng, 3, 4)};
}

CheckResult prolong_formula_suite(std::mt19937_64& rng, std::uint64_t seed) {
  const ZeroPolicy pol = real_policy(seed);
  for (int t = 0; t < 40; ++t) {
    VectorField v = random_field(rng, t);
    auto [eta1, eta2] = prolong_by_hand(v);
    ProlongedField p = prolong(v, 2);
    if (!is_zero(p.etas[0] - eta1, pol)) return fail("eta^1 differs for xi = " + to_string(v.xi) + ", eta = " + to_string(v.eta));
    if (!is_zero(p.etas[1] - eta2, pol)) return fail("eta^2 differs for xi = " + to_string(v.xi) + ", eta = " + to_string(v.eta));
  }
  return pass("40 fields, orders 1 and 2");
}

CheckResult prolong_linear_suite(std::mt19937_64& rng, std::uint64_t seed) {
  const ZeroPolicy pol = real_policy(seed);
  const int n = 3;
  for (int t = 0; t < 20; ++t) {
    VectorField v = random_field(rng, t), w = random_field(rng, t + 1);
    Expr a = random_scalar(rng), b = random_scalar(rng);
    ProlongedField pv = prolong(v, n), pw = prolong(w, n), ps = prolong(a * v + b * w, n);
    for (int k = 0; k < n; ++k) {
      if (!is_zero(ps.etas[k] - (a * pv.etas[k] + b * pw.etas[k]), pol)) {
        return fail("prolongation not linear at order " + std::to_string(k + 1));
      }
    }
    Expr F = random_polynomial(rng, n, 4);
    ProlongedField pb = prolong(lie_bracket(v, w), n);
    Expr lhs = apply(pb, F);
    Expr rhs = apply(pv, apply(pw, F)) - apply(pw, apply(pv, F));
    if (!is_zero(lhs - rhs, pol)) return fail("prolongation does not preserve the bracket");
  }
  return pass("20 pairs, linearity and brackets to order 3");
}

CheckResult order_bound_suite(std::mt19937_64& rng) {
  for (int t = 0; t < 100; ++t) {
    Expr e = random_polynomial(rng, 4, 5);
    int k = jet_order(e);
    if (k >= 1 && jet_order(total_derivative(e)) != k + 1) return fail("D_x does not raise the order of " + to_string(e));
  }
  for (int t = 0; t < 20; ++t) {
    VectorField v = random_field(rng, t);
    ProlongedField p = prolong(v, 4);
    for (int k = 1; k <= 4; ++k) {
      const Expr& c = p.etas[static_cast<std::size_t>(k - 1)];
      if (jet_order(c) > k) return fail("eta^" + std::to_string(k) + " exceeds order " + std::to_string(k));
      if (k >= 2 && !diff(diff(c, Symbol::jet(k)), Symbol::jet(k)).is_zero()) {
        return fail("eta^" + std::to_string(k) + " not affine in y^(" + std::to_string(k) + ")");
      }
    }
  }
  return pass("100 polynomials, 20 prolongations to order 4");
}

CheckResult pushforward_suite(std::mt19937_64& rng, std::uint64_t seed) {
  const ZeroPolicy pol = real_policy(seed);
  const Expr X = Symbol::x(), Y = Symbol::y();
  for (int t = 0; t < 20; ++t) {
    Scalar alpha(mpq_class(uniform(rng, 1, 4) * (uniform(rng, 0, 1) ? 1 : -1), uniform(rng, 1, 3)));
    Scalar gamma(mpq_class(uniform(rng, 1, 4) * (uniform(rng, 0, 1) ? 1 : -1), uniform(rng, 1, 3)));
    Scalar beta(mpq_class(uniform(rng, -3, 3), uniform(rng, 1, 2)));
    Expr f = random_x_polynomial(rng, 3);
    Expr back_x = (X - Expr(beta)) / Expr(alpha);
    Expr back_y = (Y - substitute(f, {{Symbol::x(), back_x}})) / Expr(gamma);
    PointTransformation phi(Expr(alpha) * X + Expr(beta), Expr(gamma) * Y + f, back_x, back_y, pol);

    VectorField v = random_field(rng, t), w = random_field(rng, t + 2);
    VectorField lhs = pushforward(lie_bracket(v, w), phi);
    VectorField rhs = lie_bracket(pushforward(v, phi), pushforward(w, phi));
    if (!same_field(lhs, rhs, pol)) return fail("pushforward does not preserve [v, w] for map " + std::to_string(t));

    // x~ = alpha x + beta, y~ = gamma y + f(x): xi~ = alpha xi, eta~ = f' xi + gamma eta
    Bindings back = {{Symbol::x(), back_x}, {Symbol::y(), back_y}};
    VectorField hand{substitute(Expr(alpha) * v.xi, back),
                     substitute(diff(f, Symbol::x()) * v.xi + Expr(gamma) * v.eta, back)};
    if (!same_field(pushforward(v, phi), hand, pol)) return fail("pushforward differs from the chain rule for map " + std::to_string(t));
  }
  return pass("20 maps");
}

}  // namespace

Expr random_tree(std::mt19937_64& rng, int depth) {
  if (depth <= 0) return leaf(rng);
  switch (uniform(rng, 0, 9)) {
    case 0:
    case 1: return Expr::raw_sum({random_tree(rng, depth - 1), random_tree(rng, depth - 1), leaf(rng)});
    case 2:
    case 3: return Expr::raw_prod({random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
    case 4: return Expr::raw_pow(random_tree(rng, depth - 1), uniform(rng, 2, 3));
    case 5: return Expr::raw_pow(positive(random_tree(rng, depth - 1)), mpq_class(uniform(rng, -3, 3) * 2 + 1, 2));
    case 6: return Expr::raw_fun(Expr::Fn::Ln, positive(random_tree(rng, depth - 1)));
    case 7: return Expr::raw_fun(uniform(rng, 0, 1) ? Expr::Fn::Sin : Expr::Fn::Cos, random_tree(rng, depth - 1));
    case 8: return Expr::raw_fun(Expr::Fn::Arctan, random_tree(rng, depth - 1));
    default: return Expr::raw_fun(Expr::Fn::Exp, Expr::raw_prod({rational(1, 4), random_tree(rng, depth - 1)}));
  }
}

Expr random_polynomial(std::mt19937_64& rng, int max_order, int terms) {
  std::vector<Expr> sum;
  for (int t = 0; t < terms; ++t) {
    int c = uniform(rng, 1, 4);
    std::vector<Expr> factors = {Expr(uniform(rng, 0, 1) ? c : -c)};
    factors.push_back(pow(Symbol::x(), uniform(rng, 0, 2)));
    factors.push_back(pow(Symbol::y(), uniform(rng, 0, 2)));
    for (int k = 1; k <= max_order; ++k) factors.push_back(pow(Symbol::jet(k), uniform(rng, 0, 2)));
    sum.push_back(make_prod(factors));
  }
  // make sure the top order occurs
  sum.push_back(Expr(Symbol::jet(max_order)));
  return make_sum(sum);
}

Expr random_plane_polynomial(std::mt19937_64& rng, int degree, int terms) {
  std::vector<Expr> sum;
  for (int t = 0; t < terms; ++t) {
    int dx = uniform(rng, 0, degree);
    int dy = uniform(rng, 0, degree - dx);
    sum.push_back(rational(uniform(rng, -3, 3), uniform(rng, 1, 2)) * pow(Symbol::x(), dx) * pow(Symbol::y(), dy));
  }
  return make_sum(sum);
}

std::vector<std::pair<std::string, CheckResult>> run_property_suites(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::string, CheckResult>> out;
  auto run = [&](const std::string& name, auto&& body) {
    try {
      out.emplace_back(name, body());
    } catch (const std::exception& e) {
      out.emplace_back(name, CheckResult{Status::Error, e.what()});
    }
  };
  run("simplify", [&] { return simplify_suite(rng, seed); });
  run("product_rule", [&] { return product_rule_suite(rng, seed); });
  run("diff_commute", [&] { return diff_commute_suite(rng, seed); });
  run("scalar_exact", [&] { return scalar_suite(rng); });
  run("prolong_formula", [&] { return prolong_formula_suite(rng, seed); });
  run("prolong_linear", [&] { return prolong_linear_suite(rng, seed); });
  run("order_bound", [&] { return order_bound_suite(rng); });
  run("pushforward_brackets", [&] { return pushforward_suite(rng, seed); });
  return out;
}

}  // namespace jetinv
