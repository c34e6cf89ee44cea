#include "jetinv/jet.hpp"

#include <algorithm>

#include "jetinv/errors.hpp"

namespace jetinv {

std::vector<Expr> ProlongedField::coefficients() const {
  std::vector<Expr> c{base.xi, base.eta};
  c.insert(c.end(), etas.begin(), etas.end());
  return c;
}

int jet_order(const Expr& e) {
  if (e.is_sym()) return std::max(0, e.symbol().jet_order());
  int n = 0;
  for (const auto& u : e.operands()) n = std::max(n, jet_order(u));
  return n;
}

Expr total_derivative(const Expr& e, int max_order) {
  if (jet_order(e) > max_order) {
    throw OrderError("total derivative: expression order exceeds " + std::to_string(max_order));
  }
  std::vector<Expr> terms{diff(e, Symbol::x())};
  for (int k = 0; k <= max_order; ++k) {
    Symbol yk = Symbol::jet(k);
    if (!e.may_depend_on(yk)) continue;
    Expr d = diff(e, yk);
    if (!d.is_zero()) terms.push_back(Expr(Symbol::jet(k + 1)) * d);
  }
  return make_sum(std::move(terms));
}

Expr total_derivative(const Expr& e) { return total_derivative(e, jet_order(e)); }

ProlongedField prolong(const VectorField& v, int n) {
  ProlongedField p{v, n, {}};
  Expr dxi = total_derivative(v.xi, 0);
  Expr prev = v.eta;
  for (int k = 1; k <= n; ++k) {
    Expr next = total_derivative(prev, k - 1) - Expr(Symbol::jet(k)) * dxi;
    p.etas.push_back(next);
    prev = next;
  }
  return p;
}

Expr apply(const ProlongedField& p, const Expr& e) {
  int m = jet_order(e);
  if (m > p.order) {
    throw OrderError("expression of order " + std::to_string(m) + " applied to a prolongation of order " +
                     std::to_string(p.order));
  }
  std::vector<Expr> terms;
  if (!p.base.xi.is_zero()) terms.push_back(p.base.xi * diff(e, Symbol::x()));
  auto coef = p.coefficients();
  for (int k = 0; k <= m; ++k) {
    const Expr& c = coef[static_cast<std::size_t>(k) + 1];
    if (c.is_zero()) continue;
    Symbol yk = Symbol::jet(k);
    if (!e.may_depend_on(yk)) continue;
    terms.push_back(c * diff(e, yk));
  }
  return make_sum(std::move(terms));
}

Expr apply(const VectorField& v, const Expr& f) {
  return v.xi * diff(f, Symbol::x()) + v.eta * diff(f, Symbol::y());
}

void check_planar(const VectorField& v) {
  for (const Expr* c : {&v.xi, &v.eta}) {
    for (const auto& s : free_symbols(*c)) {
      if (s.kind() == Symbol::Kind::Jet || s.kind() == Symbol::Kind::Lambda) {
        throw ArityError("vector field coefficient depends on " + s.str() +
                         "; fields live on the (x, y) plane");
      }
    }
  }
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a.xi + b.xi, a.eta + b.eta};
}

VectorField operator*(const Expr& c, const VectorField& v) { return {c * v.xi, c * v.eta}; }

}  // namespace jetinv
