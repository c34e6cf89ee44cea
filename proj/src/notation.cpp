#include "jetinv/notation.hpp"

#include <Eigen/LU>
#include <functional>

#include "jetinv/errors.hpp"
#include "jetinv/jet.hpp"
#include "jetinv/numeric.hpp"

namespace jetinv::notation {

namespace {

Expr jet(int k) { return Expr(Symbol::jet(k)); }
Expr c(long n, long d = 1) { return rational(n, d); }

}  // namespace

Expr derivative(const Expr& f, int k) {
  Expr out = f;
  for (int j = 0; j < k; ++j) out = total_derivative(out);
  return out;
}

Expr S(int n) {
  const long k = n - 3;
  if (k < 0) throw std::invalid_argument("S_n needs n >= 3");
  return c((k + 1) * (k + 1)) * pow(jet(k), 2) * jet(k + 3) -
         c(3 * (k + 1) * (k + 3)) * jet(k) * jet(k + 1) * jet(k + 2) + c(2 * (k + 2) * (k + 3)) * pow(jet(k + 1), 3);
}

Expr Q(int n) {
  const long k = n - 2;
  if (k < 0) throw std::invalid_argument("Q_n needs n >= 2");
  return c(k + 1) * jet(k) * jet(k + 2) - c(k + 2) * pow(jet(k + 1), 2);
}

Expr B0() { return 1 + pow(Expr(Symbol::x()), 2) + pow(Expr(Symbol::y()), 2); }
Expr B1() { return 1 + pow(jet(1), 2); }
Expr Qt3() { return jet(3) * B1() - 3 * jet(1) * pow(jet(2), 2); }
Expr R4() { return 3 * jet(2) * jet(4) - 5 * pow(jet(3), 2); }

Expr U5() {
  const Expr q = Q(3), dq = derivative(q, 1), ddq = derivative(q, 2);
  return pow(jet(1), 2) * (q * ddq - c(5, 4) * pow(dq, 2)) + jet(1) * jet(2) * q * dq -
         (2 * jet(1) * jet(3) - pow(jet(2), 2)) * pow(q, 2);
}

Expr Ut5(bool as_printed) {
  const Expr b = B1(), y1 = jet(1), y2 = jet(2), y3 = jet(3), y4 = jet(4), y5 = jet(5);
  return 4 * y5 * pow(b, 3) * Qt3() + 10 * y4 * y2 * pow(b, 3) * (4 * y3 * y1 + 3 * pow(y2, 2)) -
         5 * pow(y4, 2) * pow(b, 4) + 40 * pow(y3, 2) * pow(y2, 2) * (pow(y1, 2) - 2) * pow(b, 2) -
         40 * pow(y3, 3) * y1 * pow(b, 3) -
         180 * y3 * y1 * pow(y2, 4) * (pow(y1, 2) - 1) * pow(b, as_printed ? 2L : 1L) -
         pow(y2, 6) * (45 * (6 * pow(y1, 2) + 1) - 135 * pow(y1, 4));
}

Expr V7() {
  const Expr s = S(5), ds = derivative(s, 1), dds = derivative(s, 2);
  return pow(jet(2), 2) * (s * dds - c(7, 6) * pow(ds, 2)) + jet(2) * jet(3) * s * ds -
         c(1, 2) * (9 * jet(2) * jet(4) - 7 * pow(jet(3), 2)) * pow(s, 2);
}

Expr P(int i, int j, const Expr& phi, const Expr& psi) {
  return derivative(phi, i) * derivative(psi, j) - derivative(phi, j) * derivative(psi, i);
}

Expr W(const std::vector<Expr>& fs, const ZeroPolicy& policy) {
  const auto n = static_cast<Eigen::Index>(fs.size());
  if (n == 0) return Expr(1);
  ExprMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Expr f = fs[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, j) = f;
      if (i + 1 < n) f = total_derivative(f);
    }
  }
  // Small Wronskians: cofactor expansion keeps the result compact.
  std::function<Expr(const ExprMatrix&)> det = [&](const ExprMatrix& a) -> Expr {
    const Eigen::Index k = a.rows();
    if (k == 1) return a(0, 0);
    std::vector<Expr> terms;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (a(0, j).is_zero()) continue;
      ExprMatrix minor(k - 1, k - 1);
      for (Eigen::Index r = 1; r < k; ++r) {
        for (Eigen::Index q = 0, col = 0; q < k; ++q) {
          if (q != j) minor(r - 1, col++) = a(r, q);
        }
      }
      Expr t = a(0, j) * det(minor);
      terms.push_back(j % 2 ? -t : t);
    }
    return make_sum(std::move(terms));
  };
  Expr w = det(m);
  if (is_zero(w, policy)) throw IndependenceError("Wronskian vanishes: the functions are linearly dependent");
  return w;
}

std::vector<Scalar> ode_coefficients(const std::vector<Expr>& etas, const ZeroPolicy& policy) {
  const std::size_t r = etas.size();
  if (r == 0) return {};
  W(etas, policy);
  // derivs[i][k] = eta_i^(k), k = 0..r
  std::vector<std::vector<Expr>> derivs(r);
  for (std::size_t i = 0; i < r; ++i) {
    derivs[i].push_back(etas[i]);
    for (std::size_t k = 1; k <= r; ++k) derivs[i].push_back(total_derivative(derivs[i].back()));
  }
  // sum_j c_j eta_i^(r-j) = -eta_i^(r)
  std::vector<Expr> roots;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k <= r; ++k) roots.push_back(derivs[i][k]);
  Evaluator ev(roots);
  std::mt19937_64 rng(policy.seed ^ 0x082efa98ec4e6c89ULL);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Complex> v;
    try {
      v = ev(random_point(ev.variables(), policy, rng));
    } catch (const DomainError&) {
      continue;
    }
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(r));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 1; j <= r; ++j) {
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j - 1)) = v[i * (r + 1) + (r - j)];
      }
      rhs(static_cast<Eigen::Index>(i)) = -v[i * (r + 1) + r];
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
    if (lu.rank() < static_cast<Eigen::Index>(r)) continue;
    Eigen::VectorXcd sol = lu.solve(rhs);
    std::vector<Scalar> out;
    for (std::size_t j = 0; j < r; ++j) {
      auto q = Scalar::rationalize(sol(static_cast<Eigen::Index>(j)), 1e-8, 1000000);
      if (!q) throw IndependenceError("the functions do not solve a rational constant-coefficient equation");
      out.push_back(*q);
    }
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<Expr> terms{derivs[i][r]};
      for (std::size_t j = 1; j <= r; ++j) terms.push_back(Expr(out[j - 1]) * derivs[i][r - j]);
      if (!is_zero(make_sum(std::move(terms)), policy)) {
        throw IndependenceError("the functions do not solve a common constant-coefficient equation");
      }
    }
    return out;
  }
  throw IndependenceError("no regular point for the fundamental-system equation");
}

Expr K(const std::vector<Expr>& etas, const ZeroPolicy& policy) {
  auto cs = ode_coefficients(etas, policy);
  const int r = static_cast<int>(etas.size());
  std::vector<Expr> terms{jet(r)};
  for (int j = 1; j <= r; ++j) terms.push_back(Expr(cs[static_cast<std::size_t>(j) - 1]) * jet(r - j));
  return make_sum(std::move(terms));
}

}  // namespace jetinv::notation
