#include "jetinv/lie.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <iostream>

#include "jetinv/errors.hpp"

namespace jetinv {

bool StructureConstants::antisymmetric() const {
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j)
      for (std::size_t k = 0; k < r_; ++k)
        if (!((*this)(i, j, k) == -(*this)(j, i, k))) return false;
  return true;
}

bool StructureConstants::satisfies_jacobi() const {
  const auto& c = *this;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j)
      for (std::size_t k = 0; k < r_; ++k)
        for (std::size_t l = 0; l < r_; ++l) {
          Scalar s;
          for (std::size_t m = 0; m < r_; ++m) {
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          }
          if (!s.is_zero()) return false;
        }
  return true;
}

StructureConstants StructureConstants::transformed(const ScalarMatrix& m) const {
  ScalarMatrix inv = exact_inverse(m);
  StructureConstants out(r_);
  out.params = params;
  // t(a, b, l) = sum_k c(a, b, k) inv(k, l)
  std::vector<Scalar> t(r_ * r_ * r_);
  for (std::size_t a = 0; a < r_; ++a)
    for (std::size_t b = 0; b < r_; ++b)
      for (std::size_t l = 0; l < r_; ++l) {
        Scalar s;
        for (std::size_t k = 0; k < r_; ++k) {
          const Scalar& v = (*this)(a, b, k);
          if (!v.is_zero()) s += v * inv(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
        }
        t[(a * r_ + b) * r_ + l] = s;
      }
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < r_; ++j)
      for (std::size_t l = 0; l < r_; ++l) {
        Scalar s;
        for (std::size_t a = 0; a < r_; ++a) {
          const Scalar& mia = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
          if (mia.is_zero()) continue;
          for (std::size_t b = 0; b < r_; ++b) {
            const Scalar& mjb = m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(b));
            if (mjb.is_zero()) continue;
            s += mia * mjb * t[(a * r_ + b) * r_ + l];
          }
        }
        out(i, j, l) = s;
      }
  return out;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  return {apply(v, w.xi) - apply(w, v.xi), apply(v, w.eta) - apply(w, v.eta)};
}

ZeroPolicy with_params(const ZeroPolicy& policy, const std::vector<ParamDecl>& params) {
  ZeroPolicy p = policy;
  for (const auto& d : params) {
    bool present = false;
    for (const auto& q : p.params) present = present || q.name == d.name;
    if (!present) p.params.push_back(d);
  }
  return p;
}

Realization instantiate(const Realization& r, const ParamValues& values) {
  Bindings b;
  for (const auto& [name, v] : values) b[Symbol::param(name)] = Expr(v);
  Realization out;
  out.label = r.label;
  for (const auto& f : r.basis) out.basis.push_back({substitute(f.xi, b), substitute(f.eta, b)});
  for (const auto& d : r.params) {
    if (!values.count(d.name)) out.params.push_back(d);
  }
  return out;
}

namespace {

std::vector<ParamDecl> all_param_decls(const Realization& r) {
  std::vector<ParamDecl> decls = r.params;
  for (const auto& f : r.basis) {
    for (const Expr* c : {&f.xi, &f.eta}) {
      for (const auto& s : free_symbols(*c)) {
        if (s.kind() != Symbol::Kind::Param) continue;
        bool known = false;
        for (const auto& d : decls) known = known || d.name == s.name();
        if (!known) decls.push_back({s.name(), {}});
      }
    }
  }
  return decls;
}

std::vector<Symbol> plane_symbols() { return {Symbol::x(), Symbol::y()}; }

// 2P x r matrix of (xi_k, eta_k) at P points.
Eigen::MatrixXcd basis_samples(const Evaluator& ev, const std::vector<Point>& points, std::size_t r) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(2 * points.size()), static_cast<Eigen::Index>(r));
  for (std::size_t p = 0; p < points.size(); ++p) {
    auto v = ev(points[p]);
    for (std::size_t k = 0; k < r; ++k) {
      a(static_cast<Eigen::Index>(2 * p), static_cast<Eigen::Index>(k)) = v[2 * k];
      a(static_cast<Eigen::Index>(2 * p + 1), static_cast<Eigen::Index>(k)) = v[2 * k + 1];
    }
  }
  return a;
}

Evaluator basis_evaluator(const Realization& r) {
  std::vector<Expr> e;
  for (const auto& f : r.basis) {
    e.push_back(f.xi);
    e.push_back(f.eta);
  }
  return Evaluator(std::move(e));
}

std::vector<Point> plane_points(std::size_t n, const ZeroPolicy& policy, std::mt19937_64& rng) {
  std::vector<Point> pts;
  for (std::size_t k = 0; k < n; ++k) pts.push_back(random_point(plane_symbols(), policy, rng));
  return pts;
}

}  // namespace

Realization instantiate_sampled(const Realization& r, const ZeroPolicy& policy, ParamValues* used) {
  auto decls = all_param_decls(r);
  ParamValues values;
  if (!decls.empty()) {
    std::mt19937_64 rng(policy.seed ^ 0x243f6a8885a308d3ULL);
    values = sample_params(decls, rng);
  }
  if (used) *used = values;
  return values.empty() ? r : instantiate(r, values);
}

void check_independent(const Realization& r, const ZeroPolicy& policy) {
  for (std::size_t k = 0; k < r.dim(); ++k) {
    if (r.basis[k].xi.is_zero() && r.basis[k].eta.is_zero()) {
      throw IndependenceError("basis field e" + std::to_string(k + 1) + " is zero");
    }
  }
  Realization inst = instantiate_sampled(r, policy);
  Evaluator ev = basis_evaluator(inst);
  std::mt19937_64 rng(policy.seed ^ 0x13198a2e03707344ULL);
  for (int attempt = 0; attempt < 5; ++attempt) {
    try {
      auto pts = plane_points(r.dim() + 1, policy, rng);
      if (numeric_rank(basis_samples(ev, pts, r.dim())) == static_cast<int>(r.dim())) return;
    } catch (const DomainError&) {
    }
  }
  throw IndependenceError("basis fields are linearly dependent over the constants");
}

StructureConstants closure_check(const Realization& r, const ZeroPolicy& policy) {
  ParamValues used;
  Realization inst = instantiate_sampled(r, policy, &used);
  ZeroPolicy pol = with_params(policy, inst.params);
  check_independent(inst, pol);
  const std::size_t n = inst.dim();
  Evaluator ev = basis_evaluator(inst);
  std::mt19937_64 rng(policy.seed ^ 0xa4093822299f31d0ULL);

  std::vector<Point> pts;
  Eigen::MatrixXcd a;
  bool ok = false;
  for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
    try {
      pts = plane_points(n + 2, pol, rng);
      a = basis_samples(ev, pts, n);
      ok = numeric_rank(a) == static_cast<int>(n);
    } catch (const DomainError&) {
    }
  }
  if (!ok) throw SingularSampleError("no generic sample points for the closure system");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);

  StructureConstants sc(n);
  sc.params = used;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField w = lie_bracket(inst.basis[i], inst.basis[j]);
      std::string pair = "[e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + "]";
      Evaluator wev({w.xi, w.eta});
      Eigen::VectorXcd rhs(static_cast<Eigen::Index>(2 * pts.size()));
      for (std::size_t p = 0; p < pts.size(); ++p) {
        auto v = wev(pts[p]);
        rhs(static_cast<Eigen::Index>(2 * p)) = v[0];
        rhs(static_cast<Eigen::Index>(2 * p + 1)) = v[1];
      }
      Eigen::VectorXcd c = qr.solve(rhs);
      if ((a * c - rhs).norm() > 1e-7 * (1.0 + rhs.norm())) {
        throw NotClosedError(pair + " is not in the span of the basis", i, j);
      }
      VectorField residual = w;
      for (std::size_t k = 0; k < n; ++k) {
        auto q = Scalar::rationalize(c(static_cast<Eigen::Index>(k)), 1e-8, 1000000);
        if (!q) throw NotClosedError(pair + ": structure constant is not rational", i, j);
        sc(i, j, k) = *q;
        sc(j, i, k) = -*q;
        if (!q->is_zero()) {
          residual.xi = residual.xi - Expr(*q) * inst.basis[k].xi;
          residual.eta = residual.eta - Expr(*q) * inst.basis[k].eta;
        }
      }
      if (!is_zero(residual.xi, pol) || !is_zero(residual.eta, pol)) {
        throw NotClosedError(pair + " is not in the span of the basis", i, j);
      }
    }
  }
  return sc;
}

ExprMatrix coefficient_matrix(const Realization& r, int k) {
  ExprMatrix m(static_cast<Eigen::Index>(r.dim()), k + 2);
  for (std::size_t i = 0; i < r.dim(); ++i) {
    auto c = prolong(r.basis[i], k).coefficients();
    for (int j = 0; j < k + 2; ++j) m(static_cast<Eigen::Index>(i), j) = c[static_cast<std::size_t>(j)];
  }
  return m;
}

namespace {

Bindings rational_jet_point(int order, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> den(1, 9);
  std::bernoulli_distribution sign(0.5);
  Bindings b;
  auto draw = [&]() {
    int d = den(rng);
    std::uniform_int_distribution<int> num(std::max(1, d / 10 + 1), 2 * d);
    Scalar v = Scalar::ratio(num(rng), d);
    return sign(rng) ? -v : v;
  };
  b[Symbol::x()] = Expr(draw());
  for (int k = 0; k <= order; ++k) b[Symbol::jet(k)] = Expr(draw());
  return b;
}

std::vector<Symbol> jet_symbols(int order) {
  std::vector<Symbol> s{Symbol::x()};
  for (int k = 0; k <= order; ++k) s.push_back(Symbol::jet(k));
  return s;
}

int rank_at(const ExprMatrix& m, int cols, bool exact, const ZeroPolicy& pol, std::mt19937_64& rng) {
  ExprMatrix sub = m.leftCols(cols);
  int order = std::max(0, cols - 2);
  for (int attempt = 0; attempt < 10; ++attempt) {
    try {
      if (exact) {
        auto v = evaluate_exact(sub, rational_jet_point(order, rng));
        if (v) return exact_rank(*v);
      }
      Point p = random_point(jet_symbols(order), pol, rng);
      return numeric_rank(evaluate(sub, p));
    } catch (const DomainError&) {
    }
  }
  throw SingularSampleError("no regular sample point for the prolonged coefficient matrix");
}

std::vector<int> ranks_of(const ExprMatrix& m, int n_max, const ZeroPolicy& pol) {
  bool exact = true;
  for (Eigen::Index i = 0; i < m.rows() && exact; ++i)
    for (Eigen::Index j = 0; j < m.cols() && exact; ++j) exact = is_rational_function(m(i, j));
  const int r = static_cast<int>(m.rows());
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<int> ranks(static_cast<std::size_t>(n_max) + 1, 0);
    for (int s = 0; s < 5; ++s) {
      std::mt19937_64 rng(pol.seed + 7919u * static_cast<unsigned>(s + 5 * attempt));
      for (int k = 0; k <= n_max; ++k) {
        std::mt19937_64 local = rng;
        ranks[static_cast<std::size_t>(k)] =
            std::max(ranks[static_cast<std::size_t>(k)], rank_at(m, k + 2, exact, pol, local));
      }
    }
    bool good = true;
    for (int k = 0; k <= n_max; ++k) {
      int rk = ranks[static_cast<std::size_t>(k)];
      if (rk > std::min(r, k + 2)) good = false;
      if (k > 0 && rk < ranks[static_cast<std::size_t>(k) - 1]) good = false;
    }
    if (good) return ranks;
  }
  throw SingularSampleError("rank sequence is not monotone at the sampled points");
}

}  // namespace

std::vector<int> rank_sequence(const Realization& r, int n_max, const ZeroPolicy& policy) {
  if (n_max < 0) throw std::invalid_argument("rank_sequence: negative order");
  Realization inst = instantiate_sampled(r, policy);
  ZeroPolicy pol = with_params(policy, inst.params);
  return ranks_of(coefficient_matrix(inst, n_max), n_max, pol);
}

int nu(const Realization& r, const ZeroPolicy& policy) {
  const int dim = static_cast<int>(r.dim());
  Realization inst = instantiate_sampled(r, policy);
  ZeroPolicy pol = with_params(policy, inst.params);
  // Orders are probed incrementally; most realizations stabilise early.
  for (int k = 0; k <= dim + 2; ++k) {
    auto ranks = ranks_of(coefficient_matrix(inst, k + 1), k + 1, pol);
    if (ranks[static_cast<std::size_t>(k)] == dim) {
      if (ranks[static_cast<std::size_t>(k) + 1] != dim) {
        throw StabilizationError("rank drops after reaching the dimension");
      }
      return k;
    }
  }
  throw StabilizationError("rank never reaches the dimension " + std::to_string(dim));
}

int invariant_count(const Realization& r, int n, const ZeroPolicy& policy) {
  auto ranks = rank_sequence(r, n, policy);
  int d = n + 2 - ranks.back();
  if (d < 0) {
    std::cerr << "warning: invariant count clamped at order " << n << "\n";
    d = 0;
  }
  return d;
}

}  // namespace jetinv
