#include "jetinv/invariants.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "jetinv/errors.hpp"

namespace jetinv {

ExprMatrix lie_matrix(const Realization& r, int nu) { return coefficient_matrix(r, nu); }

namespace {

using Rows = std::vector<std::vector<Expr>>;

Expr laplace(const Rows& a, std::uint64_t mask, std::size_t row, std::unordered_map<std::uint64_t, Expr>& memo) {
  if (mask == 0) return Expr(1);
  if (auto it = memo.find(mask); it != memo.end()) return it->second;
  std::vector<Expr> terms;
  int pos = 0;
  for (std::size_t c = 0; c < a[row].size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    if (!(mask & bit)) continue;
    if (!a[row][c].is_zero()) {
      Expr minor = laplace(a, mask & ~bit, row + 1, memo);
      if (!minor.is_zero()) {
        Expr t = a[row][c] * minor;
        terms.push_back(pos % 2 ? -t : t);
      }
    }
    ++pos;
  }
  Expr d = make_sum(std::move(terms));
  memo.emplace(mask, d);
  return d;
}

}  // namespace

Expr symbolic_determinant(const ExprMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (m.cols() != m.rows()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return Expr(1);
  if (n > 63) throw std::invalid_argument("determinant: matrix too large");
  // Expanding along the sparsest rows first keeps the memo small.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto zeros = [&](std::size_t r) {
    int z = 0;
    for (std::size_t c = 0; c < n; ++c) z += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)).is_zero();
    return z;
  };
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return zeros(a) > zeros(b); });
  int inversions = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];

  Rows a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c)
      a[i].push_back(m(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(c)));
  std::unordered_map<std::uint64_t, Expr> memo;
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  Expr d = laplace(a, full, 0, memo);
  return inversions % 2 ? -d : d;
}

namespace {

bool next_subset(std::vector<int>& s, int n) {
  const int k = static_cast<int>(s.size());
  for (int i = k - 1; i >= 0; --i) {
    if (s[static_cast<std::size_t>(i)] < n - k + i) {
      ++s[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j) - 1] + 1;
      return true;
    }
  }
  return false;
}

ExprMatrix columns_of(const ExprMatrix& m, const std::vector<int>& cols) {
  ExprMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = m.col(cols[k]);
  return out;
}

// Numeric samples of the full matrix used to discard vanishing minors cheaply.
std::vector<Eigen::MatrixXcd> sample_matrix(const ExprMatrix& m, const ZeroPolicy& pol, int count) {
  std::vector<Expr> entries;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) entries.push_back(m(r, c));
  Evaluator ev(std::move(entries));
  std::mt19937_64 rng(pol.seed ^ 0x452821e638d01377ULL);
  std::vector<Eigen::MatrixXcd> out;
  for (int attempt = 0; attempt < 4 * count && static_cast<int>(out.size()) < count; ++attempt) {
    try {
      auto v = ev(random_point(ev.variables(), pol, rng));
      out.push_back(Eigen::Map<Eigen::MatrixXcd>(v.data(), m.rows(), m.cols()));
    } catch (const DomainError&) {
    }
  }
  return out;
}

bool numerically_nonzero_minor(const std::vector<Eigen::MatrixXcd>& samples, const std::vector<int>& cols) {
  for (const auto& s : samples) {
    Eigen::MatrixXcd sub(s.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = s.col(cols[k]);
    double scale = 1;
    for (Eigen::Index r = 0; r < sub.rows(); ++r) scale *= std::max(1e-300, sub.row(r).norm());
    if (std::abs(sub.fullPivLu().determinant()) > 1e-9 * scale) return true;
  }
  return false;
}

}  // namespace

LieDeterminant lie_determinant_info(const Realization& r, const ZeroPolicy& policy) {
  ZeroPolicy pol = with_params(policy, r.params);
  LieDeterminant out;
  out.nu = nu(r, policy);
  ExprMatrix m = lie_matrix(r, out.nu);
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  std::vector<int> subset(static_cast<std::size_t>(rows));
  std::iota(subset.begin(), subset.end(), 0);
  if (rows == cols) {
    out.value = symbolic_determinant(m);
    out.columns = subset;
    if (is_zero(out.value, pol)) throw AllMinorsVanishError("the Lie matrix determinant vanishes identically");
    return out;
  }
  auto samples = sample_matrix(m, pol, 3);
  do {
    if (!samples.empty() && !numerically_nonzero_minor(samples, subset)) continue;
    Expr d = symbolic_determinant(columns_of(m, subset));
    if (!is_zero(d, pol)) {
      out.value = d;
      out.columns = subset;
      return out;
    }
  } while (next_subset(subset, cols));
  throw AllMinorsVanishError("every maximal minor of the Lie matrix vanishes identically");
}

Expr lie_determinant(const Realization& r, const ZeroPolicy& policy) { return lie_determinant_info(r, policy).value; }

bool verify_invariant(const Realization& r, const Expr& invariant, const ZeroPolicy& policy) {
  ZeroPolicy pol = with_params(policy, r.params);
  const int n = jet_order(invariant);
  for (const auto& f : r.basis) {
    if (!is_zero(apply(prolong(f, n), invariant), pol)) return false;
  }
  return true;
}

std::string BasisCheck::describe() const {
  std::ostringstream os;
  os << "invariants " << (invariants ? "ok" : "FAIL");
  if (!invariants && failed_member >= 0) os << " (member " << failed_member + 1 << ")";
  os << ", independence " << (independent ? "ok" : "FAIL") << " (rank " << jacobian_rank << ")";
  os << ", count " << (count ? "ok" : "FAIL") << " (" << counted << " of order <= " << nu + 1 << ", generating rank "
     << generated << ", d = " << expected << ")";
  return os.str();
}

namespace {

int jacobian_rank(const std::vector<Expr>& fs, const ZeroPolicy& pol) {
  if (fs.empty()) return 0;
  int m = 0;
  for (const auto& f : fs) m = std::max(m, jet_order(f));
  std::vector<Symbol> vars{Symbol::x()};
  for (int k = 0; k <= m; ++k) vars.push_back(Symbol::jet(k));
  ExprMatrix jac(static_cast<Eigen::Index>(fs.size()), static_cast<Eigen::Index>(vars.size()));
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j)
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = diff(fs[i], vars[j]);
  int rank = 0;
  for (auto s : sample_matrix(jac, pol, 3)) {
    // rows can differ by many orders of magnitude; scaling a row keeps the rank
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      double norm = s.row(i).norm();
      if (norm > 0) s.row(i) /= norm;
    }
    rank = std::max(rank, numeric_rank(s));
  }
  return rank;
}

}  // namespace

BasisCheck verify_basis(const Realization& r, const std::vector<Expr>& basis, const ZeroPolicy& policy,
                        const std::optional<Expr>& lambda) {
  if (basis.empty()) throw std::invalid_argument("verify_basis: empty basis");
  ZeroPolicy pol = with_params(policy, r.params);
  BasisCheck out;

  out.invariants = true;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (!verify_invariant(r, basis[k], pol)) {
      out.invariants = false;
      out.failed_member = static_cast<int>(k);
      break;
    }
  }

  out.jacobian_rank = jacobian_rank(basis, pol);
  out.independent = out.jacobian_rank == static_cast<int>(basis.size());

  out.nu = nu(r, policy);
  out.expected = invariant_count(r, out.nu + 1, policy);
  std::vector<Expr> low;
  for (const auto& b : basis) {
    if (jet_order(b) > out.nu + 1) continue;
    ++out.counted;
    low.push_back(b);
    if (!lambda) continue;
    Expr g = invariant_derivative(*lambda, b);
    while (jet_order(g) <= out.nu + 1 && low.size() < 4 * basis.size() + 8) {
      low.push_back(g);
      g = invariant_derivative(*lambda, g);
    }
  }
  out.generated = jacobian_rank(low, pol);
  out.count = out.generated == out.expected;
  return out;
}

bool verify_iod(const Realization& r, const Expr& lambda, const ZeroPolicy& policy) {
  ZeroPolicy pol = with_params(policy, r.params);
  const int m = jet_order(lambda);
  for (const auto& f : r.basis) {
    Expr residual = apply(prolong(f, m), lambda) - lambda * total_derivative(f.xi, 0);
    if (!is_zero(residual, pol)) return false;
  }
  return true;
}

Expr invariant_derivative(const Expr& lambda, const Expr& invariant) {
  return lambda * total_derivative(invariant);
}

namespace {

struct Flow {
  Evaluator ev;
  std::vector<long> slot;  // state coordinate -> evaluator slot, -1 if unused
  std::size_t dim;
};

enum class Step { Ok, Singular };

}  // namespace

FlowResult numeric_flow_check(const Realization& r, const Expr& invariant, const FlowOptions& options,
                              const ZeroPolicy& policy) {
  ZeroPolicy pol = with_params(policy, r.params);
  pol.seed = options.seed;
  const int n = jet_order(invariant);
  std::vector<Symbol> coords{Symbol::x()};
  for (int k = 0; k <= n; ++k) coords.push_back(Symbol::jet(k));
  const std::size_t dim = coords.size();
  const int steps = static_cast<int>(std::lround(options.t_end / options.h));

  std::vector<bool> read(dim);
  for (std::size_t k = 0; k < dim; ++k) read[k] = invariant.may_depend_on(coords[k]);

  FlowResult result;
  std::mt19937_64 rng(options.seed ^ 0xbe5466cf34e90c6cULL);
  for (std::size_t i = 0; i < r.dim(); ++i) {
    std::vector<Expr> roots = prolong(r.basis[i], n).coefficients();
    roots.push_back(invariant);
    Evaluator ev(roots);
    const auto& vars = ev.variables();
    std::vector<long> slot(dim, -1);
    for (std::size_t k = 0; k < dim; ++k) {
      auto it = std::find(vars.begin(), vars.end(), coords[k]);
      if (it != vars.end()) slot[k] = it - vars.begin();
    }
    std::vector<Symbol> draw = coords;
    for (const auto& v : vars) {
      if (std::find(coords.begin(), coords.end(), v) == coords.end()) draw.push_back(v);
    }

    for (int trial = 0; trial < options.trials; ++trial) {
      bool done = false;
      for (int attempt = 0; attempt <= options.restarts && !done; ++attempt) {
        if (attempt > 0) ++result.restarts;
        Point start = random_point(draw, pol, rng);
        // Start in the inner half of the box so short flows stay inside it.
        for (const auto& c : coords) {
          Complex& v = start.at(c);
          double m = 0.1 + (std::abs(v.real()) - 0.1) * 0.45;
          v = Complex(std::copysign(m, v.real()), v.imag());
        }
        std::vector<Complex> values(vars.size());
        for (std::size_t k = 0; k < vars.size(); ++k) values[k] = start.at(vars[k]);
        Eigen::VectorXcd z(static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < dim; ++k) z(static_cast<Eigen::Index>(k)) = start.at(coords[k]);

        // Rounding in I is about eps times its largest intermediate term; a
        // sample whose noise floor reaches a tenth of the tolerance cannot
        // resolve the drift and is treated like a singular one.
        bool ill_conditioned = false;
        auto field = [&](const Eigen::VectorXcd& s, Complex* inv) {
          for (std::size_t k = 0; k < dim; ++k) {
            if (slot[k] >= 0) values[static_cast<std::size_t>(slot[k])] = s(static_cast<Eigen::Index>(k));
          }
          double magnitude = 0;
          auto v = ev(values, inv ? &magnitude : nullptr);
          if (inv) {
            *inv = v.back();
            double noise = std::numeric_limits<double>::epsilon() * magnitude / (1.0 + std::abs(*inv));
            if (noise > 0.1 * options.tol) ill_conditioned = true;
          }
          return Eigen::Map<Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(dim)).eval();
        };

        double drift = 0;
        bool singular = false;
        try {
          Complex i0, cur;
          Eigen::VectorXcd k1 = field(z, &i0);
          singular = ill_conditioned;
          Complex prev = i0;
          for (int s = 0; s < steps && !singular; ++s) {
            Eigen::VectorXcd k2 = field(z + 0.5 * options.h * k1, nullptr);
            Eigen::VectorXcd k3 = field(z + 0.5 * options.h * k2, nullptr);
            Eigen::VectorXcd k4 = field(z + options.h * k3, nullptr);
            z += options.h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            // coordinates the invariant reads stay in the sampling box (x, y) or
            // moderate (jets); the others only need to stay finite
            for (Eigen::Index k = 0; k < z.size(); ++k) {
              double bound = !read[static_cast<std::size_t>(k)] ? HUGE_VAL : k < 2 ? 2.0 : 1e2;
              if (!std::isfinite(std::abs(z(k))) || std::abs(z(k).real()) > bound) singular = true;
            }
            if (singular) break;
            k1 = field(z, &cur);
            if (ill_conditioned) {
              singular = true;
              break;
            }
            // A jump between consecutive steps means a pole or branch cut.
            // relative, so that a branch switch of a small invariant is caught too
            if (std::abs(cur - prev) > 0.05 * std::max(std::abs(prev), std::abs(cur)) + 1e-12) {
              singular = true;
              break;
            }
            prev = cur;
            drift = std::max(drift, std::abs(cur - i0) / (1.0 + std::abs(i0)));
          }
        } catch (const DomainError&) {
          singular = true;
        }
        if (singular) continue;
        done = true;
        ++result.trajectories;
        if (drift > result.max_drift) {
          result.max_drift = drift;
          result.worst_field = static_cast<int>(i);
        }
      }
      if (!done) {
        throw FlowSingularError("no regular trajectory for the flow of e" + std::to_string(i + 1));
      }
    }
  }
  result.pass = result.max_drift <= options.tol;
  return result;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    case Status::Error: return "ERROR";
  }
  return "?";
}

bool VerificationReport::passed() const {
  for (const auto& [name, c] : checks) {
    if (c.status == Status::Fail || c.status == Status::Error) return false;
  }
  return true;
}

}  // namespace jetinv
