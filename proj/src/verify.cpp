#include "jetinv/verify.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "jetinv/errors.hpp"
#include "jetinv/properties.hpp"

namespace jetinv {

namespace {

std::string brief(const Expr& e, std::size_t limit = 160) {
  std::string s = to_string(e);
  if (s.size() > limit) s = s.substr(0, limit) + "...";
  return s;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string bracket_table(const StructureConstants& sc) {
  std::ostringstream os;
  const std::size_t n = sc.dim();
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < n; ++k) {
        if (!sc(i, j, k).is_zero()) terms.push_back(Expr(sc(i, j, k)) * Expr(Symbol::param("e" + std::to_string(k + 1))));
      }
      if (terms.empty()) continue;
      os << (any ? "; " : "") << "[e" << i + 1 << ",e" << j + 1 << "] = " << make_sum(terms);
      any = true;
    }
  }
  if (!any) return "abelian";
  return os.str();
}

std::uint64_t text_seed(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"closure", "inv", "independence", "iod", "liedet", "flow", "props"};
  return names;
}

bool VerifyOptions::enabled(const std::string& check) const {
  if (only.empty()) return true;
  if (check == "independence") return only.count("inv") != 0;
  return only.count(check) != 0;
}

std::string entry_label(const CatalogEntry& entry) {
  std::string out = entry.id;
  if (!entry.case_name.empty()) out += " [" + entry.case_name + "]";
  if (entry.r >= 0) out += " r=" + std::to_string(entry.r);
  for (const auto& [name, v] : entry.params) out += " " + name + "=" + v.str();
  return out;
}

CheckResult entry_properties(const CatalogEntry& entry, const Realization& r, const std::vector<Expr>& invariants,
                             const Expr& lambda, const ZeroPolicy& policy) {
  ZeroPolicy pol = with_params(policy, r.params);
  auto fail = [](const std::string& what) { return CheckResult{Status::Fail, what}; };
  const std::size_t n = r.dim();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      VectorField s = lie_bracket(r.basis[i], r.basis[j]) + lie_bracket(r.basis[j], r.basis[i]);
      if (!is_zero(s.xi, pol) || !is_zero(s.eta, pol)) {
        return fail("antisymmetry fails for e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1));
      }
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto& a = r.basis[i];
        const auto& b = r.basis[j];
        const auto& c = r.basis[k];
        VectorField jac = lie_bracket(lie_bracket(a, b), c) + lie_bracket(lie_bracket(b, c), a) +
                          lie_bracket(lie_bracket(c, a), b);
        if (!is_zero(jac.xi, pol) || !is_zero(jac.eta, pol)) {
          return fail("Jacobi identity fails for e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ", e" +
                      std::to_string(k + 1));
        }
      }
    }
  }

  std::mt19937_64 rng(policy.seed ^ text_seed(entry.id));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = r.basis[i];
    Expr e = random_polynomial(rng, 2, 4);
    Expr de = total_derivative(e);
    Expr residual = apply(prolong(f, 3), de) - total_derivative(apply(prolong(f, 2), e)) +
                    total_derivative(f.xi) * de;
    if (!is_zero(residual, pol)) return fail("[e^(oo), D_x] contraction fails for e" + std::to_string(i + 1));
  }

  for (std::size_t k = 0; k < invariants.size(); ++k) {
    if (!verify_invariant(r, invariant_derivative(lambda, invariants[k]), pol)) {
      return fail("lambda*D_x of invariant " + std::to_string(k + 1) + " is not an invariant");
    }
  }

  if (!verify_iod(r, lambda * invariants.front(), pol)) return fail("lambda times an invariant is not a multiplier");
  const Expr candidates[] = {Expr(Symbol::y()), Expr(Symbol::jet(1)), Expr(Symbol::x()), Expr(Symbol::jet(2))};
  for (const auto& f : candidates) {
    if (verify_invariant(r, f, pol)) continue;
    if (verify_iod(r, lambda * f, pol)) return fail("lambda*" + to_string(f) + " passes although " + to_string(f) + " is not invariant");
    return {Status::Pass, "antisymmetry, Jacobi, contraction, lambda*D_x closure, scaling by " + to_string(f)};
  }
  return {Status::Pass, "antisymmetry, Jacobi, contraction, lambda*D_x closure"};
}

VerificationReport verify_entry(const CatalogEntry& entry, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.entry = entry_label(entry);
  rep.params = entry.params;
  rep.seed = options.policy.seed;

  const Realization& r = options.printed ? entry.printed_realization : entry.realization;
  const std::vector<Expr>& invariants = options.printed ? entry.printed_invariants : entry.invariants;
  const Expr& lambda = options.printed ? entry.printed_iod : entry.iod;
  const std::optional<Expr>& liedet = options.printed ? entry.printed_liedet : entry.liedet;
  const ZeroPolicy pol = entry.policy(options.policy);

  auto run = [&](const std::string& name, auto&& body) {
    if (!options.enabled(name)) return;
    try {
      rep.checks[name] = body();
    } catch (const std::exception& e) {
      rep.checks[name] = {Status::Error, e.what()};
    }
  };

  run("closure", [&] {
    try {
      StructureConstants sc = closure_check(r, pol);
      if (!sc.antisymmetric() || !sc.satisfies_jacobi()) {
        return CheckResult{Status::Fail, "structure constants violate antisymmetry or Jacobi"};
      }
      return CheckResult{Status::Pass, bracket_table(sc)};
    } catch (const NotClosedError& e) {
      return CheckResult{Status::Fail, e.what()};
    }
  });

  if (options.enabled("inv")) {
    try {
      BasisCheck bc = verify_basis(r, invariants, pol, lambda);
      if (bc.invariants) {
        rep.checks["inv"] = {Status::Pass, std::to_string(invariants.size()) + " of " +
                                               std::to_string(invariants.size()) + " annihilated"};
      } else {
        rep.checks["inv"] = {Status::Fail, "invariant " + std::to_string(bc.failed_member + 1) + " not annihilated: " +
                                               brief(invariants[static_cast<std::size_t>(bc.failed_member)])};
      }
      rep.checks["independence"] = {bc.independent && bc.count ? Status::Pass : Status::Fail, bc.describe()};
    } catch (const std::exception& e) {
      rep.checks["inv"] = {Status::Error, e.what()};
    }
  }

  run("iod", [&] {
    bool ok = verify_iod(r, lambda, pol);
    return CheckResult{ok ? Status::Pass : Status::Fail, "lambda = " + brief(lambda)};
  });

  run("liedet", [&] {
    LieDeterminant info = lie_determinant_info(r, pol);
    std::ostringstream os;
    os << "nu = " << info.nu << ", det = " << brief(info.value);
    if (!liedet) {
      auto c = equal_up_to_constant(info.value, Expr(1), pol);
      if (c) os << ", constant " << c->str();
      else os << ", not constant";
      return CheckResult{c ? Status::Pass : Status::Fail, os.str()};
    }
    auto c = equal_up_to_constant(info.value, *liedet, pol);
    if (c) os << " = " << c->str() << " * table";
    else os << ", table " << brief(*liedet) << ", ratio not constant";
    return CheckResult{c && !c->is_zero() ? Status::Pass : Status::Fail, os.str()};
  });

  run("flow", [&] {
    double drift = 0;
    int trajectories = 0, restarts = 0;
    std::vector<Expr> targets = invariants;
    targets.push_back(invariant_derivative(lambda, invariants.front()));
    for (std::size_t k = 0; k < targets.size(); ++k) {
      FlowResult f = numeric_flow_check(r, targets[k], options.flow, pol);
      drift = std::max(drift, f.max_drift);
      trajectories += f.trajectories;
      restarts += f.restarts;
      if (!f.pass) {
        std::string which = k < invariants.size() ? "invariant " + std::to_string(k + 1) : "lambda*D_x of invariant 1";
        return CheckResult{Status::Fail, which + " drifts by " + fixed(f.max_drift) + " along e" +
                                             std::to_string(f.worst_field + 1)};
      }
    }
    return CheckResult{Status::Pass, "max drift " + fixed(drift) + " over " + std::to_string(trajectories) +
                                         " trajectories, " + std::to_string(restarts) + " restarts"};
  });

  run("props", [&] { return entry_properties(entry, r, invariants, lambda, pol); });

  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace jetinv
