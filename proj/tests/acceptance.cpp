// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--criterion N]
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jetinv/catalog.hpp"
#include "jetinv/errors.hpp"
#include "jetinv/invariants.hpp"
#include "jetinv/properties.hpp"
#include "jetinv/transform.hpp"
#include "jetinv/verify.hpp"

using namespace jetinv;

namespace {

Expr E(const char* text) { return parse_expr(text, notation_context()); }

// a - b reduces to the zero constant under the canonical constructors
bool canonical_equal(const Expr& a, const Expr& b) { return simplify(a - b).is_zero(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::vector<CatalogEntry> shipped_instances(const ZeroPolicy& policy = {}) {
  const Catalog& cat = Catalog::builtin();
  std::vector<CatalogEntry> out;
  for (const auto& id : cat.ids()) {
    for (const auto& inst : cat.default_instantiations(id)) {
      out.push_back(cat.get(id, inst.params, {}, std::nullopt, inst.case_name, policy));
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

Outcome worked_example() {
  Outcome o;
  const Catalog& cat = Catalog::builtin();
  CatalogEntry e = cat.get("17", {{"b", E("b")}});
  const Realization& r = e.realization;
  ZeroPolicy pol = e.policy({});

  ProlongedField p2 = prolong(r.basis[1], 2);
  o.require(canonical_equal(p2.etas[0], E("1")) && canonical_equal(p2.etas[1], E("0")), "prolong(e2, 2)");
  ProlongedField p3 = prolong(r.basis[2], 2);
  o.require(canonical_equal(p3.etas[0], E("-(y - (b+x)*y')")) && canonical_equal(p3.etas[1], E("(b+3*x)*y''")),
            "prolong(e3, 2)");
  o.require(canonical_equal(lie_determinant(r, pol), E("-(1+x^2)")), "Lie determinant -(1+x^2)");
  o.require(verify_invariant(r, E("y''*(1+x^2)^(3/2)*exp(b*arctan(x))"), pol), "verify_invariant(I2)");
  o.require(verify_iod(r, E("1+x^2"), pol), "verify_iod(1+x^2)");
  int d0 = invariant_count(r, 0, pol), d1 = invariant_count(r, 1, pol), d2 = invariant_count(r, 2, pol);
  o.require(d0 == 0 && d1 == 0 && d2 == 1, "counts d0 d1 d2 = " + std::to_string(d0) + " " + std::to_string(d1) +
                                               " " + std::to_string(d2));
  return o;
}

Outcome alternative_form() {
  Outcome o;
  Realization r = parse_realization(
      "e1 = exp(-b*x)*sin(x)*D[y]\n"
      "e2 = exp(-b*x)*cos(x)*D[y]\n"
      "e3 = D[x]\n");
  ZeroPolicy pol;
  try {
    closure_check(r, pol);
  } catch (const NotClosedError& err) {
    o.require(false, err.what());
  }
  o.require(verify_invariant(r, E("y'' + 2*b*y' + (b^2+1)*y"), pol), "verify_invariant(I2)");
  o.require(verify_iod(r, E("1"), pol), "verify_iod(1)");
  auto c = equal_up_to_constant(lie_determinant(r, pol), E("-exp(-2*b*x)"), pol);
  o.require(c.has_value(), "Lie determinant vs -exp(-2bx)");
  if (c) o.info.push_back("det = " + c->str() + " * (-exp(-2bx))");
  return o;
}

Outcome full_table() {
  Outcome o;
  const std::vector<std::string> cells{"closure", "inv", "iod", "liedet"};
  auto run = [&](bool printed) {
    VerifyOptions opts;
    opts.printed = printed;
    opts.only = {cells.begin(), cells.end()};
    std::vector<std::string> failed;
    std::size_t n = 0;
    for (const auto& entry : shipped_instances()) {
      ++n;
      VerificationReport rep = verify_entry(entry, opts);
      std::vector<std::string> bad;
      for (const auto& c : cells) {
        auto it = rep.checks.find(c);
        if (it != rep.checks.end() && it->second.status != Status::Pass) bad.push_back(c);
      }
      if (!bad.empty()) failed.push_back(rep.entry + " (" + join(bad) + ")");
    }
    return std::make_pair(n, failed);
  };
  auto [n, printed_failed] = run(true);
  o.require(printed_failed.empty(), std::to_string(printed_failed.size()) + " of " + std::to_string(n) +
                                        " printed instances fail: " + join(printed_failed));
  auto [m, effective_failed] = run(false);
  o.info.push_back("corrected catalog: " + std::to_string(m - effective_failed.size()) + " of " + std::to_string(m) +
                   " instances pass" + (effective_failed.empty() ? "" : ", failing: " + join(effective_failed)));
  return o;
}

Outcome counting_law() {
  Outcome o;
  const std::set<std::string> rows{"1*", "2", "3*", "5", "6", "13", "21", "23", "35", "48", "49"};
  std::set<std::string> seen;
  for (const auto& entry : shipped_instances()) {
    const bool listed = rows.count(entry.id) != 0;
    if (!listed && entry.invariants.size() != 1) continue;
    ZeroPolicy pol = entry.policy({});
    BasisCheck b = verify_basis(entry.realization, entry.invariants, pol, entry.iod);
    if (listed) seen.insert(entry.id);
    std::string label = entry_label(entry);
    o.require(b.ok(), label + ": " + b.describe());
    if (listed) {
      o.info.push_back(label + ": " + std::to_string(entry.invariants.size()) + " members, nu = " +
                       std::to_string(b.nu) + ", " + std::to_string(b.counted) + " of order <= nu+1, generating rank " +
                       std::to_string(b.generated) + ", d = " + std::to_string(b.expected));
    }
  }
  o.require(seen == rows, "listed rows missing from the catalog");
  return o;
}

Outcome a48() {
  Outcome o;
  for (const Scalar& b : {Scalar::ratio(1, 3), Scalar(3)}) {
    A48Reduction red = reduce_a48(b);
    o.require(red.field_by_field, "b' = " + b.str());
  }
  return o;
}

Outcome complex_rows() {
  Outcome o;
  const Catalog& cat = Catalog::builtin();
  int rows = 0;
  for (const auto& t2 : cat.table2()) {
    ++rows;
    for (const auto& inst : cat.default_instantiations(t2.row.source)) {
      CatalogEntry entry = cat.get(t2.row.source, inst.params, {}, std::nullopt, inst.case_name);
      Table2Result res = apply_table2(t2.row, entry.realization, entry.params, entry.policy({}));
      o.require(res.ok(), "row " + t2.row.n1 + " on " + entry_label(entry) + ": " + res.failure);
    }
  }
  o.require(rows == 8, std::to_string(rows) + " rows");
  return o;
}

Outcome property_suites() {
  Outcome o;
  for (const auto& [name, res] : run_property_suites(ZeroPolicy{}.seed)) {
    o.require(res.status == Status::Pass, name + ": " + res.witness);
  }
  VerifyOptions opts;
  opts.only = {"props"};
  int n = 0;
  for (const auto& entry : shipped_instances()) {
    VerificationReport rep = verify_entry(entry, opts);
    const CheckResult& c = rep.checks.at("props");
    o.require(c.status == Status::Pass, rep.entry + ": " + c.witness);
    ++n;
  }
  o.info.push_back(std::to_string(n) + " instances checked for antisymmetry, Jacobi, contraction and closure");
  return o;
}

Outcome numeric_flow() {
  Outcome o;
  VerifyOptions opts;
  opts.only = {"flow"};
  int n = 0;
  for (const auto& entry : shipped_instances()) {
    VerificationReport rep = verify_entry(entry, opts);
    const CheckResult& c = rep.checks.at("flow");
    o.require(c.status == Status::Pass, rep.entry + ": " + c.witness);
    ++n;
  }
  o.info.push_back(std::to_string(n) + " instances");
  FlowOptions fo;
  FlowResult y9 = numeric_flow_check(Catalog::builtin().get("9").realization, E("y'"), fo);
  o.require(!y9.pass, "y' on N=9 not caught");
  FlowResult y4 = numeric_flow_check(Catalog::builtin().get("4").realization, E("y"), fo);
  o.require(!y4.pass, "y on N=4 not caught");
  std::ostringstream s;
  s << "planted: y' on N=9 drifts " << y9.max_drift << ", y on N=4 drifts " << y4.max_drift;
  o.info.push_back(s.str());
  return o;
}

struct Criterion {
  const char* title;
  const char* tolerance;
  double budget_seconds;  // 0: no runtime bound
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"N=17 worked example, symbolic b", "canonical equality; zero test T=20, tau=1e-9", 1.0, worked_example},
      {"N=17 alternative form <e^(-bx) sin x dy, e^(-bx) cos x dy, dx>", "zero test T=20, tau=1e-9", 1.0,
       alternative_form},
      {"full table, printed cells", "zero test T=20, tau=1e-9", 60.0, full_table},
      {"counting law", "zero test T=20, tau=1e-9; numeric rank rel tol 1e-8", 0, counting_law},
      {"A_{4.8} reduction at b' = 1/3 and b' = 3", "canonical field equality", 0, a48},
      {"real-to-complex rows", "zero test T=20, tau=1e-9 with Gaussian scalars", 0, complex_rows},
      {"property suites", "zero test T=20, tau=1e-9", 0, property_suites},
      {"numeric flow oracle", "RK4 trials=5, t_end=0.5, h=1e-3, tol=1e-6", 0, numeric_flow},
  };
  return list;
}

bool run_criterion(std::size_t k) {
  const Criterion& c = criteria()[k - 1];
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("error: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.budget_seconds > 0 && secs >= c.budget_seconds) {
    std::ostringstream s;
    s << "runtime " << secs << " s over " << c.budget_seconds << " s";
    o.require(false, s.str());
  }
  std::ostringstream time;
  time.precision(3);
  time << secs;
  std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << c.tolerance
            << (c.budget_seconds > 0 ? "; < " + std::to_string(static_cast<int>(c.budget_seconds)) + " s" : "")
            << "]  " << time.str() << " s\n";
  if (!o.detail.empty()) std::cout << "    " << o.detail << '\n';
  for (const auto& line : o.info) std::cout << "    " << line << '\n';
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      std::size_t k = std::strtoul(argv[++i], nullptr, 10);
      if (k < 1 || k > criteria().size()) {
        std::cerr << "criterion must be 1.." << criteria().size() << '\n';
        return 2;
      }
      which.push_back(k);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (which.empty()) {
    for (std::size_t k = 1; k <= criteria().size(); ++k) which.push_back(k);
  }
  bool ok = true;
  for (auto k : which) ok = run_criterion(k) && ok;
  return ok ? 0 : 1;
}
