#include "jetinv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "jetinv/catalog.hpp"
#include "jetinv/errors.hpp"
#include "jetinv/properties.hpp"
#include "jetinv/transform.hpp"
#include "jetinv/verify.hpp"

namespace jetinv::cli {

namespace {

using json = nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint64_t seed = 20240611;
  int trials = 20;
  double tol = 1e-9;
  std::vector<std::string> params;
  std::optional<int> r;
  bool json = false;
  std::vector<std::string> only;
  bool printed = false;
  unsigned jobs = 1;
  std::string case_name;
  int flow_trials = 5;
  double t_end = 0.5;
  double h = 1e-3;
  double flow_tol = 1e-6;
};

ZeroPolicy zero_policy(const Config& c) {
  ZeroPolicy p;
  p.trials = c.trials;
  p.tol = c.tol;
  p.seed = c.seed;
  return p;
}

FlowOptions flow_options(const Config& c) {
  FlowOptions f;
  f.trials = c.flow_trials;
  f.t_end = c.t_end;
  f.h = c.h;
  f.tol = c.flow_tol;
  f.seed = c.seed;
  return f;
}

std::map<std::string, Expr> param_overrides(const Config& c) {
  std::map<std::string, Expr> out;
  for (const auto& p : c.params) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + p + "'");
    out[p.substr(0, eq)] = parse_expr(p.substr(eq + 1));
  }
  return out;
}

ParamValues numeric_params(const std::map<std::string, Expr>& overrides) {
  ParamValues out;
  for (const auto& [name, e] : overrides) {
    if (e.is_const()) out[name] = e.value();
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Realization load_realization(const std::string& path, const Config& c) {
  Realization r = parse_realization(read_file(path), notation_context());
  ParamValues values = numeric_params(param_overrides(c));
  return values.empty() ? r : instantiate(r, values);
}

std::string field_string(const VectorField& v) {
  std::vector<std::string> parts;
  if (!v.xi.is_zero()) parts.push_back("(" + to_string(v.xi) + ")*D[x]");
  if (!v.eta.is_zero()) parts.push_back("(" + to_string(v.eta) + ")*D[y]");
  if (parts.empty()) return "0";
  return parts.size() == 1 ? parts[0] : parts[0] + " + " + parts[1];
}

json report_json(const VerificationReport& rep) {
  json checks = json::object();
  for (const auto& [name, c] : rep.checks) checks[name] = {{"status", status_name(c.status)}, {"witness", c.witness}};
  json params = json::object();
  for (const auto& [name, v] : rep.params) params[name] = v.str();
  return {{"entry", rep.entry}, {"checks", checks}, {"seed", rep.seed}, {"params", params}};
}

void print_report(const VerificationReport& rep, const Config& c, std::ostream& out) {
  if (c.json) {
    out << report_json(rep).dump() << '\n';
    return;
  }
  out << rep.entry << ": " << (rep.passed() ? "PASS" : "FAIL") << '\n';
  auto line = [&](const std::string& name, const CheckResult& r) {
    std::string pad(std::max<std::size_t>(1, 14 - std::min<std::size_t>(13, name.size())), ' ');
    out << "  " << name << pad << status_name(r.status) << "  " << r.witness << '\n';
  };
  const auto& names = check_names();
  for (const auto& name : names) {
    auto it = rep.checks.find(name);
    if (it != rep.checks.end()) line(name, it->second);
  }
  for (const auto& [name, r] : rep.checks) {
    if (std::find(names.begin(), names.end(), name) == names.end()) line(name, r);
  }
}

VerifyOptions verify_options(const Config& c) {
  VerifyOptions o;
  o.policy = zero_policy(c);
  o.flow = flow_options(c);
  o.printed = c.printed;
  for (const auto& s : c.only) {
    if (std::find(check_names().begin(), check_names().end(), s) == check_names().end()) {
      throw UsageError("unknown check '" + s + "'");
    }
    o.only.insert(s);
  }
  return o;
}

const Catalog& catalog() { return Catalog::builtin(); }

void require_entry(const std::string& id) {
  if (!catalog().contains(id)) throw UsageError("unknown catalog entry '" + id + "'");
}

// The instantiations a command runs for an entry: the user's parameters and
// case when given, the shipped samples otherwise.
std::vector<Catalog::Instantiation> instantiations(const std::string& id, const Config& c) {
  const auto& rec = catalog().record(id);
  std::optional<int> r = rec.is_series() ? c.r : std::nullopt;
  auto overrides = param_overrides(c);
  if (!overrides.empty() || !c.case_name.empty()) return {{c.case_name, overrides}};
  return catalog().default_instantiations(id, r);
}

CatalogEntry instantiate_entry(const std::string& id, const Catalog::Instantiation& inst, const Config& c,
                               const Catalog& cat = catalog()) {
  const auto& rec = cat.record(id);
  std::optional<int> r = rec.is_series() ? c.r : std::nullopt;
  return cat.get(id, inst.params, {}, r, inst.case_name, zero_policy(c));
}

int cmd_check(const std::string& id, const Config& c, std::ostream& out) {
  require_entry(id);
  VerifyOptions opts = verify_options(c);
  bool ok = true;
  for (const auto& inst : instantiations(id, c)) {
    VerificationReport rep = verify_entry(instantiate_entry(id, inst, c), opts);
    print_report(rep, c, out);
    ok = ok && rep.passed();
  }
  return ok ? 0 : 1;
}

int cmd_check_all(const Config& c, std::ostream& out) {
  VerifyOptions opts = verify_options(c);
  struct Job {
    std::string id;
    Catalog::Instantiation inst;
    std::optional<int> r;
  };
  std::vector<Job> jobs;
  for (const auto& id : catalog().ids()) {
    const auto& rec = catalog().record(id);
    std::optional<int> r;
    // rows whose minimum r exceeds --r run at their minimum
    if (rec.is_series() && c.r) r = std::max(*c.r, rec.series_min);
    for (auto& inst : catalog().default_instantiations(id, r)) jobs.push_back({id, std::move(inst), r});
  }
  std::vector<VerificationReport> reports(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const Job& job = jobs[k];
        CatalogEntry entry = catalog().get(job.id, job.inst.params, {}, job.r, job.inst.case_name, zero_policy(c));
        reports[k] = verify_entry(entry, opts);
      } catch (const std::exception& e) {
        reports[k].entry = jobs[k].id;
        reports[k].seed = c.seed;
        reports[k].checks["instantiate"] = {Status::Error, e.what()};
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(c.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::size_t failed = 0;
  for (const auto& rep : reports) {
    print_report(rep, c, out);
    if (!rep.passed()) ++failed;
  }
  bool props_ok = true;
  if (opts.enabled("props")) {
    VerificationReport suites;
    suites.entry = "properties";
    suites.seed = c.seed;
    for (auto& [name, res] : run_property_suites(c.seed)) suites.checks[name] = res;
    props_ok = suites.passed();
    if (c.json) {
      out << report_json(suites).dump() << '\n';
    } else {
      out << "properties: " << (props_ok ? "PASS" : "FAIL") << '\n';
      for (const auto& [name, res] : suites.checks) {
        std::string pad(std::max<std::size_t>(1, 22 - name.size()), ' ');
        out << "  " << name << pad << status_name(res.status) << "  " << res.witness << '\n';
      }
    }
  }
  if (!c.json) {
    out << reports.size() << " instantiations of " << catalog().ids().size() << " entries, " << failed
        << " failed\n";
  }
  return failed == 0 && props_ok ? 0 : 1;
}

int cmd_prolong(const std::string& path, int n, const Config& c, std::ostream& out) {
  if (n < 0) throw UsageError("prolongation order must be >= 0");
  Realization r = load_realization(path, c);
  json fields = json::array();
  for (std::size_t i = 0; i < r.dim(); ++i) {
    ProlongedField p = prolong(r.basis[i], n);
    if (c.json) {
      json etas = json::array();
      for (const auto& e : p.etas) etas.push_back(to_string(e));
      fields.push_back({{"xi", to_string(p.base.xi)}, {"eta", to_string(p.base.eta)}, {"etas", etas}});
      continue;
    }
    out << "e" << i + 1 << "^(" << n << "):\n";
    out << "  xi = " << p.base.xi << '\n';
    out << "  eta = " << p.base.eta << '\n';
    for (std::size_t k = 0; k < p.etas.size(); ++k) out << "  eta^" << k + 1 << " = " << p.etas[k] << '\n';
  }
  if (c.json) out << json{{"order", n}, {"fields", fields}}.dump() << '\n';
  return 0;
}

int cmd_bracket(const std::string& path, int i, int j, const Config& c, std::ostream& out) {
  Realization r = load_realization(path, c);
  const int n = static_cast<int>(r.dim());
  if (i < 1 || j < 1 || i > n || j > n) throw UsageError("field index out of range 1.." + std::to_string(n));
  VectorField b = lie_bracket(r.basis[static_cast<std::size_t>(i - 1)], r.basis[static_cast<std::size_t>(j - 1)]);
  std::string span;
  try {
    StructureConstants sc = closure_check(r, with_params(zero_policy(c), r.params));
    std::vector<Expr> terms;
    for (int k = 0; k < n; ++k) {
      const Scalar& s = sc(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), static_cast<std::size_t>(k));
      if (!s.is_zero()) terms.push_back(Expr(s) * Expr(Symbol::param("e" + std::to_string(k + 1))));
    }
    span = to_string(make_sum(terms));
    if (!sc.params.empty()) {
      span += " (constants at";
      for (const auto& [name, v] : sc.params) span += " " + name + " = " + v.str();
      span += ")";
    }
  } catch (const NotClosedError& e) {
    span = std::string("not closed: ") + e.what();
  }
  if (c.json) {
    out << json{{"bracket", field_string(b)}, {"xi", to_string(b.xi)}, {"eta", to_string(b.eta)}, {"span", span}}.dump()
        << '\n';
  } else {
    out << "[e" << i << ",e" << j << "] = " << field_string(b) << '\n';
    out << "          = " << span << '\n';
  }
  return 0;
}

int cmd_liedet(const std::string& path, const Config& c, std::ostream& out) {
  Realization r = load_realization(path, c);
  ZeroPolicy pol = with_params(zero_policy(c), r.params);
  LieDeterminant info = lie_determinant_info(r, pol);
  json j = {{"nu", info.nu}, {"columns", info.columns}, {"det", to_string(info.value)}};
  std::string comparison;
  bool ok = true;
  if (!r.label.empty() && catalog().contains(r.label)) {
    auto insts = instantiations(r.label, c);
    CatalogEntry entry = instantiate_entry(r.label, insts.front(), c);
    const auto& cell = c.printed ? entry.printed_liedet : entry.liedet;
    Expr target = cell ? *cell : Expr(1);
    auto k = equal_up_to_constant(info.value, target, pol);
    ok = k.has_value() && !k->is_zero();
    std::string shown = cell ? to_string(*cell) : "const";
    if (ok) comparison = "table " + r.label + ": " + shown + ", det = " + k->str() + " * table";
    else comparison = "table " + r.label + ": " + shown + ", ratio not constant";
    j["table"] = shown;
    j["constant"] = ok ? k->str() : "";
    j["match"] = ok;
  }
  if (c.json) {
    out << j.dump() << '\n';
  } else {
    out << "nu = " << info.nu << ", columns";
    for (int col : info.columns) out << ' ' << col;
    out << "\ndet = " << info.value << '\n';
    if (!comparison.empty()) out << comparison << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_rank(const std::string& path, int n, const Config& c, std::ostream& out) {
  if (n < 0) throw UsageError("order must be >= 0");
  Realization r = load_realization(path, c);
  ZeroPolicy pol = with_params(zero_policy(c), r.params);
  std::vector<int> ranks = rank_sequence(r, n, pol);
  int v = nu(r, pol);
  json rows = json::array();
  for (int k = 0; k <= n; ++k) {
    int rk = ranks[static_cast<std::size_t>(k)];
    int d = k + 2 - rk;
    if (c.json) rows.push_back({{"n", k}, {"rank", rk}, {"d", d}});
    else out << "n = " << k << "  rank = " << rk << "  d = " << d << '\n';
  }
  if (c.json) out << json{{"nu", v}, {"orders", rows}}.dump() << '\n';
  else out << "nu = " << v << '\n';
  return 0;
}

int cmd_verify(const std::string& path, const std::string& text, bool iod, const Config& c, std::ostream& out) {
  Realization r = load_realization(path, c);
  Expr e = parse_expr(text, notation_context());
  ZeroPolicy pol = with_params(zero_policy(c), r.params);
  bool ok = iod ? verify_iod(r, e, pol) : verify_invariant(r, e, pol);
  if (c.json) out << json{{iod ? "iod" : "invariant", to_string(e)}, {"status", ok ? "PASS" : "FAIL"}}.dump() << '\n';
  else out << (ok ? "PASS" : "FAIL") << "  " << e << '\n';
  return ok ? 0 : 1;
}

int cmd_transform(const std::string& arg, const Config& c, std::ostream& out) {
  std::vector<Table2Entry> rows;
  std::optional<Catalog> local;
  bool is_label = false;
  for (const auto& t : catalog().table2()) is_label = is_label || t.row.n1 == arg;
  if (is_label) {
    rows.push_back(catalog().table2_row(arg));
  } else {
    local = Catalog::parse(read_file(arg));
    rows = local->table2();
    if (rows.empty()) throw UsageError(arg + " has no table2 block");
  }
  bool ok = true;
  for (const auto& t2 : rows) {
    const Catalog& cat = local && local->contains(t2.row.source) ? *local : catalog();
    if (!cat.contains(t2.row.source)) throw UsageError("unknown source entry '" + t2.row.source + "'");
    auto overrides = param_overrides(c);
    std::vector<Catalog::Instantiation> insts =
        overrides.empty() ? cat.default_instantiations(t2.row.source) : std::vector<Catalog::Instantiation>{{"", overrides}};
    for (const auto& inst : insts) {
      CatalogEntry entry = instantiate_entry(t2.row.source, inst, c, cat);
      Table2Result res = apply_table2(t2.row, entry.realization, entry.params, zero_policy(c));
      ok = ok && res.ok();
      if (c.json) {
        json params = json::object();
        for (const auto& [name, v] : entry.params) params[name] = v.str();
        json after = json::array();
        for (const auto& f : res.after.basis) after.push_back(field_string(f));
        out << json{{"n1", t2.row.n1},
                    {"source", t2.row.source},
                    {"target", t2.row.target},
                    {"params", params},
                    {"status", res.ok() ? "PASS" : "FAIL"},
                    {"roundtrip", res.roundtrip},
                    {"brackets_preserved", res.brackets_preserved},
                    {"after_closed", res.after_closed},
                    {"conjugation_law", res.conjugation_law},
                    {"failure", res.failure},
                    {"after", after}}
                   .dump()
            << '\n';
        continue;
      }
      out << "N1 = " << t2.row.n1 << " (entry " << entry_label(entry) << " -> " << t2.row.target
          << "): " << (res.ok() ? "PASS" : "FAIL") << '\n';
      out << "  roundtrip " << res.roundtrip << ", brackets " << res.brackets_preserved << ", closed "
          << res.after_closed << ", conjugation " << res.conjugation_law << '\n';
      if (!res.failure.empty()) out << "  " << res.failure << '\n';
      for (std::size_t k = 0; k < res.after.dim(); ++k) out << "  e~" << k + 1 << " = " << field_string(res.after.basis[k]) << '\n';
    }
  }
  return ok ? 0 : 1;
}

int cmd_flow(const std::string& id, const std::string& expr, const Config& c, std::ostream& out) {
  require_entry(id);
  bool ok = true;
  for (const auto& inst : instantiations(id, c)) {
    CatalogEntry entry = instantiate_entry(id, inst, c);
    const Realization& r = c.printed ? entry.printed_realization : entry.realization;
    ZeroPolicy pol = entry.policy(zero_policy(c));
    std::vector<Expr> targets = c.printed ? entry.printed_invariants : entry.invariants;
    if (!expr.empty()) targets = {parse_expr(expr, notation_context())};
    json results = json::array();
    if (!c.json) out << entry_label(entry) << ":\n";
    for (const auto& t : targets) {
      std::string status, detail;
      try {
        FlowResult f = numeric_flow_check(r, t, flow_options(c), pol);
        ok = ok && f.pass;
        status = f.pass ? "PASS" : "FAIL";
        std::ostringstream os;
        os << "max drift " << f.max_drift << " over " << f.trajectories << " trajectories";
        if (!f.pass) os << ", worst e" << f.worst_field + 1;
        detail = os.str();
      } catch (const FlowSingularError& e) {
        ok = false;
        status = "ERROR";
        detail = e.what();
      }
      if (c.json) results.push_back({{"invariant", to_string(t)}, {"status", status}, {"witness", detail}});
      else out << "  " << status << "  " << t << "  (" << detail << ")\n";
    }
    if (c.json) out << json{{"entry", entry_label(entry)}, {"seed", c.seed}, {"flow", results}}.dump() << '\n';
  }
  return ok ? 0 : 1;
}

void report_parse_error(const ParseError& e, std::ostream& err) {
  err << "parse error: " << e.what() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify differential invariants of planar Lie algebra realizations", "jetinv"};
  app.require_subcommand(1, 1);
  Config c;
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--trials", c.trials, "Zero-test sample points")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", c.tol, "Zero-test tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--param", c.params, "Parameter value name=value (repeatable; b=b keeps b symbolic)");
  app.add_option("--r", c.r, "Series order for r-dependent rows")->check(CLI::Range(0, kMaxSeriesR));
  app.add_flag("--json", c.json, "One JSON object per line");
  app.add_option("--only", c.only, "Check classes: closure, inv, iod, liedet, flow, props")->delimiter(',');
  app.add_flag("--printed", c.printed, "Use the printed table cells instead of the corrected ones");
  app.add_option("--jobs", c.jobs, "Worker threads for check-all")->capture_default_str()->check(CLI::Range(1u, 256u));
  app.add_option("--case", c.case_name, "Case of a case-split row");
  app.add_option("--flow-trials", c.flow_trials, "Flow check trajectories per field")->capture_default_str();
  app.add_option("--t-end", c.t_end, "Flow integration time")->capture_default_str();
  app.add_option("--step", c.h, "RK4 step")->capture_default_str();
  app.add_option("--flow-tol", c.flow_tol, "Flow drift tolerance")->capture_default_str();

  std::string id, path, text, expr;
  int n = 0, i = 0, j = 0;
  auto* check = app.add_subcommand("check", "Verify one catalog entry")->fallthrough();
  check->add_option("entry", id, "Catalog label, e.g. 17 or 21*")->required();
  auto* check_all = app.add_subcommand("check-all", "Verify every catalog entry")->fallthrough();
  auto* prolong_cmd = app.add_subcommand("prolong", "Prolongation coefficients of a realization file")->fallthrough();
  prolong_cmd->add_option("file", path)->required();
  prolong_cmd->add_option("n", n)->required();
  auto* bracket_cmd = app.add_subcommand("bracket", "Lie bracket [e_i, e_j]")->fallthrough();
  bracket_cmd->add_option("file", path)->required();
  bracket_cmd->add_option("i", i)->required();
  bracket_cmd->add_option("j", j)->required();
  auto* liedet_cmd = app.add_subcommand("liedet", "Lie determinant, compared with the table when labelled")->fallthrough();
  liedet_cmd->add_option("file", path)->required();
  auto* rank_cmd = app.add_subcommand("rank", "Ranks of the coefficient matrices up to order n")->fallthrough();
  rank_cmd->add_option("file", path)->required();
  rank_cmd->add_option("n", n)->required();
  auto* inv_cmd = app.add_subcommand("verify-inv", "Check that an expression is an invariant")->fallthrough();
  inv_cmd->add_option("file", path)->required();
  inv_cmd->add_option("expr", text)->required();
  auto* iod_cmd = app.add_subcommand("verify-iod", "Check an invariant differentiation multiplier")->fallthrough();
  iod_cmd->add_option("file", path)->required();
  iod_cmd->add_option("expr", text)->required();
  auto* transform_cmd = app.add_subcommand("transform", "Apply a real-to-complex table2 row or a file of table2 blocks")->fallthrough();
  transform_cmd->add_option("row", path, "table2 N1 label or file")->required();
  auto* flow_cmd = app.add_subcommand("flow-check", "Numeric flow check of an entry's invariants")->fallthrough();
  flow_cmd->add_option("entry", id)->required();
  flow_cmd->add_option("--invariant", expr, "Expression to test instead of the entry's invariants");

  std::vector<std::string> args;
  for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(id, c, out);
    if (check_all->parsed()) return cmd_check_all(c, out);
    if (prolong_cmd->parsed()) return cmd_prolong(path, n, c, out);
    if (bracket_cmd->parsed()) return cmd_bracket(path, i, j, c, out);
    if (liedet_cmd->parsed()) return cmd_liedet(path, c, out);
    if (rank_cmd->parsed()) return cmd_rank(path, n, c, out);
    if (inv_cmd->parsed()) return cmd_verify(path, text, false, c, out);
    if (iod_cmd->parsed()) return cmd_verify(path, text, true, c, out);
    if (transform_cmd->parsed()) return cmd_transform(path, c, out);
    if (flow_cmd->parsed()) return cmd_flow(id, expr, c, out);
  } catch (const ParseError& e) {
    report_parse_error(e, err);
    return 3;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConstraintError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IndependenceError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace jetinv::cli
