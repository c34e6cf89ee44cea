#include "jetinv/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "jetinv/errors.hpp"
#include "jetinv/jet.hpp"
#include "jetinv/notation.hpp"

namespace jetinv {

namespace detail {
std::string_view catalog_text();
}

namespace {

[[noreturn]] void fail_at(const std::string& msg, const TextOrigin& o, std::size_t len, std::set<std::string> expected = {}) {
  throw ParseError(msg, {o.offset, o.offset + len, o.line, o.column}, std::move(expected));
}

TextOrigin shifted(TextOrigin o, std::size_t by) {
  o.offset += by;
  o.column += static_cast<int>(by);
  return o;
}

std::string_view word(std::string_view s, std::size_t* end) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = b;
  while (e < s.size() && !std::isspace(static_cast<unsigned char>(s[e]))) ++e;
  *end = e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Splits at commas outside parentheses.
std::vector<std::string> split_top(std::string_view s) {
  std::vector<std::string> out(1);
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.emplace_back();
      continue;
    }
    out.back() += c;
  }
  for (auto& p : out) p = std::string(strip_line(p));
  return out;
}

// "lhs = rhs" with lhs matching the keyword; returns rhs.
std::optional<CatalogLine> assignment(std::string_view line, std::string_view key, const TextOrigin& o) {
  if (!line.starts_with(key)) return std::nullopt;
  std::string_view rest = line.substr(key.size());
  std::size_t lead = 0;
  while (lead < rest.size() && (rest[lead] == ' ' || rest[lead] == '\t')) ++lead;
  if (lead >= rest.size() || rest[lead] != '=') return std::nullopt;
  std::size_t at = key.size() + lead + 1;
  std::size_t skip = 0;
  std::string_view body = strip_line(line.substr(at), &skip);
  return CatalogLine{std::string(body), shifted(o, at + skip)};
}

bool cell_line(std::string_view line, const TextOrigin& o, CatalogCells& cells) {
  if (auto v = assignment(line, "invariant", o)) {
    cells.invariants.push_back(*v);
    return true;
  }
  if (auto v = assignment(line, "iod", o)) {
    cells.iod = *v;
    return true;
  }
  if (auto v = assignment(line, "liedet", o)) {
    if (v->text == "const") {
      cells.liedet_const = true;
      cells.liedet.reset();
    } else {
      cells.liedet = *v;
    }
    return true;
  }
  return false;
}

long integer_arg(const Expr& e, const char* what) {
  if (!e.is_const() || !e.value().is_integer()) throw ConstraintError(std::string(what) + " needs an integer argument");
  return e.value().re().get_num().get_si();
}

int id_number(const std::string& id, std::string* suffix) {
  std::size_t k = 0;
  while (k < id.size() && std::isdigit(static_cast<unsigned char>(id[k]))) ++k;
  *suffix = id.substr(k);
  return k == 0 ? 0 : std::stoi(id.substr(0, k));
}

const Expr& cached(int which) {
  static const Expr values[] = {notation::B0(), notation::B1(), notation::Qt3(), notation::R4(),
                                notation::U5(), notation::Ut5(false), notation::Ut5(true), notation::V7()};
  return values[which];
}

}  // namespace

bool id_less(const std::string& a, const std::string& b) {
  std::string sa, sb;
  int na = id_number(a, &sa), nb = id_number(b, &sb);
  if (na != nb) return na < nb;
  return sa < sb;
}

Expr default_xi(int k) { return pow(Expr(Symbol::x()), static_cast<long>(k + 1)); }

Expr default_eta(int k) {
  static const long rates[] = {1, -1, 2, -2, 3, -3};
  if (k < 1 || k > 6) throw ConstraintError("no default eta_" + std::to_string(k));
  return exp(Expr(rates[k - 1]) * Expr(Symbol::x()));
}

ZeroPolicy CatalogEntry::policy(const ZeroPolicy& base) const {
  return with_params(base, symbolic);
}

Catalog Catalog::parse(std::string_view text) {
  Catalog cat;
  CatalogRecord* rec = nullptr;
  CatalogCase* cs = nullptr;
  Table2Entry* t2 = nullptr;
  std::size_t offset = 0;
  int line_no = 1;
  while (offset <= text.size()) {
    std::size_t nl = text.find('\n', offset);
    std::string_view raw = text.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
    std::size_t lead = 0;
    std::string_view line = strip_line(raw, &lead);
    TextOrigin o{offset + lead, line_no, static_cast<int>(lead) + 1};
    std::size_t head_end = 0;
    std::string_view head = word(line, &head_end);
    std::string_view rest = head_end < line.size() ? strip_line(line.substr(head_end)) : std::string_view{};

    if (line.empty()) {
    } else if (head == "end") {
      if (!rec && !t2) fail_at("'end' outside a block", o, 3);
      rec = nullptr;
      cs = nullptr;
      t2 = nullptr;
    } else if (!rec && !t2) {
      if (head == "entry") {
        std::string id(rest);
        if (id.empty()) fail_at("entry needs an id", o, line.size(), {"id"});
        if (cat.records_.count(id)) fail_at("entry " + id + " defined twice", o, line.size());
        cat.ids_.push_back(id);
        rec = &cat.records_[id];
        rec->id = id;
      } else if (head == "table2") {
        cat.table2_.emplace_back();
        t2 = &cat.table2_.back();
        t2->row.n1 = std::string(rest);
      } else {
        fail_at("expected 'entry' or 'table2'", o, head.size(), {"entry", "table2"});
      }
    } else if (t2) {
      Table2Row& row = t2->row;
      if (head == "source") {
        row.source = std::string(rest);
      } else if (head == "target") {
        row.target = std::string(rest);
      } else if (head == "note") {
        t2->notes.emplace_back(rest);
      } else if (head == "domain") {
        if (rest != "positive") fail_at("expected 'domain positive'", o, line.size(), {"positive"});
        row.positive_domain = true;
      } else if (auto v = assignment(line, "map x", o)) {
        row.map_x = v->text;
      } else if (auto v2 = assignment(line, "map y", o)) {
        row.map_y = v2->text;
      } else if (auto v3 = assignment(line, "inverse x", o)) {
        row.inverse_x = v3->text;
      } else if (auto v4 = assignment(line, "inverse y", o)) {
        row.inverse_y = v4->text;
      } else if (auto v5 = assignment(line, "row", o)) {
        row.matrix.push_back(split_top(v5->text));
      } else {
        fail_at("unknown table2 directive", o, head.size(), {"source", "target", "map", "inverse", "row", "domain", "end"});
      }
    } else {
      CatalogCells& cells = cs ? cs->cells : rec->cells;
      if (head == "labels") {
        std::string joined(rest);
        std::vector<std::string> cols;
        std::size_t from = 0;
        while (true) {
          auto bar = joined.find('|', from);
          cols.emplace_back(strip_line(joined.substr(from, bar == std::string::npos ? std::string::npos : bar - from)));
          if (bar == std::string::npos) break;
          from = bar + 1;
        }
        if (cols.size() != 3) fail_at("labels needs N1 | N0 | N3", o, line.size());
        rec->n1 = cols[0];
        rec->n0 = cols[1];
        rec->n3 = cols[2];
      } else if (head == "related") {
        rec->related = std::string(rest);
      } else if (head == "note") {
        rec->notes.emplace_back(rest);
      } else if (head == "series") {
        auto w = split_words(rest);
        if (w.size() != 3 || w[0] != "r" || w[1] != ">=") fail_at("expected 'series r >= <n>'", o, line.size());
        rec->series_min = std::stoi(w[2]);
      } else if (head == "slots") {
        auto w = split_words(rest);
        if (w.size() != 2 || (w[0] != "xi" && w[0] != "eta")) fail_at("expected 'slots xi|eta <n>|r'", o, line.size());
        if (w[0] == "eta") {
          rec->eta_series = true;
        } else if (w[1] == "r") {
          rec->xi_series = true;
        } else {
          rec->xi_slots = std::stoi(w[1]);
        }
      } else if (head == "param") {
        rec->params.push_back({std::string(rest), shifted(o, head_end)});
      } else if (head == "sample") {
        std::size_t name_end = 0;
        std::string name(word(rest, &name_end));
        auto& list = cs ? cs->samples[name] : rec->samples[name];
        for (auto& v : split_words(rest.substr(name_end))) list.push_back({v, o});
        if (list.empty()) fail_at("sample needs values", o, line.size());
      } else if (head == "erratum") {
        (cs ? cs->errata : rec->errata).emplace_back(rest);
      } else if (head == "case") {
        auto ne = rest.find("!=");
        auto eq = rest.find('=');
        if (eq == std::string_view::npos) fail_at("expected 'case <param> = <value>'", o, line.size(), {"=", "!="});
        rec->cases.emplace_back();
        cs = &rec->cases.back();
        cs->equal = ne == std::string_view::npos;
        std::size_t op_at = cs->equal ? eq : ne;
        std::size_t op_len = cs->equal ? 1 : 2;
        cs->param = std::string(strip_line(rest.substr(0, op_at)));
        std::string value(strip_line(rest.substr(op_at + op_len)));
        cs->value = {value, shifted(o, line.find(value, head_end))};
        cs->name = cs->param + (cs->equal ? "=" : "!=") + value;
      } else if (head == "printed") {
        std::string_view body = rest;
        TextOrigin bo = shifted(o, line.size() - rest.size());
        CatalogCells& pc = cs ? cs->printed : rec->printed;
        if (body.size() >= 2 && body[0] == 'e' && std::isdigit(static_cast<unsigned char>(body[1]))) {
          auto eq = body.find('=');
          if (eq == std::string_view::npos) fail_at("expected '='", bo, body.size(), {"="});
          std::size_t k = std::stoul(std::string(body.substr(1, eq - 1)));
          if (k == 0) fail_at("fields are numbered from 1", bo, eq);
          rec->printed_fields[k - 1] = {std::string(body), bo};
        } else if (!cell_line(body, bo, pc)) {
          fail_at("unknown printed cell", bo, body.size(), {"e<k>", "invariant", "iod", "liedet"});
        }
      } else if (cell_line(line, o, cells)) {
      } else if (line.size() >= 2 && line[0] == 'e' && !cs) {
        rec->fields.push_back({std::string(line), o});
      } else {
        fail_at("unknown entry directive", o, head.size(),
                {"labels", "param", "sample", "e<k>", "invariant", "iod", "liedet", "printed", "case", "erratum", "end"});
      }
    }
    if (nl == std::string_view::npos) break;
    offset = nl + 1;
    ++line_no;
  }
  if (rec || t2) throw ParseError("unterminated block at end of catalog", {text.size(), text.size(), line_no, 1}, {"end"});
  std::sort(cat.ids_.begin(), cat.ids_.end(), id_less);
  return cat;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = parse(detail::catalog_text());
  return cat;
}

const CatalogRecord& Catalog::record(const std::string& id) const {
  auto it = records_.find(id);
  if (it == records_.end()) throw ConstraintError("no catalog entry " + id);
  return it->second;
}

const Table2Entry& Catalog::table2_row(const std::string& n1) const {
  for (const auto& t : table2_) {
    if (t.row.n1 == n1) return t;
  }
  throw ConstraintError("no table2 row " + n1);
}

namespace {

struct Slots {
  std::vector<Expr> xi, eta;
};

ParseContext base_context(int r, const Slots& slots, const ZeroPolicy& policy) {
  ParseContext ctx;
  if (r >= 0) ctx.constants["r"] = Expr(static_cast<long>(r));
  const char* names[] = {"B0", "B1", "Qt3", "R4", "U5", "Ut5", "Ut5p", "V7"};
  for (int k = 0; k < 8; ++k) ctx.constants[names[k]] = cached(k);
  ctx.functions["S"] = [](const std::vector<Expr>& a) {
    if (a.size() != 1) throw ConstraintError("S takes one argument");
    return notation::S(static_cast<int>(integer_arg(a[0], "S")));
  };
  ctx.functions["Q"] = [](const std::vector<Expr>& a) {
    if (a.size() != 1) throw ConstraintError("Q takes one argument");
    return notation::Q(static_cast<int>(integer_arg(a[0], "Q")));
  };
  ctx.functions["P"] = [](const std::vector<Expr>& a) {
    if (a.size() != 4) throw ConstraintError("P takes four arguments");
    return notation::P(static_cast<int>(integer_arg(a[0], "P")), static_cast<int>(integer_arg(a[1], "P")), a[2], a[3]);
  };
  ctx.functions["W"] = [policy](const std::vector<Expr>& a) { return notation::W(a, policy); };
  ctx.functions["WXI"] = [policy, slots](const std::vector<Expr>& a) {
    std::vector<Expr> fs = a;
    for (const auto& f : slots.xi) fs.push_back(notation::derivative(f, 2));
    return notation::W(fs, policy);
  };
  ctx.functions["WETA"] = [policy, slots](const std::vector<Expr>& a) {
    std::vector<Expr> fs = a;
    fs.insert(fs.end(), slots.eta.begin(), slots.eta.end());
    return notation::W(fs, policy);
  };
  ctx.functions["K"] = [policy, slots](const std::vector<Expr>& a) {
    if (!a.empty()) throw ConstraintError("K takes no argument");
    return notation::K(slots.eta, policy);
  };
  ctx.functions["Dx"] = [](const std::vector<Expr>& a) {
    if (a.size() != 1) throw ConstraintError("Dx takes one argument");
    return total_derivative(a[0]);
  };
  ctx.functions["d"] = [](const std::vector<Expr>& a) {
    if (a.size() != 2) throw ConstraintError("d takes two arguments");
    return notation::derivative(a[0], static_cast<int>(integer_arg(a[1], "d")));
  };
  ctx.functions["jet"] = [](const std::vector<Expr>& a) {
    if (a.size() != 1) throw ConstraintError("jet takes one argument");
    long k = integer_arg(a[0], "jet");
    if (k < 0) throw ConstraintError("negative jet order");
    return k == 0 ? Expr(Symbol::y()) : Expr(Symbol::jet(static_cast<int>(k)));
  };
  ctx.functions["fact"] = [](const std::vector<Expr>& a) {
    if (a.size() != 1) throw ConstraintError("fact takes one argument");
    long n = integer_arg(a[0], "fact");
    Scalar f(1);
    for (long k = 2; k <= n; ++k) f = f * Scalar(k);
    return Expr(f);
  };
  auto slot = [](const std::vector<Expr>& fs, const char* name) {
    return [fs, name](const std::vector<Expr>& a) {
      if (a.size() != 1) throw ConstraintError(std::string(name) + " takes one argument");
      long k = integer_arg(a[0], name);
      if (k < 1 || k > static_cast<long>(fs.size())) {
        throw ConstraintError(std::string(name) + "(" + std::to_string(k) + ") is not a slot of this entry");
      }
      return fs[static_cast<std::size_t>(k - 1)];
    };
  };
  ctx.functions["xi"] = slot(slots.xi, "xi");
  ctx.functions["eta"] = slot(slots.eta, "eta");
  return ctx;
}

Scalar scalar_value(const CatalogLine& line, const ParseContext& ctx, const std::string& what) {
  Expr e = parse_expr(line.text, ctx, line.origin);
  if (!e.is_const()) throw ConstraintError(what + " '" + line.text + "' is not a number");
  return e.value();
}

Realization build_realization(const std::vector<CatalogLine>& fields, const ParseContext& ctx) {
  Realization out;
  for (const auto& f : fields) {
    if (!parse_realization_line(f.text, f.origin, out, ctx)) {
      fail_at("not a field line", f.origin, f.text.size(), {"e<k> ="});
    }
  }
  return out;
}

}  // namespace

ParseContext notation_context() { return base_context(-1, {}, {}); }

std::map<std::string, Expr> Catalog::default_functions(const std::string& id, std::optional<int> r) const {
  const CatalogRecord& rec = record(id);
  int rr = rec.is_series() ? r.value_or(rec.series_min) : -1;
  std::map<std::string, Expr> out;
  const int n = rec.slot_count(rr);
  for (int k = 1; k <= n; ++k) {
    if (rec.eta_series) {
      out["eta" + std::to_string(k)] = default_eta(k);
    } else {
      out["xi" + std::to_string(k)] = default_xi(k);
    }
  }
  return out;
}

CatalogEntry Catalog::get(const std::string& id, const std::map<std::string, Expr>& params,
                          const std::map<std::string, Expr>& functions, std::optional<int> r_opt,
                          const std::string& case_name, const ZeroPolicy& policy) const {
  const CatalogRecord& rec = record(id);
  CatalogEntry out;
  out.id = rec.id;
  out.n1 = rec.n1;
  out.n0 = rec.n0;
  out.n3 = rec.n3;

  if (rec.is_series()) {
    out.r = r_opt.value_or(rec.series_min);
    if (out.r < rec.series_min || out.r > kMaxSeriesR) {
      throw ConstraintError("entry " + id + " needs " + std::to_string(rec.series_min) + " <= r <= " +
                            std::to_string(kMaxSeriesR));
    }
  } else if (r_opt) {
    throw ConstraintError("entry " + id + " is not a series");
  }

  // Slot functions: defaults overridden by the caller.
  Slots slots;
  const int n_slots = rec.slot_count(out.r);
  for (const auto& [name, f] : functions) {
    bool known = false;
    for (int k = 1; k <= n_slots; ++k) {
      if (name == (rec.eta_series ? "eta" : "xi") + std::to_string(k)) known = true;
    }
    if (!known) throw ConstraintError("entry " + id + " has no function slot " + name);
    for (const auto& s : free_symbols(f)) {
      if (s != Symbol::x() && s.kind() != Symbol::Kind::Param) {
        throw ConstraintError("slot " + name + " must be a function of x");
      }
    }
  }
  auto defaults = default_functions(id, out.r == -1 ? std::nullopt : std::optional<int>(out.r));
  for (auto& [name, f] : defaults) {
    auto it = functions.find(name);
    out.functions[name] = it == functions.end() ? f : it->second;
  }
  for (int k = 1; k <= n_slots; ++k) {
    if (rec.eta_series) {
      slots.eta.push_back(out.functions["eta" + std::to_string(k)]);
    } else {
      slots.xi.push_back(out.functions["xi" + std::to_string(k)]);
    }
  }
  if (!slots.xi.empty()) {
    std::vector<Expr> fs{Expr(1), Expr(Symbol::x())};
    fs.insert(fs.end(), slots.xi.begin(), slots.xi.end());
    notation::W(fs, policy);  // 1, x, xi_1, ..., xi_r independent
  }
  if (!slots.eta.empty()) notation::ode_coefficients(slots.eta, policy);

  ParseContext ctx = base_context(out.r, slots, policy);

  // Parameters.
  std::vector<ParamDecl> decls;
  for (const auto& p : rec.params) {
    std::size_t name_end = 0;
    std::string name(word(p.text, &name_end));
    std::string constraint(strip_line(std::string_view(p.text).substr(name_end)));
    decls.push_back({name, Constraint::parse(constraint.empty() ? "free" : constraint)});
  }
  for (const auto& [name, value] : params) {
    bool known = std::any_of(decls.begin(), decls.end(), [&](const ParamDecl& d) { return d.name == name; });
    if (!known) throw ConstraintError("entry " + id + " has no parameter " + name);
  }

  // Case selection.
  const CatalogCase* chosen = nullptr;
  if (!rec.cases.empty()) {
    for (const auto& c : rec.cases) {
      if (!case_name.empty() && c.name != case_name) continue;
      Scalar value = scalar_value(c.value, ctx, "case value");
      auto it = params.find(c.param);
      bool numeric = it != params.end() && it->second.is_const();
      if (numeric) {
        bool holds = (it->second.value() == value) == c.equal;
        if (!holds) {
          if (!case_name.empty()) throw ConstraintError("case " + c.name + " excludes " + c.param + " = " + it->second.value().str());
          continue;
        }
      } else if (case_name.empty() && !c.equal) {
        // A symbolic parameter lands in the generic case only on request.
        continue;
      }
      chosen = &c;
      break;
    }
    if (!chosen) {
      if (!case_name.empty()) throw ConstraintError("entry " + id + " has no case " + case_name);
      throw ConstraintError("entry " + id + " needs a numeric value of " + rec.cases.front().param + " or a case");
    }
    out.case_name = chosen->name;
  }

  ParamValues env;
  for (auto& d : decls) {
    auto it = params.find(d.name);
    Expr v;
    if (chosen && chosen->param == d.name && chosen->equal) {
      Scalar forced = scalar_value(chosen->value, ctx, "case value");
      if (it != params.end() && !(it->second == Expr(forced))) {
        throw ConstraintError("case " + chosen->name + " fixes " + d.name);
      }
      v = Expr(forced);
    } else if (it != params.end()) {
      v = it->second;
    } else {
      v = Expr(Symbol::param(d.name));
    }
    if (v.is_const()) {
      if (!d.constraint.satisfied(v.value(), env)) {
        throw ConstraintError("entry " + id + ": " + d.name + " = " + v.value().str() + " violates " + d.constraint.str());
      }
      env[d.name] = v.value();
      ctx.constants[d.name] = v;
    } else if (v == Expr(Symbol::param(d.name))) {
      ParamDecl kept = d;
      if (chosen && chosen->param == d.name && !chosen->equal) {
        Scalar excluded = scalar_value(chosen->value, ctx, "case value");
        kept.constraint = Constraint::parse(d.constraint.str() == "free" ? "ne " + excluded.str()
                                                                         : d.constraint.str() + " ne " + excluded.str());
      }
      out.symbolic.push_back(kept);
    } else {
      throw ConstraintError("parameter " + d.name + " must be a number or left symbolic");
    }
  }
  out.params = env;

  out.realization = build_realization(rec.fields, ctx);
  out.realization.params = out.symbolic;
  out.realization.label = id + (out.case_name.empty() ? "" : " (" + out.case_name + ")");
  out.printed_realization = out.realization;
  for (const auto& [k, line] : rec.printed_fields) {
    if (k >= out.realization.dim()) fail_at("printed field beyond the basis", line.origin, line.text.size());
    auto eq = line.text.find('=');
    out.printed_realization.basis[k] = parse_vector_field(std::string_view(line.text).substr(eq + 1), ctx, shifted(line.origin, eq + 1));
  }

  const CatalogCells& eff = chosen ? chosen->cells : rec.cells;
  const CatalogCells& pr = chosen ? chosen->printed : rec.printed;
  auto cell = [&](const CatalogLine& l) { return parse_expr(l.text, ctx, l.origin); };
  for (const auto& l : eff.invariants) out.invariants.push_back(cell(l));
  if (eff.iod) {
    out.iod = cell(*eff.iod);
  } else {
    throw ParseError("entry " + id + " has no iod cell", {0, 0, 1, 1});
  }
  if (eff.liedet) out.liedet = cell(*eff.liedet);
  if (out.invariants.empty()) throw ParseError("entry " + id + " has no invariant", {0, 0, 1, 1});

  out.printed_invariants = out.invariants;
  if (!pr.invariants.empty()) {
    out.printed_invariants.clear();
    for (const auto& l : pr.invariants) out.printed_invariants.push_back(cell(l));
  }
  out.printed_iod = pr.iod ? cell(*pr.iod) : out.iod;
  out.printed_liedet = out.liedet;
  if (pr.liedet) out.printed_liedet = cell(*pr.liedet);
  if (pr.liedet_const) out.printed_liedet.reset();

  out.errata = rec.errata;
  if (chosen) out.errata.insert(out.errata.end(), chosen->errata.begin(), chosen->errata.end());
  return out;
}

std::vector<Catalog::Instantiation> Catalog::default_instantiations(const std::string& id, std::optional<int> r) const {
  const CatalogRecord& rec = record(id);
  int rr = rec.is_series() ? r.value_or(rec.series_min) : -1;
  ParseContext ctx;
  if (rr >= 0) ctx.constants["r"] = Expr(static_cast<long>(rr));

  std::vector<Instantiation> out;
  auto expand = [&](const std::string& case_name, std::map<std::string, std::vector<CatalogLine>> samples) {
    std::size_t n = 1;
    for (const auto& [name, list] : samples) n = std::max(n, list.size());
    n = std::min<std::size_t>(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
      Instantiation inst{case_name, {}};
      for (const auto& [name, list] : samples) {
        const CatalogLine& l = list[std::min(i, list.size() - 1)];
        inst.params[name] = parse_expr(l.text, ctx, l.origin);
      }
      out.push_back(std::move(inst));
    }
  };
  if (rec.cases.empty()) {
    expand("", rec.samples);
  } else {
    for (const auto& c : rec.cases) {
      auto samples = rec.samples;
      for (const auto& [name, list] : c.samples) samples[name] = list;
      if (c.equal) samples[c.param] = {c.value};
      expand(c.name, samples);
    }
  }
  return out;
}

}  // namespace jetinv
