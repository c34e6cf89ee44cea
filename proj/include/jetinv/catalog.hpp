#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetinv/lie.hpp"
#include "jetinv/parse.hpp"
#include "jetinv/transform.hpp"

namespace jetinv {

// A line of catalog text with its position, parsed on instantiation.
struct CatalogLine {
  std::string text;
  TextOrigin origin;
};

// Invariant table cells. An empty liedet means "const".
struct CatalogCells {
  std::vector<CatalogLine> invariants;
  std::optional<CatalogLine> iod;
  std::optional<CatalogLine> liedet;
  bool liedet_const = false;
};

struct CatalogCase {
  std::string name;   // "b=1", "c!=r+1"
  std::string param;  // parameter the predicate tests
  bool equal = true;  // param = value, otherwise param != value
  CatalogLine value;
  std::map<std::string, std::vector<CatalogLine>> samples;
  CatalogCells cells;
  CatalogCells printed;
  std::vector<std::string> errata;
};

// Raw catalog record as read from the embedded data.
struct CatalogRecord {
  std::string id;
  std::string n1, n0, n3;  // opaque labels of the realization table
  std::string related;     // starred partner or alternative form
  std::vector<std::string> notes;

  int series_min = -1;  // minimum r for series rows, -1 otherwise
  int xi_slots = 0;     // fixed number of xi slots
  bool xi_series = false;
  bool eta_series = false;

  std::vector<CatalogLine> params;  // "name constraint"
  std::map<std::string, std::vector<CatalogLine>> samples;
  std::vector<CatalogLine> fields;                 // effective realization lines
  std::map<std::size_t, CatalogLine> printed_fields;  // index (0-based) -> printed line
  CatalogCells cells;
  CatalogCells printed;
  std::vector<std::string> errata;
  std::vector<CatalogCase> cases;

  bool is_series() const { return series_min >= 0; }
  int slot_count(int r) const { return xi_series || eta_series ? r : xi_slots; }
};

// Fully concrete catalog entry.
struct CatalogEntry {
  std::string id;
  std::string case_name;
  std::string n1, n0, n3;
  int r = -1;
  ParamValues params;               // numeric values used
  std::vector<ParamDecl> symbolic;  // parameters kept symbolic
  std::map<std::string, Expr> functions;

  Realization realization;
  Realization printed_realization;
  std::vector<Expr> invariants;
  Expr iod;
  std::optional<Expr> liedet;  // nullopt: const
  std::vector<Expr> printed_invariants;
  Expr printed_iod;
  std::optional<Expr> printed_liedet;
  std::vector<std::string> errata;

  // Realization and cells differ between the printed and effective forms.
  bool has_errata() const { return !errata.empty(); }
  // Zero policy carrying the constraints of symbolic parameters.
  ZeroPolicy policy(const ZeroPolicy& base) const;
};

struct Table2Entry {
  Table2Row row;
  std::vector<std::string> notes;
};

class Catalog {
 public:
  // Parses catalog text. Throws ParseError with spans into the text.
  static Catalog parse(std::string_view text);
  // The embedded catalog.
  static const Catalog& builtin();

  const std::vector<std::string>& ids() const { return ids_; }
  bool contains(const std::string& id) const { return records_.count(id) != 0; }
  const CatalogRecord& record(const std::string& id) const;
  const std::vector<Table2Entry>& table2() const { return table2_; }
  const Table2Entry& table2_row(const std::string& n1) const;

  // Instantiates an entry. A parameter bound to its own symbol stays
  // symbolic. r is used for series rows (minimum if omitted, at most 6).
  // Throws ConstraintError or IndependenceError.
  CatalogEntry get(const std::string& id, const std::map<std::string, Expr>& params = {},
                   const std::map<std::string, Expr>& functions = {}, std::optional<int> r = std::nullopt,
                   const std::string& case_name = {}, const ZeroPolicy& policy = {}) const;

  // Shipped parameter samples per case, at most three per entry.
  struct Instantiation {
    std::string case_name;
    std::map<std::string, Expr> params;
  };
  std::vector<Instantiation> default_instantiations(const std::string& id, std::optional<int> r = std::nullopt) const;
  // Default slot functions for the entry at the given r.
  std::map<std::string, Expr> default_functions(const std::string& id, std::optional<int> r = std::nullopt) const;

 private:
  std::vector<std::string> ids_;
  std::map<std::string, CatalogRecord> records_;
  std::vector<Table2Entry> table2_;
};

// Compares catalog ids: numeric part first, then suffix ("17" < "17*" < "17t" < "18").
bool id_less(const std::string& a, const std::string& b);

// Defaults for slot functions: xi_k = x^(k+1), eta_k = exp(l_k x) with
// l = (1, -1, 2, -2, 3, -3).
Expr default_xi(int k);
Expr default_eta(int k);
constexpr int kMaxSeriesR = 6;

// Parser names for the table notation: S(n), Q(n), P(i,j,f,g), W(...), Dx,
// d(f,k), jet(n), fact(n) and the constants B0, B1, Qt3, R4, U5, Ut5, V7.
ParseContext notation_context();

}  // namespace jetinv
