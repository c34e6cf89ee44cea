#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "jetinv/errors.hpp"
#include "jetinv/expr.hpp"
#include "jetinv/lie.hpp"

namespace jetinv {

using MacroFn = std::function<Expr(const std::vector<Expr>&)>;

// Names resolved by the parser before falling back to parameters.
struct ParseContext {
  std::map<std::string, Expr> constants;
  std::map<std::string, MacroFn> functions;
  // Accept D[x] and D[y] (vector-field position).
  bool allow_derivations = false;
};

// Where a fragment sits inside a larger text, for error spans.
struct TextOrigin {
  std::size_t offset = 0;
  int line = 1;
  int column = 1;
};

Expr parse_expr(std::string_view text, const ParseContext& ctx = {}, TextOrigin origin = {});

// The placeholders D[x], D[y] inside parsed vector-field text.
Symbol dx_marker();
Symbol dy_marker();

// "xi*D[x] + eta*D[y]"; ArityError if a coefficient leaves the plane.
VectorField parse_vector_field(std::string_view text, const ParseContext& ctx = {}, TextOrigin origin = {});

// Line format:
//   # comment
//   param <name> <constraint>
//   label <text>
//   e<k> = <field>                 (k = 1, 2, ... in order)
//   e(k=<lo>..<hi>) = <field in k> (series, one field per k)
//   e = <field>                    (next element, no index check)
Realization parse_realization(std::string_view text, const ParseContext& ctx = {});

// Handles one realization line (comment already stripped). Returns false if
// the line is not a realization directive.
bool parse_realization_line(std::string_view line, TextOrigin origin, Realization& r, const ParseContext& ctx);

// Text with the comment removed and whitespace trimmed; *lead receives the
// number of leading characters removed.
std::string_view strip_line(std::string_view line, std::size_t* lead = nullptr);

}  // namespace jetinv
