#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "jetinv/scalar.hpp"
#include "jetinv/symbol.hpp"

namespace jetinv {

// Immutable symbolic expression. Values built through the operators and
// make_* functions are canonical; raw_* builders skip canonicalization and
// exist for parsers and tests that need unsimplified trees.
class Expr {
 public:
  // Declaration order is the rank used by the canonical order.
  enum class Kind : std::uint8_t { Const, Sym, Pow, Prod, Sum, Fun };
  enum class Fn : std::uint8_t { Exp, Ln, Sin, Cos, Arctan };

  Expr();
  Expr(long n);             // NOLINT(google-explicit-constructor)
  Expr(int n) : Expr(static_cast<long>(n)) {}  // NOLINT
  Expr(const Scalar& c);    // NOLINT
  Expr(const Symbol& s);    // NOLINT

  static Expr raw_sum(std::vector<Expr> terms);
  static Expr raw_prod(std::vector<Expr> factors);
  static Expr raw_pow(Expr base, mpq_class exponent);
  static Expr raw_fun(Fn fn, Expr arg);

  Kind kind() const;
  bool is_const() const { return kind() == Kind::Const; }
  bool is_sym() const { return kind() == Kind::Sym; }
  // Structural tests on the node itself (no simplification).
  bool is_zero() const;
  bool is_one() const;

  const Scalar& value() const;
  const Symbol& symbol() const;
  // Terms of a Sum, factors of a Prod, {base} of a Pow, {arg} of a Fun.
  const std::vector<Expr>& operands() const;
  const Expr& base() const;
  const mpq_class& exponent() const;
  Fn fn() const;
  const Expr& arg() const;

  std::size_t hash() const;
  // Over-approximation of the symbols occurring in the tree, as a bit set.
  std::uint64_t symbol_mask() const;
  bool may_depend_on(const Symbol& s) const;
  const void* node_id() const { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);

  // True for nodes produced by the canonical constructors.
  bool is_canonical() const;

  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<const Node> node_;
};

std::uint64_t symbol_bit(const Symbol& s);

// Canonical total order: variant rank, then children lexicographically,
// constants by value.
std::strong_ordering compare(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

using Bindings = std::map<Symbol, Expr>;

Expr make_sum(std::vector<Expr> terms);
Expr make_prod(std::vector<Expr> factors);
Expr make_pow(const Expr& base, const mpq_class& exponent);
Expr make_fun(Expr::Fn fn, const Expr& arg);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

Expr pow(const Expr& base, const mpq_class& exponent);
Expr pow(const Expr& base, long exponent);
Expr exp(const Expr& e);
Expr ln(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr arctan(const Expr& e);

Expr rational(long num, long den = 1);

// Rebuilds e bottom-up through the canonical constructors.
Expr simplify(const Expr& e);
Expr diff(const Expr& e, const Symbol& s);
// Simultaneous substitution followed by canonicalization.
Expr substitute(const Expr& e, const Bindings& bindings);

std::set<Symbol> free_symbols(const Expr& e);
bool depends_on(const Expr& e, const Symbol& s);
// Splits a term into its numeric coefficient and the remaining monomial.
std::pair<Scalar, Expr> split_coefficient(const Expr& term);
std::size_t node_count(const Expr& e);

std::string function_name(Expr::Fn fn);
std::string to_string(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace jetinv
