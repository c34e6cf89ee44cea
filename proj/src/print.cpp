#include <string>

#include "jetinv/expr.hpp"

namespace jetinv {

namespace {

enum Prec { kSum = 1, kProd = 2, kPow = 3, kAtom = 4 };

std::string print(const Expr& e, int context);

bool negative_real(const Scalar& c) { return c.is_real() && sgn(c.re()) < 0; }

std::string exponent_text(const mpq_class& q) {
  if (q.get_den() == 1 && sgn(q) > 0) return "^" + q.get_str();
  return "^(" + q.get_str() + ")";
}

std::string print_const(const Scalar& c, int context) {
  std::string s = c.str();
  bool plain = c.is_integer() && sgn(c.re()) >= 0;
  if (context >= kPow && !plain && s.front() != '(') return "(" + s + ")";
  if (context >= kProd && negative_real(c)) return "(" + s + ")";
  return s;
}

// Product body without the sign handling of the coefficient.
std::string print_factors(const std::vector<Expr>& factors, std::size_t from) {
  std::string out;
  for (std::size_t k = from; k < factors.size(); ++k) {
    if (!out.empty()) out += "*";
    out += print(factors[k], kProd);
  }
  return out;
}

std::string print_prod(const Expr& e) {
  const auto& f = e.operands();
  if (!f.front().is_const()) return print_factors(f, 0);
  const Scalar& c = f.front().value();
  std::string body = print_factors(f, 1);
  if (c == Scalar(-1)) return "-" + body;
  return c.str() + "*" + body;
}

std::string print_sum(const Expr& e) {
  std::string out;
  for (const auto& t : e.operands()) {
    auto [c, m] = split_coefficient(t);
    if (out.empty()) {
      out = print(t, kSum);
    } else if (negative_real(c)) {
      out += " - " + print(-t, kSum);
    } else {
      out += " + " + print(t, kSum);
    }
  }
  return out;
}

std::string print(const Expr& e, int context) {
  switch (e.kind()) {
    case Expr::Kind::Const: return print_const(e.value(), context);
    case Expr::Kind::Sym: return e.symbol().str();
    case Expr::Kind::Sum: {
      std::string s = print_sum(e);
      return context > kSum ? "(" + s + ")" : s;
    }
    case Expr::Kind::Prod: {
      std::string s = print_prod(e);
      bool signed_lead = s.front() == '-';
      if (context > kProd || (context == kProd && signed_lead)) return "(" + s + ")";
      return s;
    }
    case Expr::Kind::Pow: {
      std::string s = print(e.base(), kAtom) + exponent_text(e.exponent());
      return context > kPow ? "(" + s + ")" : s;
    }
    case Expr::Kind::Fun: return function_name(e.fn()) + "(" + print(e.arg(), 0) + ")";
  }
  return "?";
}

}  // namespace

std::string to_string(const Expr& e) { return print(e, 0); }

}  // namespace jetinv
