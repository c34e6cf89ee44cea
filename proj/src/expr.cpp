#include "jetinv/expr.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "jetinv/errors.hpp"

namespace jetinv {

struct Expr::Node {
  Kind kind = Kind::Const;
  Fn fn = Fn::Exp;
  std::size_t hash = 0;
  std::uint64_t mask = 0;
  Scalar value;
  std::optional<Symbol> sym;
  std::vector<Expr> ops;
  mpq_class exponent;
  bool canonical = true;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_mpq(const mpq_class& q) { return Scalar(q).hash(); }

}  // namespace

std::uint64_t symbol_bit(const Symbol& s) {
  switch (s.kind()) {
    case Symbol::Kind::X: return 1ULL;
    case Symbol::Kind::Y: return 2ULL;
    case Symbol::Kind::Jet: return 1ULL << std::min(s.jet_order() + 1, 41);
    case Symbol::Kind::Lambda: return 1ULL << 42;
    case Symbol::Kind::Param: return 1ULL << (43 + s.hash() % 21);
  }
  return ~0ULL;
}

Expr::Expr() : Expr(0L) {}

Expr::Expr(long n) : Expr(Scalar(n)) {}

Expr::Expr(const Scalar& c) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = c;
  node->hash = mix(0x11, c.hash());
  node_ = std::move(node);
}

Expr::Expr(const Symbol& s) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sym;
  node->sym = s;
  node->hash = mix(0x22, s.hash());
  node->mask = symbol_bit(s);
  node_ = std::move(node);
}

namespace {

Expr node_sum(std::vector<Expr> terms, bool canonical) {
  auto node = std::make_shared<Expr::Node>();
  node->canonical = canonical;
  node->kind = Expr::Kind::Sum;
  node->hash = 0x55;
  for (const auto& t : terms) {
    node->hash = mix(node->hash, t.hash());
    node->mask |= t.symbol_mask();
    node->canonical = node->canonical && t.is_canonical();
  }
  node->ops = std::move(terms);
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

Expr node_prod(std::vector<Expr> factors, bool canonical) {
  auto node = std::make_shared<Expr::Node>();
  node->canonical = canonical;
  node->kind = Expr::Kind::Prod;
  node->hash = 0x44;
  for (const auto& f : factors) {
    node->hash = mix(node->hash, f.hash());
    node->mask |= f.symbol_mask();
    node->canonical = node->canonical && f.is_canonical();
  }
  node->ops = std::move(factors);
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

Expr node_pow(Expr base, mpq_class exponent, bool canonical) {
  auto node = std::make_shared<Expr::Node>();
  node->canonical = canonical;
  node->kind = Expr::Kind::Pow;
  node->hash = mix(mix(0x33, base.hash()), hash_mpq(exponent));
  node->mask = base.symbol_mask();
  node->canonical = canonical && base.is_canonical();
  node->ops.push_back(std::move(base));
  node->exponent = std::move(exponent);
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

Expr node_fun(Expr::Fn fn, Expr arg, bool canonical) {
  auto node = std::make_shared<Expr::Node>();
  node->canonical = canonical;
  node->kind = Expr::Kind::Fun;
  node->fn = fn;
  node->hash = mix(mix(0x66, static_cast<std::size_t>(fn)), arg.hash());
  node->mask = arg.symbol_mask();
  node->canonical = canonical && arg.is_canonical();
  node->ops.push_back(std::move(arg));
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

}  // namespace

Expr Expr::raw_sum(std::vector<Expr> terms) { return node_sum(std::move(terms), false); }
Expr Expr::raw_prod(std::vector<Expr> factors) { return node_prod(std::move(factors), false); }
Expr Expr::raw_pow(Expr base, mpq_class exponent) {
  return node_pow(std::move(base), std::move(exponent), false);
}
Expr Expr::raw_fun(Fn fn, Expr arg) { return node_fun(fn, std::move(arg), false); }
bool Expr::is_canonical() const { return node_->canonical; }

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return node_->kind == Kind::Const && node_->value.is_zero(); }
bool Expr::is_one() const { return node_->kind == Kind::Const && node_->value.is_one(); }

const Scalar& Expr::value() const {
  if (node_->kind != Kind::Const) throw std::logic_error("value() on non-constant");
  return node_->value;
}

const Symbol& Expr::symbol() const {
  if (node_->kind != Kind::Sym) throw std::logic_error("symbol() on non-symbol");
  return *node_->sym;
}

const std::vector<Expr>& Expr::operands() const { return node_->ops; }

const Expr& Expr::base() const {
  if (node_->kind != Kind::Pow) throw std::logic_error("base() on non-power");
  return node_->ops.front();
}

const mpq_class& Expr::exponent() const {
  if (node_->kind != Kind::Pow) throw std::logic_error("exponent() on non-power");
  return node_->exponent;
}

Expr::Fn Expr::fn() const {
  if (node_->kind != Kind::Fun) throw std::logic_error("fn() on non-function");
  return node_->fn;
}

const Expr& Expr::arg() const {
  if (node_->kind != Kind::Fun) throw std::logic_error("arg() on non-function");
  return node_->ops.front();
}

std::size_t Expr::hash() const { return node_->hash; }
std::uint64_t Expr::symbol_mask() const { return node_->mask; }
bool Expr::may_depend_on(const Symbol& s) const { return (node_->mask & symbol_bit(s)) != 0; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  return compare(a, b) == 0;
}

std::strong_ordering compare(const Expr& a, const Expr& b) {
  if (a.node_id() == b.node_id()) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Expr::Kind::Const: return a.value() <=> b.value();
    case Expr::Kind::Sym: return a.symbol() <=> b.symbol();
    case Expr::Kind::Pow: {
      if (auto c = compare(a.base(), b.base()); c != 0) return c;
      int c = cmp(a.exponent(), b.exponent());
      return c < 0 ? std::strong_ordering::less
                   : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    case Expr::Kind::Fun:
      if (auto c = a.fn() <=> b.fn(); c != 0) return c;
      return compare(a.arg(), b.arg());
    case Expr::Kind::Sum:
    case Expr::Kind::Prod: {
      const auto& x = a.operands();
      const auto& y = b.operands();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t k = 0; k < n; ++k) {
        if (auto c = compare(x[k], y[k]); c != 0) return c;
      }
      return x.size() <=> y.size();
    }
  }
  return std::strong_ordering::equal;
}

namespace {

const Expr& zero() {
  static const Expr z(0L);
  return z;
}

const Expr& one() {
  static const Expr o(1L);
  return o;
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

Expr attach_coefficient(const Scalar& c, const Expr& mono) {
  if (c.is_one()) return mono;
  std::vector<Expr> f;
  f.emplace_back(c);
  if (mono.kind() == Expr::Kind::Prod) {
    f.insert(f.end(), mono.operands().begin(), mono.operands().end());
  } else {
    f.push_back(mono);
  }
  return node_prod(std::move(f), true);
}

// Order of terms inside a sum: by monomial, then by coefficient.
bool term_less(const Expr& a, const Expr& b) {
  auto [ca, ma] = split_coefficient(a);
  auto [cb, mb] = split_coefficient(b);
  if (auto c = compare(ma, mb); c != 0) return c < 0;
  return ca < cb;
}

}  // namespace

std::pair<Scalar, Expr> split_coefficient(const Expr& term) {
  if (term.is_const()) return {term.value(), one()};
  if (term.kind() == Expr::Kind::Prod && term.operands().front().is_const()) {
    const auto& ops = term.operands();
    if (ops.size() == 2) return {ops[0].value(), ops[1]};
    return {ops[0].value(), node_prod(std::vector<Expr>(ops.begin() + 1, ops.end()), term.is_canonical())};
  }
  return {Scalar(1), term};
}

Expr make_sum(std::vector<Expr> terms) {
  Scalar constant;
  std::unordered_map<Expr, Scalar, ExprHash> coef;
  std::vector<Expr> order;
  auto add = [&](const Expr& t) {
    if (t.is_const()) {
      constant += t.value();
      return;
    }
    auto [c, m] = split_coefficient(t);
    auto it = coef.find(m);
    if (it == coef.end()) {
      coef.emplace(m, c);
      order.push_back(m);
    } else {
      it->second += c;
    }
  };
  for (const auto& t : terms) {
    if (t.kind() == Expr::Kind::Sum) {
      for (const auto& s : t.operands()) add(s);
    } else {
      add(t);
    }
  }
  std::vector<Expr> out;
  if (!constant.is_zero()) out.emplace_back(constant);
  for (const auto& m : order) {
    const Scalar& c = coef.at(m);
    if (!c.is_zero()) out.push_back(attach_coefficient(c, m));
  }
  if (out.empty()) return zero();
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), term_less);
  return node_sum(std::move(out), true);
}

namespace {

Expr build_prod(const Scalar& coef, std::vector<Expr> factors) {
  if (coef.is_zero()) return zero();
  std::sort(factors.begin(), factors.end(), ExprLess{});
  if (factors.empty()) return Expr(coef);
  if (factors.size() == 1 && coef.is_one()) return factors.front();
  std::vector<Expr> f;
  f.reserve(factors.size() + 1);
  if (!coef.is_one()) f.emplace_back(coef);
  f.insert(f.end(), factors.begin(), factors.end());
  return node_prod(std::move(f), true);
}

// Multiplies a canonical expression (sum or monomial) by a canonical sum.
Expr expand_times(const Expr& a, const Expr& s) {
  std::vector<Expr> at = a.kind() == Expr::Kind::Sum ? a.operands() : std::vector<Expr>{a};
  std::vector<Expr> terms;
  terms.reserve(at.size() * s.operands().size());
  for (const auto& u : at) {
    for (const auto& v : s.operands()) terms.push_back(make_prod({u, v}));
  }
  return make_sum(std::move(terms));
}

Expr make_prod_impl(const std::vector<Expr>& factors, int depth) {
  Scalar coef(1);
  std::unordered_map<Expr, mpq_class, ExprHash> power;
  std::vector<Expr> order;
  std::vector<Expr> exp_args;
  auto add_power = [&](const Expr& b, const mpq_class& q) {
    auto it = power.find(b);
    if (it == power.end()) {
      power.emplace(b, q);
      order.push_back(b);
    } else {
      it->second += q;
    }
  };
  auto add = [&](const Expr& f) {
    switch (f.kind()) {
      case Expr::Kind::Const: coef *= f.value(); break;
      case Expr::Kind::Pow: add_power(f.base(), f.exponent()); break;
      case Expr::Kind::Fun:
        if (f.fn() == Expr::Fn::Exp) {
          exp_args.push_back(f.arg());
        } else {
          add_power(f, 1);
        }
        break;
      default: add_power(f, 1); break;
    }
  };
  for (const auto& f : factors) {
    if (f.kind() == Expr::Kind::Prod) {
      for (const auto& g : f.operands()) add(g);
    } else {
      add(f);
    }
    if (coef.is_zero()) return zero();
  }

  std::vector<Expr> out;
  std::vector<std::pair<Expr, long>> sums;
  bool again = false;
  for (const auto& b : order) {
    const mpq_class& q = power.at(b);
    if (sgn(q) == 0) continue;
    if (b.kind() == Expr::Kind::Sum && is_integer(q) && sgn(q) > 0) {
      sums.emplace_back(b, q.get_num().get_si());
      continue;
    }
    Expr p = make_pow(b, q);
    switch (p.kind()) {
      case Expr::Kind::Const: coef *= p.value(); break;
      case Expr::Kind::Prod:
      case Expr::Kind::Sum:
        again = true;
        out.push_back(p);
        break;
      case Expr::Kind::Pow:
        if (!(p.base() == b)) again = true;
        out.push_back(p);
        break;
      case Expr::Kind::Fun:
        if (p.fn() == Expr::Fn::Exp) again = true;
        out.push_back(p);
        break;
      default: out.push_back(p); break;
    }
  }
  if (coef.is_zero()) return zero();
  if (!exp_args.empty()) {
    Expr e = make_sum(exp_args);
    if (!e.is_zero()) out.push_back(node_fun(Expr::Fn::Exp, e, true));
  }
  if (again && depth < 8) {
    out.emplace_back(coef);
    for (const auto& [s, k] : sums) {
      for (long j = 0; j < k; ++j) out.push_back(s);
    }
    return make_prod_impl(out, depth + 1);
  }
  Expr result = build_prod(coef, std::move(out));
  for (const auto& [s, k] : sums) {
    for (long j = 0; j < k; ++j) result = expand_times(result, s);
  }
  return result;
}

}  // namespace

Expr make_prod(std::vector<Expr> factors) {
  if (factors.size() == 1) return factors.front();
  return make_prod_impl(factors, 0);
}

Expr make_pow(const Expr& base, const mpq_class& q) {
  if (sgn(q) == 0) return one();
  if (q == 1) return base;
  switch (base.kind()) {
    case Expr::Kind::Const: {
      const Scalar& c = base.value();
      if (c.is_zero()) {
        if (sgn(q) < 0) throw DomainError("zero to a negative power");
        return zero();
      }
      if (auto r = c.pow(q)) return Expr(*r);
      if (c.is_positive_real()) {
        // c^q = c^floor(q) * c^(q - floor(q))
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        mpq_class frac = q - mpq_class(fl);
        Expr root = node_pow(base, frac, true);
        if (fl == 0) return root;
        return node_prod({Expr(*c.pow(mpq_class(fl))), root}, true);
      }
      return node_pow(base, q, true);
    }
    case Expr::Kind::Pow: {
      const mpq_class& p = base.exponent();
      if (is_integer(q) || (p > -1 && p <= 1)) return make_pow(base.base(), p * q);
      return node_pow(base, q, true);
    }
    case Expr::Kind::Prod: {
      if (is_integer(q)) {
        std::vector<Expr> f;
        for (const auto& g : base.operands()) f.push_back(make_pow(g, q));
        return make_prod(std::move(f));
      }
      const Expr& first = base.operands().front();
      if (first.is_const() && first.value().is_positive_real()) {
        auto [c, rest] = split_coefficient(base);
        return make_prod({make_pow(Expr(c), q), make_pow(rest, q)});
      }
      return node_pow(base, q, true);
    }
    case Expr::Kind::Fun:
      if (base.fn() == Expr::Fn::Exp) {
        return make_fun(Expr::Fn::Exp, make_prod({Expr(Scalar(q)), base.arg()}));
      }
      return node_pow(base, q, true);
    case Expr::Kind::Sum:
      if (is_integer(q) && sgn(q) > 0) {
        return make_prod(std::vector<Expr>(q.get_num().get_ui(), base));
      }
      return node_pow(base, q, true);
    default: return node_pow(base, q, true);
  }
}

Expr make_fun(Expr::Fn fn, const Expr& arg) {
  switch (fn) {
    case Expr::Fn::Exp:
      if (arg.is_zero()) return one();
      break;
    case Expr::Fn::Ln:
      if (arg.is_one()) return zero();
      if (arg.is_zero()) throw DomainError("ln 0");
      if (arg.kind() == Expr::Kind::Fun && arg.fn() == Expr::Fn::Exp) return arg.arg();
      break;
    case Expr::Fn::Sin:
    case Expr::Fn::Arctan:
      if (arg.is_zero()) return zero();
      break;
    case Expr::Fn::Cos:
      if (arg.is_zero()) return one();
      break;
  }
  return node_fun(fn, arg, true);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return make_sum({a, b});
}

Expr operator-(const Expr& a) { return make_prod({Expr(-1L), a}); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return make_prod({a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return make_prod({a, make_pow(b, -1)});
}

Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, const mpq_class& exponent) { return make_pow(base, exponent); }
Expr pow(const Expr& base, long exponent) { return make_pow(base, mpq_class(exponent)); }
Expr exp(const Expr& e) { return make_fun(Expr::Fn::Exp, e); }
Expr ln(const Expr& e) { return make_fun(Expr::Fn::Ln, e); }
Expr sin(const Expr& e) { return make_fun(Expr::Fn::Sin, e); }
Expr cos(const Expr& e) { return make_fun(Expr::Fn::Cos, e); }
Expr arctan(const Expr& e) { return make_fun(Expr::Fn::Arctan, e); }

Expr rational(long num, long den) { return Expr(Scalar::ratio(num, den)); }

Expr simplify(const Expr& e) {
  if (e.is_canonical()) return e;
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::Sym: return e;
    case Expr::Kind::Sum: {
      std::vector<Expr> t;
      for (const auto& s : e.operands()) t.push_back(simplify(s));
      return make_sum(std::move(t));
    }
    case Expr::Kind::Prod: {
      std::vector<Expr> f;
      for (const auto& s : e.operands()) f.push_back(simplify(s));
      return make_prod(std::move(f));
    }
    case Expr::Kind::Pow: return make_pow(simplify(e.base()), e.exponent());
    case Expr::Kind::Fun: return make_fun(e.fn(), simplify(e.arg()));
  }
  return e;
}

Expr diff(const Expr& e, const Symbol& s) {
  if (!e.may_depend_on(s)) return zero();
  switch (e.kind()) {
    case Expr::Kind::Const: return zero();
    case Expr::Kind::Sym: return e.symbol() == s ? one() : zero();
    case Expr::Kind::Sum: {
      std::vector<Expr> t;
      for (const auto& u : e.operands()) {
        Expr d = diff(u, s);
        if (!d.is_zero()) t.push_back(std::move(d));
      }
      return make_sum(std::move(t));
    }
    case Expr::Kind::Prod: {
      const auto& f = e.operands();
      std::vector<Expr> t;
      for (std::size_t k = 0; k < f.size(); ++k) {
        Expr d = diff(f[k], s);
        if (d.is_zero()) continue;
        std::vector<Expr> g;
        g.reserve(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) {
          if (j != k) g.push_back(f[j]);
        }
        g.push_back(std::move(d));
        t.push_back(make_prod(std::move(g)));
      }
      return make_sum(std::move(t));
    }
    case Expr::Kind::Pow: {
      Expr d = diff(e.base(), s);
      if (d.is_zero()) return zero();
      const mpq_class& q = e.exponent();
      return make_prod({Expr(Scalar(q)), make_pow(e.base(), q - 1), d});
    }
    case Expr::Kind::Fun: {
      const Expr& u = e.arg();
      Expr d = diff(u, s);
      if (d.is_zero()) return zero();
      switch (e.fn()) {
        case Expr::Fn::Exp: return make_prod({e, d});
        case Expr::Fn::Ln: return make_prod({d, make_pow(u, -1)});
        case Expr::Fn::Sin: return make_prod({make_fun(Expr::Fn::Cos, u), d});
        case Expr::Fn::Cos: return make_prod({Expr(-1L), make_fun(Expr::Fn::Sin, u), d});
        case Expr::Fn::Arctan:
          return make_prod({d, make_pow(make_sum({one(), make_pow(u, 2)}), -1)});
      }
    }
  }
  return zero();
}

namespace {

Expr substitute_impl(const Expr& e, const Bindings& b, std::uint64_t mask,
                     std::unordered_map<const void*, Expr>& memo) {
  if ((e.symbol_mask() & mask) == 0) return e;
  auto hit = memo.find(e.node_id());
  if (hit != memo.end()) return hit->second;
  Expr r;
  switch (e.kind()) {
    case Expr::Kind::Const: r = e; break;
    case Expr::Kind::Sym: {
      auto it = b.find(e.symbol());
      r = it == b.end() ? e : it->second;
      break;
    }
    case Expr::Kind::Sum:
    case Expr::Kind::Prod: {
      std::vector<Expr> ops;
      ops.reserve(e.operands().size());
      for (const auto& u : e.operands()) ops.push_back(substitute_impl(u, b, mask, memo));
      r = e.kind() == Expr::Kind::Sum ? make_sum(std::move(ops)) : make_prod(std::move(ops));
      break;
    }
    case Expr::Kind::Pow: r = make_pow(substitute_impl(e.base(), b, mask, memo), e.exponent()); break;
    case Expr::Kind::Fun: r = make_fun(e.fn(), substitute_impl(e.arg(), b, mask, memo)); break;
  }
  memo.emplace(e.node_id(), r);
  return r;
}

void collect_symbols(const Expr& e, std::set<Symbol>& out) {
  if (e.is_sym()) {
    out.insert(e.symbol());
    return;
  }
  for (const auto& u : e.operands()) collect_symbols(u, out);
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return simplify(e);
  std::uint64_t mask = 0;
  for (const auto& [s, v] : bindings) mask |= symbol_bit(s);
  std::unordered_map<const void*, Expr> memo;
  return simplify(substitute_impl(e, bindings, mask, memo));
}

std::set<Symbol> free_symbols(const Expr& e) {
  std::set<Symbol> out;
  collect_symbols(e, out);
  return out;
}

bool depends_on(const Expr& e, const Symbol& s) {
  if (!e.may_depend_on(s)) return false;
  if (e.is_sym()) return e.symbol() == s;
  for (const auto& u : e.operands()) {
    if (depends_on(u, s)) return true;
  }
  return false;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const auto& u : e.operands()) n += node_count(u);
  return n;
}

std::string function_name(Expr::Fn fn) {
  switch (fn) {
    case Expr::Fn::Exp: return "exp";
    case Expr::Fn::Ln: return "ln";
    case Expr::Fn::Sin: return "sin";
    case Expr::Fn::Cos: return "cos";
    case Expr::Fn::Arctan: return "arctan";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

}  // namespace jetinv
