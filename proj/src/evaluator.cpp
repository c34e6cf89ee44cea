#include "jetinv/evaluator.hpp"

#include <cmath>
#include <stdexcept>

#include "jetinv/errors.hpp"

namespace jetinv {

Evaluator::Evaluator(std::vector<Expr> roots) {
  std::set<Symbol> vars;
  for (const auto& r : roots) {
    auto s = free_symbols(r);
    vars.insert(s.begin(), s.end());
  }
  variables_.assign(vars.begin(), vars.end());
  std::map<Symbol, long> slots;
  for (std::size_t k = 0; k < variables_.size(); ++k) slots[variables_[k]] = static_cast<long>(k);
  std::map<const void*, std::uint32_t> memo;
  for (const auto& r : roots) roots_.push_back(compile(r, memo, slots));
}

std::uint32_t Evaluator::compile(const Expr& e, std::map<const void*, std::uint32_t>& memo,
                                 const std::map<Symbol, long>& slots) {
  auto hit = memo.find(e.node_id());
  if (hit != memo.end()) return hit->second;
  Instr ins{};
  switch (e.kind()) {
    case Expr::Kind::Const:
      ins.op = Op::Const;
      ins.c = e.value().to_complex();
      break;
    case Expr::Kind::Sym:
      ins.op = Op::Var;
      ins.n = slots.at(e.symbol());
      break;
    case Expr::Kind::Sum:
    case Expr::Kind::Prod: {
      std::vector<std::uint32_t> ops;
      for (const auto& u : e.operands()) ops.push_back(compile(u, memo, slots));
      ins.op = e.kind() == Expr::Kind::Sum ? Op::Sum : Op::Prod;
      ins.first = static_cast<std::uint32_t>(args_.size());
      ins.count = static_cast<std::uint32_t>(ops.size());
      args_.insert(args_.end(), ops.begin(), ops.end());
      break;
    }
    case Expr::Kind::Pow: {
      std::uint32_t b = compile(e.base(), memo, slots);
      const mpq_class& q = e.exponent();
      if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
        ins.op = Op::PowInt;
        ins.n = q.get_num().get_si();
      } else {
        ins.op = Op::PowFrac;
        ins.q = q.get_d();
      }
      ins.first = static_cast<std::uint32_t>(args_.size());
      ins.count = 1;
      args_.push_back(b);
      break;
    }
    case Expr::Kind::Fun: {
      std::uint32_t a = compile(e.arg(), memo, slots);
      switch (e.fn()) {
        case Expr::Fn::Exp: ins.op = Op::Exp; break;
        case Expr::Fn::Ln: ins.op = Op::Ln; break;
        case Expr::Fn::Sin: ins.op = Op::Sin; break;
        case Expr::Fn::Cos: ins.op = Op::Cos; break;
        case Expr::Fn::Arctan: ins.op = Op::Arctan; break;
      }
      ins.first = static_cast<std::uint32_t>(args_.size());
      ins.count = 1;
      args_.push_back(a);
      break;
    }
  }
  code_.push_back(ins);
  auto idx = static_cast<std::uint32_t>(code_.size() - 1);
  memo.emplace(e.node_id(), idx);
  return idx;
}

namespace {

Complex int_power(Complex z, long n) {
  if (n < 0) {
    if (z == Complex(0.0)) throw DomainError("division by zero");
    z = 1.0 / z;
    n = -n;
  }
  Complex r(1.0);
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

}  // namespace

std::vector<Complex> Evaluator::operator()(std::span<const Complex> values,
                                           double* max_magnitude) const {
  std::vector<Complex> reg(code_.size());
  double peak = 0;
  for (std::size_t k = 0; k < code_.size(); ++k) {
    const Instr& in = code_[k];
    Complex v;
    switch (in.op) {
      case Op::Const: v = in.c; break;
      case Op::Var: v = values[static_cast<std::size_t>(in.n)]; break;
      case Op::Sum:
        v = 0.0;
        for (std::uint32_t j = 0; j < in.count; ++j) v += reg[args_[in.first + j]];
        break;
      case Op::Prod:
        v = 1.0;
        for (std::uint32_t j = 0; j < in.count; ++j) v *= reg[args_[in.first + j]];
        break;
      case Op::PowInt: v = int_power(reg[args_[in.first]], in.n); break;
      case Op::PowFrac: {
        Complex b = reg[args_[in.first]];
        if (b == Complex(0.0)) {
          if (in.q < 0) throw DomainError("division by zero");
          v = 0.0;
        } else {
          v = std::exp(in.q * std::log(b));
        }
        break;
      }
      case Op::Exp: v = std::exp(reg[args_[in.first]]); break;
      case Op::Ln: {
        Complex a = reg[args_[in.first]];
        if (a == Complex(0.0)) throw DomainError("ln 0");
        v = a.real() < 0 ? std::log(-a) : std::log(a);
        break;
      }
      case Op::Sin: v = std::sin(reg[args_[in.first]]); break;
      case Op::Cos: v = std::cos(reg[args_[in.first]]); break;
      case Op::Arctan: v = std::atan(reg[args_[in.first]]); break;
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("non-finite value during evaluation");
    }
    peak = std::max(peak, std::abs(v));
    reg[k] = v;
  }
  if (max_magnitude) *max_magnitude = peak;
  std::vector<Complex> out;
  out.reserve(roots_.size());
  for (auto r : roots_) out.push_back(reg[r]);
  return out;
}

std::vector<Complex> Evaluator::operator()(const Point& point, double* max_magnitude) const {
  std::vector<Complex> values;
  values.reserve(variables_.size());
  for (const auto& s : variables_) {
    auto it = point.find(s);
    if (it == point.end()) throw std::invalid_argument("unbound symbol " + s.str());
    values.push_back(it->second);
  }
  return (*this)(values, max_magnitude);
}

Complex eval(const Expr& e, const Point& point, double* max_magnitude) {
  return Evaluator({e})(point, max_magnitude).front();
}

}  // namespace jetinv
