#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "jetinv/expr.hpp"

namespace jetinv {

using Complex = std::complex<double>;
using Point = std::map<Symbol, Complex>;

// Compiles a batch of expressions into a flat instruction list sharing
// common subtrees, for repeated numeric evaluation.
class Evaluator {
 public:
  explicit Evaluator(std::vector<Expr> roots);

  // Every symbol occurring in the roots, in sorted order.
  const std::vector<Symbol>& variables() const { return variables_; }
  std::size_t size() const { return roots_.size(); }

  // values[k] binds variables()[k]. Throws DomainError on division by zero,
  // ln 0, or a non-finite value. The largest magnitude of any intermediate
  // result is stored in *max_magnitude when given.
  std::vector<Complex> operator()(std::span<const Complex> values,
                                  double* max_magnitude = nullptr) const;
  std::vector<Complex> operator()(const Point& point, double* max_magnitude = nullptr) const;

 private:
  enum class Op : std::uint8_t { Const, Var, Sum, Prod, PowInt, PowFrac, Exp, Ln, Sin, Cos, Arctan };
  struct Instr {
    Op op;
    Complex c;      // constant value
    long n = 0;     // variable index or integer exponent
    double q = 0;   // fractional exponent
    std::uint32_t first = 0, count = 0;  // operand slice in args_
  };

  std::uint32_t compile(const Expr& e, std::map<const void*, std::uint32_t>& memo,
                        const std::map<Symbol, long>& slots);

  std::vector<Symbol> variables_;
  std::vector<Instr> code_;
  std::vector<std::uint32_t> args_;
  std::vector<std::uint32_t> roots_;
};

// Single-expression convenience; ln is ln|.| on the real axis.
Complex eval(const Expr& e, const Point& point, double* max_magnitude = nullptr);

}  // namespace jetinv
