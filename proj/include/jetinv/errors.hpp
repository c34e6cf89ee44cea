#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>

namespace jetinv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Division by zero, ln 0, or a non-finite value during numeric evaluation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Too many sample points were singular to decide an identity.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span,
             std::set<std::string> expected = {});

  const SourceSpan& span() const { return span_; }
  const std::set<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  SourceSpan span_;
  std::set<std::string> expected_;
};

// A planar vector field mentions jet coordinates or the multiplier.
class ArityError : public Error {
 public:
  using Error::Error;
};

// An expression is applied to a prolongation of too small an order.
class OrderError : public Error {
 public:
  using Error::Error;
};

class NotClosedError : public Error {
 public:
  NotClosedError(const std::string& message, std::size_t i, std::size_t j)
      : Error(message), i_(i), j_(j) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }

 private:
  std::size_t i_, j_;
};

class SingularSampleError : public Error {
 public:
  using Error::Error;
};

class StabilizationError : public Error {
 public:
  using Error::Error;
};

class AllMinorsVanishError : public Error {
 public:
  using Error::Error;
};

class FlowSingularError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class IndependenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace jetinv
