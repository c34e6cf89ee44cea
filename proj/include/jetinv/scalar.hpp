#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>

namespace jetinv {

// Exact Gaussian rational re + im*i.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : re_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im = 0);

  static Scalar ratio(long num, long den);
  static Scalar i() { return Scalar(0, 1); }
  // Parses "p", "p/q" or a decimal literal such as "0.25".
  static Scalar from_string(const std::string& text);
  // Closest Gaussian rational with denominators up to max_den, if it lies
  // within tol of z (relative to 1 + |z|).
  static std::optional<Scalar> rationalize(std::complex<double> z, double tol = 1e-9,
                                           long max_den = 100000);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_integer() const { return is_real() && re_.get_den() == 1; }
  bool is_positive_real() const { return is_real() && sgn(re_) > 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  // Exact value of this^q, or nothing if it is not a Gaussian rational
  // (or the branch is ambiguous).
  std::optional<Scalar> pow(const mpq_class& q) const;

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  // Real part first, then imaginary part.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  std::string str() const;
  std::size_t hash() const;

 private:
  mpq_class re_;
  mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Exact integer power of a rational.
mpq_class pow_int(const mpq_class& base, long n);

}  // namespace jetinv
