#include "jetinv/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "jetinv/errors.hpp"

namespace jetinv {

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  return Scalar(mpq_class(num, den));
}

Scalar Scalar::from_string(const std::string& text) {
  auto slash = text.find('/');
  auto dot = text.find('.');
  if (slash != std::string::npos) {
    mpz_class num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in " + text);
    return Scalar(mpq_class(num, den));
  }
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-") digits += "0";
    mpz_class num(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    return Scalar(mpq_class(num, den));
  }
  return Scalar(mpq_class(mpz_class(text)));
}

namespace {

std::optional<mpq_class> best_rational(double v, double tol, long max_den) {
  if (!std::isfinite(v)) return std::nullopt;
  // Continued fraction convergents.
  long double x = v;
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(x);
    mpz_class ai(static_cast<double>(a));
    mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double approx = mpq_class(p1, q1).get_d();
    if (std::abs(approx - v) <= tol) return mpq_class(p1, q1);
    long double frac = x - a;
    if (frac < 1e-18L) break;
    x = 1.0L / frac;
  }
  if (q1 != 0 && std::abs(mpq_class(p1, q1).get_d() - v) <= tol) return mpq_class(p1, q1);
  return std::nullopt;
}

}  // namespace

std::optional<Scalar> Scalar::rationalize(std::complex<double> z, double tol, long max_den) {
  double t = tol * (1.0 + std::abs(z));
  auto re = best_rational(z.real(), t, max_den);
  auto im = best_rational(z.imag(), t, max_den);
  if (!re || !im) return std::nullopt;
  return Scalar(*re, *im);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DomainError("division by zero scalar");
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ /= o.re_;
    return *this;
  }
  mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
  mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
  mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

mpq_class pow_int(const mpq_class& base, long n) {
  unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  if (n < 0) {
    if (num == 0) throw DomainError("zero to a negative power");
    std::swap(num, den);
  }
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool exact_root(const mpz_class& v, unsigned long d, mpz_class& out) {
  if (v < 0) return false;
  return mpz_root(out.get_mpz_t(), v.get_mpz_t(), d) != 0;
}

}  // namespace

std::optional<Scalar> Scalar::pow(const mpq_class& q) const {
  if (q.get_den() == 1) {
    if (!q.get_num().fits_slong_p()) return std::nullopt;
    long n = q.get_num().get_si();
    if (n < 0 && is_zero()) throw DomainError("zero to a negative power");
    if (is_real()) return Scalar(pow_int(re_, n));
    if (std::abs(n) > 4096) return std::nullopt;
    Scalar base = n < 0 ? Scalar(1) / *this : *this;
    Scalar result(1);
    for (long k = std::abs(n); k > 0; k >>= 1) {
      if (k & 1) result *= base;
      base *= base;
    }
    return result;
  }
  if (!is_positive_real()) return std::nullopt;
  if (!q.get_den().fits_ulong_p() || !q.get_num().fits_slong_p()) return std::nullopt;
  unsigned long d = q.get_den().get_ui();
  mpz_class rn, rd;
  if (!exact_root(re_.get_num(), d, rn) || !exact_root(re_.get_den(), d, rd)) return std::nullopt;
  return Scalar(pow_int(mpq_class(rn, rd), q.get_num().get_si()));
}

std::string Scalar::str() const {
  if (is_real()) return re_.get_str();
  if (sgn(re_) == 0) {
    if (im_ == 1) return "i";
    if (im_ == -1) return "-i";
    return im_.get_str() + "*i";
  }
  std::string im = im_ == 1 ? "i" : im_ == -1 ? "-i" : im_.get_str() + "*i";
  return "(" + re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im + ")";
}

namespace {

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t())) + 0x51;
  std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t k = 0; k < n; ++k) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), k)) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

std::size_t Scalar::hash() const {
  std::size_t h = hash_mpz(re_.get_num()) * 31 + hash_mpz(re_.get_den());
  if (sgn(im_) != 0) h ^= (hash_mpz(im_.get_num()) * 31 + hash_mpz(im_.get_den())) * 0x9e3779b97f4a7c15ULL;
  return h;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace jetinv
