#include "forge/scalar.hpp"

#include <ostream>

namespace forge {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw PreconditionError("rational with zero denominator");
  if (d < 0) {
    n = checked::sub(0, n);
    d = checked::sub(0, d);
  }
  const std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational& Rational::operator+=(const Rational& o) {
  const std::int64_t g = std::gcd(den_, o.den_);
  const std::int64_t n = checked::add(checked::mul(num_, o.den_ / g), checked::mul(o.num_, den_ / g));
  *this = Rational(n, checked::mul(den_ / g, o.den_));
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  const std::int64_t g1 = std::gcd(num_, o.den_);
  const std::int64_t g2 = std::gcd(o.num_, den_);
  const std::int64_t a = g1 == 0 ? 0 : num_ / g1;
  const std::int64_t b = g2 == 0 ? 0 : o.num_ / g2;
  const std::int64_t c = den_ / (g2 == 0 ? 1 : g2);
  const std::int64_t d = o.den_ / (g1 == 0 ? 1 : g1);
  *this = Rational(checked::mul(a, b), checked::mul(c, d));
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw PreconditionError("division by zero rational");
  return *this *= Rational(o.den_, o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  const Rational re = re_ * o.re_ - im_ * o.im_;
  const Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = re;
  im_ = im;
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  if (norm.is_zero()) throw PreconditionError("division by zero Gaussian rational");
  *this *= conj(o);
  re_ /= norm;
  im_ /= norm;
  return *this;
}

std::string GaussRational::str() const {
  if (im_.is_zero()) return re_.str();
  if (re_.is_zero()) return im_.str() + "i";
  return "(" + re_.str() + (im_.sign() < 0 ? "" : "+") + im_.str() + "i)";
}

std::ostream& operator<<(std::ostream& os, const GaussRational& z) { return os << z.str(); }

}  // namespace forge
