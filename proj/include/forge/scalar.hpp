#pragma once

// Exact scalars: overflow-checked 64-bit integer helpers, rationals and
// Gaussian rationals (complex numbers with rational parts). Both scalar types
// are registered with Eigen so they can be used as matrix coefficients.

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <numeric>
#include <string>

#include <Eigen/Core>

#include "forge/error.hpp"

namespace forge {

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::int64_t g = std::gcd(a, b);
  return mul(a / g, b < 0 ? -b : b);
}

// Floor modulus with a non-negative result for positive m.
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace checked

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const { return Rational(checked::sub(0, num_), den_); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(std::int64_t re) : re_(re) {}  // NOLINT: implicit from integers
  GaussRational(Rational re) : re_(re) {}      // NOLINT
  GaussRational(Rational re, Rational im) : re_(re), im_(im) {}

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussRational operator-() const { return {-re_, -im_}; }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) = default;

  std::string str() const;

 private:
  Rational re_;
  Rational im_;
};

inline GaussRational conj(const GaussRational& z) { return {z.real(), -z.imag()}; }
inline Rational conj(const Rational& q) { return q; }

std::ostream& operator<<(std::ostream& os, const GaussRational& z);

}  // namespace forge

namespace Eigen {

template <>
struct NumTraits<forge::Rational> : GenericNumTraits<forge::Rational> {
  using Real = forge::Rational;
  using NonInteger = forge::Rational;
  using Literal = forge::Rational;
  using Nested = forge::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<forge::GaussRational> : GenericNumTraits<forge::GaussRational> {
  using Real = forge::Rational;
  using NonInteger = forge::GaussRational;
  using Literal = forge::GaussRational;
  using Nested = forge::GaussRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
