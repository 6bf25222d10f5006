#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "powerspec/errors.hpp"

namespace powerspec {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned n);
BigInt ipow(const BigInt& base, unsigned long exp);
// base^exp for a possibly negative exponent.
Rational rpow(const Rational& base, long exp);

std::string to_string(const BigInt& v);
// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& v);

// Number of bits of |v|; used by the bit-size budget guards.
std::size_t bit_length(const BigInt& v);

// Arbitrary-precision binary float with a precision fixed at construction.
// Arithmetic results take the larger precision of the operands.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 256);
  Real(double v, mpfr_prec_t bits);
  Real(const BigInt& v, mpfr_prec_t bits);
  Real(const Rational& v, mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Nearest integer (ties away from zero).
  BigInt round() const;
  // Exact rational value of the binary float.
  Rational to_rational() const;
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const;

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real log(const Real& a);
  friend Real exp(const Real& a);
  friend Real pow(const Real& a, unsigned long e);

  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace powerspec
