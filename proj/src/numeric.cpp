#include "powerspec/numeric.hpp"

#include <algorithm>

namespace powerspec {

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational rpow(const Rational& base, long exp) {
  if (exp >= 0) {
    Rational r(ipow(base.get_num(), static_cast<unsigned long>(exp)),
               ipow(base.get_den(), static_cast<unsigned long>(exp)));
    r.canonicalize();
    return r;
  }
  if (base == 0) fail(ErrorKind::kInvalidArgument, "zero raised to a negative power");
  Rational inv = 1 / base;
  return rpow(inv, -exp);
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str(10);
  return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(const BigInt& v, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational& v, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

BigInt Real::round() const {
  if (!mpfr_number_p(value_)) fail(ErrorKind::kNumeric, "rounding a non-finite value");
  BigInt r;
  mpfr_t tmp;
  mpfr_init2(tmp, precision());
  mpfr_round(tmp, value_);
  mpfr_get_z(r.get_mpz_t(), tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return r;
}

Rational Real::to_rational() const {
  if (!mpfr_number_p(value_)) fail(ErrorKind::kNumeric, "non-finite value");
  if (mpfr_zero_p(value_)) return Rational(0);
  BigInt mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  Rational r(mant);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

namespace {

void widen(mpfr_ptr target, mpfr_srcptr other) {
  if (mpfr_get_prec(other) > mpfr_get_prec(target)) {
    mpfr_prec_round(target, mpfr_get_prec(other), MPFR_RNDN);
  }
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  widen(value_, o.value_);
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(value_, o.value_);
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(value_, o.value_);
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(value_, o.value_);
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real abs(const Real& a) {
  Real r(a);
  mpfr_abs(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(a);
  mpfr_sqrt(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real log(const Real& a) {
  Real r(a);
  mpfr_log(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real exp(const Real& a) {
  Real r(a);
  mpfr_exp(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real pow(const Real& a, unsigned long e) {
  Real r(a);
  mpfr_pow_ui(r.value_, r.value_, e, MPFR_RNDN);
  return r;
}

}  // namespace powerspec
