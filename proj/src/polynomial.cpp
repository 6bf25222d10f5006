#include "powerspec/polynomial.hpp"

#include <sstream>

namespace powerspec {

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

Real IntPolynomial::evaluate(const Real& x) const {
  Real acc(x.precision());
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc *= x;
    acc += Real(*it, x.precision());
  }
  return acc;
}

int IntPolynomial::zero_root_multiplicity() const {
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] != 0) return static_cast<int>(i);
  }
  return static_cast<int>(coefficients.size());
}

RationalPolynomial::RationalPolynomial(std::vector<Rational> c) : coefficients(std::move(c)) { trim(); }

RationalPolynomial::RationalPolynomial(const IntPolynomial& p) {
  coefficients.reserve(p.coefficients.size());
  for (const auto& c : p.coefficients) coefficients.emplace_back(c);
  trim();
}

void RationalPolynomial::trim() {
  while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Real RationalPolynomial::evaluate(const Real& x) const {
  Real acc(x.precision());
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc *= x;
    acc += Real(*it, x.precision());
  }
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coefficients.size(); ++i) d.push_back(coefficients[i] * static_cast<long>(i));
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return *this;
  RationalPolynomial r = *this;
  Rational lead = leading();
  for (auto& c : r.coefficients) c /= lead;
  return r;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> c(std::max(a.coefficients.size(), b.coefficients.size()));
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) c[i] += a.coefficients[i];
  for (std::size_t i = 0; i < b.coefficients.size(); ++i) c[i] += b.coefficients[i];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  return a + Rational(-1) * b;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coefficients.size() + b.coefficients.size() - 1);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients.size(); ++j) c[i + j] += a.coefficients[i] * b.coefficients[j];
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p) {
  std::vector<Rational> c = p.coefficients;
  for (auto& x : c) x *= s;
  return RationalPolynomial(std::move(c));
}

PolyDivision divide(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) fail(ErrorKind::kInvalidArgument, "polynomial division by zero");
  RationalPolynomial rem = a;
  std::vector<Rational> quot(std::max(0, a.degree() - b.degree() + 1));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int shift = rem.degree() - b.degree();
    Rational factor = rem.leading() / b.leading();
    quot[shift] = factor;
    for (int i = 0; i <= b.degree(); ++i) rem.coefficients[i + shift] -= factor * b.coefficients[i];
    rem.trim();
  }
  return {RationalPolynomial(std::move(quot)), rem};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.degree() <= 0) return p.monic();
  RationalPolynomial g = gcd(p, p.derivative());
  return divide(p, g).quotient.monic();
}

Real refine_simple_root(const RationalPolynomial& p, Real guess, int max_iterations) {
  const mpfr_prec_t bits = guess.precision();
  RationalPolynomial dp = p.derivative();
  Real x = std::move(guess);
  // Converged once the step is below 2^(8-bits) relative to max(1, |x|).
  Real threshold(1.0, bits);
  mpfr_mul_2si(threshold.raw(), threshold.raw(), 8 - static_cast<long>(bits), MPFR_RNDN);
  int settled = 0;
  for (int it = 0; it < max_iterations; ++it) {
    Real fx = p.evaluate(x);
    if (fx.is_zero()) return x;
    Real dfx = dp.evaluate(x);
    if (dfx.is_zero()) fail(ErrorKind::kNumeric, "Newton refinement hit a critical point");
    Real step = fx / dfx;
    x -= step;
    Real scale = abs(x);
    if (scale < Real(1.0, bits)) scale = Real(1.0, bits);
    if (abs(step) < threshold * scale) {
      // One extra iteration after the step is tiny, to absorb the last rounding.
      if (++settled >= 2) return x;
    }
  }
  fail(ErrorKind::kNumeric, "Newton refinement did not converge");
}

std::vector<BigInt> power_sums(const IntPolynomial& monic, int count) {
  const int n = monic.degree();
  if (n < 0 || monic.coefficients.back() != 1) {
    fail(ErrorKind::kInvalidArgument, "power_sums needs a monic polynomial");
  }
  // a(j) is the coefficient of x^(n-j), so a(0) = 1.
  auto a = [&](int j) -> const BigInt& { return monic.coefficients[n - j]; };
  std::vector<BigInt> s(count + 1);
  s[0] = n;
  for (int k = 1; k <= count; ++k) {
    BigInt acc = 0;
    for (int j = 1; j <= std::min(k - 1, n); ++j) acc += a(j) * s[k - j];
    if (k <= n) acc += BigInt(k) * a(k);
    s[k] = -acc;
  }
  return std::vector<BigInt>(s.begin() + 1, s.end());
}

std::string format_polynomial(const RationalPolynomial& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "−";
    } else {
      out << (c < 0 ? " − " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    if (!unit || i == 0) out << to_string(mag);
    if (i >= 1) out << var;
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

}  // namespace powerspec
