#pragma once

#include <string>
#include <vector>

#include "powerspec/numeric.hpp"

namespace powerspec {

// Coefficients in ascending degree; the zero polynomial has no coefficients.
struct IntPolynomial {
  std::vector<BigInt> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  BigInt evaluate(const BigInt& x) const;
  Rational evaluate(const Rational& x) const;
  Real evaluate(const Real& x) const;
  // Multiplicity of 0 as a root (index of the lowest nonzero coefficient).
  int zero_root_multiplicity() const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

struct RationalPolynomial {
  std::vector<Rational> coefficients;

  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> c);
  explicit RationalPolynomial(const IntPolynomial& p);

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  bool is_zero() const { return coefficients.empty(); }
  const Rational& leading() const { return coefficients.back(); }
  Rational evaluate(const Rational& x) const;
  Real evaluate(const Real& x) const;
  RationalPolynomial derivative() const;
  // Scales to a monic polynomial; the zero polynomial is returned unchanged.
  RationalPolynomial monic() const;
  void trim();

  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;
};

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator*(const Rational& s, const RationalPolynomial& p);

struct PolyDivision {
  RationalPolynomial quotient;
  RationalPolynomial remainder;
};
PolyDivision divide(const RationalPolynomial& a, const RationalPolynomial& b);
// Monic greatest common divisor over the rationals.
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);
// p / gcd(p, p'), monic: same roots, all simple.
RationalPolynomial squarefree_part(const RationalPolynomial& p);

// Newton iteration from `guess` to a simple root of `p`, at the precision of
// `guess`. Throws kNumeric when the iteration does not settle.
Real refine_simple_root(const RationalPolynomial& p, Real guess, int max_iterations = 200);

// Power sums s_1..s_count of the roots of a monic polynomial (Newton's identities).
std::vector<BigInt> power_sums(const IntPolynomial& monic, int count);

// Human-readable form in the variable `var`, highest degree first.
std::string format_polynomial(const RationalPolynomial& p, const std::string& var = "λ");

}  // namespace powerspec
