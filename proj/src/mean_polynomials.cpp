#include "powerspec/mean_polynomials.hpp"

#include <cmath>
#include <functional>

#include "powerspec/errors.hpp"
#include "powerspec/signed_graph.hpp"

namespace powerspec {

std::vector<BigInt> matching_counts(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<BigInt> counts(n / 2 + 1, 0);
  std::vector<bool> used(n, false);
  const auto& edges = g.edges();
  std::function<void(std::size_t, int)> extend = [&](std::size_t from, int size) {
    ++counts[size];
    for (std::size_t i = from; i < edges.size(); ++i) {
      if (used[edges[i].u] || used[edges[i].v]) continue;
      used[edges[i].u] = used[edges[i].v] = true;
      extend(i + 1, size + 1);
      used[edges[i].u] = used[edges[i].v] = false;
    }
  };
  extend(0, 0);
  return counts;
}

RationalPolynomial matching_polynomial(const Graph& g, MatchingMethod method, int max_signed_edges) {
  const int n = g.vertex_count();
  if (method == MatchingMethod::kDirect) {
    std::vector<Rational> c(n + 1, Rational(0));
    auto m = matching_counts(g);
    for (std::size_t r = 0; r < m.size(); ++r) c[n - 2 * r] = r % 2 == 0 ? Rational(m[r]) : Rational(-m[r]);
    RationalPolynomial p(std::move(c));
    p.trim();
    return p;
  }
  if (g.edge_count() > max_signed_edges) {
    fail(ErrorKind::kBudget, "signed mean limited to " + std::to_string(max_signed_edges) + " edges");
  }
  std::vector<BigInt> sum(n + 1, 0);
  for (const auto& sg : enumerate_signings(g, false, max_signed_edges)) {
    auto cp = char_poly_exact(sg);
    for (int i = 0; i <= n; ++i) sum[i] += cp.coefficients[i];
  }
  std::vector<Rational> c;
  for (auto& s : sum) {
    Rational q(s, BigInt(1) << g.edge_count());
    q.canonicalize();
    c.push_back(q);
  }
  RationalPolynomial p(std::move(c));
  p.trim();
  return p;
}

namespace {

// phi_pi(lambda0) for one representative of each switching class, with the
// class size; every class has 2^{|V| - components} members.
struct ClassValues {
  std::vector<Rational> values;
  BigInt class_size;
};

ClassValues signed_values(const Graph& g, const Rational& x, int max_signed_edges) {
  if (g.edge_count() > max_signed_edges) {
    fail(ErrorKind::kBudget, "signing enumeration limited to " + std::to_string(max_signed_edges) + " edges");
  }
  ClassValues out;
  for (const auto& sg : enumerate_signings(g, true, max_signed_edges)) {
    out.values.push_back(char_poly_exact(sg).evaluate(x));
  }
  out.class_size = BigInt(1) << (g.vertex_count() - g.component_count());
  return out;
}

Rational exact_value(double x) {
  if (!std::isfinite(x)) fail(ErrorKind::kInvalidArgument, "evaluation point must be finite");
  return Rational(x);
}

}  // namespace

Real geometric_mean_evaluate(const Graph& g, double lambda0, int bits, int max_signed_edges) {
  auto cls = signed_values(g, exact_value(lambda0), max_signed_edges);
  // Product of all 2^|E| values, grouped by switching class.
  Rational product = 1;
  for (const auto& v : cls.values) {
    Rational p;
    mpz_pow_ui(p.get_num_mpz_t(), v.get_num_mpz_t(), cls.class_size.get_ui());
    mpz_pow_ui(p.get_den_mpz_t(), v.get_den_mpz_t(), cls.class_size.get_ui());
    product *= p;
  }
  if (product == 0) return Real(0.0, bits);
  if (product < 0) fail(ErrorKind::kInternal, "product of signed characteristic polynomials is negative");
  Real log_p = log(Real(product, bits + 64));
  mpfr_div_2ui(log_p.raw(), log_p.raw(), static_cast<unsigned long>(g.edge_count()), MPFR_RNDN);
  Real out = exp(log_p);
  Real rounded(bits);
  mpfr_set(rounded.raw(), out.raw(), MPFR_RNDN);
  return rounded;
}

namespace {

Real factor_base(const FactoredSpectralFunction& f, const Real& x, std::size_t i, int bits) {
  Real xk = pow(x, static_cast<unsigned long>(f.k));
  const Real& s = f.sigma_sq_precise.size() > i ? f.sigma_sq_precise[i] : Real(f.factors[i].sigma_sq, bits);
  return xk - s;
}

// |base|^{q} for a non-negative rational exponent.
Real rational_power(const Real& base, const Rational& q, int bits) {
  if (q == 0) return Real(1.0, bits);
  Real a = abs(base);
  if (a.is_zero()) return Real(0.0, bits);
  Real r = log(a) * Real(q, bits);
  return exp(r);
}

}  // namespace

Real evaluate_abs(const FactoredSpectralFunction& f, double lambda0, int bits) {
  Real x(exact_value(lambda0), bits);
  Real out = rational_power(x, f.mu0, bits);
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    out *= rational_power(factor_base(f, x, i, bits), f.factors[i].mu, bits);
  }
  return out;
}

Real evaluate_squared(const FactoredSpectralFunction& f, double lambda0, int bits) {
  Real x(exact_value(lambda0), bits);
  auto twice = [](const Rational& q) {
    Rational t = 2 * q;
    if (t.get_den() != 1 || t < 0) fail(ErrorKind::kInvalidArgument, "exponent is not a half-integer");
    return t.get_num().get_ui();
  };
  Real out = pow(x, twice(f.mu0));
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    out *= pow(factor_base(f, x, i, bits), twice(f.factors[i].mu));
  }
  return out;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

AmgmReport amgm_check(const Graph& g, double lambda0, int bits) {
  AmgmReport r;
  r.lambda0 = lambda0;
  Rational x = exact_value(lambda0);
  auto cls = signed_values(g, x, 20);
  for (const auto& v : cls.values) {
    if (v < 0) {
      r.status = CheckStatus::kSkipped;
      r.detail = "precondition unmet: some signed characteristic polynomial is negative at lambda0";
      return r;
    }
  }
  Rational alpha = matching_polynomial(g, MatchingMethod::kDirect).evaluate(x);
  Real beta_val = geometric_mean_evaluate(g, lambda0, bits);
  r.alpha = alpha.get_d();
  r.beta = beta_val.to_double();
  r.all_signings_agree = true;
  for (const auto& v : cls.values) {
    if (std::abs(Rational(v - cls.values.front()).get_d()) > 1e-9) r.all_signings_agree = false;
  }
  Real diff = Real(alpha, bits) - beta_val;
  const double d = diff.to_double();
  r.equality = std::abs(d) <= 1e-9;
  const bool inequality = d >= -1e-9;
  const bool consistent = r.equality == r.all_signings_agree;
  r.status = inequality && consistent ? CheckStatus::kPass : CheckStatus::kFail;
  r.detail = std::string(r.equality ? "equality" : "strict") + (inequality ? "" : "; alpha < beta") +
             (consistent ? "" : "; equality does not match agreement of the signed values");
  return r;
}

}  // namespace powerspec
