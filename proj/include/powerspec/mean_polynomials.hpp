#pragma once

#include <string>
#include <vector>

#include "powerspec/graph.hpp"
#include "powerspec/numeric.hpp"
#include "powerspec/polynomial.hpp"
#include "powerspec/power_spectrum.hpp"

namespace powerspec {

enum class MatchingMethod { kDirect, kSignedMean };

// sum_r (-1)^r m_r lambda^{n-2r}.
RationalPolynomial matching_polynomial(const Graph& g, MatchingMethod method, int max_signed_edges = 20);

// Number of r-edge matchings for r = 0..n/2.
std::vector<BigInt> matching_counts(const Graph& g);

// (prod over all signings of phi_pi(lambda0))^{2^{-|E|}}, with each phi_pi
// evaluated exactly at the rational value of lambda0.
Real geometric_mean_evaluate(const Graph& g, double lambda0, int bits = 256, int max_signed_edges = 20);

// |lambda0|^{mu0} prod |lambda0^k - sigma_i^2|^{mu_i}.
Real evaluate_abs(const FactoredSpectralFunction& f, double lambda0, int bits = 256);
// f(lambda0)^2; needs every 2 mu_i to be an integer.
Real evaluate_squared(const FactoredSpectralFunction& f, double lambda0, int bits = 256);

enum class CheckStatus { kPass, kFail, kSkipped };
const char* to_string(CheckStatus s);

struct AmgmReport {
  CheckStatus status = CheckStatus::kSkipped;
  double lambda0 = 0.0;
  double alpha = 0.0;            // matching polynomial at lambda0
  double beta = 0.0;             // geometric mean at lambda0
  bool all_signings_agree = false;
  bool equality = false;         // |alpha - beta| <= 1e-9
  std::string detail;
};

AmgmReport amgm_check(const Graph& g, double lambda0, int bits = 256);

}  // namespace powerspec
