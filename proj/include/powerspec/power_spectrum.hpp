#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "powerspec/graph.hpp"
#include "powerspec/numeric.hpp"
#include "powerspec/signed_graph.hpp"
#include "powerspec/walks.hpp"

namespace powerspec {

struct SpectrumOptions {
  double tol = 1e-8;               // clustering radius on sigma^2
  int precision_bits = 256;        // starting precision of the solve
  int max_precision_bits = 16384;  // escalation ceiling
  double max_residual = 1e-6;      // largest accepted distance from an integer (or dyadic) exponent
  std::uint64_t max_exponent_bits = 1u << 20;  // bit-size budget for (k-1)^{...}
  WalkBudget walk_budget{};
  // Multiplies the weight of the largest motif by k; only used to check that
  // the verification suite notices a broken system.
  bool corrupt_weights = false;
};

// S_d(k) in closed form from covering parity-closed walk counts and the
// motif census. Zero when k does not divide d; equals P_d when k = 2.
Rational script_S(const Graph& g, int d, int k, const SpectrumOptions& opts = {});

struct MomentSystem {
  int k = 0;
  SigmaSet sigma;
  MotifCensus motifs;                      // max_edges = sigma count
  std::vector<std::vector<double>> M;      // M[l-1][i] = sigma_i^{2l}, display only
  std::vector<std::vector<BigInt>> P;      // P[l-1][j] = p_{2l}(motif_j)
  std::vector<BigInt> N;                   // motif counts
  std::vector<Rational> Dk;                // motif weights; all 1 when k = 2
  std::vector<Rational> rhs;               // sum_j P[l][j] Dk[j] N[j]
  double condition_estimate = 0.0;         // infinity-norm condition of M (filled by the solve)

  int sigma_count() const { return static_cast<int>(sigma.values.size()); }
  int motif_count() const { return static_cast<int>(N.size()); }
};

MomentSystem build_system(const Graph& g, int k, const SpectrumOptions& opts = {});

struct SpectralFactor {
  double sigma_sq = 0.0;  // refined value rounded to double
  SigmaWitness witness;
  Rational mu;
  double residual = 0.0;  // |solved exponent - mu|
};

struct SpectrumValidation {
  bool degree_check = false;       // mu0 >= 0 and mu0 + k sum mu = total degree
  bool nonnegative = false;        // every mu_i >= 0
  bool integral = false;           // every exponent is an integer
  bool moment_consistency = false;
  double max_moment_error = 0.0;   // largest relative moment mismatch
  int moments_checked = 0;
};

// lambda^{mu0} prod (lambda^k - sigma_i^2)^{mu_i}.
struct FactoredSpectralFunction {
  int k = 0;
  Rational mu0;
  std::vector<SpectralFactor> factors;  // ascending sigma_sq, zero exponents included
  double condition_estimate = 0.0;
  int precision_bits = 0;               // precision at which the solve was accepted
  double max_residual = 0.0;
  SpectrumValidation validation;
  // High-precision sigma^2, aligned with factors.
  std::vector<Real> sigma_sq_precise;

  // Sum of mu_i times k plus mu0.
  Rational total_degree() const;
  // True when every exponent (including mu0) is a non-negative integer.
  bool is_polynomial() const;
};

// (|V|+(k-2)|E|)(k-1)^{|V|+(k-2)|E|-1}: the degree of the characteristic
// polynomial of the k-power hypergraph.
BigInt power_total_degree(const Graph& g, int k);

FactoredSpectralFunction char_poly_power(const Graph& g, int k, const SpectrumOptions& opts = {});
FactoredSpectralFunction beta(const Graph& g, const SpectrumOptions& opts = {});

// k^{|E|(k-3)+|V|-1}.
BigInt spectral_radius_multiplicity(const Graph& g, int k);

// Largest adjacency eigenvalue of g, refined to `bits`.
Real spectral_radius(const Graph& g, int bits = 256);
// Index of the factor whose sigma^2 is rho(G)^2, if any.
std::optional<std::size_t> radius_factor(const FactoredSpectralFunction& f, const Graph& g, double tol = 1e-8);

struct LimitDiagnostic {
  int k = 0;
  BigInt n_rho;                 // k * spectral_radius_multiplicity
  std::vector<double> ratios;   // ratios[l-1] for l = 1..max_ell
  bool non_increasing = false;  // over the whole computed range
  double relative_gap_at_end = 0.0;
};

// 2^{|E|-|V|} k^{|E|(k-3)+|V|} P_{2l} / rho^{2l} for l = 1..max_ell.
LimitDiagnostic limit_diagnostic(const Graph& g, int k, int max_ell, const SpectrumOptions& opts = {});

// Drops cached walk series and sigma sets.
void clear_spectrum_caches();

}  // namespace powerspec
