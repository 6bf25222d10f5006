#include "powerspec/power_spectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "powerspec/errors.hpp"
#include "powerspec/polynomial.hpp"
#include "powerspec/tensor_trace.hpp"

namespace powerspec {

namespace {

std::mutex cache_mutex;
std::map<std::vector<std::uint8_t>, std::vector<BigInt>> covering_cache;
std::map<std::string, SigmaSet> sigma_cache;

// p_0 .. p_max_d of a canonical motif, cached by certificate.
std::vector<BigInt> covering_series(const Motif& motif, int max_d, const WalkBudget& budget) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = covering_cache.find(motif.certificate);
    if (it != covering_cache.end() && static_cast<int>(it->second.size()) > max_d) {
      return {it->second.begin(), it->second.begin() + max_d + 1};
    }
  }
  auto series = covering_parity_closed_series(motif.graph, max_d, budget);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = covering_cache[motif.certificate];
  if (slot.size() < series.size()) slot = series;
  return series;
}

std::string graph_key(const Graph& g) { return format_edge_list(g); }

SigmaSet cached_sigma_set(const Graph& g, double tol) {
  const std::string key = graph_key(g) + "|" + std::to_string(tol);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = sigma_cache.find(key);
    if (it != sigma_cache.end()) return it->second;
  }
  SigmaSet s = sigma_set(g, SubgraphMode::kAllSubgraphs, tol);
  std::lock_guard<std::mutex> lock(cache_mutex);
  sigma_cache.emplace(key, s);
  return s;
}

void check_exponent_budget(long exponent, int k, const SpectrumOptions& opts) {
  if (exponent <= 0 || k <= 2) return;
  const double bits = static_cast<double>(exponent) * std::log2(static_cast<double>(k - 1));
  if (bits > static_cast<double>(opts.max_exponent_bits)) {
    fail(ErrorKind::kBudget, "(k-1)^" + std::to_string(exponent) + " exceeds the bit-size budget");
  }
}

long hyper_exponent(const Graph& g, int k) {
  return static_cast<long>(g.vertex_count()) + static_cast<long>(k - 2) * g.edge_count() - 1;
}

// sum over motifs with at most `ell` edges of weight * p_{2 ell} * count.
Rational motif_sum(const Graph& g, int ell, int k, const SpectrumOptions& opts) {
  const int max_edges = std::min(ell, g.edge_count());
  if (max_edges < 1) return 0;
  Rational sum = 0;
  for (const auto& entry : connected_subgraph_census(g, max_edges).entries) {
    auto p = covering_series(entry.motif, 2 * ell, opts.walk_budget);
    if (p.back() == 0) continue;
    Rational w = k == 2 ? Rational(1) : motif_weight(entry.motif.graph, k);
    sum += w * Rational(p.back()) * Rational(BigInt(static_cast<unsigned long>(entry.count)));
  }
  return sum;
}

}  // namespace

void clear_spectrum_caches() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  covering_cache.clear();
  sigma_cache.clear();
}

BigInt power_total_degree(const Graph& g, int k) {
  const long e = hyper_exponent(g, k);
  return BigInt(e + 1) * ipow(BigInt(k - 1), static_cast<unsigned long>(std::max(0L, e)));
}

Rational script_S(const Graph& g, int d, int k, const SpectrumOptions& opts) {
  if (k < 2) fail(ErrorKind::kInvalidArgument, "k must be at least 2");
  if (d < 0) fail(ErrorKind::kInvalidArgument, "moment order must be non-negative");
  if (d % k != 0) return 0;
  if (d == 0) return k == 2 ? Rational(g.vertex_count()) : Rational(power_total_degree(g, k));
  const long e = hyper_exponent(g, k);
  check_exponent_budget(e, k, opts);
  Rational prefactor = k == 2 ? Rational(1) : rpow(Rational(k - 1), e);
  return prefactor * motif_sum(g, d / k, k, opts);
}

MomentSystem build_system(const Graph& g, int k, const SpectrumOptions& opts) {
  if (k < 2) fail(ErrorKind::kInvalidArgument, "k must be at least 2");
  MomentSystem sys;
  sys.k = k;
  sys.sigma = cached_sigma_set(g, opts.tol);
  const int s = sys.sigma_count();
  const int max_edges = std::min(s, g.edge_count());
  if (max_edges >= 1) sys.motifs = connected_subgraph_census(g, max_edges);
  sys.motifs.max_edges = s;
  const int chi = static_cast<int>(sys.motifs.entries.size());

  sys.M.assign(s, std::vector<double>(s));
  for (int l = 1; l <= s; ++l)
    for (int i = 0; i < s; ++i) sys.M[l - 1][i] = std::pow(sys.sigma.values[i], l);

  sys.P.assign(s, std::vector<BigInt>(chi));
  for (int j = 0; j < chi; ++j) {
    const auto& entry = sys.motifs.entries[j];
    auto p = covering_series(entry.motif, 2 * s, opts.walk_budget);
    for (int l = 1; l <= s; ++l) sys.P[l - 1][j] = p[2 * l];
    sys.N.push_back(BigInt(static_cast<unsigned long>(entry.count)));
    sys.Dk.push_back(k == 2 ? Rational(1) : motif_weight(entry.motif.graph, k));
  }
  if (opts.corrupt_weights && chi > 0) sys.Dk.back() *= k;

  sys.rhs.assign(s, Rational(0));
  for (int l = 0; l < s; ++l)
    for (int j = 0; j < chi; ++j) sys.rhs[l] += Rational(sys.P[l][j]) * sys.Dk[j] * Rational(sys.N[j]);
  return sys;
}

namespace {

// LU factors of M at one precision, with the refined sigma^2.
struct SolveContext {
  int bits = 0;
  std::vector<Real> s;
  std::vector<std::vector<Real>> lu;
  std::vector<int> perm;
  double condition = 0.0;
};

Real refine_sigma_sq(const SigmaWitness& w, int bits) {
  IntPolynomial cp = char_poly_exact(SignedGraph(w.subgraph, w.signs));
  RationalPolynomial sf = squarefree_part(RationalPolynomial(cp));
  Real root = refine_simple_root(sf, Real(w.eigenvalue, bits + 64));
  Real sq = root * root;
  if (std::abs(sq.to_double() - w.eigenvalue * w.eigenvalue) > 1e-6 * std::max(1.0, w.eigenvalue * w.eigenvalue)) {
    fail(ErrorKind::kNumeric, "refined eigenvalue drifted away from its cluster");
  }
  return sq;
}

std::vector<Real> lu_solve(const SolveContext& ctx, const std::vector<Real>& b) {
  const int n = static_cast<int>(ctx.s.size());
  std::vector<Real> x;
  x.reserve(n);
  for (int i = 0; i < n; ++i) x.push_back(b[ctx.perm[i]]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= ctx.lu[i][j] * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= ctx.lu[i][j] * x[j];
    x[i] /= ctx.lu[i][i];
  }
  return x;
}

std::shared_ptr<SolveContext> make_context(const SigmaSet& sigma, int bits) {
  auto ctx = std::make_shared<SolveContext>();
  ctx->bits = bits;
  const int n = static_cast<int>(sigma.values.size());
  for (const auto& w : sigma.witnesses) ctx->s.push_back(refine_sigma_sq(w, bits));
  ctx->lu.assign(n, {});
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) ctx->lu[l].push_back(pow(ctx->s[i], static_cast<unsigned long>(l + 1)));
  }
  // Infinity norm of M before factoring.
  Real norm(0.0, bits);
  for (int l = 0; l < n; ++l) {
    Real row(0.0, bits);
    for (int i = 0; i < n; ++i) row += abs(ctx->lu[l][i]);
    if (norm < row) norm = row;
  }
  ctx->perm.resize(n);
  for (int i = 0; i < n; ++i) ctx->perm[i] = i;
  auto& a = ctx->lu;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (abs(a[pivot][c]) < abs(a[r][c])) pivot = r;
    if (a[pivot][c].is_zero()) fail(ErrorKind::kNumeric, "moment matrix is singular");
    std::swap(a[c], a[pivot]);
    std::swap(ctx->perm[c], ctx->perm[pivot]);
    for (int r = c + 1; r < n; ++r) {
      a[r][c] /= a[c][c];
      for (int j = c + 1; j < n; ++j) a[r][j] -= a[r][c] * a[c][j];
    }
  }
  // ||M^{-1}||_inf from the explicit inverse.
  std::vector<Real> inv_rows(n, Real(0.0, bits));
  for (int col = 0; col < n; ++col) {
    std::vector<Real> e(n, Real(0.0, bits));
    e[col] = Real(1.0, bits);
    auto x = lu_solve(*ctx, e);
    for (int r = 0; r < n; ++r) inv_rows[r] += abs(x[r]);
  }
  Real inv_norm(0.0, bits);
  for (const auto& r : inv_rows)
    if (inv_norm < r) inv_norm = r;
  double cond = (norm * inv_norm).to_double();
  ctx->condition = std::isfinite(cond) ? cond : DBL_MAX;
  return ctx;
}

struct Solution {
  std::vector<Rational> mu;
  std::vector<double> residual;
  double max_residual = 0.0;
  std::shared_ptr<SolveContext> ctx;
};

// Exponents from the system at one precision. `scale` multiplies M^{-1} rhs
// and `denominator` is the grid the exponents are snapped to.
Solution solve_at(const MomentSystem& sys, int bits, const Rational& scale, const BigInt& denominator) {
  Solution out;
  out.ctx = make_context(sys.sigma, bits);
  const int n = sys.sigma_count();
  std::vector<Real> b;
  for (int l = 0; l < n; ++l) b.emplace_back(sys.rhs[l], bits);
  auto x = lu_solve(*out.ctx, b);
  Real sc(scale * Rational(denominator), bits);
  for (int i = 0; i < n; ++i) {
    Real v = x[i] * sc;
    BigInt rounded = v.round();
    double res = (abs(v - Real(rounded, bits)) / Real(denominator, bits)).to_double();
    Rational mu(rounded, denominator);
    mu.canonicalize();
    out.mu.push_back(mu);
    out.residual.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

FactoredSpectralFunction assemble(const Graph& g, int k, const SpectrumOptions& opts) {
  if (opts.precision_bits < 64) fail(ErrorKind::kInvalidArgument, "precision must be at least 64 bits");
  const long e = hyper_exponent(g, k);
  if (k >= 3) check_exponent_budget(e, k, opts);
  MomentSystem sys = build_system(g, k, opts);
  const int n = sys.sigma_count();

  Rational scale = k == 2 ? Rational(1, 2) : rpow(Rational(k - 1), e) / Rational(k);
  BigInt denominator = k == 2 ? BigInt(1) << g.edge_count() : BigInt(1);

  FactoredSpectralFunction f;
  f.k = k;
  Solution sol;
  int bits = opts.precision_bits;
  if (n > 0) {
    for (;;) {
      bool singular = false;
      try {
        sol = solve_at(sys, bits, scale, denominator);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::kNumeric) throw;
        singular = true;
      }
      if (!singular && sol.max_residual <= opts.max_residual) break;
      // Once the precision comfortably exceeds the conditioning of M, a large
      // residual is a property of the system, not of rounding.
      const bool well_resolved = !singular && bits >= 2 * (std::log2(std::max(sol.ctx->condition, 1.0)) + 64);
      if (well_resolved || bits * 2 > opts.max_precision_bits) {
        if (singular) fail(ErrorKind::kNumeric, "moment system is singular up to " + std::to_string(bits) + " bits");
        fail(ErrorKind::kNumeric, "exponent rounding residual " + std::to_string(sol.max_residual) +
                                      " exceeds the limit at " + std::to_string(bits) + " bits");
      }
      bits *= 2;
    }
    f.condition_estimate = sol.ctx->condition;
  }
  f.precision_bits = bits;
  f.max_residual = sol.max_residual;

  Rational total = k == 2 ? Rational(g.vertex_count()) : Rational(power_total_degree(g, k));
  Rational mu_sum = 0;
  for (int i = 0; i < n; ++i) {
    SpectralFactor fac;
    fac.sigma_sq = sol.ctx->s[i].to_double();
    fac.witness = sys.sigma.witnesses[i];
    fac.mu = sol.mu[i];
    fac.residual = sol.residual[i];
    mu_sum += fac.mu;
    f.factors.push_back(std::move(fac));
    f.sigma_sq_precise.push_back(sol.ctx->s[i]);
  }
  f.mu0 = total - Rational(k) * mu_sum;

  // Validation.
  auto& v = f.validation;
  v.nonnegative = f.mu0 >= 0;
  v.integral = f.mu0.get_den() == 1;
  for (const auto& fac : f.factors) {
    v.nonnegative = v.nonnegative && fac.mu >= 0;
    v.integral = v.integral && fac.mu.get_den() == 1;
  }
  v.degree_check = f.mu0 >= 0 && f.total_degree() == total && (k == 2 || f.mu0.get_den() == 1);

  const int checks = std::min(2 * n, 8);
  const double tolerance = k == 2 ? 1e-30 : 1e-6;
  v.moment_consistency = true;
  v.moments_checked = checks;
  for (int l = 1; l <= checks; ++l) {
    Real lhs(0.0, bits);
    for (int i = 0; i < n; ++i) {
      lhs += Real(f.factors[i].mu, bits) * pow(f.sigma_sq_precise[i], static_cast<unsigned long>(l));
    }
    lhs *= Real(BigInt(k), bits);
    Rational expected = k == 2 ? Rational(parity_closed_series(g, 2 * l, opts.walk_budget).back())
                               : script_S(g, l * k, k, opts);
    Real exp_r(expected, bits);
    Real denom = abs(exp_r);
    if (denom < Real(1.0, bits)) denom = Real(1.0, bits);
    double err = (abs(lhs - exp_r) / denom).to_double();
    v.max_moment_error = std::max(v.max_moment_error, err);
    if (!(err <= tolerance)) v.moment_consistency = false;
  }
  return f;
}

}  // namespace

Rational FactoredSpectralFunction::total_degree() const {
  Rational sum = mu0;
  for (const auto& fac : factors) sum += Rational(k) * fac.mu;
  return sum;
}

bool FactoredSpectralFunction::is_polynomial() const {
  if (mu0 < 0 || mu0.get_den() != 1) return false;
  return std::all_of(factors.begin(), factors.end(),
                     [](const SpectralFactor& f) { return f.mu >= 0 && f.mu.get_den() == 1; });
}

FactoredSpectralFunction char_poly_power(const Graph& g, int k, const SpectrumOptions& opts) {
  if (k < 3) fail(ErrorKind::kInvalidArgument, "k must be at least 3 for a power hypergraph");
  if (!g.is_connected()) fail(ErrorKind::kInvalidArgument, "graph must be connected");
  return assemble(g, k, opts);
}

FactoredSpectralFunction beta(const Graph& g, const SpectrumOptions& opts) {
  if (g.edge_count() > 62) fail(ErrorKind::kBudget, "too many edges for the exponent grid");
  return assemble(g, 2, opts);
}

BigInt spectral_radius_multiplicity(const Graph& g, int k) {
  if (k < 3) fail(ErrorKind::kInvalidArgument, "k must be at least 3");
  if (!g.is_connected()) fail(ErrorKind::kInvalidArgument, "graph must be connected");
  const long e = static_cast<long>(g.edge_count()) * (k - 3) + g.vertex_count() - 1;
  return ipow(BigInt(k), static_cast<unsigned long>(e));
}

Real spectral_radius(const Graph& g, int bits) {
  if (g.edge_count() == 0) return Real(0.0, bits);
  SignedGraph sg = SignedGraph::all_positive(g);
  double guess = eigenvalues(sg).eigenvalues.front();
  RationalPolynomial sf = squarefree_part(RationalPolynomial(char_poly_exact(sg)));
  return refine_simple_root(sf, Real(guess, bits));
}

std::optional<std::size_t> radius_factor(const FactoredSpectralFunction& f, const Graph& g, double tol) {
  const double rho = spectral_radius(g, 128).to_double();
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (std::abs(f.factors[i].sigma_sq - rho * rho) <= tol) return i;
  }
  return std::nullopt;
}

LimitDiagnostic limit_diagnostic(const Graph& g, int k, int max_ell, const SpectrumOptions& opts) {
  if (max_ell < 1) fail(ErrorKind::kInvalidArgument, "need at least one term");
  LimitDiagnostic out;
  out.k = k;
  out.n_rho = BigInt(k) * spectral_radius_multiplicity(g, k);
  const int bits = std::max(opts.precision_bits, 256);
  const long e = g.edge_count(), v = g.vertex_count();
  Rational weight = rpow(Rational(2), e - v) * rpow(Rational(k), e * (k - 3) + v);
  Real w(weight, bits);
  Real rho = spectral_radius(g, bits);
  Real rho_sq = rho * rho;
  auto series = parity_closed_series(g, 2 * max_ell, opts.walk_budget);
  Real power(1.0, bits);
  Real prev(0.0, bits);
  out.non_increasing = true;
  for (int l = 1; l <= max_ell; ++l) {
    power *= rho_sq;
    Real ratio = w * Real(series[2 * l], bits) / power;
    if (l > 1 && ratio > prev * Real(1.0 + 1e-12, bits)) out.non_increasing = false;
    out.ratios.push_back(ratio.to_double());
    prev = ratio;
  }
  const double target = Real(out.n_rho, 64).to_double();
  out.relative_gap_at_end = std::abs(out.ratios.back() - target) / target;
  return out;
}

}  // namespace powerspec
