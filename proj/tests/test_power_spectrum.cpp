#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "powerspec/errors.hpp"
#include "powerspec/power_spectrum.hpp"
#include "powerspec/tensor_trace.hpp"

using namespace powerspec;

namespace {

const SpectralFactor* factor_near(const FactoredSpectralFunction& f, double sigma_sq) {
  for (const auto& s : f.factors)
    if (std::abs(s.sigma_sq - sigma_sq) < 1e-9) return &s;
  return nullptr;
}

std::vector<Graph> small_corpus() { return connected_graphs(4); }

}  // namespace

TEST_CASE("closed-form moment examples") {
  CHECK(script_S(builtin_graph("path:2"), 3, 3) == 9);
  CHECK(script_S(builtin_graph("path:2"), 4, 3) == 0);
  CHECK(script_S(builtin_graph("cycle:3"), 4, 2) == 18);
  CHECK(script_S(builtin_graph("path:2"), 6, 3) == 9);
  CHECK_THROWS_AS(script_S(builtin_graph("path:2"), 3, 1), Error);
}

TEST_CASE("closed-form moments at k = 2 are parity-closed counts") {
  for (const auto& g : connected_graphs(5))
    for (int d = 1; d <= 10; ++d) CHECK(script_S(g, d, 2) == Rational(parity_closed_count(g, d, ParityMethod::kDp)));
}

TEST_CASE("closed-form moments vanish off multiples of k") {
  for (const auto& g : small_corpus())
    for (int k = 3; k <= 5; ++k)
      for (int d = 1; d <= 12; ++d)
        if (d % k != 0) CHECK(script_S(g, d, k) == 0);
}

TEST_CASE("moment system examples") {
  MomentSystem k2 = build_system(builtin_graph("path:2"), 3);
  CHECK(k2.sigma_count() == 1);
  CHECK(k2.motif_count() == 1);
  REQUIRE(k2.M.size() == 1);
  REQUIRE(k2.M[0].size() == 1);
  CHECK(k2.M[0][0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k2.P == std::vector<std::vector<BigInt>>{{2}});
  CHECK(k2.N == std::vector<BigInt>{1});
  CHECK(k2.Dk == std::vector<Rational>{Rational(9, 8)});

  MomentSystem p3 = build_system(builtin_graph("path:3"), 3);
  CHECK(p3.sigma_count() == 2);
  CHECK(p3.sigma.values[0] == doctest::Approx(1.0));
  CHECK(p3.sigma.values[1] == doctest::Approx(2.0));
  CHECK(p3.motif_count() == 2);

  MomentSystem c3 = build_system(builtin_graph("cycle:3"), 3);
  CHECK(c3.sigma_count() == 3);
  CHECK(c3.motif_count() == 3);

  MomentSystem beta_sys = build_system(builtin_graph("cycle:3"), 2);
  for (const auto& w : beta_sys.Dk) CHECK(w == 1);
}

TEST_CASE("moment system structure") {
  for (const auto& g : small_corpus()) {
    MomentSystem sys = build_system(g, 3);
    for (int l = 1; l <= sys.sigma_count(); ++l) {
      for (int j = 0; j < sys.motif_count(); ++j) {
        const Graph& m = sys.motifs.entries[j].motif.graph;
        if (m.edge_count() > l) CHECK(sys.P[l - 1][j] == 0);
        CHECK(sys.P[l - 1][j] == covering_parity_closed_count(m, 2 * l));
        CHECK(sys.Dk[j] == motif_weight(m, 3));
      }
      for (int i = 0; i < sys.sigma_count(); ++i)
        CHECK(sys.M[l - 1][i] == doctest::Approx(std::pow(sys.sigma.values[i], l)).epsilon(1e-12));
    }
  }
}

TEST_CASE("single edge characteristic polynomials") {
  Graph k2 = builtin_graph("path:2");
  FactoredSpectralFunction f3 = char_poly_power(k2, 3);
  CHECK(f3.mu0 == 3);
  REQUIRE(f3.factors.size() == 1);
  CHECK(f3.factors[0].sigma_sq == 1.0);
  CHECK(f3.factors[0].mu == 3);
  CHECK(f3.total_degree() == 12);
  CHECK(f3.validation.degree_check);

  FactoredSpectralFunction f4 = char_poly_power(k2, 4);
  CHECK(f4.factors[0].mu == 16);
  CHECK(f4.mu0 == 44);

  for (int k = 3; k <= 5; ++k) {
    FactoredSpectralFunction f = char_poly_power(k2, k);
    CHECK(f.factors[0].mu == Rational(ipow(k, k - 2)));
    // first moment through the naive trace: k mu_1 = Tr_k
    CHECK(Rational(k) * f.factors[0].mu == naive_tensor_trace(power_hypergraph(k2, k), k));
  }
}

TEST_CASE("exponents reproduce naive traces") {
  for (const char* name : {"path:3", "cycle:3"}) {
    Graph g = builtin_graph(name);
    FactoredSpectralFunction f = char_poly_power(g, 3);
    for (int ell = 1; ell <= (g.edge_count() == 2 ? 2 : 1); ++ell) {
      double sum = 0;
      for (const auto& s : f.factors) sum += 3 * s.mu.get_d() * std::pow(s.sigma_sq, ell);
      double naive = naive_tensor_trace(power_hypergraph(g, 3), 3 * ell).get_d();
      CHECK(sum == doctest::Approx(naive).epsilon(1e-12));
    }
  }
}

TEST_CASE("pipeline invariants for k = 3, 4, 5") {
  for (const auto& g : small_corpus()) {
    for (int k = 3; k <= 5; ++k) {
      CAPTURE(format_edge_list(g));
      CAPTURE(k);
      FactoredSpectralFunction f = char_poly_power(g, k);
      CHECK(f.validation.degree_check);
      CHECK(f.validation.nonnegative);
      CHECK(f.validation.integral);
      CHECK(f.validation.moment_consistency);
      CHECK(f.max_residual <= 1e-6);
      CHECK(f.total_degree() == Rational(power_total_degree(g, k)));
      CHECK(f.mu0 >= 0);
      for (const auto& s : f.factors) {
        CHECK(s.mu.get_den() == 1);
        CHECK(s.mu >= 0);
        CHECK(s.residual <= 1e-6);
      }
      // exact moments against the closed form
      for (int ell = 1; ell <= 3; ++ell) {
        Real sum(0.0, 256);
        for (std::size_t i = 0; i < f.factors.size(); ++i)
          sum += Real(Rational(k) * f.factors[i].mu, 256) * pow(f.sigma_sq_precise[i], ell);
        Rational want = script_S(g, ell * k, k);
        double rel = std::abs((sum - Real(want, 256)).to_double()) / std::max(1.0, want.get_d());
        CHECK(rel < 1e-20);
      }
    }
  }
}

TEST_CASE("total degree formula") {
  CHECK(power_total_degree(builtin_graph("path:2"), 3) == 12);
  CHECK(power_total_degree(builtin_graph("path:2"), 4) == 4 * 27);
  // (3 + 3) * 2^5
  CHECK(power_total_degree(builtin_graph("cycle:3"), 3) == 192);
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(char_poly_power(builtin_graph("path:3"), 2), Error);
  CHECK_THROWS_AS(char_poly_power(Graph(4, {{0, 1}, {2, 3}}), 3), Error);
  CHECK_THROWS_AS(spectral_radius_multiplicity(Graph(4, {{0, 1}, {2, 3}}), 3), Error);
  SpectrumOptions tiny;
  tiny.max_exponent_bits = 8;
  CHECK_THROWS_AS(char_poly_power(builtin_graph("cycle:4"), 5, tiny), Error);
}

TEST_CASE("corrupted weights are caught") {
  SpectrumOptions bad;
  bad.corrupt_weights = true;
  for (const char* name : {"path:3", "cycle:3", "cycle:4"}) {
    bool caught = false;
    try {
      auto f = char_poly_power(builtin_graph(name), 3, bad);
      caught = !f.validation.integral || !f.validation.degree_check || !f.validation.moment_consistency;
    } catch (const Error&) {
      caught = true;
    }
    CHECK(caught);
  }
}

TEST_CASE("spectral radius multiplicity examples") {
  CHECK(spectral_radius_multiplicity(builtin_graph("path:2"), 3) == 3);
  CHECK(spectral_radius_multiplicity(builtin_graph("cycle:3"), 3) == 9);
  CHECK(spectral_radius_multiplicity(builtin_graph("path:2"), 4) == 16);
  CHECK(char_poly_power(builtin_graph("path:2"), 4).factors[0].mu == 16);
  auto f = char_poly_power(builtin_graph("cycle:3"), 3);
  const SpectralFactor* top = factor_near(f, 4.0);
  REQUIRE(top != nullptr);
  CHECK(top->mu == 9);
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius(builtin_graph("cycle:3")).to_double() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(spectral_radius(builtin_graph("complete:4")).to_double() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(spectral_radius(builtin_graph("path:3")).to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  Real r = spectral_radius(builtin_graph("path:3"), 512);
  Real err = abs(r * r - Real(2.0, 512));
  CHECK(err.to_double() < 1e-140);
}

TEST_CASE("radius cluster carries the predicted multiplicity") {
  for (const auto& g : small_corpus()) {
    for (int k = 3; k <= 4; ++k) {
      auto f = char_poly_power(g, k);
      auto idx = radius_factor(f, g);
      REQUIRE(idx.has_value());
      CHECK(f.factors[*idx].mu == Rational(spectral_radius_multiplicity(g, k)));
    }
  }
}

TEST_CASE("beta examples") {
  auto c3 = beta(builtin_graph("cycle:3"));
  CHECK(c3.k == 2);
  CHECK(c3.mu0 == 0);
  REQUIRE(factor_near(c3, 1.0) != nullptr);
  REQUIRE(factor_near(c3, 4.0) != nullptr);
  CHECK(factor_near(c3, 1.0)->mu == 1);
  CHECK(factor_near(c3, 4.0)->mu == Rational(1, 2));
  CHECK(factor_near(c3, 2.0)->mu == 0);
  CHECK_FALSE(c3.is_polynomial());

  auto k2 = beta(builtin_graph("path:2"));
  CHECK(k2.mu0 == 0);
  CHECK(factor_near(k2, 1.0)->mu == 1);
  CHECK(k2.is_polynomial());

  auto p3 = beta(builtin_graph("path:3"));
  CHECK(p3.mu0 == 1);
  CHECK(factor_near(p3, 2.0)->mu == 1);
  CHECK(factor_near(p3, 1.0)->mu == 0);
}

TEST_CASE("beta invariants") {
  for (const auto& g : small_corpus()) {
    CAPTURE(format_edge_list(g));
    auto b = beta(g);
    CHECK(b.validation.moment_consistency);
    CHECK(b.validation.degree_check);
    CHECK(b.total_degree() == g.vertex_count());
    CHECK(b.is_polynomial() == g.is_forest());
    for (const auto& s : b.factors) {
      BigInt den = s.mu.get_den();
      CHECK(den <= ipow(2, g.edge_count()));
      CHECK(mpz_popcount(den.get_mpz_t()) == 1);
    }
    auto idx = radius_factor(b, g);
    REQUIRE(idx.has_value());
    CHECK(b.factors[*idx].mu == rpow(Rational(2), -g.edge_count() + g.vertex_count() - 1));
    // 2 sum mu_i sigma_i^{2l} = P_{2l}
    for (int ell = 1; ell <= 4; ++ell) {
      Real sum(0.0, 256);
      for (std::size_t i = 0; i < b.factors.size(); ++i)
        sum += Real(Rational(2) * b.factors[i].mu, 256) * pow(b.sigma_sq_precise[i], ell);
      BigInt want = parity_closed_count(g, 2 * ell, ParityMethod::kSignedMean);
      CHECK(std::abs((sum - Real(want, 256)).to_double()) < 1e-40);
    }
  }
}

TEST_CASE("limit diagnostic approaches the radius multiplicity") {
  for (const char* name : {"path:2", "path:3", "cycle:3"}) {
    Graph g = builtin_graph(name);
    auto diag = limit_diagnostic(g, 3, 30);
    CHECK(diag.n_rho == 3 * spectral_radius_multiplicity(g, 3));
    REQUIRE(diag.ratios.size() == 30);
    CHECK(std::abs(diag.ratios.back() - diag.n_rho.get_d()) <= 0.05 * diag.n_rho.get_d());
    CHECK(diag.relative_gap_at_end <= 0.05);
  }
  // K2: P_{2l} = 2 and rho = 1, so every ratio is already n_rho = 9
  auto k2 = limit_diagnostic(builtin_graph("path:2"), 3, 5);
  for (double r : k2.ratios) CHECK(r == doctest::Approx(9.0));
  CHECK(k2.non_increasing);
}
