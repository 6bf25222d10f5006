#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "powerspec/errors.hpp"
#include "powerspec/signed_graph.hpp"

using namespace powerspec;

namespace {

IntPolynomial poly(std::vector<long> c) {
  IntPolynomial p;
  for (long v : c) p.coefficients.emplace_back(v);
  return p;
}

SignedGraph c3_with(std::vector<int> signs) { return SignedGraph(builtin_graph("cycle:3"), std::move(signs)); }

// Sign products of fundamental cycles of a BFS tree rooted at each component's
// smallest vertex, one per non-tree edge in edge order.
std::vector<int> fundamental_cycle_signs(const SignedGraph& sg) {
  const Graph& g = sg.base();
  const int n = g.vertex_count();
  std::vector<int> parent(n, -2), parent_sign(n, 1), potential(n, 1);
  std::vector<bool> tree(g.edge_count(), false);
  auto inc = g.incident_edges();
  for (int s = 0; s < n; ++s) {
    if (parent[s] != -2) continue;
    parent[s] = -1;
    std::vector<int> queue{s};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int v = queue[h];
      for (int e : inc[v]) {
        int u = g.edges()[e].u == v ? g.edges()[e].v : g.edges()[e].u;
        if (parent[u] != -2) continue;
        parent[u] = v;
        tree[e] = true;
        potential[u] = potential[v] * sg.signs()[e];
        queue.push_back(u);
      }
    }
  }
  std::vector<int> out;
  for (int e = 0; e < g.edge_count(); ++e)
    if (!tree[e]) out.push_back(potential[g.edges()[e].u] * potential[g.edges()[e].v] * sg.signs()[e]);
  return out;
}

}  // namespace

TEST_CASE("signing enumeration counts") {
  CHECK(enumerate_signings(builtin_graph("path:2"), false).size() == 2);
  CHECK(enumerate_signings(builtin_graph("cycle:3"), false).size() == 8);
  CHECK(enumerate_signings(builtin_graph("cycle:3"), true).size() == 2);
  CHECK(enumerate_signings(builtin_graph("path:3"), true).size() == 1);
  CHECK(enumerate_signings(builtin_graph("complete:4"), true).size() == 8);
  // two components: 2^{|E|-|V|+c}
  Graph two_triangles(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  CHECK(enumerate_signings(two_triangles, true).size() == 4);
  CHECK_THROWS_AS(enumerate_signings(builtin_graph("complete:7"), false), Error);
  CHECK_NOTHROW(enumerate_signings(builtin_graph("complete:6"), true));
}

TEST_CASE("triangle signings split into two spectra") {
  std::set<std::vector<BigInt>> polys;
  for (const auto& sg : enumerate_signings(builtin_graph("cycle:3"), false))
    polys.insert(char_poly_exact(sg).coefficients);
  CHECK(polys.size() == 2);
}

TEST_CASE("switching representatives have distinct cycle signs") {
  for (const char* name : {"cycle:4", "complete:4", "complete:5", "path:4"}) {
    Graph g = builtin_graph(name);
    auto reps = enumerate_signings(g, true);
    CHECK(reps.size() == (std::size_t{1} << g.cyclomatic_number()));
    std::set<std::vector<int>> seen;
    for (const auto& sg : reps) seen.insert(fundamental_cycle_signs(sg));
    CHECK(seen.size() == reps.size());
  }
}

TEST_CASE("characteristic polynomial examples") {
  CHECK(char_poly_exact(SignedGraph::all_positive(builtin_graph("path:2"))) == poly({-1, 0, 1}));
  CHECK(char_poly_exact(c3_with({1, 1, 1})) == poly({-2, -3, 0, 1}));
  CHECK(char_poly_exact(c3_with({1, 1, -1})) == poly({2, -3, 0, 1}));
}

TEST_CASE("characteristic polynomial matches permutation expansion") {
  std::mt19937 rng(5);
  for (const auto& g : connected_graphs(5)) {
    for (const auto& sg : enumerate_signings(g, false)) {
      if (rng() % 8 != 0) continue;
      auto expected = oracle::char_poly_leibniz(sg.adjacency_matrix());
      CHECK(char_poly_exact(sg).coefficients == expected);
    }
  }
}

TEST_CASE("eigenvalue examples") {
  auto near = [](const std::vector<double>& got, std::vector<double> want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
  };
  near(eigenvalues(c3_with({1, 1, 1})).eigenvalues, {2, -1, -1});
  near(eigenvalues(c3_with({1, 1, -1})).eigenvalues, {1, 1, -2});
  near(eigenvalues(SignedGraph::all_positive(builtin_graph("path:2"))).eigenvalues, {1, -1});
}

TEST_CASE("eigenvalue residuals and trace checks") {
  std::mt19937 rng(9);
  for (const auto& g : connected_graphs(5)) {
    auto signings = enumerate_signings(g, false);
    const auto& sg = signings[rng() % signings.size()];
    const double tol = 1e-10;
    RealSpectrum s = eigenvalues(sg, tol);
    CHECK(s.eigenvalues.size() == static_cast<std::size_t>(g.vertex_count()));
    CHECK(s.residual_bound <= tol);
    CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
    double sum = 0, squares = 0;
    for (double v : s.eigenvalues) {
      sum += v;
      squares += v * v;
    }
    CHECK(std::abs(sum) <= tol);
    CHECK(std::abs(squares - 2 * g.edge_count()) <= tol);
  }
  CHECK_THROWS_AS(eigenvalues(c3_with({1, 1, 1}), 0.0), Error);
}

TEST_CASE("spectral moment examples") {
  CHECK(signed_spectral_moment(c3_with({1, 1, 1}), 3) == 6);
  CHECK(signed_spectral_moment(c3_with({1, -1, 1}), 3) == -6);
  CHECK(signed_spectral_moment(SignedGraph::all_positive(builtin_graph("complete:5")), 0) == 5);
}

TEST_CASE("moments agree with Newton identities and companion traces") {
  for (const auto& g : connected_graphs(4)) {
    for (const auto& sg : enumerate_signings(g, false)) {
      const int n = g.vertex_count();
      IntPolynomial cp = char_poly_exact(sg);
      auto newton = power_sums(cp, 2 * n);
      auto companion = oracle::companion_power_sums(cp.coefficients, 2 * n);
      auto series = signed_moment_series(sg, 2 * n);
      for (int d = 1; d <= 2 * n; ++d) {
        CHECK(newton[d - 1] == series[d]);
        CHECK(companion[d - 1] == series[d]);
        CHECK(series[d] == oracle::trace_power(sg.adjacency_matrix(), d));
      }
    }
  }
}

TEST_CASE("switching leaves spectra unchanged") {
  std::mt19937 rng(13);
  for (const auto& g : connected_graphs(5)) {
    auto signings = enumerate_signings(g, false);
    const auto& sg = signings[rng() % signings.size()];
    std::vector<int> diag(g.vertex_count());
    for (int& d : diag) d = rng() % 2 ? 1 : -1;
    SignedGraph sw = sg.switched(diag);
    CHECK(char_poly_exact(sw) == char_poly_exact(sg));
    CHECK(is_balanced(sw) == is_balanced(sg));
    auto a = eigenvalues(sg).eigenvalues, b = eigenvalues(sw).eigenvalues;
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("balance examples") {
  CHECK(is_balanced(c3_with({1, 1, 1})));
  CHECK_FALSE(is_balanced(c3_with({1, -1, 1})));
  CHECK(is_balanced(c3_with({-1, -1, 1})));
  for (const auto& sg : enumerate_signings(builtin_graph("star:5"), false)) CHECK(is_balanced(sg));
}

TEST_CASE("signed spectral radius bounds") {
  const double tol = 1e-9;
  for (const auto& g : connected_graphs(5)) {
    double rho = eigenvalues(SignedGraph::all_positive(g)).eigenvalues.front();
    for (const auto& sg : enumerate_signings(g, false)) {
      auto ev = eigenvalues(sg).eigenvalues;
      CHECK(ev.front() <= rho + tol);
      CHECK(-ev.back() <= rho + tol);
      CHECK((std::abs(ev.front() - rho) <= tol) == is_balanced(sg));
      CHECK((std::abs(ev.back() + rho) <= tol) == is_balanced(sg.negated()));
    }
  }
}

TEST_CASE("sigma set examples") {
  auto values = [](const char* name) { return sigma_set(builtin_graph(name), SubgraphMode::kAllSubgraphs).values; };
  auto k2 = values("path:2");
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == doctest::Approx(1.0).epsilon(1e-14));
  auto c3 = values("cycle:3");
  REQUIRE(c3.size() == 3);
  CHECK(c3[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c3[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c3[2] == doctest::Approx(4.0).epsilon(1e-14));
  auto p3 = values("path:3");
  REQUIRE(p3.size() == 2);
  CHECK(p3[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("sigma set covers every signed subgraph eigenvalue") {
  for (const char* name : {"complete:4", "cycle:5", "star:4"}) {
    Graph g = builtin_graph(name);
    SigmaSet s = sigma_set(g, SubgraphMode::kAllSubgraphs);
    REQUIRE(s.witnesses.size() == s.values.size());
    for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i] - s.values[i - 1] > s.tolerance);
    for (const auto& ids : connected_edge_subsets(g, g.edge_count())) {
      Graph sub = g.edge_subgraph(ids);
      for (const auto& sg : enumerate_signings(sub, false)) {
        for (double ev : eigenvalues(sg).eigenvalues) {
          if (std::abs(ev) < 1e-6) continue;
          int hits = 0;
          for (double v : s.values)
            if (std::abs(ev * ev - v) <= s.tolerance) ++hits;
          CHECK(hits == 1);
        }
      }
    }
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const auto& w = s.witnesses[i];
      CHECK(std::abs(w.eigenvalue * w.eigenvalue - s.values[i]) <= s.tolerance);
      CHECK(w.signs.size() == static_cast<std::size_t>(w.subgraph.edge_count()));
    }
  }
}

TEST_CASE("induced sigma set is a subset") {
  Graph g = builtin_graph("complete:4");
  SigmaSet all = sigma_set(g, SubgraphMode::kAllSubgraphs);
  SigmaSet induced = sigma_set(g, SubgraphMode::kInducedSubgraphs);
  CHECK(induced.values.size() <= all.values.size());
  for (double v : induced.values) {
    bool found = std::any_of(all.values.begin(), all.values.end(), [&](double a) { return std::abs(a - v) <= 1e-8; });
    CHECK(found);
  }
}
