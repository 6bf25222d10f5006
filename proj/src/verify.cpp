#include "powerspec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "powerspec/errors.hpp"
#include "powerspec/signed_graph.hpp"
#include "powerspec/tensor_trace.hpp"
#include "powerspec/walks.hpp"

namespace powerspec {

namespace {

std::string label(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ":";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    out << (i ? "," : "") << g.edges()[i].u << "-" << g.edges()[i].v;
  }
  return out.str();
}

// Collects failures for one check; keeps the first few messages.
struct Tally {
  int items = 0;
  int failures = 0;
  int skipped = 0;
  std::vector<std::string> messages;

  void expect(bool ok, const std::string& what) {
    ++items;
    if (ok) return;
    ++failures;
    if (messages.size() < 4) messages.push_back(what);
  }
  void skip() { ++skipped; }
};

using CheckFn = std::function<void(Tally&)>;

CheckResult run_check(const std::string& name, const CheckFn& fn) {
  CheckResult r;
  r.name = name;
  auto start = std::chrono::steady_clock::now();
  Tally t;
  try {
    fn(t);
  } catch (const std::exception& e) {
    ++t.failures;
    t.messages.push_back(std::string("error: ") + e.what());
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << t.items << " checked";
  if (t.skipped) detail << ", " << t.skipped << " skipped";
  if (t.failures) {
    r.status = CheckStatus::kFail;
    detail << ", " << t.failures << " failed";
    for (const auto& m : t.messages) detail << "; " << m;
  } else if (t.items == 0) {
    r.status = CheckStatus::kSkipped;
  } else {
    r.status = CheckStatus::kPass;
  }
  r.detail = detail.str();
  return r;
}

bool close_rel(const Real& a, const Real& b, double tol) {
  Real scale = abs(b);
  if (scale < Real(1.0, b.precision())) scale = Real(1.0, b.precision());
  return (abs(a - b) / scale).to_double() <= tol;
}

std::vector<Graph> connected_only(const std::vector<Graph>& graphs) {
  std::vector<Graph> out;
  for (const auto& g : graphs)
    if (g.is_connected() && g.edge_count() > 0) out.push_back(g);
  return out;
}

// Eulerian multidigraphs on exactly n vertices, every vertex active, with
// at most max_arcs arcs and at most max_mult parallel arcs per ordered pair.
std::vector<Multidigraph> eulerian_digraphs(int n, int max_arcs, int max_mult) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<Multidigraph> out;
  std::vector<int> mult(pairs.size(), 0);
  std::function<void(std::size_t, int)> place = [&](std::size_t idx, int used) {
    if (idx == pairs.size()) {
      if (used == 0) return;
      Multidigraph d(n);
      for (std::size_t p = 0; p < pairs.size(); ++p) d.add_arcs(pairs[p].first, pairs[p].second, mult[p]);
      if (static_cast<int>(d.active_vertices().size()) == n && d.is_eulerian()) out.push_back(std::move(d));
      return;
    }
    for (int m = 0; m <= max_mult && used + m <= max_arcs; ++m) {
      mult[idx] = m;
      place(idx + 1, used + m);
    }
    mult[idx] = 0;
  };
  place(0, 0);
  return out;
}

// Eulerian core multidigraphs on a motif with the given per-edge totals.
std::vector<Multidigraph> core_digraphs(const Graph& motif, const std::vector<int>& totals_allowed) {
  const int m = motif.edge_count();
  std::vector<Multidigraph> out;
  std::vector<int> total(m), forward(m);
  std::function<void(int)> go = [&](int e) {
    if (e == m) {
      Multidigraph d(motif.vertex_count());
      for (int i = 0; i < m; ++i) {
        d.add_arcs(motif.edges()[i].u, motif.edges()[i].v, forward[i]);
        d.add_arcs(motif.edges()[i].v, motif.edges()[i].u, total[i] - forward[i]);
      }
      if (d.is_eulerian()) out.push_back(std::move(d));
      return;
    }
    for (int t : totals_allowed) {
      total[e] = t;
      for (int a = 0; a <= t; ++a) {
        forward[e] = a;
        go(e + 1);
      }
    }
  };
  go(0);
  return out;
}

std::vector<Graph> motifs_of(const std::vector<Graph>& graphs, int max_edges) {
  std::map<std::vector<std::uint8_t>, Graph> seen;
  for (const auto& g : graphs) {
    if (g.edge_count() == 0) continue;
    for (const auto& e : connected_subgraph_census(g, std::min(max_edges, g.edge_count())).entries) {
      seen.try_emplace(e.motif.certificate, e.motif.graph);
    }
  }
  std::vector<Graph> out;
  for (auto& [c, g] : seen) out.push_back(g);
  return out;
}

}  // namespace

std::vector<Graph> quick_graphs() {
  return {parse_graph("path:2"),  parse_graph("path:3"),  parse_graph("path:4"),
          parse_graph("cycle:3"), parse_graph("cycle:4"), parse_graph("cycle:5"),
          Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}), parse_graph("complete:4")};
}

const std::vector<double>& geometric_mean_points() {
  static const std::vector<double> points{3.0, -3.0, 2.5, -2.5, 1.7, -1.7, 0.3};
  return points;
}

VerifyReport run_verify_suite(const VerifyOptions& opts) {
  std::vector<Graph> graphs = opts.seeds;
  if (graphs.empty()) graphs = opts.scope == VerifyScope::kQuick ? quick_graphs() : connected_graphs(5);
  const std::vector<Graph> connected = connected_only(graphs);
  const bool full = opts.scope == VerifyScope::kFull;
  const SpectrumOptions& sopts = opts.spectrum;
  VerifyReport report;
  auto add = [&](const std::string& name, const CheckFn& fn) { report.checks.push_back(run_check(name, fn)); };

  add("graph_core.census", [&](Tally& t) {
    std::mt19937 rng(12345);
    for (const auto& g : graphs) {
      if (g.edge_count() == 0) continue;
      auto census = connected_subgraph_census(g, g.edge_count());
      std::uint64_t total = 0;
      for (const auto& e : census.entries) total += e.count;
      t.expect(total == connected_edge_subsets(g, g.edge_count()).size(), "census total on " + label(g));
      std::vector<int> order(g.vertex_count());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      t.expect(canonical_certificate(g) == canonical_certificate(g.relabeled(order)), "certificate on " + label(g));
    }
  });

  add("walks.method_equivalence", [&](Tally& t) {
    for (const auto& g : graphs) {
      auto series = parity_closed_series(g, 10);
      for (int d = 0; d <= 10; ++d) {
        t.expect(series[d] == parity_closed_count(g, d, ParityMethod::kSignedMean),
                 "dp vs signed mean at d=" + std::to_string(d) + " on " + label(g));
        if (d % 2 == 1) t.expect(series[d] == 0, "odd length on " + label(g));
        if (g.is_forest()) t.expect(series[d] == closed_walk_count(g, d), "tree walks on " + label(g));
      }
    }
  });

  add("walks.decomposition", [&](Tally& t) {
    for (const auto& g : graphs) {
      if (g.edge_count() == 0) continue;
      auto series = parity_closed_series(g, 10);
      for (int d = 2; d <= 10; d += 2) {
        BigInt sum = 0;
        for (const auto& e : connected_subgraph_census(g, std::min(d / 2, g.edge_count())).entries) {
          sum += covering_parity_closed_count(e.motif.graph, d) * BigInt(static_cast<unsigned long>(e.count));
        }
        t.expect(sum == series[d], "P_" + std::to_string(d) + " on " + label(g));
      }
    }
  });

  add("walks.covering_methods", [&](Tally& t) {
    for (const auto& motif : motifs_of(graphs, 6)) {
      for (int ell = 1; ell <= 5; ++ell) {
        BigInt dp = covering_parity_closed_count(motif, 2 * ell);
        t.expect(dp == covering_parity_closed_count(motif, 2 * ell, CoveringMethod::kInclusionExclusion),
                 "inclusion-exclusion on " + label(motif));
        t.expect(dp == covering_parity_via_best(motif, ell), "BEST decomposition on " + label(motif));
        if (ell < motif.edge_count()) t.expect(dp == 0, "support bound on " + label(motif));
      }
    }
  });

  add("signed.switching_and_radius", [&](Tally& t) {
    for (const auto& g : connected) {
      const double rho = spectral_radius(g, 128).to_double();
      const double tol = 1e-8;
      t.expect(enumerate_signings(g, true).size() == (std::size_t{1} << g.cyclomatic_number()),
               "switching class count on " + label(g));
      for (const auto& sg : enumerate_signings(g, false)) {
        auto ev = eigenvalues(sg).eigenvalues;
        const bool bal = is_balanced(sg);
        t.expect(ev.front() <= rho + tol, "radius bound on " + label(g));
        t.expect((std::abs(ev.front() - rho) <= tol) == bal, "balanced iff top eigenvalue is rho on " + label(g));
        t.expect((std::abs(ev.back() + rho) <= tol) == is_balanced(sg.negated()),
                 "negated balanced iff bottom eigenvalue is -rho on " + label(g));
        auto cp = char_poly_exact(sg);
        auto sums = power_sums(cp, 2 * g.vertex_count());
        auto moments = signed_moment_series(sg, 2 * g.vertex_count());
        bool ok = true;
        for (int d = 1; d <= 2 * g.vertex_count(); ++d) ok = ok && sums[d - 1] == moments[d];
        t.expect(ok, "Newton identities on " + label(g));
      }
    }
  });

  add("tensor.best_vs_brute", [&](Tally& t) {
    Multidigraph two(2);
    two.add_arcs(0, 1);
    two.add_arcs(1, 0);
    t.expect(eulerian_walk_count(two, EulerianMethod::kBest) == 2, "2-cycle");
    Multidigraph tri(3);
    tri.add_arcs(0, 1);
    tri.add_arcs(1, 2);
    tri.add_arcs(2, 0);
    t.expect(eulerian_walk_count(tri, EulerianMethod::kBest) == 3, "directed triangle");
    const int max_vertices = full ? 4 : 3;
    const int max_arcs = full ? 10 : 8;
    for (int n = 2; n <= max_vertices; ++n) {
      for (const auto& d : eulerian_digraphs(n, max_arcs, n == 4 ? 2 : 3)) {
        t.expect(eulerian_walk_count(d, EulerianMethod::kBest) == eulerian_walk_count(d, EulerianMethod::kBrute),
                 "BEST vs brute");
        BigInt t0 = arborescence_count(d, d.active_vertices().front());
        bool same = true;
        for (int r : d.active_vertices()) same = same && arborescence_count(d, r) == t0;
        t.expect(same, "root independence");
      }
    }
  });

  add("tensor.spanning_tree_reduction", [&](Tally& t) {
    auto motifs = motifs_of(graphs, 4);
    for (const char* extra : {"path:2", "path:3", "cycle:3"}) {
      Graph g = parse_graph(extra);
      motifs.push_back(g.relabeled(canonical_form(g).order));
    }
    for (const auto& motif : motifs) {
      std::vector<int> totals = motif.edge_count() <= 2 ? std::vector<int>{2, 4} : std::vector<int>{2};
      for (const auto& dstar : core_digraphs(motif, totals)) {
        for (int k = 3; k <= 5; ++k) {
          auto r = spanning_tree_reduction_check(motif, dstar, k);
          t.expect(r.equal, "t(D) reduction on " + label(motif) + " k=" + std::to_string(k));
          Multidigraph lifted = lift_from_core(motif, dstar, k);
          t.expect(reduce_to_core(lifted, power_hypergraph(motif, k)) == dstar, "round trip on " + label(motif));
          t.expect(lifted.arc_count() * 2 == dstar.arc_count() * static_cast<std::uint64_t>(k * (k - 1)),
                   "arc count on " + label(motif));
        }
      }
    }
  });

  add("tensor.naive_trace", [&](Tally& t) {
    Graph k2 = parse_graph("path:2");
    Graph p3 = parse_graph("path:3");
    const int expected_k2[] = {0, 0, 9, 0, 0, 9};
    for (int d = 1; d <= 6; ++d) {
      Rational naive = naive_tensor_trace(power_hypergraph(k2, 3), d);
      t.expect(naive == script_S(k2, d, 3, sopts) && naive == expected_k2[d - 1], "K2 k=3 d=" + std::to_string(d));
    }
    for (int d = 1; d <= 6; ++d) {
      t.expect(naive_tensor_trace(power_hypergraph(p3, 3), d) == script_S(p3, d, 3, sopts),
               "path:3 k=3 d=" + std::to_string(d));
    }
    for (int d : {4, 8}) {
      t.expect(naive_tensor_trace(power_hypergraph(k2, 4), d) == script_S(k2, d, 4, sopts),
               "K2 k=4 d=" + std::to_string(d));
    }
    for (const auto& g : graphs) {
      if (g.edge_count() == 0) continue;
      for (int d = 2; d <= 10; d += 2) {
        t.expect(script_S(g, d, 2, sopts) == Rational(parity_closed_series(g, d).back()),
                 "k=2 reduces to P_d on " + label(g));
      }
    }
  });

  add("spectrum.char_poly_integrality", [&](Tally& t) {
    SpectrumOptions o = sopts;
    o.corrupt_weights = opts.inject_fault;
    if (!opts.inject_fault) {
      auto f = char_poly_power(parse_graph("path:2"), 3, o);
      t.expect(f.mu0 == 3 && f.factors.size() == 1 && f.factors[0].mu == 3, "K2 k=3 is x^3 (x^3-1)^3");
      for (int k = 3; k <= 5; ++k) {
        auto fk = char_poly_power(parse_graph("path:2"), k, o);
        t.expect(fk.factors[0].mu == Rational(ipow(BigInt(k), k - 2)), "K2 mu_1 = k^(k-2)");
      }
    }
    for (const auto& g : connected) {
      for (int k = 3; k <= 5; ++k) {
        const std::string where = label(g) + " k=" + std::to_string(k);
        try {
          auto f = char_poly_power(g, k, o);
          t.expect(f.validation.integral && f.validation.nonnegative, "integral non-negative exponents on " + where);
          t.expect(f.validation.degree_check, "degree identity on " + where);
          t.expect(f.validation.moment_consistency, "moment consistency on " + where);
          t.expect(f.max_residual <= sopts.max_residual, "rounding residual on " + where);
        } catch (const Error& e) {
          t.expect(false, where + ": " + e.what());
        }
      }
    }
  });

  add("spectrum.radius_multiplicity", [&](Tally& t) {
    for (const auto& g : connected) {
      for (int k = 3; k <= 4; ++k) {
        auto f = char_poly_power(g, k, sopts);
        auto idx = radius_factor(f, g, sopts.tol);
        const std::string where = label(g) + " k=" + std::to_string(k);
        t.expect(idx.has_value(), "rho^2 cluster present on " + where);
        if (idx) t.expect(f.factors[*idx].mu == Rational(spectral_radius_multiplicity(g, k)), "multiplicity on " + where);
      }
    }
  });

  add("spectrum.limit_ratio", [&](Tally& t) {
    for (const char* name : {"path:2", "path:3", "cycle:3"}) {
      auto diag = limit_diagnostic(parse_graph(name), 3, 30, sopts);
      t.expect(diag.relative_gap_at_end <= 0.05, std::string("within 5% at l=30 on ") + name);
    }
  });

  add("beta.identities", [&](Tally& t) {
    auto c3 = beta(parse_graph("cycle:3"), sopts);
    bool shape = c3.mu0 == 0;
    for (const auto& f : c3.factors) {
      if (std::abs(f.sigma_sq - 1) < 1e-9) shape = shape && f.mu == 1;
      else if (std::abs(f.sigma_sq - 4) < 1e-9) shape = shape && f.mu == Rational(1, 2);
      else shape = shape && f.mu == 0;
    }
    t.expect(shape, "cycle:3 gives (x^2-1)(x^2-4)^(1/2)");
    const int bits = 256;
    for (const auto& g : connected) {
      auto b = beta(g, sopts);
      const std::string where = label(g);
      t.expect(b.is_polynomial() == g.is_forest(), "polynomial iff forest on " + where);
      auto idx = radius_factor(b, g, sopts.tol);
      t.expect(idx && b.factors[*idx].mu == rpow(Rational(2), -g.edge_count() + g.vertex_count() - 1),
               "exponent at rho^2 on " + where);
      auto alpha = matching_polynomial(g, MatchingMethod::kDirect);
      for (double x : geometric_mean_points()) {
        Real gm = geometric_mean_evaluate(g, x, bits);
        Real bv = evaluate_abs(b, x, bits);
        t.expect(close_rel(gm, bv, 1e-9), "geometric mean at " + std::to_string(x) + " on " + where);
        if (g.is_forest()) {
          Real a(alpha.evaluate(Rational(x)), bits);
          t.expect(close_rel(abs(a), bv, 1e-9), "forest beta equals matching polynomial on " + where);
        }
      }
    }
    for (int n = 3; n <= 6; ++n) {
      Graph c = parse_graph("cycle:" + std::to_string(n));
      auto b = beta(c, sopts);
      IntPolynomial phi = char_poly_exact(SignedGraph::all_positive(c));
      for (double x : geometric_mean_points()) {
        Real lhs = evaluate_squared(b, x, bits);
        Rational shifted = Rational(x) * Rational(x) - 2;
        Real rhs(phi.evaluate(shifted), bits);
        t.expect(close_rel(lhs, rhs, 1e-9), "cycle identity n=" + std::to_string(n) + " at " + std::to_string(x));
      }
    }
  });

  add("matching.godsil_gutman", [&](Tally& t) {
    t.expect(matching_polynomial(parse_graph("cycle:3"), MatchingMethod::kDirect) ==
                 RationalPolynomial({Rational(0), Rational(-3), Rational(0), Rational(1)}),
             "cycle:3 matching polynomial");
    for (const auto& g : graphs) {
      t.expect(matching_polynomial(g, MatchingMethod::kDirect) == matching_polynomial(g, MatchingMethod::kSignedMean),
               "direct vs signed mean on " + label(g));
    }
  });

  add("mean.amgm", [&](Tally& t) {
    auto c3 = amgm_check(parse_graph("cycle:3"), 3.0);
    t.expect(c3.status == CheckStatus::kPass && !c3.equality && std::abs(c3.alpha - 18) < 1e-12 &&
                 std::abs(c3.beta - 8 * std::sqrt(5.0)) < 1e-9,
             "cycle:3 at 3: 18 > 8 sqrt 5");
    t.expect(amgm_check(parse_graph("cycle:3"), 1.5).status == CheckStatus::kSkipped, "cycle:3 at 1.5 skipped");
    for (const auto& g : connected) {
      for (double x : {3.0, 2.5}) {
        auto r = amgm_check(g, x);
        if (r.status == CheckStatus::kSkipped) {
          t.skip();
          continue;
        }
        t.expect(r.status == CheckStatus::kPass, "AM-GM on " + label(g) + ": " + r.detail);
        if (g.is_forest()) t.expect(r.equality, "forest equality on " + label(g));
      }
    }
  });

  for (const auto& c : report.checks) {
    if (c.status == CheckStatus::kPass) ++report.passed;
    else if (c.status == CheckStatus::kFail) ++report.failed;
    else ++report.skipped;
  }
  return report;
}

}  // namespace powerspec
