#include "powerspec/tensor_trace.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "powerspec/errors.hpp"
#include "powerspec/walks.hpp"

namespace powerspec {

void Multidigraph::add_arcs(int from, int to, std::uint64_t count) {
  if (from == to) fail(ErrorKind::kInvalidArgument, "self-arcs are not allowed");
  if (from < 0 || to < 0 || from >= n_ || to >= n_) fail(ErrorKind::kInvalidArgument, "arc endpoint out of range");
  if (count == 0) return;
  arcs_[{from, to}] += count;
}

std::uint64_t Multidigraph::multiplicity(int from, int to) const {
  auto it = arcs_.find({from, to});
  return it == arcs_.end() ? 0 : it->second;
}

std::uint64_t Multidigraph::arc_count() const {
  std::uint64_t total = 0;
  for (const auto& [arc, m] : arcs_) total += m;
  return total;
}

std::vector<std::uint64_t> Multidigraph::out_degrees() const {
  std::vector<std::uint64_t> deg(n_, 0);
  for (const auto& [arc, m] : arcs_) deg[arc.first] += m;
  return deg;
}

std::vector<std::uint64_t> Multidigraph::in_degrees() const {
  std::vector<std::uint64_t> deg(n_, 0);
  for (const auto& [arc, m] : arcs_) deg[arc.second] += m;
  return deg;
}

std::vector<int> Multidigraph::active_vertices() const {
  std::vector<bool> active(n_, false);
  for (const auto& [arc, m] : arcs_) active[arc.first] = active[arc.second] = true;
  std::vector<int> out;
  for (int v = 0; v < n_; ++v)
    if (active[v]) out.push_back(v);
  return out;
}

bool Multidigraph::is_balanced() const { return out_degrees() == in_degrees(); }

bool Multidigraph::is_eulerian() const {
  if (arcs_.empty() || !is_balanced()) return false;
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [arc, m] : arcs_) parent[find(arc.first)] = find(arc.second);
  auto active = active_vertices();
  int root = find(active.front());
  return std::all_of(active.begin(), active.end(), [&](int v) { return find(v) == root; });
}

BigInt Multidigraph::multiplicity_factorial_product() const {
  BigInt b = 1;
  for (const auto& [arc, m] : arcs_) b *= factorial(static_cast<unsigned>(m));
  return b;
}

namespace {

// Fraction-free Gaussian elimination (Bareiss); exact for integer matrices.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

BigInt arborescence_count(const Multidigraph& d, int root) {
  auto active = d.active_vertices();
  if (std::find(active.begin(), active.end(), root) == active.end()) {
    if (active.empty() && root >= 0 && root < d.vertex_count()) return 1;
    return 0;
  }
  std::vector<int> index(d.vertex_count(), -1);
  int next = 0;
  for (int v : active)
    if (v != root) index[v] = next++;
  std::vector<std::vector<BigInt>> lap(next, std::vector<BigInt>(next, 0));
  for (const auto& [arc, m] : d.arcs()) {
    auto [from, to] = arc;
    if (from == root) continue;
    lap[index[from]][index[from]] += m;
    if (to != root) lap[index[from]][index[to]] -= m;
  }
  return bareiss_determinant(std::move(lap));
}

BigInt spanning_tree_count(const Multidigraph& d) {
  auto active = d.active_vertices();
  if (active.empty()) return 1;
  BigInt t = arborescence_count(d, active.front());
  if (d.is_eulerian()) {
    for (int r : active) {
      if (arborescence_count(d, r) != t) fail(ErrorKind::kInternal, "arborescence count depends on the root");
    }
  }
  return t;
}

namespace {

BigInt best_count(const Multidigraph& d) {
  BigInt num = BigInt(static_cast<unsigned long>(d.arc_count())) * spanning_tree_count(d);
  for (auto deg : d.out_degrees()) {
    if (deg > 0) num *= factorial(static_cast<unsigned>(deg - 1));
  }
  BigInt b = d.multiplicity_factorial_product();
  if (num % b != 0) fail(ErrorKind::kInternal, "BEST count is not an integer");
  return num / b;
}

BigInt brute_count(const Multidigraph& d) {
  const int n = d.vertex_count();
  std::vector<std::vector<std::uint64_t>> left(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& [arc, m] : d.arcs()) left[arc.first][arc.second] = m;
  const std::uint64_t total = d.arc_count();
  std::uint64_t found = 0;
  std::function<void(int, int, std::uint64_t)> walk = [&](int start, int v, std::uint64_t used) {
    if (used == total) {
      if (v == start) ++found;
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (left[v][u] == 0) continue;
      --left[v][u];
      walk(start, u, used + 1);
      ++left[v][u];
    }
  };
  for (int s : d.active_vertices()) walk(s, s, 0);
  return BigInt(static_cast<unsigned long>(found));
}

}  // namespace

BigInt eulerian_walk_count(const Multidigraph& d, EulerianMethod method, std::uint64_t max_brute_arcs) {
  if (!d.is_eulerian()) fail(ErrorKind::kInvalidArgument, "multidigraph is not Eulerian");
  if (method == EulerianMethod::kBest) return best_count(d);
  if (d.arc_count() > max_brute_arcs) {
    fail(ErrorKind::kBudget, "brute-force Eulerian count limited to " + std::to_string(max_brute_arcs) + " arcs");
  }
  return brute_count(d);
}

namespace {

void check_core_arcs(const Graph& motif, const Multidigraph& dstar) {
  if (dstar.vertex_count() != motif.vertex_count()) {
    fail(ErrorKind::kInvalidArgument, "core multidigraph must live on the motif's vertices");
  }
  for (const auto& [arc, m] : dstar.arcs()) {
    Edge e{std::min(arc.first, arc.second), std::max(arc.first, arc.second)};
    if (!std::binary_search(motif.edges().begin(), motif.edges().end(), e)) {
      fail(ErrorKind::kInvalidArgument, "arc (" + std::to_string(arc.first) + "," + std::to_string(arc.second) +
                                            ") is not along a motif edge");
    }
  }
  for (const auto& e : motif.edges()) {
    std::uint64_t total = dstar.multiplicity(e.u, e.v) + dstar.multiplicity(e.v, e.u);
    if (total == 0 || total % 2 != 0) {
      fail(ErrorKind::kInvalidArgument, "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                            "} needs a positive even arc total, got " + std::to_string(total));
    }
  }
  if (!dstar.is_eulerian()) fail(ErrorKind::kInvalidArgument, "core multidigraph is not Eulerian");
}

}  // namespace

Multidigraph lift_from_core(const Graph& motif, const Multidigraph& dstar, int k) {
  if (k < 3) fail(ErrorKind::kInvalidArgument, "lift needs k >= 3");
  check_core_arcs(motif, dstar);
  Hypergraph h = power_hypergraph(motif, k);
  Multidigraph d(h.n);
  for (const auto& he : h.core_map) {
    const std::uint64_t ij = dstar.multiplicity(he.base_u, he.base_v);
    const std::uint64_t ji = dstar.multiplicity(he.base_v, he.base_u);
    const std::uint64_t half = (ij + ji) / 2;
    d.add_arcs(he.base_u, he.base_v, ij);
    d.add_arcs(he.base_v, he.base_u, ji);
    for (int c : he.cores) {
      d.add_arcs(he.base_u, c, ij);
      d.add_arcs(he.base_v, c, ji);
      d.add_arcs(c, he.base_u, half);
      d.add_arcs(c, he.base_v, half);
      for (int c2 : he.cores)
        if (c2 != c) d.add_arcs(c, c2, half);
    }
  }
  if (!d.is_eulerian()) fail(ErrorKind::kInternal, "lifted multidigraph is not Eulerian");
  return d;
}

Multidigraph reduce_to_core(const Multidigraph& d, const Hypergraph& h) {
  if (d.vertex_count() != h.n) fail(ErrorKind::kInvalidArgument, "multidigraph does not match the hypergraph");
  const int base_n = h.n - (h.k - 2) * static_cast<int>(h.hyperedges.size());
  // Every arc must stay inside one hyperedge.
  std::vector<std::vector<int>> member_of(h.n);
  for (std::size_t i = 0; i < h.hyperedges.size(); ++i)
    for (int v : h.hyperedges[i]) member_of[v].push_back(static_cast<int>(i));
  for (const auto& [arc, m] : d.arcs()) {
    bool shared = false;
    for (int e : member_of[arc.first])
      for (int f : member_of[arc.second]) shared = shared || e == f;
    if (!shared) fail(ErrorKind::kInvalidArgument, "arc leaves its hyperedge");
  }
  auto violated = [](const std::string& what) { fail(ErrorKind::kInvalidArgument, "multiplicity relation violated: " + what); };
  Multidigraph core(base_n);
  for (const auto& he : h.core_map) {
    const int i = he.base_u, j = he.base_v;
    const std::uint64_t ij = d.multiplicity(i, j), ji = d.multiplicity(j, i);
    for (int c : he.cores) {
      if (d.multiplicity(i, c) != ij || d.multiplicity(j, c) != ji) violated("base arcs into a core vertex");
      const std::uint64_t out = d.multiplicity(c, i);
      if (2 * out != ij + ji) violated("core out-multiplicity is not half the edge total");
      if (d.multiplicity(c, j) != out) violated("core vertex arcs differ within its hyperedge");
      for (int c2 : he.cores)
        if (c2 != c && d.multiplicity(c, c2) != out) violated("core vertex arcs differ within its hyperedge");
    }
    core.add_arcs(i, j, ij);
    core.add_arcs(j, i, ji);
  }
  if (d.is_eulerian() && !core.is_eulerian()) fail(ErrorKind::kInternal, "core reduction lost the Eulerian property");
  return core;
}

SpanningTreeReduction spanning_tree_reduction_check(const Graph& motif, const Multidigraph& dstar, int k) {
  Multidigraph lifted = lift_from_core(motif, dstar, k);
  SpanningTreeReduction out;
  out.direct = spanning_tree_count(lifted);
  const long e = motif.edge_count(), v = motif.vertex_count();
  Rational f(spanning_tree_count(dstar));
  f *= rpow(Rational(k), e * (k - 3) + v - 1);
  f *= rpow(Rational(2), e - v + 1);
  for (const auto& edge : motif.edges()) {
    std::uint64_t half = (dstar.multiplicity(edge.u, edge.v) + dstar.multiplicity(edge.v, edge.u)) / 2;
    f *= rpow(Rational(static_cast<unsigned long>(half)), k - 2);
  }
  out.formula = f;
  out.equal = (Rational(out.direct) == f);
  return out;
}

Rational naive_tensor_trace(const Hypergraph& h, int d, std::uint64_t max_terms) {
  if (d < 0) fail(ErrorKind::kInvalidArgument, "trace order must be non-negative");
  if (d == 0) fail(ErrorKind::kInvalidArgument, "trace order must be positive");
  const int k = h.k;
  // Rooted hyperedges (root, hyperedge index).
  std::vector<std::pair<int, int>> rooted;
  for (std::size_t e = 0; e < h.hyperedges.size(); ++e)
    for (int r : h.hyperedges[e]) rooted.emplace_back(r, static_cast<int>(e));
  const std::size_t slots = rooted.size();
  if (slots == 0) return Rational(0);
  {
    // Compositions of d into `slots` parts.
    BigInt terms;
    mpz_bin_uiui(terms.get_mpz_t(), static_cast<unsigned long>(d + slots - 1), static_cast<unsigned long>(slots - 1));
    if (terms > BigInt(static_cast<unsigned long>(max_terms))) {
      fail(ErrorKind::kBudget, "naive trace needs " + to_string(terms) + " terms, over the budget");
    }
  }

  Rational sum = 0;
  std::vector<int> counts(slots, 0);
  std::function<void(std::size_t, int)> place = [&](std::size_t slot, int remaining) {
    if (slot + 1 == slots) {
      counts[slot] = remaining;
      // Ordered hyperedge sequences per root with these counts.
      std::map<int, std::vector<int>> per_root;
      Multidigraph dg(h.n);
      for (std::size_t s = 0; s < slots; ++s) {
        if (counts[s] == 0) continue;
        auto [root, e] = rooted[s];
        per_root[root].push_back(counts[s]);
        for (int u : h.hyperedges[e])
          if (u != root) dg.add_arcs(root, u, static_cast<std::uint64_t>(counts[s]));
      }
      if (!dg.is_eulerian()) return;
      BigInt sequences = 1;
      for (const auto& [root, cs] : per_root) {
        int total = 0;
        for (int c : cs) total += c;
        sequences *= factorial(total);
        for (int c : cs) sequences /= factorial(c);
      }
      BigInt c_f = 1;
      for (auto deg : dg.out_degrees()) c_f *= factorial(static_cast<unsigned>(deg));
      Rational term(sequences * dg.multiplicity_factorial_product() * eulerian_walk_count(dg, EulerianMethod::kBest),
                    c_f);
      term.canonicalize();
      sum += term;
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[slot] = c;
      place(slot + 1, remaining - c);
    }
    counts[slot] = 0;
  };
  place(0, d);
  // The ((k-1)!)^d orderings of each rooted hyperedge cancel the entry product
  // (1/(k-1)!)^d, leaving (k-1)^{n-1} times the sum.
  (void)k;
  return rpow(Rational(h.k - 1), h.n - 1) * sum;
}

BigInt covering_parity_via_best(const Graph& motif, int ell, std::uint64_t max_terms) {
  if (!motif.is_connected() || motif.edge_count() == 0) {
    fail(ErrorKind::kInvalidArgument, "BEST decomposition needs a connected motif with an edge");
  }
  const int m = motif.edge_count();
  if (ell < m) return 0;
  std::uint64_t visited = 0;
  BigInt total = 0;
  std::vector<int> half(m, 1);  // t_e / 2
  std::vector<int> forward(m, 0);
  std::function<void(int)> split = [&](int e) {
    if (e == m) {
      if (++visited > max_terms) fail(ErrorKind::kBudget, "BEST decomposition exceeds the term budget");
      Multidigraph dg(motif.vertex_count());
      for (int i = 0; i < m; ++i) {
        dg.add_arcs(motif.edges()[i].u, motif.edges()[i].v, static_cast<std::uint64_t>(forward[i]));
        dg.add_arcs(motif.edges()[i].v, motif.edges()[i].u, static_cast<std::uint64_t>(2 * half[i] - forward[i]));
      }
      if (dg.is_eulerian()) total += eulerian_walk_count(dg, EulerianMethod::kBest);
      return;
    }
    for (int a = 0; a <= 2 * half[e]; ++a) {
      forward[e] = a;
      split(e + 1);
    }
  };
  std::function<void(int, int)> distribute = [&](int e, int remaining) {
    if (e + 1 == m) {
      half[e] = remaining;
      split(0);
      return;
    }
    for (int h = 1; h <= remaining - (m - e - 1); ++h) {
      half[e] = h;
      distribute(e + 1, remaining - h);
    }
  };
  distribute(0, ell);
  return total;
}

Rational motif_weight(const Graph& motif, int k) {
  const long e = motif.edge_count(), v = motif.vertex_count();
  Rational w = rpow(Rational(2), e - v) * rpow(Rational(k), e * (k - 3) + v);
  w /= rpow(Rational(k - 1), v + e * (k - 2) - 1);
  return w;
}

Rational moment_coefficient(const Graph& motif, int ell, int k) {
  if (k < 3) fail(ErrorKind::kInvalidArgument, "moment coefficient needs k >= 3");
  return motif_weight(motif, k) * Rational(covering_parity_closed_count(motif, 2 * ell));
}

Rational tree_moment_coefficient(const Graph& tree, int ell, int k) {
  if (k < 3) fail(ErrorKind::kInvalidArgument, "moment coefficient needs k >= 3");
  if (!tree.is_connected() || !tree.is_forest()) fail(ErrorKind::kInvalidArgument, "expected a tree");
  const long e = tree.edge_count(), v = tree.vertex_count();
  Rational w = rpow(Rational(k), e * (k - 2) + 1) / (2 * rpow(Rational(k - 1), v + e * (k - 2) - 1));
  // Every closed walk in a tree is parity-closed, so c_{2 ell} = p_{2 ell}.
  return w * Rational(covering_parity_closed_count(tree, 2 * ell));
}

}  // namespace powerspec
