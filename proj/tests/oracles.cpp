#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace oracle {

WalkTally enumerate_closed_walks(const Graph& g, int d) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<std::vector<int>> edge_id(n, std::vector<int>(n, -1));
  for (int i = 0; i < m; ++i) edge_id[g.edges()[i].u][g.edges()[i].v] = edge_id[g.edges()[i].v][g.edges()[i].u] = i;
  std::vector<int> uses(m, 0);
  WalkTally t;
  std::function<void(int, int, int)> step = [&](int start, int v, int len) {
    if (len == d) {
      if (v != start) return;
      t.closed += 1;
      bool even = std::all_of(uses.begin(), uses.end(), [](int u) { return u % 2 == 0; });
      if (even) {
        t.parity_closed += 1;
        if (std::all_of(uses.begin(), uses.end(), [](int u) { return u > 0; })) t.covering += 1;
      }
      return;
    }
    for (int u = 0; u < n; ++u) {
      int e = edge_id[v][u];
      if (e < 0) continue;
      ++uses[e];
      step(start, u, len + 1);
      --uses[e];
    }
  };
  for (int s = 0; s < n; ++s) step(s, s, 0);
  return t;
}

BigInt trace_power(const std::vector<std::vector<int>>& a, int d) {
  const std::size_t n = a.size();
  std::vector<std::vector<BigInt>> p(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
  for (int s = 0; s < d; ++s) {
    std::vector<std::vector<BigInt>> q(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (p[i][k] != 0)
          for (std::size_t j = 0; j < n; ++j) q[i][j] += p[i][k] * a[k][j];
    p = std::move(q);
  }
  BigInt t = 0;
  for (std::size_t i = 0; i < n; ++i) t += p[i][i];
  return t;
}

std::vector<BigInt> char_poly_leibniz(const std::vector<std::vector<int>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<BigInt> result(n + 1, 0);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    // Product over i of (x [i == perm i] - a[i][perm i]).
    std::vector<BigInt> poly{1};
    for (int i = 0; i < n; ++i) {
      std::vector<BigInt> next(poly.size() + 1, 0);
      for (std::size_t c = 0; c < poly.size(); ++c) {
        if (perm[i] == i) next[c + 1] += poly[c];
        next[c] -= poly[c] * a[i][perm[i]];
      }
      poly = std::move(next);
    }
    for (std::size_t c = 0; c < poly.size() && c <= static_cast<std::size_t>(n); ++c) {
      if (inversions % 2 == 0) {
        result[c] += poly[c];
      } else {
        result[c] -= poly[c];
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return result;
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const int n = a.vertex_count();
  auto am = a.adjacency_matrix();
  auto bm = b.adjacency_matrix();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) ok = am[i][j] == bm[perm[i]][perm[j]];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::uint64_t subgraph_count(const Graph& g, const Graph& motif) {
  const int m = g.edge_count();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    if (std::popcount(mask) != static_cast<unsigned>(motif.edge_count())) continue;
    std::vector<int> ids;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) ids.push_back(i);
    if (isomorphic(g.edge_subgraph(ids), motif)) ++count;
  }
  return count;
}

std::vector<BigInt> matching_counts(const Graph& g) {
  const int m = g.edge_count();
  std::vector<BigInt> counts(g.vertex_count() / 2 + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> seen(g.vertex_count(), 0);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      ok = !seen[g.edges()[i].u]++ && !seen[g.edges()[i].v]++;
    }
    if (ok) counts[std::popcount(mask)] += 1;
  }
  return counts;
}

BigInt in_tree_count(const Multidigraph& d, int root) {
  auto active = d.active_vertices();
  std::vector<int> others;
  for (int v : active)
    if (v != root) others.push_back(v);
  std::vector<std::vector<std::pair<int, std::uint64_t>>> outs(d.vertex_count());
  for (const auto& [arc, m] : d.arcs()) outs[arc.first].emplace_back(arc.second, m);
  std::vector<int> parent(d.vertex_count(), -1);
  BigInt total = 0;
  std::function<void(std::size_t, BigInt)> choose = [&](std::size_t idx, BigInt weight) {
    if (idx == others.size()) {
      for (int v : others) {
        int x = v;
        for (std::size_t steps = 0; x != root; ++steps) {
          if (steps > others.size()) return;  // cycle
          x = parent[x];
        }
      }
      total += weight;
      return;
    }
    int v = others[idx];
    for (auto [u, m] : outs[v]) {
      parent[v] = u;
      choose(idx + 1, weight * BigInt(static_cast<unsigned long>(m)));
    }
    parent[v] = -1;
  };
  choose(0, 1);
  return total;
}

BigInt eulerian_labelled(const Multidigraph& d) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto& [arc, m] : d.arcs())
    for (std::uint64_t i = 0; i < m; ++i) arcs.push_back(arc);
  const std::size_t total = arcs.size();
  std::vector<bool> used(total, false);
  BigInt count = 0;
  std::function<void(int, int, std::size_t)> walk = [&](int start, int v, std::size_t len) {
    if (len == total) {
      if (v == start) count += 1;
      return;
    }
    for (std::size_t a = 0; a < total; ++a) {
      if (used[a] || arcs[a].first != v) continue;
      used[a] = true;
      walk(start, arcs[a].second, len + 1);
      used[a] = false;
    }
  };
  for (std::size_t first = 0; first < total; ++first) {
    used[first] = true;
    walk(arcs[first].first, arcs[first].second, 1);
    used[first] = false;
  }
  BigInt b = 1;
  for (const auto& [arc, m] : d.arcs()) b *= powerspec::factorial(static_cast<unsigned>(m));
  return count / b;
}

std::vector<BigInt> companion_power_sums(const std::vector<BigInt>& monic, int count) {
  const int n = static_cast<int>(monic.size()) - 1;
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 1; i < n; ++i) c[i][i - 1] = 1;
  for (int i = 0; i < n; ++i) c[i][n - 1] = -static_cast<int>(monic[i].get_si());
  std::vector<BigInt> out;
  for (int d = 1; d <= count; ++d) out.push_back(trace_power(c, d));
  return out;
}

std::vector<BigInt> power_of_binomial(int a, int k, int b) {
  std::vector<BigInt> poly(a + k * b + 1, 0);
  for (int j = 0; j <= b; ++j) {
    BigInt binom;
    mpz_bin_uiui(binom.get_mpz_t(), b, j);
    poly[a + k * j] = (b - j) % 2 == 0 ? binom : BigInt(-binom);
  }
  return poly;
}

}  // namespace oracle
