#include "powerspec/walks.hpp"

#include <string>

#include "powerspec/errors.hpp"
#include "powerspec/signed_graph.hpp"

namespace powerspec {

BigInt closed_walk_count(const Graph& g, int d) {
  if (d < 0) fail(ErrorKind::kInvalidArgument, "walk length must be non-negative");
  const int n = g.vertex_count();
  auto adj = g.neighbors();
  BigInt total = 0;
  std::vector<BigInt> cur(n), next(n);
  for (int s = 0; s < n; ++s) {
    std::fill(cur.begin(), cur.end(), 0);
    cur[s] = 1;
    for (int step = 0; step < d; ++step) {
      std::fill(next.begin(), next.end(), 0);
      for (int v = 0; v < n; ++v) {
        if (cur[v] == 0) continue;
        for (int u : adj[v]) next[u] += cur[v];
      }
      std::swap(cur, next);
    }
    total += cur[s];
  }
  return total;
}

namespace {

void check_parity_budget(const Graph& g, const WalkBudget& budget) {
  const int m = g.edge_count();
  if (m > budget.max_parity_edges) {
    fail(ErrorKind::kBudget, "parity DP limited to " + std::to_string(budget.max_parity_edges) + " edges");
  }
  const double states = static_cast<double>(g.vertex_count()) * static_cast<double>(std::uint64_t{1} << m);
  if (states > static_cast<double>(budget.max_states)) {
    fail(ErrorKind::kBudget, "parity DP state space exceeds the budget");
  }
}

}  // namespace

// State (vertex, mask of edges used an odd number of times). A walk whose
// mask is empty has even degree everywhere in its edge multiset, so it ends
// where it started; seeding every (s, 0) and reading mask 0 counts closed walks.
std::vector<BigInt> parity_closed_series(const Graph& g, int max_d, const WalkBudget& budget) {
  if (max_d < 0) fail(ErrorKind::kInvalidArgument, "walk length must be non-negative");
  check_parity_budget(g, budget);
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const std::size_t masks = std::size_t{1} << m;
  std::vector<std::vector<std::pair<int, int>>> moves(n);  // (neighbour, edge index)
  for (int i = 0; i < m; ++i) {
    moves[g.edges()[i].u].emplace_back(g.edges()[i].v, i);
    moves[g.edges()[i].v].emplace_back(g.edges()[i].u, i);
  }
  std::vector<BigInt> cur(n * masks), next(n * masks);
  for (int v = 0; v < n; ++v) cur[v * masks] = 1;
  std::vector<BigInt> series;
  series.reserve(max_d + 1);
  auto read = [&]() {
    BigInt total = 0;
    for (int v = 0; v < n; ++v) total += cur[v * masks];
    series.push_back(total);
  };
  read();
  for (int step = 1; step <= max_d; ++step) {
    for (auto& x : next) x = 0;
    for (int v = 0; v < n; ++v) {
      for (std::size_t mask = 0; mask < masks; ++mask) {
        const BigInt& c = cur[v * masks + mask];
        if (c == 0) continue;
        for (auto [u, e] : moves[v]) next[u * masks + (mask ^ (std::size_t{1} << e))] += c;
      }
    }
    std::swap(cur, next);
    read();
  }
  return series;
}

BigInt parity_closed_count(const Graph& g, int d, ParityMethod method, const WalkBudget& budget) {
  if (d < 0) fail(ErrorKind::kInvalidArgument, "walk length must be non-negative");
  if (method == ParityMethod::kDp) return parity_closed_series(g, d, budget).back();

  const int m = g.edge_count();
  if (m > budget.max_signed_mean_edges) {
    fail(ErrorKind::kBudget, "signed-mean method limited to " + std::to_string(budget.max_signed_mean_edges) + " edges");
  }
  BigInt sum = 0;
  for (const auto& sg : enumerate_signings(g, false, budget.max_signed_mean_edges)) {
    sum += signed_spectral_moment(sg, d);
  }
  BigInt count = BigInt(1) << m;
  if (sum % count != 0) {
    fail(ErrorKind::kInternal, "signed spectral moment average is not an integer");
  }
  return sum / count;
}

std::vector<BigInt> covering_parity_closed_series(const Graph& motif, int max_d, const WalkBudget& budget) {
  if (max_d < 0) fail(ErrorKind::kInvalidArgument, "walk length must be non-negative");
  if (!motif.is_connected()) fail(ErrorKind::kInvalidArgument, "covering walks need a connected motif");
  const int n = motif.vertex_count();
  const int m = motif.edge_count();
  if (m > 38) fail(ErrorKind::kBudget, "covering DP limited to 38 edges");
  std::vector<std::uint64_t> pow3(m + 1, 1);
  for (int i = 1; i <= m; ++i) pow3[i] = pow3[i - 1] * 3;
  const std::uint64_t codes = pow3[m];
  if (static_cast<double>(codes) * n > static_cast<double>(budget.max_states)) {
    fail(ErrorKind::kBudget, "covering DP state space 3^|E|*|V| exceeds the budget");
  }
  // Per-edge digit: 0 unused, 1 used an odd number of times, 2 used a positive even number.
  std::vector<std::vector<std::pair<int, int>>> moves(n);
  for (int i = 0; i < m; ++i) {
    moves[motif.edges()[i].u].emplace_back(motif.edges()[i].v, i);
    moves[motif.edges()[i].v].emplace_back(motif.edges()[i].u, i);
  }
  const std::uint64_t accept = codes - 1;  // every digit 2
  std::vector<BigInt> cur(n * codes), next(n * codes);
  for (int v = 0; v < n; ++v) cur[v * codes] = 1;
  std::vector<BigInt> series;
  series.reserve(max_d + 1);
  auto read = [&]() {
    BigInt total = 0;
    for (int v = 0; v < n; ++v) total += cur[v * codes + accept];
    series.push_back(total);
  };
  read();
  for (int step = 1; step <= max_d; ++step) {
    for (auto& x : next) x = 0;
    for (int v = 0; v < n; ++v) {
      for (std::uint64_t code = 0; code < codes; ++code) {
        const BigInt& c = cur[v * codes + code];
        if (c == 0) continue;
        for (auto [u, e] : moves[v]) {
          std::uint64_t digit = (code / pow3[e]) % 3;
          std::uint64_t to = digit == 2 ? code - pow3[e] : code + pow3[e];
          next[u * codes + to] += c;
        }
      }
    }
    std::swap(cur, next);
    read();
  }
  return series;
}

BigInt covering_parity_closed_count(const Graph& motif, int d, CoveringMethod method, const WalkBudget& budget) {
  if (method == CoveringMethod::kDp) return covering_parity_closed_series(motif, d, budget).back();

  if (d < 0) fail(ErrorKind::kInvalidArgument, "walk length must be non-negative");
  if (!motif.is_connected()) fail(ErrorKind::kInvalidArgument, "covering walks need a connected motif");
  const int m = motif.edge_count();
  if (m > budget.max_parity_edges) fail(ErrorKind::kBudget, "inclusion-exclusion limited by the parity DP width");
  // p_d(E) = sum over F subset of E of (-1)^{|E \ F|} P_d restricted to F.
  BigInt total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<Edge> kept;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) kept.push_back(motif.edges()[i]);
    const int removed = m - static_cast<int>(kept.size());
    Graph restricted(motif.vertex_count(), std::move(kept));
    BigInt p = parity_closed_series(restricted, d, budget).back();
    if (removed % 2 == 0) {
      total += p;
    } else {
      total -= p;
    }
  }
  return total;
}

}  // namespace powerspec
