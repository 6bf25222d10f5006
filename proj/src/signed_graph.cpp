#include "powerspec/signed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "powerspec/errors.hpp"

namespace powerspec {

SignedGraph::SignedGraph(Graph base, std::vector<int> signs) : base_(std::move(base)), signs_(std::move(signs)) {
  if (static_cast<int>(signs_.size()) != base_.edge_count()) {
    fail(ErrorKind::kInvalidArgument, "sign vector length does not match the edge count");
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) fail(ErrorKind::kInvalidArgument, "signs must be +1 or -1");
  }
}

SignedGraph SignedGraph::all_positive(const Graph& base) {
  return SignedGraph(base, std::vector<int>(base.edge_count(), 1));
}

std::vector<std::vector<int>> SignedGraph::adjacency_matrix() const {
  const int n = base_.vertex_count();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < base_.edge_count(); ++i) {
    const auto& e = base_.edges()[i];
    a[e.u][e.v] = a[e.v][e.u] = signs_[i];
  }
  return a;
}

SignedGraph SignedGraph::negated() const {
  std::vector<int> s = signs_;
  for (int& x : s) x = -x;
  return SignedGraph(base_, std::move(s));
}

SignedGraph SignedGraph::switched(const std::vector<int>& diag) const {
  if (static_cast<int>(diag.size()) != base_.vertex_count()) {
    fail(ErrorKind::kInvalidArgument, "switching vector length does not match the vertex count");
  }
  std::vector<int> s = signs_;
  for (int i = 0; i < base_.edge_count(); ++i) {
    s[i] *= diag[base_.edges()[i].u] * diag[base_.edges()[i].v];
  }
  return SignedGraph(base_, std::move(s));
}

namespace {

// Edges of a BFS spanning forest, in edge-index terms.
std::vector<bool> spanning_forest(const Graph& g) {
  std::vector<bool> tree(g.edge_count(), false);
  std::vector<bool> seen(g.vertex_count(), false);
  auto inc = g.incident_edges();
  for (int root = 0; root < g.vertex_count(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : inc[v]) {
        int u = g.edges()[e].u == v ? g.edges()[e].v : g.edges()[e].u;
        if (!seen[u]) {
          seen[u] = true;
          tree[e] = true;
          q.push(u);
        }
      }
    }
  }
  return tree;
}

}  // namespace

std::vector<SignedGraph> enumerate_signings(const Graph& g, bool up_to_switching, int max_free_edges) {
  std::vector<int> free_edges;
  if (up_to_switching) {
    auto tree = spanning_forest(g);
    for (int i = 0; i < g.edge_count(); ++i)
      if (!tree[i]) free_edges.push_back(i);
  } else {
    for (int i = 0; i < g.edge_count(); ++i) free_edges.push_back(i);
  }
  if (static_cast<int>(free_edges.size()) > max_free_edges) {
    fail(ErrorKind::kBudget, "signing enumeration limited to 2^" + std::to_string(max_free_edges));
  }
  std::vector<SignedGraph> out;
  const std::uint64_t total = std::uint64_t{1} << free_edges.size();
  out.reserve(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<int> signs(g.edge_count(), 1);
    for (std::size_t b = 0; b < free_edges.size(); ++b)
      if (mask >> b & 1) signs[free_edges[b]] = -1;
    out.emplace_back(g, std::move(signs));
  }
  return out;
}

IntPolynomial char_poly_exact(const std::vector<std::vector<int>>& a) {
  const int n = static_cast<int>(a.size());
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
  std::vector<std::vector<BigInt>> am(n, std::vector<BigInt>(n, 0));
  for (int k = 1; k <= n; ++k) {
    // m <- A m + c_{n-k+1} I, using am = A * m_prev computed last round (zero at k = 1).
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = am[i][j];
      m[i][i] += c[n - k + 1];
    }
    BigInt trace = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        BigInt acc = 0;
        for (int t = 0; t < n; ++t) {
          if (a[i][t] != 0) acc += a[i][t] * m[t][j];
        }
        am[i][j] = acc;
      }
      trace += am[i][i];
    }
    if (trace % k != 0) fail(ErrorKind::kInternal, "Faddeev-LeVerrier division was not exact");
    c[n - k] = -(trace / k);
  }
  return IntPolynomial{std::move(c)};
}

IntPolynomial char_poly_exact(const SignedGraph& sg) { return char_poly_exact(sg.adjacency_matrix()); }

RealSpectrum symmetric_eigenvalues(const std::vector<std::vector<double>>& matrix, double tol) {
  if (!(tol > 0)) fail(ErrorKind::kInvalidArgument, "eigenvalue tolerance must be positive");
  const int n = static_cast<int>(matrix.size());
  auto a = matrix;
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  double scale = 0.0;
  for (const auto& row : a)
    for (double x : row) scale = std::max(scale, std::abs(x));

  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off <= 1e-30 * std::max(1.0, scale * scale)) {
      converged = true;
      break;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) fail(ErrorKind::kNumeric, "Jacobi iteration did not converge");

  RealSpectrum out;
  for (int i = 0; i < n; ++i) {
    double lambda = a[i][i];
    double res = 0.0;
    for (int r = 0; r < n; ++r) {
      double acc = -lambda * v[r][i];
      for (int c = 0; c < n; ++c) acc += matrix[r][c] * v[c][i];
      res += acc * acc;
    }
    out.residual_bound = std::max(out.residual_bound, std::sqrt(res));
    out.eigenvalues.push_back(lambda);
  }
  if (out.residual_bound > tol) fail(ErrorKind::kNumeric, "eigenpair residual exceeds tolerance");
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

RealSpectrum eigenvalues(const SignedGraph& sg, double tol) {
  auto a = sg.adjacency_matrix();
  std::vector<std::vector<double>> m(a.size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a[i][j];
  return symmetric_eigenvalues(m, tol);
}

std::vector<BigInt> signed_moment_series(const SignedGraph& sg, int max_d) {
  if (max_d < 0) fail(ErrorKind::kInvalidArgument, "moment order must be non-negative");
  const int n = sg.vertex_count();
  auto a = sg.adjacency_matrix();
  std::vector<std::vector<BigInt>> power(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) power[i][i] = 1;
  std::vector<BigInt> series{BigInt(n)};
  for (int d = 1; d <= max_d; ++d) {
    std::vector<std::vector<BigInt>> next(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < n; ++t) {
        if (a[i][t] == 0) continue;
        for (int j = 0; j < n; ++j) {
          if (a[i][t] > 0) {
            next[i][j] += power[t][j];
          } else {
            next[i][j] -= power[t][j];
          }
        }
      }
    power = std::move(next);
    BigInt trace = 0;
    for (int i = 0; i < n; ++i) trace += power[i][i];
    series.push_back(trace);
  }
  return series;
}

BigInt signed_spectral_moment(const SignedGraph& sg, int d) { return signed_moment_series(sg, d).back(); }

bool is_balanced(const SignedGraph& sg) {
  const Graph& g = sg.base();
  auto inc = g.incident_edges();
  std::vector<int> potential(g.vertex_count(), 0);
  for (int root = 0; root < g.vertex_count(); ++root) {
    if (potential[root] != 0) continue;
    potential[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : inc[v]) {
        int u = g.edges()[e].u == v ? g.edges()[e].v : g.edges()[e].u;
        int want = potential[v] * sg.signs()[e];
        if (potential[u] == 0) {
          potential[u] = want;
          q.push(u);
        } else if (potential[u] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

struct RawSquare {
  double value;
  std::size_t witness;
  double eigenvalue;
};

void collect_squares(const Graph& sub, std::vector<SigmaWitness>& witnesses, std::vector<RawSquare>& raw) {
  for (const auto& sg : enumerate_signings(sub, true)) {
    IntPolynomial phi = char_poly_exact(sg);
    const int zeros = phi.zero_root_multiplicity();
    std::vector<double> ev = eigenvalues(sg).eigenvalues;
    // The exact zero multiplicity decides which computed eigenvalues are zero.
    std::sort(ev.begin(), ev.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    std::size_t witness = witnesses.size();
    witnesses.push_back({sub, sg.signs(), 0.0});
    for (std::size_t i = static_cast<std::size_t>(zeros); i < ev.size(); ++i) {
      raw.push_back({ev[i] * ev[i], witness, ev[i]});
    }
  }
}

}  // namespace

SigmaSet sigma_set(const Graph& g, SubgraphMode mode, double tol) {
  if (!(tol > 0)) fail(ErrorKind::kInvalidArgument, "clustering tolerance must be positive");
  std::vector<Graph> subgraphs;
  if (mode == SubgraphMode::kAllSubgraphs) {
    if (g.edge_count() > 0) {
      for (const auto& entry : connected_subgraph_census(g, g.edge_count()).entries) {
        subgraphs.push_back(entry.motif.graph);
      }
    }
  } else {
    std::map<std::vector<std::uint8_t>, Graph> seen;
    for (const auto& verts : connected_vertex_subsets(g)) {
      Graph sub = g.induced_subgraph(verts);
      CanonicalForm cf = canonical_form(sub);
      seen.try_emplace(cf.certificate, sub.relabeled(cf.order));
    }
    for (auto& [cert, sub] : seen) subgraphs.push_back(std::move(sub));
  }

  std::vector<SigmaWitness> candidates;
  std::vector<RawSquare> raw;
  for (const auto& sub : subgraphs) collect_squares(sub, candidates, raw);
  std::stable_sort(raw.begin(), raw.end(), [](const RawSquare& a, const RawSquare& b) { return a.value < b.value; });

  SigmaSet out;
  out.tolerance = tol;
  out.min_gap = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i + 1;
    double sum = raw[i].value;
    while (j < raw.size() && raw[j].value - raw[j - 1].value <= tol) sum += raw[j++].value;
    out.values.push_back(sum / static_cast<double>(j - i));
    SigmaWitness w = candidates[raw[i].witness];
    w.eigenvalue = raw[i].eigenvalue;
    out.witnesses.push_back(std::move(w));
    if (j < raw.size()) {
      double gap = raw[j].value - raw[j - 1].value;
      if (gap <= 10 * tol) {
        fail(ErrorKind::kNumeric, "ambiguous clustering of squared eigenvalues: gap " + std::to_string(gap) +
                                      " is within 10x the tolerance");
      }
      out.min_gap = std::min(out.min_gap, gap);
    }
    i = j;
  }
  return out;
}

}  // namespace powerspec
