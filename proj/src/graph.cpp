#include "powerspec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "powerspec/errors.hpp"

namespace powerspec {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 0) fail(ErrorKind::kInvalidArgument, "negative vertex count");
  for (auto& e : edges) {
    if (e.u == e.v) fail(ErrorKind::kInvalidArgument, "loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      fail(ErrorKind::kInvalidArgument,
           "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    fail(ErrorKind::kInvalidArgument, "duplicate edge");
  }
  edges_ = std::move(edges);
}

std::vector<std::vector<int>> Graph::neighbors() const {
  std::vector<std::vector<int>> adj(n_);
  for (const auto& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<std::vector<int>> Graph::incident_edges() const {
  std::vector<std::vector<int>> inc(n_);
  for (int i = 0; i < edge_count(); ++i) {
    inc[edges_[i].u].push_back(i);
    inc[edges_[i].v].push_back(i);
  }
  return inc;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::adjacency_matrix() const {
  std::vector<std::vector<int>> a(n_, std::vector<int>(n_, 0));
  for (const auto& e : edges_) a[e.u][e.v] = a[e.v][e.u] = 1;
  return a;
}

int Graph::component_count() const {
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n_;
  for (const auto& e : edges_) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

bool Graph::is_connected() const { return n_ >= 1 && component_count() == 1; }

bool Graph::is_forest() const { return cyclomatic_number() == 0; }

int Graph::cyclomatic_number() const { return edge_count() - n_ + component_count(); }

Graph Graph::edge_subgraph(std::span<const int> edge_ids) const {
  std::vector<int> verts;
  for (int id : edge_ids) {
    verts.push_back(edges_.at(id).u);
    verts.push_back(edges_.at(id).v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> index(n_, -1);
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);
  std::vector<Edge> sub;
  for (int id : edge_ids) sub.push_back({index[edges_[id].u], index[edges_[id].v]});
  return Graph(static_cast<int>(verts.size()), std::move(sub));
}

Graph Graph::induced_subgraph(std::span<const int> vertices) const {
  std::vector<int> index(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<int>(i);
  std::vector<Edge> sub;
  for (const auto& e : edges_) {
    if (index[e.u] >= 0 && index[e.v] >= 0) sub.push_back({index[e.u], index[e.v]});
  }
  return Graph(static_cast<int>(vertices.size()), std::move(sub));
}

Graph Graph::relabeled(std::span<const int> order) const {
  std::vector<int> position(n_);
  for (int i = 0; i < n_; ++i) position[order[i]] = i;
  std::vector<Edge> out;
  for (const auto& e : edges_) out.push_back({position[e.u], position[e.v]});
  return Graph(n_, std::move(out));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  fail(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

// Reads whitespace-separated non-negative integers; false on anything else.
bool read_ints(std::string_view line, std::vector<long>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() || value < 0) return false;
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) return false;
    out.push_back(value);
  }
  return true;
}

}  // namespace

Graph builtin_graph(std::string_view name) {
  auto colon = name.find(':');
  if (colon == std::string_view::npos) fail(ErrorKind::kParse, "not a builtin graph: " + std::string(name));
  std::string_view kind = name.substr(0, colon);
  std::string_view arg = name.substr(colon + 1);
  int n = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
  if (ec != std::errc() || ptr != arg.data() + arg.size() || n < 1) {
    fail(ErrorKind::kParse, "bad size in builtin graph: " + std::string(name));
  }
  std::vector<Edge> edges;
  if (kind == "path") {
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  } else if (kind == "cycle") {
    if (n < 3) fail(ErrorKind::kParse, "cycle needs at least 3 vertices");
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({0, n - 1});
  } else if (kind == "complete") {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  } else if (kind == "star") {
    for (int i = 1; i < n; ++i) edges.push_back({0, i});
  } else {
    fail(ErrorKind::kParse, "unknown builtin graph: " + std::string(kind));
  }
  return Graph(n, std::move(edges));
}

Graph parse_graph(std::string_view text) {
  std::string_view body = trim(text);
  if (body.find(':') != std::string_view::npos && body.find('\n') == std::string_view::npos) {
    return builtin_graph(body);
  }

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  std::vector<long> nums;
  std::size_t li = 0;
  auto next_line = [&]() -> int {
    while (li < lines.size()) {
      std::string_view l = trim(lines[li]);
      ++li;
      if (!l.empty() && l.front() != '#') return static_cast<int>(li);
    }
    return -1;
  };

  int header = next_line();
  if (header < 0) fail(ErrorKind::kParse, "empty graph description");
  if (!read_ints(trim(lines[header - 1]), nums) || nums.size() != 2) {
    parse_error(header, "expected header \"n m\"");
  }
  const long n = nums[0];
  const long m = nums[1];
  if (n > 1'000'000) parse_error(header, "vertex count too large");
  if (m > n * (n - 1) / 2) parse_error(header, "more edges than a simple graph allows");

  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> seen;
  for (long i = 0; i < m; ++i) {
    int line = next_line();
    if (line < 0) fail(ErrorKind::kParse, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(i));
    if (!read_ints(trim(lines[line - 1]), nums) || nums.size() != 2) parse_error(line, "expected \"u v\"");
    int u = static_cast<int>(nums[0]), v = static_cast<int>(nums[1]);
    if (nums[0] >= n || nums[1] >= n) parse_error(line, "vertex label out of range");
    if (u == v) parse_error(line, "loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (std::find(seen.begin(), seen.end(), std::pair<int, int>(key.first, key.second)) != seen.end()) {
      parse_error(line, "duplicate edge {" + std::to_string(key.first) + "," + std::to_string(key.second) + "}");
    }
    seen.emplace_back(key.first, key.second);
    edges.push_back({u, v});
  }
  if (int extra = next_line(); extra >= 0) parse_error(extra, "unexpected content after the edge list");
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Canonical labeling

namespace {

// Iterated colour refinement; colours are ranks of sorted signatures, which
// makes them invariant under relabeling.
std::vector<int> refine_colours(const Graph& g) {
  const int n = g.vertex_count();
  auto adj = g.neighbors();
  std::vector<int> colour = g.degrees();
  int classes = 0;
  for (;;) {
    std::vector<std::pair<std::vector<int>, int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> s{colour[v]};
      std::vector<int> nb;
      for (int u : adj[v]) nb.push_back(colour[u]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sig[v] = {std::move(s), v};
    }
    std::vector<std::vector<int>> keys;
    for (auto& s : sig) keys.push_back(s.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<int> next(n);
    for (int v = 0; v < n; ++v) {
      next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v].first) - keys.begin());
    }
    int next_classes = static_cast<int>(keys.size());
    colour = std::move(next);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  return colour;
}

}  // namespace

CanonicalForm canonical_form(const Graph& g, int max_vertices) {
  const int n = g.vertex_count();
  if (n > max_vertices) {
    fail(ErrorKind::kBudget, "canonical form limited to " + std::to_string(max_vertices) + " vertices, got " +
                                 std::to_string(n));
  }
  if (n > 255) fail(ErrorKind::kBudget, "canonical form supports at most 255 vertices");
  auto adj = g.adjacency_matrix();
  std::vector<int> colour = refine_colours(g);

  // Cells of equal colour, in colour order; only orders within cells are tried.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return colour[a] < colour[b]; });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && colour[order[j]] == colour[order[i]]) ++j;
    cells.emplace_back(i, j);
    i = j;
  }

  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  std::vector<std::uint8_t> best_bits;
  std::vector<int> best_order;
  std::vector<std::uint8_t> cur(bits);

  auto encode = [&]() {
    std::size_t b = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) cur[b++] = static_cast<std::uint8_t>(adj[order[i]][order[j]]);
    if (best_order.empty() || cur < best_bits) {
      best_bits = cur;
      best_order = order;
    }
  };

  // Odometer over the per-cell permutations.
  for (auto& [a, b] : cells) std::sort(order.begin() + a, order.begin() + b);
  for (;;) {
    encode();
    std::size_t c = cells.size();
    bool advanced = false;
    while (c-- > 0) {
      auto [a, b] = cells[c];
      if (std::next_permutation(order.begin() + a, order.begin() + b)) {
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  CanonicalForm out;
  out.certificate.push_back(static_cast<std::uint8_t>(n));
  std::uint8_t acc = 0;
  int fill = 0;
  for (std::uint8_t bit : best_bits) {
    acc = static_cast<std::uint8_t>((acc << 1) | bit);
    if (++fill == 8) {
      out.certificate.push_back(acc);
      acc = 0;
      fill = 0;
    }
  }
  if (fill > 0) out.certificate.push_back(static_cast<std::uint8_t>(acc << (8 - fill)));
  out.order = std::move(best_order);
  return out;
}

std::vector<std::uint8_t> canonical_certificate(const Graph& g, int max_vertices) {
  return canonical_form(g, max_vertices).certificate;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Connected subset enumeration (ESU on an adjacency structure)

namespace {

// closed[u] counts the members of `sub` equal or adjacent to u; u is in the
// closed neighbourhood of sub iff closed[u] > 0.
void esu_extend(const std::vector<std::vector<int>>& adj, int root, int max_size, std::vector<int>& sub,
                std::vector<int> ext, std::vector<int>& closed, std::vector<std::vector<int>>& out) {
  std::vector<int> sorted = sub;
  std::sort(sorted.begin(), sorted.end());
  out.push_back(std::move(sorted));
  if (static_cast<int>(sub.size()) == max_size) return;
  while (!ext.empty()) {
    int w = ext.back();
    ext.pop_back();
    std::vector<int> next_ext = ext;
    for (int u : adj[w]) {
      if (u > root && closed[u] == 0) next_ext.push_back(u);
    }
    ++closed[w];
    for (int u : adj[w]) ++closed[u];
    sub.push_back(w);
    esu_extend(adj, root, max_size, sub, std::move(next_ext), closed, out);
    sub.pop_back();
    --closed[w];
    for (int u : adj[w]) --closed[u];
  }
}

std::vector<std::vector<int>> esu(const std::vector<std::vector<int>>& adj, int max_size) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> out;
  if (max_size < 1) return out;
  std::vector<int> closed(n, 0);
  for (int v = 0; v < n; ++v) {
    std::vector<int> sub{v};
    ++closed[v];
    for (int u : adj[v]) ++closed[u];
    std::vector<int> ext;
    for (int u : adj[v])
      if (u > v) ext.push_back(u);
    esu_extend(adj, v, max_size, sub, std::move(ext), closed, out);
    --closed[v];
    for (int u : adj[v]) --closed[u];
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> connected_edge_subsets(const Graph& g, int max_edges) {
  const int m = g.edge_count();
  auto inc = g.incident_edges();
  std::vector<std::vector<int>> line(m);
  for (const auto& at_vertex : inc) {
    for (int a : at_vertex)
      for (int b : at_vertex)
        if (a != b) line[a].push_back(b);
  }
  for (auto& l : line) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return esu(line, std::min(max_edges, m));
}

std::vector<std::vector<int>> connected_vertex_subsets(const Graph& g) {
  auto subsets = esu(g.neighbors(), g.vertex_count());
  std::erase_if(subsets, [](const std::vector<int>& s) { return s.size() < 2; });
  return subsets;
}

std::uint64_t MotifCensus::count_of(const Graph& motif) const {
  auto cert = canonical_certificate(motif);
  for (const auto& e : entries) {
    if (e.motif.certificate == cert) return e.count;
  }
  return 0;
}

MotifCensus connected_subgraph_census(const Graph& g, int max_edges, int max_vertices) {
  if (max_edges < 1) fail(ErrorKind::kInvalidArgument, "census needs max_edges >= 1");
  std::map<std::vector<std::uint8_t>, CensusEntry> by_cert;
  for (const auto& subset : connected_edge_subsets(g, max_edges)) {
    Graph sub = g.edge_subgraph(subset);
    CanonicalForm cf = canonical_form(sub, max_vertices);
    auto it = by_cert.find(cf.certificate);
    if (it == by_cert.end()) {
      CensusEntry entry{Motif{sub.relabeled(cf.order), cf.certificate}, 0};
      it = by_cert.emplace(cf.certificate, std::move(entry)).first;
    }
    ++it->second.count;
  }
  MotifCensus census;
  census.max_edges = max_edges;
  for (auto& [cert, entry] : by_cert) census.entries.push_back(std::move(entry));
  std::sort(census.entries.begin(), census.entries.end(), [](const CensusEntry& a, const CensusEntry& b) {
    auto key = [](const CensusEntry& e) {
      return std::make_tuple(e.motif.graph.edge_count(), e.motif.graph.vertex_count(), std::cref(e.motif.certificate));
    };
    return key(a) < key(b);
  });
  return census;
}

std::vector<Graph> connected_graphs(int max_vertices) {
  std::vector<Graph> out;
  for (int n = 2; n <= max_vertices; ++n) {
    std::vector<Edge> all;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) all.push_back({i, j});
    if (all.size() > 28) fail(ErrorKind::kBudget, "connected_graphs supports at most 8 vertices");
    std::map<std::tuple<int, std::vector<std::uint8_t>>, Graph> classes;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << all.size()); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t b = 0; b < all.size(); ++b)
        if (mask >> b & 1) edges.push_back(all[b]);
      if (static_cast<int>(edges.size()) < n - 1) continue;
      Graph cand(n, std::move(edges));
      if (!cand.is_connected()) continue;
      CanonicalForm cf = canonical_form(cand, max_vertices);
      classes.try_emplace({cand.edge_count(), cf.certificate}, cand.relabeled(cf.order));
    }
    for (auto& [key, graph] : classes) out.push_back(std::move(graph));
  }
  return out;
}

// ---------------------------------------------------------------------------

Hypergraph power_hypergraph(const Graph& g, int k) {
  if (k < 3) fail(ErrorKind::kInvalidArgument, "power hypergraph needs k >= 3");
  Hypergraph h;
  h.k = k;
  h.n = g.vertex_count() + (k - 2) * g.edge_count();
  int next = g.vertex_count();
  for (const auto& e : g.edges()) {
    HyperedgeCore core{e.u, e.v, {}};
    std::vector<int> he{e.u, e.v};
    for (int t = 0; t < k - 2; ++t) {
      core.cores.push_back(next);
      he.push_back(next);
      ++next;
    }
    std::sort(he.begin(), he.end());
    h.hyperedges.push_back(std::move(he));
    h.core_map.push_back(std::move(core));
  }
  return h;
}

}  // namespace powerspec
