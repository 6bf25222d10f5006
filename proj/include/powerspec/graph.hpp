#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace powerspec {

struct Edge {
  int u;
  int v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 0..n-1. Edges are stored with u < v and
// sorted lexicographically, so equal graphs have equal representations.
class Graph {
 public:
  Graph() = default;
  // Validates (no loops, no duplicates, labels in range) and normalizes.
  Graph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::vector<std::vector<int>> neighbors() const;
  // incident_edges()[v] lists the indices of edges touching v.
  std::vector<std::vector<int>> incident_edges() const;
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency_matrix() const;

  int component_count() const;
  // True when all n >= 1 vertices lie in a single component.
  bool is_connected() const;
  bool is_forest() const;
  // Dimension of the cycle space, |E| - |V| + c.
  int cyclomatic_number() const;

  // Subgraph formed by the given edges and their endpoints; vertices are
  // relabeled 0.. in increasing order of their original labels.
  Graph edge_subgraph(std::span<const int> edge_ids) const;
  Graph induced_subgraph(std::span<const int> vertices) const;
  Graph relabeled(std::span<const int> order) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Named builtins ("path:n", "cycle:n", "complete:n", "star:n") or an edge list
// "n m" followed by m lines "u v". star:n has n vertices, centre 0.
Graph parse_graph(std::string_view text);
Graph builtin_graph(std::string_view name);
std::string format_edge_list(const Graph& g);

struct CanonicalForm {
  std::vector<std::uint8_t> certificate;
  // order[i] is the original vertex placed at canonical position i.
  std::vector<int> order;
};

// Minimum upper-triangle adjacency encoding over all vertex orders that are
// compatible with a colour refinement of the graph.
CanonicalForm canonical_form(const Graph& g, int max_vertices = 10);
std::vector<std::uint8_t> canonical_certificate(const Graph& g, int max_vertices = 10);
std::string to_hex(std::span<const std::uint8_t> bytes);

struct Motif {
  Graph graph;  // canonically labeled
  std::vector<std::uint8_t> certificate;

  friend bool operator==(const Motif& a, const Motif& b) { return a.certificate == b.certificate; }
};

struct CensusEntry {
  Motif motif;
  std::uint64_t count = 0;
};

struct MotifCensus {
  std::vector<CensusEntry> entries;  // sorted by (edges, vertices, certificate)
  int max_edges = 0;

  std::uint64_t count_of(const Graph& motif) const;
};

// Every connected edge subset with 1..max_edges edges, each exactly once,
// as sorted lists of edge indices.
std::vector<std::vector<int>> connected_edge_subsets(const Graph& g, int max_edges);
// Every connected vertex subset with at least two vertices.
std::vector<std::vector<int>> connected_vertex_subsets(const Graph& g);

MotifCensus connected_subgraph_census(const Graph& g, int max_edges, int max_vertices = 10);

// One representative per isomorphism class of connected graphs with
// 2..max_vertices vertices, ordered by (vertices, edges, certificate).
std::vector<Graph> connected_graphs(int max_vertices);

struct HyperedgeCore {
  int base_u;
  int base_v;
  std::vector<int> cores;
};

struct Hypergraph {
  int k = 0;
  int n = 0;
  std::vector<std::vector<int>> hyperedges;  // each sorted ascending
  std::vector<HyperedgeCore> core_map;       // aligned with hyperedges
};

// Adds k-2 fresh core vertices to every edge; cores of edge i are numbered
// n + i(k-2), ..., n + i(k-2) + k-3.
Hypergraph power_hypergraph(const Graph& g, int k);

}  // namespace powerspec
