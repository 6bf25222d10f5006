#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "powerspec/graph.hpp"
#include "powerspec/numeric.hpp"

namespace powerspec {

// Directed multigraph without self-arcs; multiplicity(i, j) = m_D(i, j).
class Multidigraph {
 public:
  explicit Multidigraph(int n = 0) : n_(n) {}

  int vertex_count() const { return n_; }
  void add_arcs(int from, int to, std::uint64_t count = 1);
  std::uint64_t multiplicity(int from, int to) const;
  const std::map<std::pair<int, int>, std::uint64_t>& arcs() const { return arcs_; }
  std::uint64_t arc_count() const;

  std::vector<std::uint64_t> out_degrees() const;
  std::vector<std::uint64_t> in_degrees() const;
  // Vertices touched by at least one arc, ascending.
  std::vector<int> active_vertices() const;
  bool is_balanced() const;
  // At least one arc, balanced, and weakly connected on its active vertices
  // (balanced + weakly connected implies strongly connected).
  bool is_eulerian() const;
  // b(D): product of the factorials of the arc multiplicities.
  BigInt multiplicity_factorial_product() const;

  friend bool operator==(const Multidigraph&, const Multidigraph&) = default;

 private:
  int n_;
  std::map<std::pair<int, int>, std::uint64_t> arcs_;
};

// Spanning in-trees oriented toward `root` over the active vertices
// (determinant of the out-degree Laplacian with the root row/column removed).
BigInt arborescence_count(const Multidigraph& d, int root);
// t(D) rooted at the smallest active vertex. For Eulerian inputs every root is
// checked to give the same count.
BigInt spanning_tree_count(const Multidigraph& d);

enum class EulerianMethod { kBest, kBrute };

// Closed walks (vertex sequences with a distinguished start) that use every
// arc exactly its multiplicity; parallel arcs are indistinguishable.
BigInt eulerian_walk_count(const Multidigraph& d, EulerianMethod method, std::uint64_t max_brute_arcs = 12);

// Multidigraph over power_hypergraph(motif, k) determined by the multigraph
// dstar on the motif's base vertices.
Multidigraph lift_from_core(const Graph& motif, const Multidigraph& dstar, int k);
// Inverse of lift_from_core: drops the core vertices after checking the
// multiplicity relations every lift satisfies.
Multidigraph reduce_to_core(const Multidigraph& d, const Hypergraph& h);

struct SpanningTreeReduction {
  BigInt direct;     // t(lift) by determinant
  Rational formula;  // t(D*) k^{|E|(k-3)+|V|-1} 2^{|E|-|V|+1} prod((m_ij+m_ji)/2)^{k-2}
  bool equal = false;
};
SpanningTreeReduction spanning_tree_reduction_check(const Graph& motif, const Multidigraph& dstar, int k);

// Tr_d of the adjacency tensor by direct summation over sequences of rooted
// hyperedges; exponential, for tiny hypergraphs only.
Rational naive_tensor_trace(const Hypergraph& h, int d, std::uint64_t max_terms = 5'000'000);

// p_{2 ell}(motif) summed over Eulerian arc-multiplicity assignments by BEST.
BigInt covering_parity_via_best(const Graph& motif, int ell, std::uint64_t max_terms = 5'000'000);

// D(k) entry of a motif: 2^{|E|-|V|} k^{|E|(k-3)+|V|} / (k-1)^{|V|+|E|(k-2)-1}.
Rational motif_weight(const Graph& motif, int k);
// c_{ell k}(motif^{(k)}) = motif_weight * p_{2 ell}(motif).
Rational moment_coefficient(const Graph& motif, int ell, int k);
// Same coefficient through the hypertree reduction (trees only).
Rational tree_moment_coefficient(const Graph& tree, int ell, int k);

}  // namespace powerspec
