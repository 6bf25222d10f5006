#pragma once

#include <vector>

#include "powerspec/graph.hpp"
#include "powerspec/numeric.hpp"
#include "powerspec/polynomial.hpp"

namespace powerspec {

// A graph with a sign (+1 or -1) on each edge, aligned with base.edges().
class SignedGraph {
 public:
  SignedGraph(Graph base, std::vector<int> signs);
  static SignedGraph all_positive(const Graph& base);

  const Graph& base() const { return base_; }
  const std::vector<int>& signs() const { return signs_; }
  int vertex_count() const { return base_.vertex_count(); }

  std::vector<std::vector<int>> adjacency_matrix() const;
  SignedGraph negated() const;
  // Conjugation by the +-1 diagonal `diag`.
  SignedGraph switched(const std::vector<int>& diag) const;

 private:
  Graph base_;
  std::vector<int> signs_;
};

// All 2^|E| signings, or one per switching class (tree edges of a BFS spanning
// forest fixed to +1, free signs on the remaining cycle-space basis edges).
std::vector<SignedGraph> enumerate_signings(const Graph& g, bool up_to_switching, int max_free_edges = 20);

// det(xI - A) with exact integer arithmetic (Faddeev-LeVerrier).
IntPolynomial char_poly_exact(const SignedGraph& sg);
IntPolynomial char_poly_exact(const std::vector<std::vector<int>>& matrix);

struct RealSpectrum {
  std::vector<double> eigenvalues;  // descending
  double residual_bound = 0.0;      // max ||Ax - lambda x|| over computed pairs
};

// Cyclic Jacobi rotations on a dense symmetric matrix.
RealSpectrum symmetric_eigenvalues(const std::vector<std::vector<double>>& matrix, double tol);
RealSpectrum eigenvalues(const SignedGraph& sg, double tol = 1e-10);

// trace(A^d), exact.
BigInt signed_spectral_moment(const SignedGraph& sg, int d);
// trace(A^0) .. trace(A^max_d).
std::vector<BigInt> signed_moment_series(const SignedGraph& sg, int max_d);

// True iff every cycle has positive sign product.
bool is_balanced(const SignedGraph& sg);

enum class SubgraphMode { kAllSubgraphs, kInducedSubgraphs };

struct SigmaWitness {
  Graph subgraph;          // canonical motif graph
  std::vector<int> signs;  // aligned with subgraph.edges()
  double eigenvalue;       // signed eigenvalue whose square joined the cluster
};

// Distinct squares of nonzero eigenvalues of the connected signed subgraphs.
struct SigmaSet {
  std::vector<double> values;  // ascending, consecutive gaps > tolerance
  double tolerance = 1e-8;
  std::vector<SigmaWitness> witnesses;  // aligned with values
  double min_gap = 0.0;                 // smallest gap between clusters
};

SigmaSet sigma_set(const Graph& g, SubgraphMode mode, double tol = 1e-8);

}  // namespace powerspec
