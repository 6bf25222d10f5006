#pragma once

#include <cstdint>
#include <vector>

#include "powerspec/graph.hpp"
#include "powerspec/numeric.hpp"

namespace powerspec {

// Walks are rooted and directed: a closed walk is a vertex sequence
// v0 v1 ... vd = v0, so the counts match trace(A^d).

enum class ParityMethod { kDp, kSignedMean };
enum class CoveringMethod { kDp, kInclusionExclusion };

struct WalkBudget {
  int max_parity_edges = 24;       // bitmask width of the parity DP
  int max_signed_mean_edges = 20;  // 2^|E| signings
  std::uint64_t max_states = 50'000'000;
};

// trace(A^d), exact.
BigInt closed_walk_count(const Graph& g, int d);

// Closed walks of length d using every edge an even number of times (P_d).
BigInt parity_closed_count(const Graph& g, int d, ParityMethod method, const WalkBudget& budget = {});
// P_0 .. P_max_d from a single parity DP run.
std::vector<BigInt> parity_closed_series(const Graph& g, int max_d, const WalkBudget& budget = {});

// Closed walks of length d using every edge of `motif` a positive even number
// of times (p_d). The motif must be connected.
BigInt covering_parity_closed_count(const Graph& motif, int d, CoveringMethod method = CoveringMethod::kDp,
                                    const WalkBudget& budget = {});
// p_0 .. p_max_d from a single DP run.
std::vector<BigInt> covering_parity_closed_series(const Graph& motif, int max_d, const WalkBudget& budget = {});

}  // namespace powerspec
