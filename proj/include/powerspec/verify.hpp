#pragma once

#include <string>
#include <vector>

#include "powerspec/graph.hpp"
#include "powerspec/mean_polynomials.hpp"
#include "powerspec/power_spectrum.hpp"

namespace powerspec {

enum class VerifyScope { kQuick, kFull };

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
  double elapsed_ms = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
  int skipped = 0;

  bool ok() const { return failed == 0; }
};

struct VerifyOptions {
  VerifyScope scope = VerifyScope::kQuick;
  // Replaces the scope's graph list when non-empty.
  std::vector<Graph> seeds;
  SpectrumOptions spectrum{};
  // Corrupts one motif weight in the k >= 3 systems.
  bool inject_fault = false;
};

// K2, path:3, path:4, cycle:3, cycle:4, cycle:5, K4 minus an edge, K4.
std::vector<Graph> quick_graphs();

// Runs every identity check over the scope's graphs. Checks that do not
// depend on the graph list (synthetic digraphs, cycles, fixed examples) run
// regardless of the seeds.
VerifyReport run_verify_suite(const VerifyOptions& opts);

// Sample points for the geometric-mean identity.
const std::vector<double>& geometric_mean_points();

}  // namespace powerspec
