#include <algorithm>

#include "doctest.h"
#include "powerspec/verify.hpp"

using namespace powerspec;

namespace {

const CheckResult* find(const VerifyReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("quick graphs") {
  auto graphs = quick_graphs();
  REQUIRE(graphs.size() == 8);
  CHECK(graphs.front() == builtin_graph("path:2"));
  CHECK(graphs.back() == builtin_graph("complete:4"));
  CHECK(graphs[6].edge_count() == 5);
  for (const auto& g : graphs) CHECK(g.is_connected());
}

TEST_CASE("quick suite passes in a fixed order") {
  VerifyReport r = run_verify_suite({});
  CHECK(r.ok());
  CHECK(r.failed == 0);
  CHECK(r.checks.size() >= 11);
  CHECK(r.passed + r.failed + r.skipped == static_cast<int>(r.checks.size()));
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.status == CheckStatus::kPass);
    CHECK(c.elapsed_ms >= 0.0);
  }
  const std::vector<std::string> order{"walks.method_equivalence",       "walks.decomposition",
                                       "tensor.best_vs_brute",           "tensor.spanning_tree_reduction",
                                       "tensor.naive_trace",             "spectrum.char_poly_integrality",
                                       "spectrum.radius_multiplicity",   "beta.identities",
                                       "matching.godsil_gutman",         "mean.amgm"};
  std::vector<std::size_t> positions;
  for (const auto& name : order) {
    auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == name; });
    REQUIRE(it != r.checks.end());
    positions.push_back(static_cast<std::size_t>(it - r.checks.begin()));
  }
  CHECK(std::is_sorted(positions.begin(), positions.end()));
}

TEST_CASE("graph-independent groups still run on a single-edge seed") {
  VerifyOptions opts;
  opts.seeds = {builtin_graph("path:2")};
  VerifyReport r = run_verify_suite(opts);
  CHECK(r.ok());
  for (const char* name : {"tensor.best_vs_brute", "tensor.spanning_tree_reduction"}) {
    const CheckResult* c = find(r, name);
    REQUIRE(c != nullptr);
    CHECK(c->status == CheckStatus::kPass);
    CHECK(c->detail.find(" checked") != std::string::npos);
    CHECK(c->detail.rfind("0 checked", 0) != 0);
  }
}

TEST_CASE("a corrupted motif weight fails the integrality group") {
  VerifyOptions opts;
  opts.inject_fault = true;
  VerifyReport r = run_verify_suite(opts);
  CHECK_FALSE(r.ok());
  const CheckResult* c = find(r, "spectrum.char_poly_integrality");
  REQUIRE(c != nullptr);
  CHECK(c->status == CheckStatus::kFail);
  // the fault only touches the k >= 3 systems
  CHECK(find(r, "walks.method_equivalence")->status == CheckStatus::kPass);
  CHECK(find(r, "matching.godsil_gutman")->status == CheckStatus::kPass);
}

TEST_CASE("full suite with a corrupted weight exits with failures") {
  VerifyOptions opts;
  opts.scope = VerifyScope::kFull;
  opts.inject_fault = true;
  VerifyReport r = run_verify_suite(opts);
  CHECK(r.failed > 0);
  CHECK(find(r, "spectrum.char_poly_integrality")->status == CheckStatus::kFail);
}
