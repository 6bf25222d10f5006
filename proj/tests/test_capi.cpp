#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "powerspec/powerspec.h"

using nlohmann::json;

namespace {

struct Graph {
  ps_graph* g = nullptr;
  explicit Graph(const char* text) { REQUIRE(ps_graph_parse(text, &g) == PS_OK); }
  ~Graph() { ps_graph_free(g); }
};

ps_options json_options() {
  ps_options o;
  ps_options_init(&o);
  o.format = PS_FORMAT_JSON;
  return o;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ps_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("graph handles") {
  Graph c4("cycle:4");
  CHECK(ps_graph_vertex_count(c4.g) == 4);
  CHECK(ps_graph_edge_count(c4.g) == 4);
  CHECK(ps_graph_vertex_count(nullptr) == -1);

  ps_graph* bad = nullptr;
  CHECK(ps_graph_parse("3 2\n0 1\n1 1", &bad) == PS_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(ps_last_error()).find("line 3") != std::string::npos);
  CHECK(ps_graph_parse(nullptr, &bad) == PS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("charpoly JSON for a single edge") {
  Graph k2("2 1\n0 1");
  ps_options o = json_options();
  char* out = nullptr;
  REQUIRE(ps_charpoly(k2.g, 3, &o, &out) == PS_OK);
  json j = json::parse(take(out));
  CHECK(j["k"] == 3);
  CHECK(j["mu0"] == "3");
  REQUIRE(j["factors"].size() == 1);
  CHECK(j["factors"][0]["mu"] == "3");
  CHECK(j["factors"][0]["sigma_sq"] == 1.0);
  CHECK(j["degree_check"] == true);
  CHECK(j["condition_estimate"].is_number());
}

TEST_CASE("beta text for the triangle") {
  Graph c3("cycle:3");
  ps_options o;
  ps_options_init(&o);
  o.format = PS_FORMAT_TEXT;
  char* out = nullptr;
  REQUIRE(ps_beta(c3.g, &o, &out) == PS_OK);
  CHECK(take(out).find("(λ^2 − 1) (λ^2 − 4)^(1/2)") != std::string::npos);

  ps_options oj = json_options();
  REQUIRE(ps_beta(c3.g, &oj, &out) == PS_OK);
  json j = json::parse(take(out));
  CHECK(j["mu0"] == "0");
  std::vector<std::string> mus;
  for (const auto& f : j["factors"]) mus.push_back(f["mu"]);
  CHECK(mus == std::vector<std::string>{"1", "1/2"});
}

TEST_CASE("walks, census, matching") {
  Graph c3("cycle:3");
  ps_options o = json_options();
  char* out = nullptr;
  REQUIRE(ps_walks(c3.g, 4, "signed_mean", 0, &o, &out) == PS_OK);
  CHECK(json::parse(take(out))["count"] == "18");
  REQUIRE(ps_walks(c3.g, 6, "inclusion_exclusion", 1, &o, &out) == PS_OK);
  json ie = json::parse(take(out));
  REQUIRE(ps_walks(c3.g, 6, "dp", 1, &o, &out) == PS_OK);
  CHECK(json::parse(take(out))["count"] == ie["count"]);
  CHECK(ie["count"] != "0");
  CHECK(ps_walks(c3.g, 4, "bogus", 0, &o, &out) == PS_ERR_INVALID_ARGUMENT);

  REQUIRE(ps_census(c3.g, 3, &o, &out) == PS_OK);
  json census = json::parse(take(out));
  REQUIRE(census.size() == 3);
  int total = 0;
  for (const auto& e : census) {
    CHECK(e.contains("certificate"));
    total += e["count"].get<int>();
  }
  CHECK(total == 7);

  REQUIRE(ps_matching(c3.g, "signed_mean", &o, &out) == PS_OK);
  CHECK(json::parse(take(out))["polynomial"] == "λ^3 − 3λ");
}

TEST_CASE("error statuses") {
  Graph two("4 2\n0 1\n2 3");
  Graph k2("path:2");
  ps_options o = json_options();
  char* out = nullptr;
  CHECK(ps_charpoly(two.g, 3, &o, &out) == PS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ps_last_error()).find("connected") != std::string::npos);
  CHECK(ps_charpoly(k2.g, 2, &o, &out) == PS_ERR_INVALID_ARGUMENT);
  CHECK(ps_charpoly(nullptr, 3, &o, &out) == PS_ERR_INVALID_ARGUMENT);
  Graph big("complete:7");
  CHECK(ps_walks(big.g, 2, "signed_mean", 0, &o, &out) == PS_ERR_BUDGET);
  CHECK(out == nullptr);
}

TEST_CASE("geometric mean and AM-GM reports") {
  Graph c3("cycle:3");
  ps_options o = json_options();
  char* out = nullptr;
  REQUIRE(ps_geomean(c3.g, 3.0, &o, &out) == PS_OK);
  json gm = json::parse(take(out));
  CHECK(gm["agrees"] == true);
  CHECK(gm["geometric_mean"].get<double>() == doctest::Approx(17.88854381999832));

  REQUIRE(ps_amgm(c3.g, 3.0, &o, &out) == PS_OK);
  json r = json::parse(take(out));
  CHECK(r["status"] == "pass");
  CHECK(r["alpha"].get<double>() == doctest::Approx(18.0));
  REQUIRE(ps_amgm(c3.g, 1.5, &o, &out) == PS_OK);
  CHECK(json::parse(take(out))["status"] == "skipped");
}

TEST_CASE("radius multiplicity and oracle") {
  Graph c3("cycle:3");
  ps_options o = json_options();
  char* out = nullptr;
  REQUIRE(ps_radius_mult(c3.g, 3, &o, &out) == PS_OK);
  json r = json::parse(take(out));
  CHECK(r["multiplicity"] == "9");
  CHECK(r["pipeline_multiplicity"] == "9");
  CHECK(r["agrees"] == true);

  Graph k2("path:2");
  REQUIRE(ps_oracle(k2.g, 3, 6, &o, &out) == PS_OK);
  json orc = json::parse(take(out));
  CHECK(orc["all_equal"] == true);
  std::vector<std::string> naive;
  for (const auto& t : orc["trace"]) naive.push_back(t["naive"]);
  CHECK(naive == std::vector<std::string>{"0", "0", "9", "0", "0", "9"});
}

TEST_CASE("quick verification through the C interface") {
  ps_options o = json_options();
  char* out = nullptr;
  int failed = -1;
  REQUIRE(ps_verify("quick", nullptr, 0, &o, &out, &failed) == PS_OK);
  CHECK(failed == 0);
  json j = json::parse(take(out));
  CHECK(j["checks"].size() >= 11);
  CHECK(ps_verify("sometimes", nullptr, 0, &o, &out, &failed) == PS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("JSON output is deterministic across calls and threads") {
  Graph c4("cycle:4");
  ps_options o = json_options();
  char* out = nullptr;
  REQUIRE(ps_charpoly(c4.g, 3, &o, &out) == PS_OK);
  const std::string first = take(out);
  std::vector<std::string> results(4);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < results.size(); ++i) {
    pool.emplace_back([&, i] {
      char* s = nullptr;
      if (ps_charpoly(c4.g, 3, &o, &s) == PS_OK) results[i] = take(s);
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& r : results) CHECK(r == first);
}
