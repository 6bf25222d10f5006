#include "powerspec/powerspec.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "json_writer.hpp"
#include "powerspec/errors.hpp"
#include "powerspec/graph.hpp"
#include "powerspec/mean_polynomials.hpp"
#include "powerspec/power_spectrum.hpp"
#include "powerspec/signed_graph.hpp"
#include "powerspec/tensor_trace.hpp"
#include "powerspec/verify.hpp"
#include "powerspec/walks.hpp"

struct ps_graph {
  powerspec::Graph graph;
};

namespace {

using nlohmann::json;
using namespace powerspec;

thread_local std::string last_error;

ps_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return PS_ERR_PARSE;
    case ErrorKind::kInvalidArgument:
      return PS_ERR_INVALID_ARGUMENT;
    case ErrorKind::kBudget:
      return PS_ERR_BUDGET;
    case ErrorKind::kNumeric:
      return PS_ERR_NUMERIC;
    case ErrorKind::kInternal:
      return PS_ERR_INTERNAL;
  }
  return PS_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
ps_status guard(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return PS_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PS_ERR_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PS_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::kInvalidArgument, what);
}

ps_options defaults() {
  ps_options o;
  ps_options_init(&o);
  return o;
}

SpectrumOptions spectrum_options(const ps_options& o) {
  SpectrumOptions s;
  s.tol = o.tol;
  s.precision_bits = o.precision_bits;
  s.walk_budget.max_states = o.max_states;
  if (!(o.tol > 0)) fail(ErrorKind::kInvalidArgument, "tolerance must be positive");
  if (o.precision_bits < 64) fail(ErrorKind::kInvalidArgument, "precision must be at least 64 bits");
  if (s.max_precision_bits < o.precision_bits) s.max_precision_bits = o.precision_bits;
  return s;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// sigma^2 for display: integers print exactly, others at full precision.
std::string fmt_sigma(double v) {
  double r = std::round(v);
  if (std::abs(v - r) <= 1e-12 * std::max(1.0, std::abs(v))) return std::to_string(static_cast<long long>(r));
  return fmt_double(v);
}

std::string fmt_exponent(const Rational& q) {
  if (q.get_den() == 1) return to_string(q);
  return "(" + to_string(q) + ")";
}

std::string format_factored(const FactoredSpectralFunction& f) {
  std::vector<std::string> parts;
  if (f.mu0 != 0) parts.push_back(f.mu0 == 1 ? "λ" : "λ^" + fmt_exponent(f.mu0));
  for (const auto& fac : f.factors) {
    if (fac.mu == 0) continue;
    std::string base = "(λ^" + std::to_string(f.k) + " − " + fmt_sigma(fac.sigma_sq) + ")";
    parts.push_back(fac.mu == 1 ? base : base + "^" + fmt_exponent(fac.mu));
  }
  if (parts.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
  return out;
}

std::string graph_label(const Graph& g) {
  std::ostringstream out;
  out << g.vertex_count() << ":";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    out << (i ? "," : "") << g.edges()[i].u << "-" << g.edges()[i].v;
  }
  return out.str();
}

json int_array(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json rational_array(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json factored_json(const FactoredSpectralFunction& f) {
  json j;
  j["k"] = f.k;
  j["mu0"] = to_string(f.mu0);
  j["factors"] = json::array();
  j["zero_factors"] = json::array();
  for (const auto& fac : f.factors) {
    json e;
    e["sigma_sq"] = fac.sigma_sq;
    e["residual"] = fac.residual;
    e["witness"] = {{"graph", graph_label(fac.witness.subgraph)}, {"signs", fac.witness.signs}};
    if (fac.mu == 0) {
      j["zero_factors"].push_back(e);
    } else {
      e["mu"] = to_string(fac.mu);
      j["factors"].push_back(e);
    }
  }
  j["degree_check"] = f.validation.degree_check;
  j["condition_estimate"] = f.condition_estimate;
  j["precision_bits"] = f.precision_bits;
  j["polynomial"] = format_factored(f);
  j["validation"] = {{"integral", f.validation.integral},
                     {"nonnegative", f.validation.nonnegative},
                     {"moment_consistency", f.validation.moment_consistency},
                     {"moments_checked", f.validation.moments_checked},
                     {"max_moment_error", f.validation.max_moment_error}};
  return j;
}

std::string factored_text(const FactoredSpectralFunction& f) {
  std::ostringstream out;
  out << format_factored(f) << "\n";
  out << "k = " << f.k << ", mu0 = " << to_string(f.mu0) << "\n";
  for (const auto& fac : f.factors) {
    out << "  sigma^2 = " << fmt_sigma(fac.sigma_sq) << "  mu = " << to_string(fac.mu)
        << "  residual = " << fac.residual << (fac.mu == 0 ? "  (zero exponent)" : "") << "\n";
  }
  out << "degree check: " << (f.validation.degree_check ? "ok" : "FAILED")
      << ", moment consistency: " << (f.validation.moment_consistency ? "ok" : "FAILED")
      << ", condition estimate: " << f.condition_estimate << ", precision: " << f.precision_bits << " bits\n";
  return out.str();
}

ps_status emit(ps_format format, const json& j, const std::string& text, char** out) {
  *out = dup_string(format == PS_FORMAT_TEXT ? text : render_json(j));
  return PS_OK;
}

const Graph& graph_of(const ps_graph* g) {
  require(g != nullptr, "graph handle is null");
  return g->graph;
}

}  // namespace

extern "C" {

void ps_options_init(ps_options* opts) {
  if (!opts) return;
  opts->format = PS_FORMAT_JSON;
  opts->tol = 1e-8;
  opts->precision_bits = 256;
  opts->max_states = 50'000'000;
}

ps_status ps_graph_parse(const char* text, ps_graph** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new ps_graph{parse_graph(text)};
  });
}

void ps_graph_free(ps_graph* g) { delete g; }

int ps_graph_vertex_count(const ps_graph* g) { return g ? g->graph.vertex_count() : -1; }
int ps_graph_edge_count(const ps_graph* g) { return g ? g->graph.edge_count() : -1; }

const char* ps_last_error(void) { return last_error.c_str(); }

void ps_string_free(char* s) { std::free(s); }

ps_status ps_walks(const ps_graph* g, int d, const char* method, int covering, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const Graph& graph = graph_of(g);
    const ps_options o = opts ? *opts : defaults();
    WalkBudget budget;
    budget.max_states = o.max_states;
    std::string m = method ? method : "dp";
    BigInt count;
    std::string kind;
    if (covering) {
      kind = "covering_parity_closed";
      if (m == "dp") {
        count = covering_parity_closed_count(graph, d, CoveringMethod::kDp, budget);
      } else if (m == "inclusion_exclusion") {
        count = covering_parity_closed_count(graph, d, CoveringMethod::kInclusionExclusion, budget);
      } else {
        fail(ErrorKind::kInvalidArgument, "unknown covering method '" + m + "'");
      }
    } else if (m == "closed") {
      kind = "closed";
      count = closed_walk_count(graph, d);
    } else {
      kind = "parity_closed";
      if (m == "dp") {
        count = parity_closed_count(graph, d, ParityMethod::kDp, budget);
      } else if (m == "signed_mean") {
        count = parity_closed_count(graph, d, ParityMethod::kSignedMean, budget);
      } else {
        fail(ErrorKind::kInvalidArgument, "unknown walk method '" + m + "'");
      }
    }
    json j = {{"kind", kind}, {"method", m}, {"d", d}, {"count", to_string(count)}};
    emit(o.format, j, kind + " walks of length " + std::to_string(d) + ": " + to_string(count) + "\n", out);
  });
}

ps_status ps_census(const ps_graph* g, int max_edges, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const Graph& graph = graph_of(g);
    const ps_options o = opts ? *opts : defaults();
    if (max_edges <= 0) max_edges = graph.edge_count();
    require(max_edges >= 1, "census needs at least one edge");
    auto census = connected_subgraph_census(graph, max_edges);
    json j = json::array();
    std::ostringstream text;
    for (const auto& e : census.entries) {
      j.push_back({{"certificate", to_hex(e.motif.certificate)},
                   {"edges", e.motif.graph.edge_count()},
                   {"vertices", e.motif.graph.vertex_count()},
                   {"count", e.count}});
      text << to_hex(e.motif.certificate) << "  edges=" << e.motif.graph.edge_count()
           << " vertices=" << e.motif.graph.vertex_count() << " count=" << e.count << "  "
           << graph_label(e.motif.graph) << "\n";
    }
    emit(o.format, j, text.str(), out);
  });
}

ps_status ps_signed(const ps_graph* g, int up_to_switching, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const Graph& graph = graph_of(g);
    const ps_options o = opts ? *opts : defaults();
    json j;
    j["up_to_switching"] = up_to_switching != 0;
    j["signings"] = json::array();
    std::ostringstream text;
    for (const auto& sg : enumerate_signings(graph, up_to_switching != 0)) {
      auto cp = char_poly_exact(sg);
      auto spectrum = eigenvalues(sg, std::max(o.tol, 1e-10));
      j["signings"].push_back({{"signs", sg.signs()},
                               {"balanced", is_balanced(sg)},
                               {"eigenvalues", spectrum.eigenvalues},
                               {"char_poly", int_array(cp.coefficients)}});
      text << "signs [";
      for (std::size_t i = 0; i < sg.signs().size(); ++i) text << (i ? " " : "") << (sg.signs()[i] > 0 ? "+" : "-");
      text << "]  " << (is_balanced(sg) ? "balanced  " : "unbalanced  ")
           << format_polynomial(RationalPolynomial(cp)) << "  eigenvalues:";
      for (double ev : spectrum.eigenvalues) text << " " << fmt_sigma(ev);
      text << "\n";
    }
    if (graph.edge_count() > 0) {
      auto sigma = sigma_set(graph, SubgraphMode::kAllSubgraphs, o.tol);
      j["sigma_sq"] = sigma.values;
      text << "sigma^2 over signed connected subgraphs:";
      for (double v : sigma.values) text << " " << fmt_sigma(v);
      text << "\n";
    }
    emit(o.format, j, text.str(), out);
  });
}

ps_status ps_oracle(const ps_graph* g, int k, int max_d, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const Graph& graph = graph_of(g);
    const ps_options o = opts ? *opts : defaults();
    require(k >= 3, "k must be at least 3");
    require(max_d >= 1, "d must be positive");
    require(graph.is_connected() && graph.edge_count() > 0, "oracle needs a connected graph with an edge");
    SpectrumOptions so = spectrum_options(o);
    Hypergraph h = power_hypergraph(graph, k);
    json j;
    j["k"] = k;
    j["trace"] = json::array();
    j["best"] = json::array();
    std::ostringstream text;
    bool all = true;
    for (int d = 1; d <= max_d; ++d) {
      Rational naive = naive_tensor_trace(h, d);
      Rational closed = script_S(graph, d, k, so);
      all = all && naive == closed;
      j["trace"].push_back({{"d", d}, {"naive", to_string(naive)}, {"closed_form", to_string(closed)},
                            {"equal", naive == closed}});
      text << "d=" << d << "  naive=" << to_string(naive) << "  closed form=" << to_string(closed)
           << (naive == closed ? "" : "  MISMATCH") << "\n";
    }
    for (int ell = 1; 2 * ell <= max_d; ++ell) {
      BigInt best = covering_parity_via_best(graph, ell);
      BigInt dp = covering_parity_closed_count(graph, 2 * ell);
      all = all && best == dp;
      j["best"].push_back({{"ell", ell}, {"best", to_string(best)}, {"dp", to_string(dp)}, {"equal", best == dp}});
      text << "ell=" << ell << "  BEST=" << to_string(best) << "  DP=" << to_string(dp)
           << (best == dp ? "" : "  MISMATCH") << "\n";
    }
    j["all_equal"] = all;
    emit(o.format, j, text.str(), out);
  });
}

ps_status ps_charpoly(const ps_graph* g, int k, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const ps_options o = opts ? *opts : defaults();
    auto f = char_poly_power(graph_of(g), k, spectrum_options(o));
    emit(o.format, factored_json(f), factored_text(f), out);
  });
}

ps_status ps_beta(const ps_graph* g, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const ps_options o = opts ? *opts : defaults();
    auto f = beta(graph_of(g), spectrum_options(o));
    emit(o.format, factored_json(f), factored_text(f), out);
  });
}

ps_status ps_matching(const ps_graph* g, const char* method, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const ps_options o = opts ? *opts : defaults();
    std::string m = method ? method : "direct";
    MatchingMethod mm;
    if (m == "direct") {
      mm = MatchingMethod::kDirect;
    } else if (m == "signed_mean") {
      mm = MatchingMethod::kSignedMean;
    } else {
      fail(ErrorKind::kInvalidArgument, "unknown matching method '" + m + "'");
    }
    auto p = matching_polynomial(graph_of(g), mm);
    json j = {{"method", m},
              {"coefficients", rational_array(p.coefficients)},
              {"matchings", int_array(matching_counts(graph_of(g)))},
              {"polynomial", format_polynomial(p)}};
    emit(o.format, j, format_polynomial(p) + "\n", out);
  });
}

ps_status ps_geomean(const ps_graph* g, double lambda0, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const ps_options o = opts ? *opts : defaults();
    const Graph& graph = graph_of(g);
    Real gm = geometric_mean_evaluate(graph, lambda0, o.precision_bits);
    auto b = beta(graph, spectrum_options(o));
    Real bv = evaluate_abs(b, lambda0, o.precision_bits);
    Real scale = abs(bv);
    if (scale < Real(1.0, o.precision_bits)) scale = Real(1.0, o.precision_bits);
    const double rel = (abs(gm - bv) / scale).to_double();
    json j = {{"lambda0", lambda0},
              {"geometric_mean", gm.to_double()},
              {"beta_abs", bv.to_double()},
              {"relative_difference", rel},
              {"agrees", rel <= 1e-9}};
    std::ostringstream text;
    text << "geometric mean at " << fmt_double(lambda0) << ": " << fmt_double(gm.to_double()) << "\n"
         << "|beta| at " << fmt_double(lambda0) << ": " << fmt_double(bv.to_double()) << "\n"
         << "relative difference: " << rel << "\n";
    emit(o.format, j, text.str(), out);
  });
}

ps_status ps_amgm(const ps_graph* g, double lambda0, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const ps_options o = opts ? *opts : defaults();
    auto r = amgm_check(graph_of(g), lambda0, o.precision_bits);
    json j = {{"status", to_string(r.status)}, {"lambda0", lambda0},          {"alpha", r.alpha},
              {"beta", r.beta},                {"equality", r.equality},       {"all_signings_agree", r.all_signings_agree},
              {"detail", r.detail}};
    std::ostringstream text;
    text << to_string(r.status) << ": ";
    if (r.status == CheckStatus::kSkipped) {
      text << r.detail << "\n";
    } else {
      text << "alpha(" << fmt_double(lambda0) << ") = " << fmt_double(r.alpha) << ", beta(" << fmt_double(lambda0)
           << ") = " << fmt_double(r.beta) << " (" << r.detail << ")\n";
    }
    emit(o.format, j, text.str(), out);
  });
}

ps_status ps_radius_mult(const ps_graph* g, int k, const ps_options* opts, char** out) {
  return guard([&] {
    require(out != nullptr, "null output");
    const ps_options o = opts ? *opts : defaults();
    const Graph& graph = graph_of(g);
    SpectrumOptions so = spectrum_options(o);
    BigInt mult = spectral_radius_multiplicity(graph, k);
    auto f = char_poly_power(graph, k, so);
    auto idx = radius_factor(f, graph, o.tol);
    auto diag = limit_diagnostic(graph, k, 30, so);
    json j;
    j["k"] = k;
    j["multiplicity"] = to_string(mult);
    j["n_rho"] = to_string(diag.n_rho);
    j["rho_sq"] = spectral_radius(graph, 128).to_double();
    j["pipeline_multiplicity"] = idx ? json(to_string(f.factors[*idx].mu)) : json(nullptr);
    j["agrees"] = idx && f.factors[*idx].mu == Rational(mult);
    j["limit_ratio"] = {{"ell", 30}, {"ratio", diag.ratios.back()}, {"relative_gap", diag.relative_gap_at_end}};
    std::ostringstream text;
    text << "multiplicity of the spectral radius: " << to_string(mult) << "\n"
         << "pipeline exponent at rho^2: " << (idx ? to_string(f.factors[*idx].mu) : std::string("missing")) << "\n"
         << "n_rho = " << to_string(diag.n_rho) << ", ratio at l=30: " << fmt_double(diag.ratios.back()) << "\n";
    emit(o.format, j, text.str(), out);
  });
}

ps_status ps_verify(const char* scope, const ps_graph* seed, int fault, const ps_options* opts, char** out,
                    int* failed) {
  return guard([&] {
    require(out != nullptr, "null output");
    const ps_options o = opts ? *opts : defaults();
    VerifyOptions vo;
    std::string s = scope ? scope : "quick";
    if (s == "quick") {
      vo.scope = VerifyScope::kQuick;
    } else if (s == "full") {
      vo.scope = VerifyScope::kFull;
    } else {
      fail(ErrorKind::kInvalidArgument, "unknown scope '" + s + "'");
    }
    if (seed) vo.seeds.push_back(seed->graph);
    vo.spectrum = spectrum_options(o);
    vo.inject_fault = fault != 0;
    auto report = run_verify_suite(vo);
    if (failed) *failed = report.failed;
    json j;
    j["checks"] = json::array();
    std::ostringstream text;
    for (const auto& c : report.checks) {
      j["checks"].push_back(
          {{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}, {"elapsed_ms", c.elapsed_ms}});
      char ms[32];
      std::snprintf(ms, sizeof ms, "%9.1f ms", c.elapsed_ms);
      text << (c.status == CheckStatus::kPass ? "PASS " : c.status == CheckStatus::kFail ? "FAIL " : "SKIP ")
           << c.name << "  " << ms << "  " << c.detail << "\n";
    }
    j["passed"] = report.passed;
    j["failed"] = report.failed;
    j["skipped"] = report.skipped;
    text << report.passed << " passed, " << report.failed << " failed, " << report.skipped << " skipped\n";
    emit(o.format, j, text.str(), out);
  });
}

}  // extern "C"
