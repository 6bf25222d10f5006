#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "powerspec/powerspec.h"

namespace {

// --graph accepts a builtin name, a path to an edge-list file, or inline
// edge-list text where "\n" separates lines.
std::string resolve_graph_text(const std::string& arg) {
  std::ifstream file(arg);
  if (file) {
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
  }
  std::string out;
  for (std::size_t i = 0; i < arg.size(); ++i) {
    if (arg[i] == '\\' && i + 1 < arg.size() && arg[i + 1] == 'n') {
      out += '\n';
      ++i;
    } else {
      out += arg[i];
    }
  }
  return out;
}

int report_failure(ps_status status) {
  std::cerr << "error: " << ps_last_error() << " (status " << static_cast<int>(status) << ")\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of power hypergraphs from parity-closed walks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string graph_arg;
  std::string format = "text";
  ps_options opts;
  ps_options_init(&opts);
  app.add_option("--graph", graph_arg, "Builtin (path:n, cycle:n, complete:n, star:n), edge-list file, or inline text");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tol", opts.tol, "Clustering tolerance on squared eigenvalues")->capture_default_str();
  app.add_option("--precision-bits", opts.precision_bits, "Starting precision of high-precision solves")
      ->capture_default_str();
  app.add_option("--budget", opts.max_states, "State budget for walk dynamic programs")->capture_default_str();

  int d = 4;
  int k = 3;
  int max_edges = 0;
  double at = 3.0;
  std::string method;
  std::string scope = "quick";
  bool covering = false;
  bool up_to_switching = false;
  bool fault = false;

  auto* walks = app.add_subcommand("walks", "Count parity-closed, covering, or plain closed walks");
  walks->add_option("--d", d, "Walk length")->required();
  walks->add_option("--method", method, "dp | signed_mean | closed (covering: dp | inclusion_exclusion)");
  walks->add_flag("--covering", covering, "Count covering parity-closed walks of the graph as a motif");

  auto* census = app.add_subcommand("census", "Connected subgraph census by isomorphism class");
  census->add_option("--max-edges", max_edges, "Largest subgraph size (default: all edges)");

  auto* sign = app.add_subcommand("signed", "Signings, their characteristic polynomials and spectra");
  sign->add_flag("--up-to-switching", up_to_switching, "One signing per switching class");

  auto* oracle = app.add_subcommand("oracle", "Naive tensor trace and BEST cross-checks");
  oracle->add_option("--k", k, "Uniformity")->capture_default_str();
  oracle->add_option("--d", d, "Largest trace order")->capture_default_str();

  auto* charpoly = app.add_subcommand("charpoly", "Factored characteristic polynomial of the k-power hypergraph");
  charpoly->add_option("--k", k, "Uniformity (k >= 3)")->required();

  app.add_subcommand("beta", "Pseudo-characteristic function (k = 2 extrapolation)");

  auto* matching = app.add_subcommand("matching", "Matching polynomial");
  matching->add_option("--method", method, "direct | signed_mean");

  auto* geomean = app.add_subcommand("geomean", "Geometric mean of signed characteristic polynomials at a point");
  geomean->add_option("--at", at, "Evaluation point")->required();

  auto* amgm = app.add_subcommand("amgm", "Compare the arithmetic and geometric means at a point");
  amgm->add_option("--at", at, "Evaluation point")->required();

  auto* radius = app.add_subcommand("radius-mult", "Multiplicity of the spectral radius of the k-power hypergraph");
  radius->add_option("--k", k, "Uniformity (k >= 3)")->required();

  auto* verify = app.add_subcommand("verify", "Run the identity verification suite");
  verify->add_option("--scope", scope, "quick | full")->check(CLI::IsMember({"quick", "full"}));
  verify->add_flag("--inject-fault", fault, "Corrupt one motif weight to exercise failure reporting")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }
  opts.format = format == "json" ? PS_FORMAT_JSON : PS_FORMAT_TEXT;

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();

  ps_graph* graph = nullptr;
  if (!graph_arg.empty()) {
    ps_status st = ps_graph_parse(resolve_graph_text(graph_arg).c_str(), &graph);
    if (st != PS_OK) return report_failure(st);
  } else if (name != "verify") {
    std::cerr << "error: --graph is required for " << name << "\n" << app.help();
    return 2;
  }

  char* out = nullptr;
  int failed = 0;
  ps_status st = PS_OK;
  if (name == "walks") {
    const char* m = method.empty() ? "dp" : method.c_str();
    st = ps_walks(graph, d, m, covering ? 1 : 0, &opts, &out);
  } else if (name == "census") {
    st = ps_census(graph, max_edges, &opts, &out);
  } else if (name == "signed") {
    st = ps_signed(graph, up_to_switching ? 1 : 0, &opts, &out);
  } else if (name == "oracle") {
    st = ps_oracle(graph, k, d, &opts, &out);
  } else if (name == "charpoly") {
    st = ps_charpoly(graph, k, &opts, &out);
  } else if (name == "beta") {
    st = ps_beta(graph, &opts, &out);
  } else if (name == "matching") {
    st = ps_matching(graph, method.empty() ? "direct" : method.c_str(), &opts, &out);
  } else if (name == "geomean") {
    st = ps_geomean(graph, at, &opts, &out);
  } else if (name == "amgm") {
    st = ps_amgm(graph, at, &opts, &out);
  } else if (name == "radius-mult") {
    st = ps_radius_mult(graph, k, &opts, &out);
  } else if (name == "verify") {
    st = ps_verify(scope.c_str(), graph, fault ? 1 : 0, &opts, &out, &failed);
  }
  ps_graph_free(graph);
  if (st != PS_OK) return report_failure(st);
  std::fputs(out, stdout);
  ps_string_free(out);
  return failed > 0 ? 1 : 0;
}
