// Command line front end: graph construction, property-check suites,
// simulation, and spectral-estimation based graph recovery.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "pcgraph/builder.hpp"
#include "pcgraph/estimate.hpp"
#include "pcgraph/graphs.hpp"
#include "pcgraph/mcar.hpp"
#include "pcgraph/modelio.hpp"
#include "pcgraph/partialcorr.hpp"
#include "pcgraph/simulate.hpp"

namespace {

using nlohmann::json;
using namespace pcgraph;

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitInvalidModel = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ParseError("cannot open output file: " + out_path);
  out << text;
}

struct GridOptions {
  double zero_tol = kZeroTol;
  double lambda_max = 0.0;  // 0: derive from the model
  int grid_points = 129;

  SpectralGrid make(const MCARModel& model) const {
    if (lambda_max > 0.0) {
      return SpectralGrid::chebyshev(lambda_max, grid_points, zero_tol);
    }
    SpectralGrid grid = SpectralGrid::for_model(model, zero_tol);
    if (grid_points != 129) {
      grid = SpectralGrid::chebyshev(grid.frequencies.back(), grid_points,
                                     zero_tol);
    }
    return grid;
  }
};

json grid_settings_json(const GridOptions& opts, const SpectralGrid& grid) {
  json out;
  out["zero_tol"] = opts.zero_tol;
  out["lambda_max"] = grid.frequencies.back();
  out["grid_points"] = grid.frequencies.size();
  return out;
}

MCARModel load_model_with_snap(const std::string& path,
                               std::optional<bool> snap_override) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("model file " + path + ": " + e.what());
  }
  if (snap_override) return model_from_json(j, *snap_override);
  return model_from_json(j);
}

int run_graph(const std::string& model_path, std::optional<bool> snap,
              const std::string& method_name, const GridOptions& grid_opts,
              bool with_local, bool with_ou, bool with_augmented,
              const std::string& format, const std::string& out_path) {
  const MCARModel model = load_model_with_snap(model_path, snap);

  EdgeTestMethod method;
  if (method_name == "coeff") {
    method = EdgeTestMethod::coefficient;
  } else if (method_name == "grid") {
    method = EdgeTestMethod::grid;
  } else {
    throw ParseError("unknown method '" + method_name + "' (expected coeff or grid)");
  }

  const SpectralGrid grid = grid_opts.make(model);
  const UndirectedGraph pc =
      pc_graph(model, method, grid_opts.zero_tol,
               method == EdgeTestMethod::grid ? std::optional(grid) : std::nullopt);

  const bool ou_applicable =
      model.order() == 1 &&
      (model.sigma_l() - Matrix::Identity(model.dim(), model.dim()))
              .cwiseAbs()
              .maxCoeff() < 1e-14;
  if (with_ou && !ou_applicable) {
    throw ValidationError(
        "the order-1 causality graph requires p = 1 and Sigma_L = I");
  }

  std::optional<MixedGraph> local, ou;
  if (with_local) local = local_causality_graph(model, grid_opts.zero_tol);
  if (with_ou) ou = ou_causality_graph(model.ar_coefficient(1), grid_opts.zero_tol);

  const int extra_graphs = (local ? 1 : 0) + (ou ? 1 : 0);

  if (format == "dot") {
    std::ostringstream out;
    out << to_dot(pc, "pc");
    if (local) {
      out << to_dot(*local, "local_causality");
      if (with_augmented) out << to_dot(augment(*local), "augmented_local");
    }
    if (ou) {
      out << to_dot(*ou, "causality");
      if (with_augmented) out << to_dot(augment(*ou), "augmented_causality");
    }
    write_output(out.str(), out_path);
  } else if (format == "json") {
    json out;
    if (extra_graphs == 0 && !with_augmented) {
      out = graph_to_json(pc);  // bare schema, feedable to `synthesize`
    } else {
      out["pc"] = graph_to_json(pc);
      if (local) {
        out["local_causality"] = graph_to_json(*local);
        if (with_augmented) {
          out["augmented_local"] = graph_to_json(augment(*local));
        }
      }
      if (ou) {
        out["causality"] = graph_to_json(*ou);
        if (with_augmented) {
          out["augmented_causality"] = graph_to_json(augment(*ou));
        }
      }
    }
    write_output(out.dump(2) + "\n", out_path);
  } else {
    throw ParseError("unknown format '" + format + "' (expected dot or json)");
  }
  return kExitOk;
}

std::vector<std::vector<int>> random_disjoint_partition(std::mt19937_64& rng,
                                                        int k, int n_sets) {
  // Assign each vertex to one of the sets or to none; retry until the first
  // two sets are non-empty.
  while (true) {
    std::vector<std::vector<int>> sets(n_sets);
    std::uniform_int_distribution<int> pick(0, n_sets);  // n_sets means "out"
    for (int v = 1; v <= k; ++v) {
      const int s = pick(rng);
      if (s < n_sets) sets[s].push_back(v);
    }
    if (!sets[0].empty() && !sets[1].empty()) return sets;
  }
}

int run_check(const std::string& model_path, std::optional<bool> snap,
              const std::string& suite, std::uint64_t seed, int trials,
              const GridOptions& grid_opts, const std::string& out_path) {
  const MCARModel model = load_model_with_snap(model_path, snap);
  const SpectralGrid grid = grid_opts.make(model);

  json report;
  report["suite"] = suite;
  report["settings"] = grid_settings_json(grid_opts, grid);
  long checks = 0;
  std::vector<std::string> violations;

  if (suite == "graphoid") {
    report["settings"]["seed"] = seed;
    report["settings"]["trials"] = trials;
    PartialCorrOracle oracle(model, grid);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
      const auto sets = random_disjoint_partition(rng, model.dim(), 4);
      const GraphoidReport r =
          graphoid_report(oracle, sets[0], sets[1], sets[2], sets[3]);
      checks += r.checks_run;
      violations.insert(violations.end(), r.violations.begin(),
                        r.violations.end());
    }
  } else if (suite == "markov") {
    PartialCorrOracle oracle(model, grid);
    const UndirectedGraph pc =
        pc_graph(model, EdgeTestMethod::coefficient, grid_opts.zero_tol);
    const MarkovReport r = markov_check(
        pc,
        [&](const std::vector<int>& a, const std::vector<int>& b,
            const std::vector<int>& c) { return oracle.uncorrelated(a, b, c); });
    checks = r.checks_run;
    violations = r.violations;
  } else if (suite == "subsets") {
    const SubsetReport r = subset_checks(model, grid_opts.zero_tol);
    checks = 2 + (r.augmented_order1 ? 1 : 0);
    violations = r.violations;
    report["partial_correlation"] = graph_to_json(r.partial_correlation);
    report["concentration"] = graph_to_json(r.concentration);
    report["augmented_local"] = graph_to_json(r.augmented_local);
    if (r.augmented_order1) {
      report["augmented_causality"] = graph_to_json(*r.augmented_order1);
    }
  } else {
    throw ParseError("unknown suite '" + suite +
                     "' (expected graphoid, markov, or subsets)");
  }

  report["checks_run"] = checks;
  report["violations"] = violations;
  report["passed"] = violations.empty();
  write_output(report.dump(2) + "\n", out_path);
  return violations.empty() ? kExitOk : kExitChecksFailed;
}

int run_simulate(const std::string& model_path, std::optional<bool> snap,
                 double delta, long n, std::uint64_t seed,
                 const std::string& out_path) {
  const MCARModel model = load_model_with_snap(model_path, snap);
  const SampledSeries series = simulate(model, delta, n, seed);
  std::ostringstream out;
  write_csv(series, out);
  write_output(out.str(), out_path);
  return kExitOk;
}

int run_estimate(const std::string& csv_path, double delta_override,
                 int bandwidth, double tau, double lambda_max, int grid_points,
                 const std::string& out_path) {
  std::ifstream in(csv_path);
  if (!in) throw ParseError("cannot open series file: " + csv_path);
  SampledSeries series = read_csv(in);
  if (delta_override > 0.0) series.delta = delta_override;

  if (bandwidth <= 0) bandwidth = default_bandwidth(series.n_samples());

  std::vector<double> grid;
  if (lambda_max > 0.0) {
    for (int i = 1; i <= grid_points; ++i) {
      grid.push_back(lambda_max * i / grid_points);
    }
  } else {
    grid = default_estimation_grid(series.delta);
  }

  const EdgeEstimate est = estimate_pc_graph(series, grid, bandwidth, tau);

  json report;
  report["edges"] = graph_to_json(est.graph)["undirected"];
  report["n_vertices"] = est.graph.n_vertices();
  json scores = json::array();
  for (int a = 1; a <= est.graph.n_vertices(); ++a) {
    for (int b = a + 1; b <= est.graph.n_vertices(); ++b) {
      scores.push_back(json{{"a", a},
                            {"b", b},
                            {"score", est.scores(a - 1, b - 1)},
                            {"edge", est.graph.has_edge(a, b)}});
    }
  }
  report["scores"] = std::move(scores);
  report["tau"] = est.tau;
  report["bandwidth"] = est.bandwidth;
  report["delta"] = est.delta;
  report["n"] = est.n;
  report["grid"] = est.grid;
  write_output(report.dump(2) + "\n", out_path);
  return kExitOk;
}

int run_synthesize(const std::string& graph_path, int p,
                   const std::string& out_path) {
  const UndirectedGraph g = load_undirected_graph(graph_path);
  const MCARModel model = synthesize_model(g, p);
  write_output(model_to_json(model).dump(2) + "\n", out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial correlation graphs for continuous-time AR processes"};
  app.require_subcommand(1);

  std::string model_path, graph_path, csv_path, out_path;
  std::string method = "coeff", format = "dot", suite;
  GridOptions grid_opts;
  bool no_snap = false;
  bool with_local = false, with_ou = false, with_augmented = false;
  double delta = 0.01, tau = kDefaultTau;
  double est_lambda_max = 0.0;
  int est_grid_points = 8;
  long n = 0;
  std::uint64_t seed = 1;
  int trials = 200, bandwidth = 0, order = 1;

  CLI::App* cmd_graph = app.add_subcommand("graph", "construct model graphs");
  cmd_graph->add_option("model", model_path, "model spec JSON")->required();
  cmd_graph->add_option("--method", method, "edge test: coeff or grid");
  cmd_graph->add_option("--tol", grid_opts.zero_tol, "zero tolerance");
  cmd_graph->add_option("--lambda-max", grid_opts.lambda_max, "grid upper frequency");
  cmd_graph->add_option("--grid-points", grid_opts.grid_points, "grid size");
  cmd_graph->add_flag("--local", with_local, "include the local causality graph");
  cmd_graph->add_flag("--ou", with_ou, "include the order-1 causality graph (Sigma_L = I)");
  cmd_graph->add_flag("--augmented", with_augmented, "include augmented graphs");
  cmd_graph->add_flag("--no-snap", no_snap, "disable input zero snapping");
  cmd_graph->add_option("--format", format, "dot or json");
  cmd_graph->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* cmd_check = app.add_subcommand("check", "run property-check suites");
  cmd_check->add_option("model", model_path, "model spec JSON")->required();
  cmd_check->add_option("--suite", suite, "graphoid, markov, or subsets")->required();
  cmd_check->add_option("--seed", seed, "RNG seed");
  cmd_check->add_option("--trials", trials, "random partitions for the graphoid suite");
  cmd_check->add_option("--tol", grid_opts.zero_tol, "zero tolerance");
  cmd_check->add_option("--lambda-max", grid_opts.lambda_max, "grid upper frequency");
  cmd_check->add_option("--grid-points", grid_opts.grid_points, "grid size");
  cmd_check->add_flag("--no-snap", no_snap, "disable input zero snapping");
  cmd_check->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* cmd_simulate = app.add_subcommand("simulate", "sample the process on a grid");
  cmd_simulate->add_option("model", model_path, "model spec JSON")->required();
  cmd_simulate->add_option("--delta", delta, "time spacing")->required();
  cmd_simulate->add_option("--n", n, "sample count")->required();
  cmd_simulate->add_option("--seed", seed, "RNG seed");
  cmd_simulate->add_flag("--no-snap", no_snap, "disable input zero snapping");
  cmd_simulate->add_option("--out", out_path, "output CSV (default stdout)");

  CLI::App* cmd_estimate = app.add_subcommand("estimate", "recover the graph from samples");
  cmd_estimate->add_option("csv", csv_path, "sampled series CSV")->required();
  double delta_override = 0.0;
  cmd_estimate->add_option("--delta", delta_override, "override the spacing from the CSV");
  cmd_estimate->add_option("--bandwidth", bandwidth, "smoothing half width (default ceil(n^0.6/2))");
  cmd_estimate->add_option("--tau", tau, "edge threshold on the partial coherence");
  cmd_estimate->add_option("--lambda-max", est_lambda_max, "scoring grid upper frequency");
  cmd_estimate->add_option("--grid-points", est_grid_points, "scoring grid size");
  cmd_estimate->add_option("--out", out_path, "output JSON (default stdout)");

  CLI::App* cmd_synthesize = app.add_subcommand("synthesize", "model realizing a given graph");
  cmd_synthesize->add_option("graph", graph_path, "graph JSON")->required();
  cmd_synthesize->add_option("--p", order, "autoregression order");
  cmd_synthesize->add_option("--out", out_path, "output model JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParseError;
  }

  const std::optional<bool> snap =
      no_snap ? std::optional<bool>(false) : std::nullopt;

  try {
    if (cmd_graph->parsed()) {
      return run_graph(model_path, snap, method, grid_opts, with_local,
                       with_ou, with_augmented, format, out_path);
    }
    if (cmd_check->parsed()) {
      return run_check(model_path, snap, suite, seed, trials, grid_opts,
                       out_path);
    }
    if (cmd_simulate->parsed()) {
      return run_simulate(model_path, snap, delta, n, seed, out_path);
    }
    if (cmd_estimate->parsed()) {
      return run_estimate(csv_path, delta_override, bandwidth, tau,
                          est_lambda_max, est_grid_points, out_path);
    }
    if (cmd_synthesize->parsed()) {
      return run_synthesize(graph_path, order, out_path);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidModel;
  } catch (const SingularMatrixError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidModel;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitParseError;
  }
  return kExitParseError;
}
