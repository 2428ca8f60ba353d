#include "pmod/cli/commands.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "pmod/cli/bench.hpp"
#include "pmod/cli/format.hpp"
#include "pmod/cli/graph_source.hpp"
#include "pmod/cli/validate.hpp"
#include "pmod/embedding.hpp"
#include "pmod/metrics.hpp"
#include "pmod/modulus.hpp"
#include "pmod/solvers.hpp"

namespace pmod::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string p = "2";
  double tol = 1e-6;
  std::string method = "auto";
  std::string format;
  std::string out;
  std::size_t jobs = 1;

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.tolerance = tol;
    cfg.validate();
    return cfg;
  }
  Exponent exponent() const { return parse_exponent(p); }
  Method solver_method() const { return method == "auto" ? Method::automatic : parse_method(method); }

  static Exponent parse_exponent(const std::string& text) {
    try {
      return Exponent(parse_real(text));
    } catch (const std::invalid_argument&) {
      throw InputError("p must be a number >= 1 or 'inf', got '" + text + "'");
    }
  }
};

json real_json(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  for (std::string& item : split_csv_line(text)) {
    if (!item.empty()) items.push_back(std::move(item));
  }
  return items;
}

// dist

struct DistArgs {
  Common common;
  std::string graph;
  std::string a;
  std::string b;
  int digits = 6;
};

int cmd_dist(const DistArgs& args, std::ostream& out) {
  const Graph g = load_graph(args.graph);
  const NodeId a = g.node(args.a);
  const NodeId b = g.node(args.b);
  const Exponent p = args.common.exponent();
  const ModulusResult r = modulus(g, a, b, p, args.common.config(), args.common.solver_method());
  double d = 0.0;
  if (!r.infinite) d = p.is_infinite() ? 1.0 / r.value : std::pow(r.value, -1.0 / p.value());

  if (args.common.format == "json") {
    json j;
    j["a"] = args.a;
    j["b"] = args.b;
    j["p"] = p.to_string();
    j["distance"] = real_json(d);
    j["modulus"] = real_json(r.value);
    j["lower_bound"] = real_json(r.lower_bound);
    j["upper_bound"] = real_json(r.upper_bound);
    j["route"] = to_string(r.route);
    j["iterations"] = r.iterations;
    j["active_paths"] = r.active_paths;
    j["converged"] = r.converged;
    emit(out, args.common.out, j.dump(2) + "\n");
    return kSuccess;
  }
  const int k = args.digits;
  std::string text = fmt::format("{:.{}f}\n", d, k);
  text += fmt::format("p: {}\nroute: {}\n", p.to_string(), to_string(r.route));
  text += fmt::format("modulus: {}\n", format_real(r.value));
  text += fmt::format("bracket: [{}, {}]\n", format_real(r.lower_bound), format_real(r.upper_bound));
  text += fmt::format("iterations: {}\nconverged: {}\n", r.iterations, r.converged);
  emit(out, args.common.out, text);
  return r.converged ? kSuccess : kSolveError;
}

// matrix

struct MatrixArgs {
  Common common;
  std::string graph;
};

std::vector<std::pair<std::string, std::string>> solver_metadata(const std::string& command, const Common& c) {
  return {{"command", command}, {"p", c.exponent().to_string()}, {"tol", format_real(c.tol)}, {"method", c.method}};
}

int cmd_matrix(const MatrixArgs& args, std::ostream& out) {
  const Graph g = load_graph(args.graph);
  const DistanceMatrix m =
      distance_matrix(g, args.common.exponent(), args.common.config(), args.common.solver_method(), args.common.jobs);
  if (args.common.format == "json") {
    json j;
    j["p"] = m.p.to_string();
    j["labels"] = m.labels;
    j["uncertainty"] = m.uncertainty;
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < m.size(); ++k) row.push_back(real_json(m(i, k)));
      rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    emit(out, args.common.out, j.dump(2) + "\n");
  } else {
    emit(out, args.common.out, matrix_csv(m, metadata_line(solver_metadata("matrix", args.common))));
  }
  return kSuccess;
}

// experiment

struct ExperimentArgs {
  Common common;
  std::size_t graphs = 50;
  std::size_t nodes = 10;
  double degree = 6.0;
  std::string grid = "1.2:5:15";
  std::uint64_t seed = 1;
  std::string detail;
};

int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
  const std::vector<double> grid = parse_real_list(args.grid);
  const AsfeEstimate est =
      er_experiment(args.graphs, args.nodes, args.degree, grid, args.seed, args.common.config(), args.common.jobs);
  const std::string meta = metadata_line({{"command", "experiment"},
                                          {"graphs", std::to_string(args.graphs)},
                                          {"nodes", std::to_string(args.nodes)},
                                          {"degree", format_real(args.degree)},
                                          {"seed", std::to_string(args.seed)},
                                          {"tol", format_real(args.common.tol)},
                                          {"triple", fmt::format("{},{},{}", est.triple[0], est.triple[1], est.triple[2])}});
  std::string csv = meta + "\np,t_of_p,q_of_p,argmin_graph_seed,margin\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    csv += fmt::format("{},{},{},{},{}\n", format_real(est.p_grid[k]), format_real(est.t_of_p[k]),
                       format_real(est.q_of_p[k]), est.argmin_graph_seed[k],
                       format_real(est.t_of_p[k] - est.q_of_p[k]));
  }
  emit(out, args.common.out, csv);

  if (!args.detail.empty()) {
    std::string detail = meta + "\np,graph,seed,t\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      for (std::size_t i = 0; i < est.graph_seeds.size(); ++i) {
        detail += fmt::format("{},{},{},{}\n", format_real(est.p_grid[k]), i, est.graph_seeds[i],
                              format_real(est.detail[k][i]));
      }
    }
    write_text_file(args.detail, detail);
  }

  // only margins below the solver's resolution count as counterexamples
  const double margin = est.min_margin();
  std::size_t worst = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (est.t_of_p[k] - est.q_of_p[k] < est.t_of_p[worst] - est.q_of_p[worst]) worst = k;
  }
  const bool counterexample = margin < -args.common.tol;
  std::ostream& summary = args.common.out.empty() || args.common.out == "-" ? err : out;
  summary << fmt::format("min over grid of t(p) - p/(p-1) = {} at p = {}: {}\n", format_real(margin),
                         format_real(est.p_grid[worst]), counterexample ? "counterexample found" : "no counterexample");
  return kSuccess;
}

// embed

struct EmbedArgs {
  Common common;
  std::string graph;
  std::string matrix;
  std::size_t dim = 3;
  std::string base;
  double rank_tol = 1e-9;
  std::string coords;
};

int cmd_embed(const EmbedArgs& args, std::ostream& out) {
  if (args.graph.empty() == args.matrix.empty()) throw InputError("embed needs exactly one of GRAPH or --matrix");
  DistanceMatrix m;
  if (!args.matrix.empty()) {
    m = parse_matrix_csv(read_text_file(args.matrix));
  } else {
    const Graph g = load_graph(args.graph);
    m = distance_matrix(g, args.common.exponent(), args.common.config(), args.common.solver_method(), args.common.jobs);
  }
  NodeId base = 0;
  if (!args.base.empty()) {
    auto it = std::find(m.labels.begin(), m.labels.end(), args.base);
    if (it == m.labels.end()) throw InputError("unknown base node '" + args.base + "'");
    base = static_cast<NodeId>(it - m.labels.begin());
  }
  const EmbeddingReport report = embeddability(m, args.dim, base, args.rank_tol);

  if (!args.coords.empty()) {
    if (!report.coordinates) throw InputError("no coordinates: the Schoenberg matrix is not positive semidefinite");
    std::string csv = metadata_line({{"command", "embed"}, {"base", m.labels[base]}}) + "\nnode";
    for (Eigen::Index k = 0; k < report.coordinates->cols(); ++k) csv += fmt::format(",x{}", k + 1);
    csv += '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
      csv += csv_field(m.labels[i]);
      for (Eigen::Index k = 0; k < report.coordinates->cols(); ++k) {
        csv += "," + format_real((*report.coordinates)(static_cast<Eigen::Index>(i), k));
      }
      csv += '\n';
    }
    write_text_file(args.coords, csv);
  }

  std::vector<double> eigenvalues(report.eigenvalues.data(), report.eigenvalues.data() + report.eigenvalues.size());
  if (args.common.format == "json") {
    json j;
    j["dimension"] = args.dim;
    j["base"] = m.labels[base];
    j["embeddable"] = report.embeddable;
    j["psd"] = report.psd;
    j["rank"] = report.rank;
    j["rank_upper"] = report.rank_upper;
    j["eigenvalues"] = eigenvalues;
    if (report.coordinates) j["distortion"] = embedding_distortion(m, *report.coordinates);
    emit(out, args.common.out, j.dump(2) + "\n");
  } else {
    std::string text = fmt::format("embeddable: {}\n", report.embeddable);
    text += fmt::format("dimension: {}\nbase: {}\npsd: {}\n", args.dim, m.labels[base], report.psd);
    text += report.rank == report.rank_upper ? fmt::format("rank: {}\n", report.rank)
                                             : fmt::format("rank: {}..{}\n", report.rank, report.rank_upper);
    text += "eigenvalues:";
    for (double v : eigenvalues) text += " " + format_real(v);
    text += '\n';
    emit(out, args.common.out, text);
  }
  return kSuccess;
}

// eigencurve

struct EigencurveArgs {
  std::string grid = "0.05:2:40";
  std::string out;
};

int cmd_eigencurve(const EigencurveArgs& args, std::ostream& out, std::ostream& err) {
  const EigenCurve curve = square_eigencurve(parse_real_list(args.grid));
  std::string csv = metadata_line({{"command", "eigencurve"}, {"alpha", "1"}}) + "\nbeta,lambda1,lambda2,lambda3\n";
  for (const EigenCurveRow& row : curve.rows) {
    csv += fmt::format("{},{},{},{}\n", format_real(row.beta), format_real(row.eigenvalues[0]),
                       format_real(row.eigenvalues[1]), format_real(row.eigenvalues[2]));
  }
  emit(out, args.out, csv);
  std::ostream& summary = args.out.empty() || args.out == "-" ? err : out;
  if (curve.crossing) {
    summary << fmt::format("smallest eigenvalue changes sign between beta = {} and {}\n",
                           format_real(curve.crossing->first), format_real(curve.crossing->second));
  } else {
    summary << "smallest eigenvalue keeps its sign on the grid\n";
  }
  summary << fmt::format("d_p on the 4-cycle reaches beta = sqrt(2) at p = {:.6f}\n", square_p_threshold());
  return kSuccess;
}

// validate

struct ValidateArgs {
  Common common;
  std::string only;
  double tol = 1e-5;
};

int cmd_validate(const ValidateArgs& args, std::ostream& out) {
  ValidationOptions options;
  options.only = split_list(args.only);
  options.tol = args.tol;
  options.method = args.common.solver_method();
  options.jobs = args.common.jobs;
  if (!(options.tol > 0.0)) throw InputError("--tol must be positive");
  const std::vector<ValidationCase> cases = run_validation(options);

  std::size_t failed = 0;
  std::string text = fmt::format("{:<9} {:<16} {:>4} {:>20} {:>20} {:>10}  {}\n", "family", "case", "p", "expected",
                                 "computed", "rel_error", "status");
  for (const ValidationCase& c : cases) {
    const char* status = c.pass ? "pass" : (c.below_floor ? "FAIL (below solver tolerance floor)" : "FAIL");
    if (!c.pass) ++failed;
    text += fmt::format("{:<9} {:<16} {:>4} {:>20.14g} {:>20.14g} {:>10.2e}  {}\n", c.family, c.name,
                        format_real(c.p), c.expected, c.computed, c.rel_error, status);
  }
  text += fmt::format("{} of {} cases within {} (solver tolerance {})\n", cases.size() - failed, cases.size(),
                      format_real(args.tol), format_real(validation_solver_tolerance(args.tol)));
  emit(out, args.common.out, text);
  return failed == 0 ? kSuccess : kValidationFailure;
}

// bench

struct BenchArgs {
  Common common;
  std::string sizes = "3..33";
  std::string ps = "1,1.5,2,2.5,inf";
  std::string methods = "lap,opt";
  std::size_t reps = 20;
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  std::vector<Exponent> ps;
  for (const std::string& text : split_list(args.ps)) ps.push_back(Common::parse_exponent(text));
  const std::vector<BenchColumn> columns = bench_columns(ps, split_list(args.methods));
  const std::vector<std::size_t> sizes = parse_sizes(args.sizes);
  const std::vector<BenchRow> rows = run_bench(sizes, columns, args.reps, args.common.config());
  const std::string meta = metadata_line(
      {{"command", "bench"}, {"reps", std::to_string(args.reps)}, {"tol", format_real(args.common.tol)}});
  emit(out, args.common.out, bench_csv(columns, rows, meta));
  return kSuccess;
}

void add_solver_flags(CLI::App* cmd, Common& c, bool with_p) {
  if (with_p) cmd->add_option("--p", c.p, "Exponent p >= 1 or 'inf'")->capture_default_str();
  cmd->add_option("--tol", c.tol, "Relative solver tolerance")->capture_default_str();
  cmd->add_option("--method", c.method, "auto, potential or greedy")
      ->check(CLI::IsMember({"auto", "potential", "greedy"}))
      ->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("-o,--out", c.out, "Output file (default stdout)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-modulus distances on graphs", "pmod"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  DistArgs dist;
  CLI::App* dist_cmd = app.add_subcommand("dist", "d_p distance between two nodes");
  dist_cmd->add_option("graph", dist.graph, "Graph file or gen: spec")->required();
  dist_cmd->add_option("a", dist.a, "First node label")->required();
  dist_cmd->add_option("b", dist.b, "Second node label")->required();
  add_solver_flags(dist_cmd, dist.common, true);
  dist_cmd->add_option("--format", dist.common.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  dist_cmd->add_option("--digits", dist.digits, "Decimals in text output")->check(CLI::Range(0, 17))->capture_default_str();

  MatrixArgs matrix;
  CLI::App* matrix_cmd = app.add_subcommand("matrix", "All pairwise d_p distances");
  matrix_cmd->add_option("graph", matrix.graph, "Graph file or gen: spec")->required();
  add_solver_flags(matrix_cmd, matrix.common, true);
  matrix_cmd->add_option("--format", matrix.common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  ExperimentArgs experiment;
  CLI::App* experiment_cmd = app.add_subcommand("experiment", "Antisnowflaking exponent on random graphs");
  experiment_cmd->add_option("--graphs", experiment.graphs, "Number of graphs")->check(CLI::PositiveNumber)->capture_default_str();
  experiment_cmd->add_option("--nodes", experiment.nodes, "Nodes per graph")->capture_default_str();
  experiment_cmd->add_option("--degree", experiment.degree, "Expected degree")->capture_default_str();
  experiment_cmd->add_option("--p-grid", experiment.grid, "lo:hi:count or a comma list")->capture_default_str();
  experiment_cmd->add_option("--seed", experiment.seed, "Base seed")->capture_default_str();
  experiment_cmd->add_option("--detail", experiment.detail, "Per-graph CSV output");
  add_solver_flags(experiment_cmd, experiment.common, false);

  EmbedArgs embed;
  CLI::App* embed_cmd = app.add_subcommand("embed", "Isometric embeddability into R^n");
  embed_cmd->add_option("graph", embed.graph, "Graph file or gen: spec");
  embed_cmd->add_option("--matrix", embed.matrix, "Distance matrix CSV instead of a graph");
  embed_cmd->add_option("--dim", embed.dim, "Target dimension")->capture_default_str();
  embed_cmd->add_option("--base", embed.base, "Base node label (default: first node)");
  embed_cmd->add_option("--rank-tol", embed.rank_tol, "Relative eigenvalue threshold")->capture_default_str();
  embed_cmd->add_option("--coords", embed.coords, "Coordinates CSV output");
  add_solver_flags(embed_cmd, embed.common, true);
  embed_cmd->add_option("--format", embed.common.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  EigencurveArgs eigencurve;
  CLI::App* eigencurve_cmd = app.add_subcommand("eigencurve", "Schoenberg eigenvalues of the square as the diagonal varies");
  eigencurve_cmd->add_option("--beta-grid", eigencurve.grid, "lo:hi:count or a comma list in (0, 2]")->capture_default_str();
  eigencurve_cmd->add_option("-o,--out", eigencurve.out, "Output file (default stdout)");

  ValidateArgs validate;
  CLI::App* validate_cmd = app.add_subcommand("validate", "Compare the solver with closed-form moduli");
  validate_cmd->add_option("--only", validate.only, "Comma list of families: parallel, cycle, complete");
  validate_cmd->add_option("--tol", validate.tol, "Pass threshold on relative error")->capture_default_str();
  validate_cmd->add_option("--method", validate.common.method, "auto, potential or greedy")
      ->check(CLI::IsMember({"auto", "potential", "greedy"}))
      ->capture_default_str();
  validate_cmd->add_option("--jobs", validate.common.jobs, "Worker threads")->check(CLI::PositiveNumber);
  validate_cmd->add_option("-o,--out", validate.common.out, "Output file (default stdout)");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Corner-to-corner timings on square grids");
  bench_cmd->add_option("--sizes", bench.sizes, "a..b (step 3) or a comma list")->capture_default_str();
  bench_cmd->add_option("--p", bench.ps, "Comma list of exponents")->capture_default_str();
  bench_cmd->add_option("--methods", bench.methods, "lap, opt, greedy")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per cell")->capture_default_str();
  bench_cmd->add_option("--tol", bench.common.tol, "Relative solver tolerance")->capture_default_str();
  bench_cmd->add_option("-o,--out", bench.common.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*dist_cmd) return cmd_dist(dist, out);
    if (*matrix_cmd) return cmd_matrix(matrix, out);
    if (*experiment_cmd) return cmd_experiment(experiment, out, err);
    if (*embed_cmd) return cmd_embed(embed, out);
    if (*eigencurve_cmd) return cmd_eigencurve(eigencurve, out, err);
    if (*validate_cmd) return cmd_validate(validate, out);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolveError;
  }
  return kUsageError;
}

}  // namespace pmod::cli
