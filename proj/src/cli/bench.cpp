#include "pmod/cli/bench.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "pmod/cli/format.hpp"
#include "pmod/cli/graph_source.hpp"
#include "pmod/metrics.hpp"
#include "pmod/solvers.hpp"

namespace pmod::cli {

namespace {

std::string p_label(Exponent p) {
  if (p.is_infinite()) return "inf";
  const double v = p.value();
  if (v == std::floor(v)) return fmt::format("{:.1f}", v);
  return format_real(v);
}

std::size_t parse_size(std::string_view text) {
  const double v = parse_real(text);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) throw InputError("grid size must be a positive integer, got '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

double corner_distance(const Graph& g, NodeId a, NodeId b, const BenchColumn& column, const SolverConfig& cfg) {
  switch (column.method) {
    case BenchMethod::laplacian:
      return std::sqrt(effective_resistance(g, a, b));
    case BenchMethod::optimization:
      return dp_distance(g, a, b, column.p, cfg, Method::potential);
    case BenchMethod::greedy:
      return dp_distance(g, a, b, column.p, cfg, Method::greedy);
    case BenchMethod::special:
      break;
  }
  return dp_distance(g, a, b, column.p, cfg);
}

}  // namespace

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> sizes;
  if (const std::size_t dots = text.find(".."); dots != std::string_view::npos) {
    const std::size_t lo = parse_size(text.substr(0, dots));
    const std::size_t hi = parse_size(text.substr(dots + 2));
    if (hi < lo) throw InputError("size range must be increasing");
    for (std::size_t n = lo; n <= hi; n += 3) sizes.push_back(n);
    return sizes;
  }
  for (const std::string& field : split_csv_line(text)) sizes.push_back(parse_size(field));
  if (sizes.empty()) throw InputError("no grid sizes given");
  return sizes;
}

std::vector<BenchColumn> bench_columns(const std::vector<Exponent>& ps, const std::vector<std::string>& methods) {
  if (ps.empty()) throw InputError("no exponents given");
  std::vector<BenchMethod> chosen;
  for (const std::string& m : methods) {
    if (m == "lap") {
      chosen.push_back(BenchMethod::laplacian);
    } else if (m == "opt") {
      chosen.push_back(BenchMethod::optimization);
    } else if (m == "greedy") {
      chosen.push_back(BenchMethod::greedy);
    } else {
      throw InputError("unknown bench method '" + m + "' (expected lap, opt or greedy)");
    }
  }
  if (chosen.empty()) throw InputError("no bench methods given");

  std::vector<BenchColumn> columns;
  for (Exponent p : ps) {
    if (!p.is_interior()) {
      columns.push_back({p, BenchMethod::special, p_label(p)});
      continue;
    }
    const bool two = p.value() == 2.0;
    std::size_t added = 0;
    for (BenchMethod m : chosen) {
      if (m == BenchMethod::laplacian) {
        if (!two) continue;
        columns.push_back({p, m, p_label(p) + " (lap)"});
      } else {
        const char* tag = m == BenchMethod::optimization ? "opt" : "greedy";
        columns.push_back({p, m, two ? fmt::format("{} ({})", p_label(p), tag) : p_label(p)});
      }
      ++added;
    }
    if (added == 0) throw InputError("p = " + p.to_string() + " needs method opt or greedy");
    // disambiguate when both optimization methods are timed at the same p
    if (!two && added > 1) {
      for (std::size_t k = columns.size() - added; k < columns.size(); ++k) {
        columns[k].label += columns[k].method == BenchMethod::greedy ? " (greedy)" : " (opt)";
      }
    }
  }
  return columns;
}

std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes, const std::vector<BenchColumn>& columns,
                                std::size_t reps, const SolverConfig& cfg) {
  if (reps == 0) throw InputError("repetitions must be positive");
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    if (n < 2) throw InputError("grid size must be at least 2 for distinct corners");
    const Graph g = grid_graph(n);
    const NodeId a = 0;
    const NodeId b = n * n - 1;
    BenchRow row{n, {}, {}};
    for (const BenchColumn& column : columns) {
      double total = 0.0;
      double distance = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        distance = corner_distance(g, a, b, column, cfg);
        total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
      row.seconds.push_back(total / static_cast<double>(reps));
      row.distance.push_back(distance);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchColumn>& columns, const std::vector<BenchRow>& rows,
                      std::string_view metadata) {
  std::string out(metadata);
  if (!out.empty()) out += '\n';
  out += "n";
  for (const BenchColumn& c : columns) out += "," + csv_field(c.label);
  out += '\n';
  for (const BenchRow& row : rows) {
    out += std::to_string(row.n);
    for (double s : row.seconds) out += fmt::format(",{:.6e}", s);
    out += '\n';
  }
  return out;
}

}  // namespace pmod::cli
