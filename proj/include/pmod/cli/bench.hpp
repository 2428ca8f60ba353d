#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pmod/exponent.hpp"
#include "pmod/modulus.hpp"

namespace pmod::cli {

/// How a timing column computes d_p.
enum class BenchMethod { laplacian, optimization, greedy, special };

struct BenchColumn {
  Exponent p;
  BenchMethod method;
  /// "1.0", "2.0 (opt)", "2.0 (lap)", "inf", ...
  std::string label;
};

/// "a..b" (every third size from a), or a comma list. Sizes must be positive.
std::vector<std::size_t> parse_sizes(std::string_view text);

/// One column per p, except p = 2 which gets one column per requested method
/// ("lap", "opt", "greedy"). p = 1 and p = inf always use their exact routes.
std::vector<BenchColumn> bench_columns(const std::vector<Exponent>& ps, const std::vector<std::string>& methods);

struct BenchRow {
  std::size_t n;
  /// Mean seconds per column.
  std::vector<double> seconds;
  /// Corner-to-corner distance per column, for cross-checking.
  std::vector<double> distance;
};

/// Times corner-to-corner d_p on n x n grids, averaged over `reps` runs.
std::vector<BenchRow> run_bench(const std::vector<std::size_t>& sizes, const std::vector<BenchColumn>& columns,
                                std::size_t reps, const SolverConfig& cfg = {});

std::string bench_csv(const std::vector<BenchColumn>& columns, const std::vector<BenchRow>& rows,
                      std::string_view metadata);

}  // namespace pmod::cli
