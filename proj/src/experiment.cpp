#include <cmath>
#include <limits>
#include <stdexcept>

#include "pmod/generators.hpp"
#include "pmod/metrics.hpp"
#include "pmod/parallel.hpp"
#include "pmod/random.hpp"

namespace pmod {

AsfeEstimate er_experiment(std::size_t n_graphs, std::size_t n_nodes, double expected_degree,
                           const std::vector<double>& p_grid, std::uint64_t seed, const SolverConfig& cfg,
                           std::size_t jobs) {
  if (n_graphs == 0) throw std::invalid_argument("experiment needs at least one graph");
  if (n_nodes < 3) throw std::invalid_argument("experiment needs at least three nodes");
  if (p_grid.empty()) throw std::invalid_argument("experiment needs a nonempty p grid");
  for (double p : p_grid) {
    if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("experiment p values must lie in (1, inf)");
  }

  AsfeEstimate est;
  est.p_grid = p_grid;
  SplitMix64 master(seed);
  for (std::size_t i = 0; i < n_graphs; ++i) est.graph_seeds.push_back(master.next());
  // Graphs are drawn up front so parameter errors surface before any solve.
  std::vector<Graph> graphs;
  graphs.reserve(n_graphs);
  for (std::uint64_t s : est.graph_seeds) graphs.push_back(erdos_renyi_connected(n_nodes, expected_degree, s));

  const auto [x, y, z] = est.triple;
  est.detail.assign(p_grid.size(), std::vector<double>(n_graphs, 0.0));
  parallel_for(n_graphs * p_grid.size(), jobs, [&](std::size_t task) {
    const std::size_t k = task / n_graphs;
    const std::size_t i = task % n_graphs;
    const Graph& g = graphs[i];
    const Exponent p(p_grid[k]);
    const double d12 = dp_distance(g, x, y, p, cfg);
    const double d23 = dp_distance(g, y, z, p, cfg);
    const double d13 = dp_distance(g, x, z, p, cfg);
    // solver accuracy in d is about tolerance / p; use it as the flatness band
    const double band = std::max(kFlatTolerance, cfg.tolerance / p.value());
    est.detail[k][i] = flat_exponent(d12, d13, d23, band).value;
  });

  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t argmin = est.graph_seeds.front();
    for (std::size_t i = 0; i < n_graphs; ++i) {
      if (est.detail[k][i] < best) {
        best = est.detail[k][i];
        argmin = est.graph_seeds[i];
      }
    }
    est.t_of_p.push_back(best);
    est.q_of_p.push_back(p_grid[k] / (p_grid[k] - 1.0));
    est.argmin_graph_seed.push_back(argmin);
  }
  return est;
}

}  // namespace pmod
