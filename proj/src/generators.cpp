#include "pmod/generators.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "pmod/random.hpp"

namespace pmod {

Graph path_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("path graph needs n >= 2");
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle graph needs n >= 3");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph(n, std::move(edges));
}

Graph parallel_paths(std::size_t k, std::size_t hops) {
  if (k < 1 || hops < 1) throw std::invalid_argument("parallel paths need k >= 1 and hops >= 1");
  if (k > 1 && hops < 2) throw std::invalid_argument("parallel single-edge paths would repeat an edge");
  std::vector<Edge> edges;
  NodeId next = 2;
  for (std::size_t path = 0; path < k; ++path) {
    NodeId prev = 0;
    for (std::size_t h = 0; h + 1 < hops; ++h) {
      edges.push_back({prev, next});
      prev = next++;
    }
    edges.push_back({prev, 1});
  }
  return Graph(next, std::move(edges));
}

Graph erdos_renyi_connected(std::size_t n, double expected_degree, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("Erdos-Renyi graph needs n >= 2");
  const double max_degree = static_cast<double>(n - 1);
  if (!(expected_degree > 0.0) || expected_degree > max_degree) {
    throw std::invalid_argument("expected degree must lie in (0, " + std::to_string(n - 1) + "], got " +
                                std::to_string(expected_degree));
  }
  const double q = expected_degree / max_degree;
  SplitMix64 rng(seed);
  constexpr std::size_t max_attempts = 1'000'000;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        if (rng.uniform() < q) edges.push_back({i, j});
      }
    }
    if (is_connected(n, edges)) return Graph(n, std::move(edges));
  }
  throw std::runtime_error("no connected Erdos-Renyi draw within " + std::to_string(max_attempts) + " attempts");
}

}  // namespace pmod
