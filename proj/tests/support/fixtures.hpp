#pragma once

#include <cstddef>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pmod/generators.hpp"
#include "pmod/graph.hpp"

namespace fixtures {

/// a - c - b, so a and b are the endpoints.
inline pmod::Graph p3() { return pmod::parse_graph("a c\nc b\n"); }

/// Twenty connected G(10, 6/9) draws with seeds 1..20.
inline std::vector<pmod::Graph> er_suite(std::size_t count = 20) {
  std::vector<pmod::Graph> graphs;
  for (std::uint64_t seed = 1; seed <= count; ++seed) graphs.push_back(pmod::erdos_renyi_connected(10, 6.0, seed));
  return graphs;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace fixtures
