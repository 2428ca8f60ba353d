#pragma once

#include <cstddef>
#include <cstdint>

#include "pmod/graph.hpp"

namespace pmod {

/// Path 0 - 1 - ... - (n-1).
Graph path_graph(std::size_t n);
/// Cycle 0 - 1 - ... - (n-1) - 0, n >= 3.
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);

/// k internally disjoint paths of `hops` edges each between s = node 0 and
/// t = node 1. Requires hops >= 2 when k >= 2 (otherwise edges would repeat).
Graph parallel_paths(std::size_t k, std::size_t hops);

/// G(n, q) with q = expected_degree / (n - 1), drawn from a SplitMix64 stream
/// seeded with `seed`. Pairs (i, j), i < j, are visited in lexicographic order
/// and kept when uniform() < q. Disconnected draws are discarded and the same
/// stream keeps advancing until a connected graph appears.
Graph erdos_renyi_connected(std::size_t n, double expected_degree, std::uint64_t seed);

}  // namespace pmod
