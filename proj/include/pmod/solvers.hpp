#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "pmod/graph.hpp"

namespace pmod {

/// BFS hop count between a and b (0 iff a == b).
std::size_t shortest_path_hops(const Graph& g, NodeId a, NodeId b);

/// Hop distances from `source` to every node.
std::vector<std::size_t> hop_distances(const Graph& g, NodeId source);

/// Minimum ab-cut by unit-capacity Edmonds-Karp; the side is the set reachable
/// from a in the final residual network. Throws std::invalid_argument if a == b.
CutResult min_cut(const Graph& g, NodeId a, NodeId b);

/// Edge-disjoint a-b paths read off a maximum unit-capacity flow.
/// Their number equals min_cut(g, a, b).value.
std::vector<Path> edge_disjoint_paths(const Graph& g, NodeId a, NodeId b);

/// Combinatorial Laplacian: degrees on the diagonal, -1 per edge.
Eigen::MatrixXd laplacian(const Graph& g);

/// Dense factorization of L + (1/n) 11^T, which is positive definite on a
/// connected graph and agrees with L on the complement of the constants.
/// Solutions of L x = r with sum(r) = 0 come out mean-free.
class ResistanceSolver {
public:
  explicit ResistanceSolver(const Graph& g);

  /// Mean-free x with L x = rhs; rhs must sum to zero.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// R_eff(a, b); 0 when a == b.
  double resistance(NodeId a, NodeId b) const;

  /// Node potential phi with phi(a) = 0, phi(b) = 1 for a unit voltage drop.
  Eigen::VectorXd voltage(NodeId a, NodeId b) const;

  /// Moore-Penrose pseudoinverse L^+.
  Eigen::MatrixXd pseudoinverse() const;

private:
  std::size_t n_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

/// R_eff(a, b) = (delta_b - delta_a)^T L^+ (delta_b - delta_a). Returns 0 when a == b.
double effective_resistance(const Graph& g, NodeId a, NodeId b);

class PathLimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// All simple a-b paths by depth-first backtracking with neighbors visited in
/// ascending index order. Throws PathLimitExceeded when more than `cap` exist.
std::vector<Path> enumerate_simple_paths(const Graph& g, NodeId a, NodeId b, std::size_t cap);

}  // namespace pmod
