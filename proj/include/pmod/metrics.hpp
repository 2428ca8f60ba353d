#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pmod/exponent.hpp"
#include "pmod/graph.hpp"
#include "pmod/modulus.hpp"

namespace pmod {

/// Relative band inside which a triangle counts as flat.
inline constexpr double kFlatTolerance = 1e-9;

struct DistanceMatrix {
  Exponent p = 1.0;
  /// Power already applied to the d_p values.
  double t = 1.0;
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
  /// Relative accuracy of the off-diagonal entries; 0 for exact routes.
  double uncertainty = 0.0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
  double operator()(NodeId i, NodeId j) const {
    return values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  /// Entrywise power; the result records t * power.
  DistanceMatrix powered(double power) const;
};

/// d_p(a, b) = Mod_p(Gamma(a, b))^(-1/p), and the hop distance for p = inf.
double dp_distance(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg = {},
                   Method method = Method::automatic);

/// All pairwise d_p. p = 2 (automatic) factors the Laplacian once; p = inf
/// runs one BFS per node. Pairs are distributed over `jobs` threads.
DistanceMatrix distance_matrix(const Graph& g, Exponent p, const SolverConfig& cfg = {},
                               Method method = Method::automatic, std::size_t jobs = 1);

struct TriangleEntry {
  NodeId a;
  NodeId b;
  NodeId c;
  /// d(a,b)^t and d(a,c)^t + d(c,b)^t.
  double lhs;
  double rhs;
};

struct TriangleReport {
  std::size_t examined = 0;
  std::vector<TriangleEntry> violations;
  std::vector<TriangleEntry> flat;
  /// Within the tolerance band but not provably flat or proper.
  std::vector<TriangleEntry> indeterminate;

  bool holds() const noexcept { return violations.empty(); }
};

/// Checks d(a,b)^t <= d(a,c)^t + d(c,b)^t for every pair a < b and every
/// third node c. A relative excess above `tol` is a violation; |excess| up to
/// kFlatTolerance is flat; anything else inside the band is indeterminate.
TriangleReport triangle_audit(const DistanceMatrix& m, double t, double tol = kFlatTolerance);

/// Triples with d(a,b) > max(d(a,c), d(c,b)) * (1 + tol).
std::vector<TriangleEntry> ultrametric_audit(const DistanceMatrix& m, double tol = kFlatTolerance);

struct FlatExponent {
  /// t with long^t = s1^t + s2^t; +inf if no power ever breaks the triangle.
  double value;
  /// Inputs already violate the triangle inequality; value < 1.
  bool violates_triangle;
};

/// Exponent at which the triangle with the given sides becomes flat, taking
/// the largest side as the long one. Bisection to 1e-12, relative once t > 1.
FlatExponent flat_exponent(double dab, double dac, double dcb, double tol = kFlatTolerance);

/// sup{t >= 1 : d^t is a metric}: the smallest flat exponent over all triples.
double asfe_graph(const DistanceMatrix& m);

struct AsfeEstimate {
  std::vector<double> p_grid;
  /// min over graphs of t_{p,i}.
  std::vector<double> t_of_p;
  /// Conjectured bound p / (p - 1).
  std::vector<double> q_of_p;
  std::vector<std::uint64_t> argmin_graph_seed;
  std::vector<std::uint64_t> graph_seeds;
  /// detail[k][i] = t_{p_k, i}.
  std::vector<std::vector<double>> detail;
  /// The three nodes compared in every graph.
  std::array<NodeId, 3> triple{0, 1, 2};

  /// min over the grid of t(p) - q(p).
  double min_margin() const;
};

/// Draws `n_graphs` connected G(n, degree/(n-1)) graphs, graph i seeded with
/// the i-th output of SplitMix64(seed), and records the flat exponent of the
/// triangle on nodes 0, 1, 2 under d_p for each p in the grid.
AsfeEstimate er_experiment(std::size_t n_graphs, std::size_t n_nodes, double expected_degree,
                           const std::vector<double>& p_grid, std::uint64_t seed, const SolverConfig& cfg = {},
                           std::size_t jobs = 1);

}  // namespace pmod
