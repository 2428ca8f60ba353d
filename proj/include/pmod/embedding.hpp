#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "pmod/graph.hpp"
#include "pmod/metrics.hpp"

namespace pmod {

/// M(i, j) = d(x_i, x0)^2 + d(x0, x_j)^2 - d(x_i, x_j)^2 over the non-base
/// nodes in index order (no factor 1/2).
Eigen::MatrixXd schoenberg_matrix(const DistanceMatrix& m, NodeId base);

struct EigenDecomposition {
  /// Descending.
  Eigen::VectorXd values;
  /// Orthonormal columns, matching `values`.
  Eigen::MatrixXd vectors;
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is at most
/// tol * ||M||_F. Throws std::invalid_argument if M is not symmetric within tol.
EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& M, double tol = 1e-12);

struct EmbeddingReport {
  NodeId base = 0;
  std::size_t target_dimension = 0;
  Eigen::MatrixXd schoenberg;
  Eigen::VectorXd eigenvalues;
  bool psd = false;
  /// Eigenvalues above tol * lambda_max.
  std::size_t rank = 0;
  /// rank plus eigenvalues inside the uncertainty band (positive but <= tol * lambda_max,
  /// above roundoff). rank == rank_upper means the rank is unambiguous.
  std::size_t rank_upper = 0;
  bool embeddable = false;
  /// When psd: one row per node (base at the origin), `rank` columns.
  std::optional<Eigen::MatrixXd> coordinates;
};

/// Schoenberg criterion for an isometric embedding into R^n. Coordinates
/// factor the Gram matrix M / 2.
EmbeddingReport embeddability(const DistanceMatrix& m, std::size_t n, NodeId base = 0, double tol = 1e-9);

/// Largest relative error between coordinate distances and the matrix entries.
double embedding_distortion(const DistanceMatrix& m, const Eigen::MatrixXd& coordinates);

/// Distance matrix of the square a, b, c, d with side alpha and diagonal beta.
DistanceMatrix square_metric(double alpha, double beta);

struct EigenCurveRow {
  double beta;
  std::array<double, 3> eigenvalues;  // descending
};

struct EigenCurve {
  std::vector<EigenCurveRow> rows;
  /// Consecutive grid points between which the smallest eigenvalue changes sign.
  std::optional<std::pair<double, double>> crossing;
};

/// Eigenvalues of the unit-side square's Schoenberg matrix (base a) across
/// beta in (0, 2]. Throws std::invalid_argument for beta outside that range.
EigenCurve square_eigencurve(const std::vector<double>& beta_grid);

struct SquareTwist {
  double height;
  double beta;
};

/// Twisted unit square: h = cos(theta/2), beta = sqrt(1 + cos theta), theta in [0, pi).
SquareTwist square_twist(double theta);

/// beta/alpha ratio of d_p on the 4-cycle: 2^(1-2/p) (1 + 3^(1-p))^(1/p).
double square_ratio(double p);

/// Root of square_ratio(p) = sqrt(2) on (1, 16) by bisection. Throws
/// std::logic_error if sampling shows the ratio is not increasing there.
double square_p_threshold(double tol = 1e-10);

}  // namespace pmod
