#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmod/graph.hpp"

namespace pmod {

/// Lagrangian dual of min E_p(rho) s.t. l_rho(gamma) >= 1 for a finite set of
/// simple paths, for 1 < p < inf:
///
///   g(lambda) = sum lambda - (p - 1) sum_e (s_e / p)^(p/(p-1)),
///   s_e = sum_gamma lambda_gamma N(gamma, e),
///
/// with primal recovery rho_e = (s_e / p)^(1/(p-1)). Any lambda >= 0 gives
/// g(lambda) <= Mod_p of the path set, hence of every family containing it.
/// Maximized by exact coordinate ascent, one multiplier at a time, interleaved
/// with projected Newton steps once the active set settles.
class PathDual {
public:
  PathDual(std::size_t edge_count, double p);

  /// Returns the index of the new path. Edges must be distinct.
  std::size_t add_path(std::span<const EdgeId> edges, double multiplier = 0.0);

  std::size_t size() const noexcept { return paths_.size(); }
  double p() const noexcept { return p_; }
  std::span<const double> multipliers() const noexcept { return lambda_; }

  /// One Gauss-Seidel pass; returns the largest multiplier change.
  double sweep();

  /// Projected Newton step on the multipliers with Armijo backtracking.
  /// Returns false when no ascent was made.
  bool newton_step();

  /// Sweeps until the restricted problem's bracket is within `rel_tol`, or
  /// until the dual reaches `target` (when given), or `max_sweeps` passes.
  /// Also stops once the dual stops improving at working precision.
  /// Returns the number of sweeps.
  std::size_t solve(double rel_tol, std::size_t max_sweeps, double target = 0.0);

  /// Replaces lambda by c * lambda with the c maximizing g.
  void rescale_optimally();

  double dual_value() const;
  /// E_p of the recovered density.
  double energy() const;
  double path_length(std::size_t index) const;
  /// Smallest l_rho over the stored paths (+inf when empty).
  double min_length() const;
  /// energy() / min_length()^p: Mod_p of the stored set is at most this.
  double restricted_upper_bound() const;

  std::vector<double> density() const { return rho_; }

private:
  void refresh();
  void solve_coordinate(std::size_t index);
  double dual_at(const std::vector<double>& lambda) const;

  double p_;
  double r_;  // 1 / (p - 1)
  std::vector<double> s_;
  std::vector<double> rho_;
  std::vector<std::vector<EdgeId>> paths_;
  std::vector<double> lambda_;
};

}  // namespace pmod
