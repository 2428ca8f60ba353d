#include "pmod/path_dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace pmod {

PathDual::PathDual(std::size_t edge_count, double p)
    : p_(p), r_(1.0 / (p - 1.0)), s_(edge_count, 0.0), rho_(edge_count, 0.0) {
  if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("path dual needs 1 < p < inf");
}

std::size_t PathDual::add_path(std::span<const EdgeId> edges, double multiplier) {
  if (multiplier < 0.0) throw std::invalid_argument("multipliers must be nonnegative");
  for (EdgeId e : edges) {
    if (e >= s_.size()) throw std::out_of_range("path edge outside the graph");
  }
  paths_.emplace_back(edges.begin(), edges.end());
  lambda_.push_back(multiplier);
  if (multiplier > 0.0) {
    for (EdgeId e : edges) {
      s_[e] += multiplier;
      rho_[e] = std::pow(s_[e] / p_, r_);
    }
  }
  return paths_.size() - 1;
}

void PathDual::refresh() {
  std::fill(s_.begin(), s_.end(), 0.0);
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    if (lambda_[i] == 0.0) continue;
    for (EdgeId e : paths_[i]) s_[e] += lambda_[i];
  }
  for (std::size_t e = 0; e < s_.size(); ++e) rho_[e] = std::pow(s_[e] / p_, r_);
}

void PathDual::solve_coordinate(std::size_t index) {
  const auto& edges = paths_[index];
  const double old = lambda_[index];
  if (old == 0.0) {
    double length = 0.0;
    for (EdgeId e : edges) length += rho_[e];
    if (length >= 1.0) return;
  }

  // l(x) = sum ((base_e + x) / p)^r is increasing in x; find l(x) = 1 on [0, p].
  auto base = [&](EdgeId e) { return std::max(s_[e] - old, 0.0); };
  auto length_at = [&](double x, double& slope) {
    double value = 0.0;
    slope = 0.0;
    for (EdgeId e : edges) {
      const double u = (base(e) + x) / p_;
      const double term = std::pow(u, r_);
      value += term;
      if (u > 0.0) slope += r_ * term / (u * p_);
    }
    return value;
  };

  double slope = 0.0;
  double next = 0.0;
  if (length_at(0.0, slope) < 1.0) {
    double lo = 0.0;
    double hi = p_;
    double x = (old > lo && old < hi) ? old : 0.5 * hi;
    for (int iter = 0; iter < 400; ++iter) {
      const double residual = length_at(x, slope) - 1.0;
      if (residual > 0.0) {
        hi = x;
      } else {
        lo = x;
      }
      if (std::abs(residual) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
      // tiny multipliers are common for large p, so split geometrically across wide brackets
      const double split = lo == 0.0 ? 1e-3 * hi : (hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi));
      double candidate = (slope > 0.0 && std::isfinite(slope)) ? x - residual / slope : split;
      if (!(candidate > lo && candidate < hi)) candidate = split;
      if (std::abs(candidate - x) <= 1e-16 * std::max(x, 1e-300) || hi - lo <= 1e-16 * hi) {
        x = candidate;
        break;
      }
      x = candidate;
    }
    next = x;
  }

  const double delta = next - old;
  if (delta == 0.0) return;
  lambda_[index] = next;
  for (EdgeId e : edges) {
    s_[e] = std::max(s_[e] + delta, 0.0);
    rho_[e] = std::pow(s_[e] / p_, r_);
  }
}

double PathDual::sweep() {
  double largest = 0.0;
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    const double before = lambda_[i];
    solve_coordinate(i);
    largest = std::max(largest, std::abs(lambda_[i] - before));
  }
  return largest;
}

double PathDual::dual_at(const std::vector<double>& lambda) const {
  std::vector<double> s(s_.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    total += lambda[i];
    if (lambda[i] == 0.0) continue;
    for (EdgeId e : paths_[i]) s[e] += lambda[i];
  }
  double energy = 0.0;
  for (double x : s) {
    if (x > 0.0) energy += std::pow(x / p_, p_ * r_);
  }
  return total - (p_ - 1.0) * energy;
}

bool PathDual::newton_step() {
  constexpr std::size_t max_free = 4000;
  const std::size_t count = paths_.size();
  std::vector<double> grad(count);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < count; ++i) {
    grad[i] = 1.0 - path_length(i);
    if (lambda_[i] > 0.0 || grad[i] > 0.0) free.push_back(i);
  }
  if (free.empty() || free.size() > max_free) return false;

  // curvature of (p - 1) (s / p)^(p / (p - 1)) in s is r rho / s
  std::vector<double> w(s_.size(), 0.0);
  for (std::size_t e = 0; e < s_.size(); ++e) {
    if (s_[e] > 0.0) w[e] = r_ * rho_[e] / s_[e];
  }
  const auto k = static_cast<Eigen::Index>(free.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(k, k);
  Eigen::VectorXd rhs(k);
  std::vector<double> weight_of(s_.size(), 0.0);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& pi = paths_[free[static_cast<std::size_t>(i)]];
    rhs(i) = grad[free[static_cast<std::size_t>(i)]];
    for (EdgeId e : pi) weight_of[e] = w[e];
    for (Eigen::Index j = i; j < k; ++j) {
      double h = 0.0;
      for (EdgeId e : paths_[free[static_cast<std::size_t>(j)]]) h += weight_of[e];
      H(i, j) = h;
      H(j, i) = h;
    }
    for (EdgeId e : pi) weight_of[e] = 0.0;
  }
  const double shift = 1e-12 * std::max(H.diagonal().maxCoeff(), 1e-300);
  H.diagonal().array() += shift;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  if (ldlt.info() != Eigen::Success) return false;
  const Eigen::VectorXd d = ldlt.solve(rhs);
  if (!d.allFinite()) return false;

  const double g0 = dual_value();
  std::vector<double> trial = lambda_;
  for (double step = 1.0; step > 1e-10; step *= 0.5) {
    double predicted = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const std::size_t idx = free[static_cast<std::size_t>(i)];
      trial[idx] = std::max(lambda_[idx] + step * d(i), 0.0);
      predicted += rhs(i) * (trial[idx] - lambda_[idx]);
    }
    if (!(predicted > 0.0)) return false;
    if (dual_at(trial) >= g0 + 1e-4 * predicted) {
      lambda_ = std::move(trial);
      refresh();
      return true;
    }
  }
  return false;
}

std::size_t PathDual::solve(double rel_tol, std::size_t max_sweeps, double target) {
  if (paths_.empty()) return 0;
  refresh();
  constexpr std::size_t patience = 64;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;
  for (std::size_t k = 1; k <= max_sweeps; ++k) {
    sweep();
    newton_step();
    if (k % 16 == 0) refresh();
    const double dual = dual_value();
    if (target > 0.0 && dual >= target) return k;
    if (dual > best + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(best)) {
      best = dual;
      since_best = 0;
    } else if (++since_best >= patience) {
      return k;  // stalled at working precision
    }
    const double upper = restricted_upper_bound();
    if (dual > 0.0 && upper - dual <= rel_tol * dual) return k;
  }
  return max_sweeps;
}

void PathDual::rescale_optimally() {
  double total = 0.0;
  for (double x : lambda_) total += x;
  const double e = energy();
  if (total <= 0.0 || e <= 0.0) return;
  const double c = std::pow(total / (p_ * e), p_ - 1.0);
  if (!std::isfinite(c) || c <= 0.0) return;
  for (double& x : lambda_) x *= c;
  refresh();
}

double PathDual::energy() const {
  double total = 0.0;
  for (double x : rho_) {
    if (x > 0.0) total += std::pow(x, p_);
  }
  return total;
}

double PathDual::dual_value() const {
  double total = 0.0;
  for (double x : lambda_) total += x;
  return total - (p_ - 1.0) * energy();
}

double PathDual::path_length(std::size_t index) const {
  double length = 0.0;
  for (EdgeId e : paths_.at(index)) length += rho_[e];
  return length;
}

double PathDual::min_length() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < paths_.size(); ++i) best = std::min(best, path_length(i));
  return best;
}

double PathDual::restricted_upper_bound() const {
  const double shortest = min_length();
  if (!(shortest > 0.0)) return std::numeric_limits<double>::infinity();
  return energy() / std::pow(shortest, p_);
}

}  // namespace pmod
