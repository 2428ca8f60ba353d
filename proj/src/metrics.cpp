#include "pmod/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "pmod/parallel.hpp"
#include "pmod/solvers.hpp"

namespace pmod {

DistanceMatrix DistanceMatrix::powered(double power) const {
  DistanceMatrix out(*this);
  out.values = values.array().pow(power);
  out.t = t * power;
  out.uncertainty = uncertainty * std::abs(power);
  return out;
}

double dp_distance(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg, Method method) {
  g.check_node(a);
  g.check_node(b);
  if (a == b) return 0.0;
  if (p.is_infinite()) return static_cast<double>(shortest_path_hops(g, a, b));
  const ModulusResult r = modulus(g, a, b, p, cfg, method);
  return std::pow(r.value, -1.0 / p.value());
}

DistanceMatrix distance_matrix(const Graph& g, Exponent p, const SolverConfig& cfg, Method method, std::size_t jobs) {
  const std::size_t n = g.node_count();
  DistanceMatrix m;
  m.p = p;
  m.labels.assign(g.labels().begin(), g.labels().end());
  m.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  auto set = [&m](NodeId i, NodeId j, double d) {
    m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d;
    m.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = d;
  };

  if (p.is_infinite()) {
    for (NodeId i = 0; i < n; ++i) {
      auto hops = hop_distances(g, i);
      for (NodeId j = i + 1; j < n; ++j) set(i, j, static_cast<double>(hops[j]));
    }
    return m;
  }
  if (p.value() == 2.0 && method == Method::automatic) {
    const Eigen::MatrixXd pinv = ResistanceSolver(g).pseudoinverse();
    for (Eigen::Index i = 0; i < pinv.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < pinv.rows(); ++j) {
        const double r = pinv(i, i) + pinv(j, j) - 2.0 * pinv(i, j);
        set(static_cast<NodeId>(i), static_cast<NodeId>(j), std::sqrt(r));
      }
    }
    m.uncertainty = 1e-12;
    return m;
  }

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> dist(pairs.size());
  std::vector<double> gap(pairs.size(), 0.0);
  parallel_for(pairs.size(), jobs, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const ModulusResult r = modulus(g, i, j, p, cfg, method);
    dist[k] = std::pow(r.value, -1.0 / p.value());
    gap[k] = r.relative_gap();
  });
  double worst = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    set(pairs[k].first, pairs[k].second, dist[k]);
    worst = std::max(worst, gap[k]);
  }
  m.uncertainty = p.is_one() ? 0.0 : worst / p.value();
  return m;
}

TriangleReport triangle_audit(const DistanceMatrix& m, double t, double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("triangle audit needs a positive power");
  const double band = std::max(tol, kFlatTolerance);
  const std::size_t n = m.size();
  TriangleReport report;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      const double lhs = std::pow(m(a, b), t);
      for (NodeId c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        ++report.examined;
        const double rhs = std::pow(m(a, c), t) + std::pow(m(c, b), t);
        const double excess = (lhs - rhs) / rhs;
        TriangleEntry entry{a, b, c, lhs, rhs};
        if (excess > band) {
          report.violations.push_back(entry);
        } else if (std::abs(excess) <= kFlatTolerance) {
          report.flat.push_back(entry);
        } else if (std::abs(excess) <= band) {
          report.indeterminate.push_back(entry);
        }
      }
    }
  }
  return report;
}

std::vector<TriangleEntry> ultrametric_audit(const DistanceMatrix& m, double tol) {
  std::vector<TriangleEntry> out;
  const std::size_t n = m.size();
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      for (NodeId c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        const double bound = std::max(m(a, c), m(c, b));
        if (m(a, b) > bound * (1.0 + tol)) out.push_back({a, b, c, m(a, b), bound});
      }
    }
  }
  return out;
}

FlatExponent flat_exponent(double dab, double dac, double dcb, double tol) {
  if (!(dab > 0.0 && dac > 0.0 && dcb > 0.0)) throw std::invalid_argument("flat exponent needs positive sides");
  std::array<double, 3> sides{dab, dac, dcb};
  std::sort(sides.begin(), sides.end());
  const double longest = sides[2];
  const double r1 = sides[0] / longest;
  const double r2 = sides[1] / longest;
  constexpr double inf = std::numeric_limits<double>::infinity();

  if (r2 >= 1.0 / (1.0 + tol)) return {inf, false};
  if (std::abs(r1 + r2 - 1.0) <= tol) return {1.0, false};

  // r1^t + r2^t - 1 is strictly decreasing in t.
  auto excess = [&](double t) { return std::pow(r1, t) + std::pow(r2, t) - 1.0; };
  const bool violated = r1 + r2 < 1.0;
  double lo = violated ? 0.0 : 1.0;
  double hi = violated ? 1.0 : 2.0;
  while (!violated && excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e15) return {inf, false};
  }
  // relative width above t = 1: very large exponents run out of doubles first
  while (hi - lo > 1e-12 * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), violated};
}

double asfe_graph(const DistanceMatrix& m) {
  const double tol = std::max(kFlatTolerance, 4.0 * m.uncertainty);
  const std::size_t n = m.size();
  double best = std::numeric_limits<double>::infinity();
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      for (NodeId c = b + 1; c < n; ++c) {
        best = std::min(best, flat_exponent(m(a, b), m(a, c), m(b, c), tol).value);
      }
    }
  }
  return best;
}

double AsfeEstimate::min_margin() const {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < t_of_p.size(); ++k) margin = std::min(margin, t_of_p[k] - q_of_p[k]);
  return margin;
}

}  // namespace pmod
