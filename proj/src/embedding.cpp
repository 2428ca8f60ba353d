#include "pmod/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pmod {

Eigen::MatrixXd schoenberg_matrix(const DistanceMatrix& m, NodeId base) {
  const std::size_t n = m.size();
  if (base >= n) throw std::out_of_range("base node outside the matrix");
  std::vector<NodeId> others;
  for (NodeId v = 0; v < n; ++v) {
    if (v != base) others.push_back(v);
  }
  const auto k = static_cast<Eigen::Index>(others.size());
  Eigen::MatrixXd M(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const NodeId x = others[static_cast<std::size_t>(i)];
      const NodeId y = others[static_cast<std::size_t>(j)];
      M(i, j) = m(x, base) * m(x, base) + m(base, y) * m(base, y) - m(x, y) * m(x, y);
    }
  }
  return M;
}

EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& M, double tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("eigen solver needs a square matrix");
  const Eigen::Index n = M.rows();
  const double scale = std::max(M.norm(), std::numeric_limits<double>::min());
  if ((M - M.transpose()).norm() > tol * scale) throw std::invalid_argument("eigen solver needs a symmetric matrix");

  Eigen::MatrixXd A = 0.5 * (M + M.transpose());
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * A(i, j) * A(i, j);
    }
    return std::sqrt(s);
  };

  EigenDecomposition out;
  constexpr std::size_t max_sweeps = 100;
  while (out.sweeps < max_sweeps && off_norm() > tol * scale) {
    ++out.sweeps;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        // rotation zeroing A(p, q)
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = A(k, p);
          const double akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = A(p, k);
          const double aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = V(k, p);
          const double vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return A(x, x) > A(y, y); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = A(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = V.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

EmbeddingReport embeddability(const DistanceMatrix& m, std::size_t n, NodeId base, double tol) {
  EmbeddingReport report;
  report.base = base;
  report.target_dimension = n;
  report.schoenberg = schoenberg_matrix(m, base);
  if (report.schoenberg.rows() == 0) {
    // a single point embeds anywhere
    report.psd = true;
    report.embeddable = true;
    report.coordinates = Eigen::MatrixXd::Zero(1, 0);
    return report;
  }
  EigenDecomposition eig = symmetric_eigen(report.schoenberg, 1e-14);
  report.eigenvalues = eig.values;
  const double top = std::max(eig.values.maxCoeff(), 0.0);
  const double band = tol * top;
  const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * std::max(top, 1.0) *
                          static_cast<double>(eig.values.size());
  report.psd = eig.values.minCoeff() >= -band;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lam = eig.values(k);
    if (lam > band) {
      ++report.rank;
    } else if (lam > roundoff) {
      ++report.rank_upper;
    }
  }
  report.rank_upper += report.rank;
  report.embeddable = report.psd && report.rank <= n;

  if (report.psd) {
    const auto rank = static_cast<Eigen::Index>(report.rank);
    const auto nodes = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(nodes, rank);
    Eigen::Index row = 0;
    for (Eigen::Index v = 0; v < nodes; ++v) {
      if (static_cast<NodeId>(v) == base) continue;
      for (Eigen::Index k = 0; k < rank; ++k) {
        // Gram matrix is M / 2
        coords(v, k) = eig.vectors(row, k) * std::sqrt(0.5 * eig.values(k));
      }
      ++row;
    }
    report.coordinates = std::move(coords);
  }
  return report;
}

double embedding_distortion(const DistanceMatrix& m, const Eigen::MatrixXd& coordinates) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < coordinates.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < coordinates.rows(); ++j) {
      const double target = m(static_cast<NodeId>(i), static_cast<NodeId>(j));
      const double got = (coordinates.row(i) - coordinates.row(j)).norm();
      worst = std::max(worst, std::abs(got - target) / target);
    }
  }
  return worst;
}

DistanceMatrix square_metric(double alpha, double beta) {
  DistanceMatrix m;
  m.labels = {"a", "b", "c", "d"};
  m.values.resize(4, 4);
  // a, b, c, d around the square: sides ab, bc, cd, da; diagonals ac, bd
  m.values << 0, alpha, beta, alpha,  //
      alpha, 0, alpha, beta,          //
      beta, alpha, 0, alpha,          //
      alpha, beta, alpha, 0;
  return m;
}

EigenCurve square_eigencurve(const std::vector<double>& beta_grid) {
  EigenCurve curve;
  for (double beta : beta_grid) {
    if (!(beta > 0.0) || beta > 2.0) {
      throw std::invalid_argument("beta must lie in (0, 2], got " + std::to_string(beta));
    }
    const EigenDecomposition eig = symmetric_eigen(schoenberg_matrix(square_metric(1.0, beta), 0));
    curve.rows.push_back({beta, {eig.values(0), eig.values(1), eig.values(2)}});
  }
  for (std::size_t k = 1; k < curve.rows.size() && !curve.crossing; ++k) {
    const double before = curve.rows[k - 1].eigenvalues[2];
    const double after = curve.rows[k].eigenvalues[2];
    const double noise = 1e-12;
    if ((before >= -noise) != (after >= -noise)) curve.crossing = {{curve.rows[k - 1].beta, curve.rows[k].beta}};
  }
  return curve;
}

SquareTwist square_twist(double theta) {
  if (!(theta >= 0.0 && theta < std::numbers::pi)) {
    throw std::invalid_argument("twist angle must lie in [0, pi)");
  }
  return {std::cos(0.5 * theta), std::sqrt(1.0 + std::cos(theta))};
}

double square_ratio(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("square ratio needs p >= 1");
  if (std::isinf(p)) return 2.0;
  return std::pow(2.0, 1.0 - 2.0 / p) * std::pow(1.0 + std::pow(3.0, 1.0 - p), 1.0 / p);
}

double square_p_threshold(double tol) {
  constexpr double lo_end = 1.0;
  constexpr double hi_end = 16.0;
  constexpr int samples = 1000;
  double prev = square_ratio(lo_end);
  for (int k = 1; k <= samples; ++k) {
    const double cur = square_ratio(lo_end + (hi_end - lo_end) * k / samples);
    if (!(cur > prev)) throw std::logic_error("square ratio is not increasing on (1, 16)");
    prev = cur;
  }
  const double target = std::numbers::sqrt2;
  double lo = lo_end;
  double hi = hi_end;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (square_ratio(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace pmod
