#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "pmod/modulus.hpp"
#include "pmod/path_dual.hpp"

namespace pmod {

namespace {

// psi(t) = (t^2 + eps^2)^(p/2) - eps^p and its first two derivatives.
struct Smoothing {
  double p;
  double eps;

  double value(double t) const {
    const double ratio = (t * t) / (eps * eps);
    return std::pow(eps, p) * std::expm1(0.5 * p * std::log1p(ratio));
  }
  double slope(double t) const { return p * t * std::pow(t * t + eps * eps, 0.5 * p - 1.0); }
  double curvature(double t) const {
    const double r2 = t * t + eps * eps;
    return p * std::pow(r2, 0.5 * p - 2.0) * ((p - 1.0) * t * t + eps * eps);
  }
};

class PotentialProblem {
public:
  PotentialProblem(const Graph& g, NodeId a, NodeId b, double p) : g_(g), a_(a), b_(b), p_(p) {
    index_.assign(g.node_count(), -1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (v != a && v != b) index_[v] = static_cast<Eigen::Index>(free_.size()), free_.push_back(v);
    }
    phi_.assign(g.node_count(), 0.0);
    phi_[b] = 1.0;
  }

  const std::vector<double>& phi() const { return phi_; }
  std::size_t steps() const { return steps_; }

  double drop(EdgeId e, const std::vector<double>& phi) const {
    return phi[g_.edge(e).v] - phi[g_.edge(e).u];
  }

  // Harmonic start: Newton on the p = 2 energy converges in one step.
  void harmonic_start() {
    if (free_.empty()) return;
    Smoothing quad{2.0, 1.0};
    newton_step(quad);
  }

  double objective(const Smoothing& s, const std::vector<double>& phi) const {
    double total = 0.0;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) total += s.value(drop(e, phi));
    return total;
  }

  // Damped Newton until the decrement is at roundoff level.
  void minimize(const Smoothing& s, std::size_t max_steps) {
    if (free_.empty()) return;
    for (std::size_t k = 0; k < max_steps; ++k) {
      if (!newton_step(s)) break;
    }
  }

private:
  // Returns false once no further progress is possible.
  bool newton_step(const Smoothing& s) {
    const auto m = static_cast<Eigen::Index>(free_.size());
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(m);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(4 * g_.edge_count());
    double max_diag = 0.0;
    std::vector<double> diag(free_.size(), 0.0);
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const auto [u, v] = g_.edge(e);
      const double t = drop(e, phi_);
      const double d1 = s.slope(t);
      const double d2 = s.curvature(t);
      const Eigen::Index iu = index_[u];
      const Eigen::Index iv = index_[v];
      if (iv >= 0) grad(iv) += d1, diag[static_cast<std::size_t>(iv)] += d2;
      if (iu >= 0) grad(iu) -= d1, diag[static_cast<std::size_t>(iu)] += d2;
      if (iu >= 0 && iv >= 0) {
        entries.emplace_back(iu, iv, -d2);
        entries.emplace_back(iv, iu, -d2);
      }
    }
    for (double d : diag) max_diag = std::max(max_diag, d);
    double shift = std::max(1e-13 * max_diag, std::numeric_limits<double>::min());
    const double f0 = objective(s, phi_);

    Eigen::VectorXd dir;
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<Eigen::Triplet<double>> all(entries);
      for (std::size_t i = 0; i < diag.size(); ++i) {
        all.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), diag[i] + shift);
      }
      Eigen::SparseMatrix<double> hess(m, m);
      hess.setFromTriplets(all.begin(), all.end());
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(hess);
      if (ldlt.info() == Eigen::Success) {
        dir = ldlt.solve(-grad);
        if (ldlt.info() == Eigen::Success && dir.allFinite()) break;
      }
      dir.resize(0);
      shift *= 1e3;
    }
    if (dir.size() == 0) dir = -grad;
    double slope = grad.dot(dir);
    if (!(slope < 0.0)) {
      dir = -grad;
      slope = -grad.squaredNorm();
    }
    if (-slope <= 1e-15 * std::abs(f0) || slope == 0.0) return false;

    std::vector<double> trial(phi_);
    double step = 1.0;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t i = 0; i < free_.size(); ++i) {
        trial[free_[i]] = phi_[free_[i]] + step * dir(static_cast<Eigen::Index>(i));
      }
      const double f1 = objective(s, trial);
      if (f1 <= f0 + 1e-4 * step * slope) {
        phi_.swap(trial);
        ++steps_;
        return true;
      }
      step *= 0.5;
    }
    return false;
  }

  const Graph& g_;
  NodeId a_;
  NodeId b_;
  double p_;
  std::vector<NodeId> free_;
  std::vector<Eigen::Index> index_;
  std::vector<double> phi_;
  std::size_t steps_ = 0;
};

// Decomposes the smoothed current |psi'(t)|/p, oriented from low to high
// potential, into a-b paths by repeated widest-path extraction in the
// resulting acyclic network. Path flows scaled by p become dual multipliers.
PathDual decompose_current(const Graph& g, NodeId a, NodeId b, const std::vector<double>& phi, const Smoothing& s) {
  PathDual dual(g.edge_count(), s.p);
  std::vector<double> residual(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double t = phi[g.edge(e).v] - phi[g.edge(e).u];
    residual[e] = t == 0.0 ? 0.0 : std::abs(s.slope(t)) / s.p;
  }
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId x, NodeId y) { return phi[x] < phi[y]; });

  double outflow = 0.0;
  for (const auto& inc : g.neighbors(a)) {
    if (phi[inc.neighbor] > phi[a]) outflow += residual[inc.edge];
  }

  constexpr auto none = std::numeric_limits<NodeId>::max();
  std::vector<double> width(g.node_count());
  std::vector<NodeId> pred(g.node_count());
  std::vector<EdgeId> via(g.node_count());
  for (std::size_t round = 0; round <= g.edge_count(); ++round) {
    std::fill(width.begin(), width.end(), 0.0);
    std::fill(pred.begin(), pred.end(), none);
    width[a] = std::numeric_limits<double>::infinity();
    for (NodeId v : order) {
      if (width[v] == 0.0) continue;
      for (const auto& inc : g.neighbors(v)) {
        const NodeId w = inc.neighbor;
        if (!(phi[w] > phi[v]) || residual[inc.edge] <= 0.0) continue;
        const double cand = std::min(width[v], residual[inc.edge]);
        if (cand > width[w]) {
          width[w] = cand;
          pred[w] = v;
          via[w] = inc.edge;
        }
      }
    }
    const double bottleneck = width[b];
    if (!(bottleneck > 1e-14 * outflow) || std::isinf(bottleneck)) break;
    std::vector<EdgeId> edges;
    for (NodeId x = b; x != a; x = pred[x]) edges.push_back(via[x]);
    std::reverse(edges.begin(), edges.end());
    for (EdgeId e : edges) residual[e] = std::max(residual[e] - bottleneck, 0.0);
    dual.add_path(edges, s.p * bottleneck);
  }
  return dual;
}

}  // namespace

double smoothed_dirichlet_energy(const Graph& g, std::span<const double> phi, double p, double eps,
                                 std::vector<double>* gradient) {
  if (phi.size() != g.node_count()) throw std::invalid_argument("potential size does not match the graph");
  if (!(p > 1.0) || !(eps > 0.0)) throw std::invalid_argument("smoothed energy needs p > 1 and eps > 0");
  const Smoothing s{p, eps};
  if (gradient != nullptr) gradient->assign(g.node_count(), 0.0);
  double total = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    const double t = phi[v] - phi[u];
    total += s.value(t);
    if (gradient != nullptr) {
      (*gradient)[v] += s.slope(t);
      (*gradient)[u] -= s.slope(t);
    }
  }
  return total;
}

ModulusResult modulus_potential(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg) {
  g.check_node(a);
  g.check_node(b);
  cfg.validate();
  if (a == b) throw std::invalid_argument("potential modulus needs distinct endpoints");
  if (!p.is_interior()) throw std::invalid_argument("potential modulus needs 1 < p < inf");
  const double exponent = p.value();

  PotentialProblem problem(g, a, b, exponent);
  problem.harmonic_start();

  ModulusResult result;
  result.p = p;
  result.route = Route::potential;
  result.converged = false;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::size_t certified_paths = 0;

  double eps = cfg.smoothing_epsilon_initial;
  for (;;) {
    Smoothing smooth{exponent, eps};
    problem.minimize(smooth, cfg.max_iterations);
    const auto& phi = problem.phi();

    std::vector<double> drops(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) drops[e] = std::abs(problem.drop(e, phi));
    Density rho(std::move(drops));
    const RhoPath shortest = rho_shortest_path(g, rho, a, b);
    if (shortest.length > 0.0) {
      const double candidate = p_energy(rho, p) / std::pow(shortest.length, exponent);
      if (candidate < upper) {
        upper = candidate;
        result.density = rho.scaled(1.0 / shortest.length);
        result.potential = phi;
      }
    }

    PathDual dual = decompose_current(g, a, b, phi, smooth);
    dual.rescale_optimally();
    dual.solve(0.1 * cfg.tolerance, 200, upper * (1.0 - 0.5 * cfg.tolerance));
    if (dual.dual_value() > lower) {
      lower = dual.dual_value();
      certified_paths = dual.size();
    }

    if (upper - lower <= cfg.tolerance * lower) {
      result.converged = true;
      break;
    }
    if (eps <= cfg.smoothing_epsilon_min) break;
    eps = std::max(eps * cfg.continuation_factor, cfg.smoothing_epsilon_min);
  }

  result.lower_bound = lower;
  result.upper_bound = upper;
  result.value = upper;
  result.iterations = problem.steps();
  result.active_paths = certified_paths;
  return result;
}

}  // namespace pmod
