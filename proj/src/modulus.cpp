#include "pmod/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pmod/solvers.hpp"

namespace pmod {

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(continuation_factor > 0.0 && continuation_factor < 1.0)) {
    throw std::invalid_argument("continuation factor must lie in (0, 1)");
  }
  if (!(smoothing_epsilon_initial > 0.0) || !(smoothing_epsilon_min > 0.0)) {
    throw std::invalid_argument("smoothing radii must be positive");
  }
  if (!(greedy_eps_tol >= 0.0)) throw std::invalid_argument("greedy_eps_tol must be nonnegative");
  if (max_iterations == 0) throw std::invalid_argument("max_iterations must be positive");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::automatic: return "auto";
    case Method::potential: return "potential";
    case Method::greedy: return "greedy";
  }
  return "?";
}

std::string to_string(Route route) {
  switch (route) {
    case Route::coincident: return "coincident";
    case Route::hop_count: return "hop_count";
    case Route::min_cut: return "min_cut";
    case Route::laplacian: return "laplacian";
    case Route::potential: return "potential";
    case Route::greedy: return "greedy";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  if (text == "auto") return Method::automatic;
  if (text == "potential") return Method::potential;
  if (text == "greedy") return Method::greedy;
  throw std::invalid_argument("unknown method '" + text + "' (expected auto, potential or greedy)");
}

double ModulusResult::relative_gap() const {
  if (infinite) return 0.0;
  const double width = upper_bound - lower_bound;
  return width / std::max(lower_bound, std::numeric_limits<double>::min());
}

double p_energy(const Density& rho, Exponent p) {
  if (p.is_infinite()) return rho.max();
  const double exponent = p.value();
  if (exponent <= 16.0) {
    double total = 0.0;
    for (double x : rho.values()) {
      if (x > 0.0) total += std::pow(x, exponent);
    }
    return total;
  }
  // log-sum-exp of p * log(rho(e))
  double peak = -std::numeric_limits<double>::infinity();
  for (double x : rho.values()) {
    if (x > 0.0) peak = std::max(peak, exponent * std::log(x));
  }
  if (std::isinf(peak)) return 0.0;
  double sum = 0.0;
  for (double x : rho.values()) {
    if (x > 0.0) sum += std::exp(exponent * std::log(x) - peak);
  }
  return std::exp(peak + std::log(sum));
}

RhoPath rho_shortest_path(const Graph& g, const Density& rho, NodeId a, NodeId b) {
  g.check_node(a);
  g.check_node(b);
  if (rho.size() != g.edge_count()) throw std::invalid_argument("density length does not match edge count");
  if (a == b) return {Path{{a}, {}}, 0.0};

  constexpr auto none = std::numeric_limits<NodeId>::max();
  const std::size_t n = g.node_count();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> hops(n, 0);
  std::vector<NodeId> pred(n, none);
  std::vector<EdgeId> via(n, 0);
  std::vector<bool> settled(n, false);

  auto sequence = [&](NodeId v) {
    std::vector<NodeId> seq;
    for (NodeId x = v; x != none; x = pred[x]) seq.push_back(x);
    std::reverse(seq.begin(), seq.end());
    return seq;
  };
  // strict (dist, hops, vertex sequence) order between two tentative labels
  auto precedes = [&](double d1, std::size_t h1, NodeId end1, double d2, std::size_t h2, NodeId end2) {
    if (d1 != d2) return d1 < d2;
    if (h1 != h2) return h1 < h2;
    return sequence(end1) < sequence(end2);
  };

  dist[a] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    NodeId v = none;
    for (NodeId x = 0; x < n; ++x) {
      if (settled[x] || std::isinf(dist[x])) continue;
      if (v == none || precedes(dist[x], hops[x], x, dist[v], hops[v], v)) v = x;
    }
    if (v == none || v == b) break;
    settled[v] = true;
    for (const auto& inc : g.neighbors(v)) {
      NodeId w = inc.neighbor;
      if (settled[w]) continue;
      const double cand = dist[v] + rho[inc.edge];
      bool better = cand < dist[w] || (cand == dist[w] && hops[v] + 1 < hops[w]);
      if (!better && cand == dist[w] && hops[v] + 1 == hops[w]) better = sequence(v) < sequence(pred[w]);
      if (better) {
        dist[w] = cand;
        hops[w] = hops[v] + 1;
        pred[w] = v;
        via[w] = inc.edge;
      }
    }
  }

  RhoPath out;
  out.length = dist[b];
  for (NodeId x = b; x != a; x = pred[x]) {
    out.path.vertices.push_back(x);
    out.path.edges.push_back(via[x]);
  }
  out.path.vertices.push_back(a);
  std::reverse(out.path.vertices.begin(), out.path.vertices.end());
  std::reverse(out.path.edges.begin(), out.path.edges.end());
  return out;
}

namespace {

ModulusResult exact(Exponent p, Route route, double value, Density density) {
  ModulusResult r;
  r.p = p;
  r.route = route;
  r.value = r.lower_bound = r.upper_bound = value;
  r.density = std::move(density);
  return r;
}

}  // namespace

ModulusResult modulus(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg, Method method) {
  g.check_node(a);
  g.check_node(b);
  cfg.validate();
  if (a == b) {
    ModulusResult r;
    r.p = p;
    r.route = Route::coincident;
    r.infinite = true;
    r.value = r.lower_bound = r.upper_bound = std::numeric_limits<double>::infinity();
    return r;
  }
  if (p.is_infinite()) {
    const auto hops = static_cast<double>(shortest_path_hops(g, a, b));
    return exact(p, Route::hop_count, 1.0 / hops, Density::constant(g.edge_count(), 1.0 / hops));
  }
  if (p.is_one()) {
    CutResult cut = min_cut(g, a, b);
    std::vector<double> indicator(g.edge_count(), 0.0);
    for (EdgeId e : cut.boundary(g)) indicator[e] = 1.0;
    return exact(p, Route::min_cut, static_cast<double>(cut.value), Density(std::move(indicator)));
  }
  if (p.value() == 2.0 && method == Method::automatic) {
    ResistanceSolver solver(g);
    Eigen::VectorXd phi = solver.voltage(a, b);
    std::vector<double> drop(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      drop[e] = std::abs(phi(static_cast<Eigen::Index>(g.edge(e).v)) - phi(static_cast<Eigen::Index>(g.edge(e).u)));
    }
    ModulusResult r = exact(p, Route::laplacian, 1.0 / solver.resistance(a, b), Density(std::move(drop)));
    r.potential = std::vector<double>(phi.data(), phi.data() + phi.size());
    return r;
  }
  if (method == Method::greedy) return modulus_greedy(g, a, b, p, cfg);
  return modulus_potential(g, a, b, p, cfg);
}

}  // namespace pmod
