#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "pmod/modulus.hpp"
#include "pmod/path_dual.hpp"

namespace pmod {

ModulusResult modulus_greedy(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg) {
  g.check_node(a);
  g.check_node(b);
  cfg.validate();
  if (a == b) throw std::invalid_argument("greedy modulus needs distinct endpoints");
  if (!p.is_interior()) throw std::invalid_argument("greedy modulus needs 1 < p < inf");
  const double exponent = p.value();

  PathDual dual(g.edge_count(), exponent);
  std::set<std::vector<NodeId>> active;
  {
    RhoPath first = rho_shortest_path(g, Density::constant(g.edge_count(), 0.0), a, b);
    active.insert(first.path.vertices);
    dual.add_path(first.path.edges);
  }

  ModulusResult result;
  result.p = p;
  result.route = Route::greedy;
  result.converged = false;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  double inner_tol = 0.1 * cfg.tolerance;
  constexpr double inner_floor = 1e-14;
  int stalls = 0;

  std::size_t iter = 0;
  while (iter < cfg.max_iterations) {
    ++iter;
    dual.solve(inner_tol, cfg.max_inner_sweeps);
    Density rho(dual.density());
    RhoPath shortest = rho_shortest_path(g, rho, a, b);
    lower = std::max(lower, dual.dual_value());
    if (shortest.length > 0.0) {
      const double candidate = dual.energy() / std::pow(shortest.length, exponent);
      if (candidate < upper) {
        upper = candidate;
        result.density = rho.scaled(1.0 / shortest.length);
      }
    }
    if (upper - lower <= cfg.tolerance * lower && shortest.length >= 1.0 - cfg.greedy_eps_tol) {
      result.converged = true;
      break;
    }
    if (shortest.length < 1.0 && active.insert(shortest.path.vertices).second) {
      if (dual.size() >= cfg.max_active_paths) {
        throw std::runtime_error("greedy modulus: active path set exceeded cap of " +
                                 std::to_string(cfg.max_active_paths));
      }
      dual.add_path(shortest.path.edges);
      stalls = 0;
    } else if (inner_tol > inner_floor) {
      inner_tol = std::max(0.1 * inner_tol, inner_floor);
    } else if (++stalls > 3) {
      break;
    }
  }

  result.lower_bound = lower;
  result.upper_bound = upper;
  result.value = upper;
  result.iterations = iter;
  result.active_paths = dual.size();
  return result;
}

}  // namespace pmod
