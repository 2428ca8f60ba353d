#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmod/exponent.hpp"
#include "pmod/graph.hpp"

namespace pmod {

struct SolverConfig {
  /// Target relative width of the certified bracket.
  double tolerance = 1e-6;
  /// Greedy: outer iterations. Potential: Newton steps per smoothing stage.
  std::size_t max_iterations = 500;
  double smoothing_epsilon_initial = 1e-2;
  double continuation_factor = 0.1;
  double smoothing_epsilon_min = 1e-12;
  /// Greedy stops only once l_rho(Gamma) >= 1 - greedy_eps_tol.
  double greedy_eps_tol = 1e-6;
  std::size_t max_active_paths = 20000;
  std::size_t max_inner_sweeps = 100000;

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

enum class Method { automatic, potential, greedy };

/// How a result was obtained.
enum class Route { coincident, hop_count, min_cut, laplacian, potential, greedy };

std::string to_string(Method method);
std::string to_string(Route route);
Method parse_method(const std::string& text);

struct ModulusResult {
  Exponent p = 1.0;
  Route route = Route::coincident;
  /// +inf (with `infinite` set) for a = b.
  double value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool infinite = false;
  /// Admissible density achieving `upper_bound` (empty when infinite).
  Density density;
  /// Node potential with phi(a) = 0, phi(b) = 1 when a potential was computed.
  std::optional<std::vector<double>> potential;
  std::size_t iterations = 0;
  std::size_t active_paths = 0;
  bool converged = true;

  /// (upper - lower) / max(lower, tiny); 0 for exact routes.
  double relative_gap() const;
};

/// E_p(rho) = sum rho(e)^p, or max rho(e) for p = inf. Uses a log-sum-exp
/// accumulation for p > 16.
double p_energy(const Density& rho, Exponent p);

struct RhoPath {
  Path path;
  double length = 0.0;
};

/// Dijkstra with weights rho(e) >= 0. Ties are broken by hop count, then by
/// lexicographic vertex sequence, so the returned path is unique.
RhoPath rho_shortest_path(const Graph& g, const Density& rho, NodeId a, NodeId b);

/// Smoothed p-Dirichlet energy sum_e (t_e^2 + eps^2)^(p/2) - eps^p with
/// t_e = phi(v) - phi(u), the objective of the potential method. When
/// `gradient` is given it receives the derivative for every node.
double smoothed_dirichlet_energy(const Graph& g, std::span<const double> phi, double p, double eps,
                                 std::vector<double>* gradient = nullptr);

/// Vertex-potential formulation minimized by damped Newton on a smoothed
/// energy with continuation in the smoothing radius. Requires a != b, 1 < p < inf.
ModulusResult modulus_potential(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg = {});

/// Constraint generation over simple a-b paths: solve the restricted problem,
/// add the rho-shortest path while it is violated. Requires a != b, 1 < p < inf.
ModulusResult modulus_greedy(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg = {});

/// Mod_p(Gamma(a, b)) for any p in [1, inf]. a = b gives +inf; p = inf, 1 and
/// (with Method::automatic) 2 use hop count, min cut and effective resistance.
ModulusResult modulus(const Graph& g, NodeId a, NodeId b, Exponent p, const SolverConfig& cfg = {},
                      Method method = Method::automatic);

struct BeurlingCertificate {
  bool extremal = false;
  /// l_rho(Gamma(a, b)) >= 1 - tol over the whole connecting family.
  bool admissible = false;
  /// Every path of the subfamily has l_rho = 1 within tol.
  bool tight = false;
  /// rho^(p-1) lies in the cone spanned by the usage rows (within tol).
  bool in_cone = false;
  double min_length = 0.0;
  double max_length = 0.0;
  double cone_residual = 0.0;
  /// Nonnegative multipliers lambda with N^T lambda ~= rho^(p-1).
  std::vector<double> multipliers;
};

/// Sufficient check that `rho` is extremal for Mod_p(Gamma(a, b)), with
/// `family` the certifying subfamily (all paths must share endpoints).
/// Throws std::invalid_argument for an empty or inconsistent family.
BeurlingCertificate beurling_verify(const Graph& g, const std::vector<Path>& family, const Density& rho, Exponent p,
                                    double tol);

}  // namespace pmod
