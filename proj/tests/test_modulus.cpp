#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "direct_modulus.hpp"
#include "fixtures.hpp"
#include "pmod/generators.hpp"
#include "pmod/modulus.hpp"
#include "pmod/path_dual.hpp"
#include "pmod/random.hpp"
#include "pmod/solvers.hpp"

using namespace pmod;

namespace {

// Paths a -> b along both arcs of the cycle 0..n-1.
std::vector<Path> cycle_arcs(const Graph& g, NodeId a, NodeId b) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> forward;
  for (NodeId v = a;; v = (v + 1) % n) {
    forward.push_back(v);
    if (v == b) break;
  }
  std::vector<NodeId> backward;
  for (NodeId v = a;; v = (v + n - 1) % n) {
    backward.push_back(v);
    if (v == b) break;
  }
  return {path_from_vertices(g, forward), path_from_vertices(g, backward)};
}

// Density 1/len(arc) on each arc of the cycle.
Density cycle_density(const Graph& g, const std::vector<Path>& arcs) {
  std::vector<double> rho(g.edge_count(), 0.0);
  for (const Path& arc : arcs) {
    for (EdgeId e : arc.edges) rho[e] = 1.0 / static_cast<double>(arc.hops());
  }
  return Density(rho);
}

// Direct edge plus every two-hop path a - x - b.
std::vector<Path> complete_family(const Graph& g, NodeId a, NodeId b) {
  std::vector<Path> family{path_from_vertices(g, {a, b})};
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (x != a && x != b) family.push_back(path_from_vertices(g, {a, x, b}));
  }
  return family;
}

Density complete_density(const Graph& g, NodeId a, NodeId b) {
  std::vector<double> rho(g.edge_count(), 0.0);
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (x == a || x == b) continue;
    rho[*g.find_edge(a, x)] = 0.5;
    rho[*g.find_edge(x, b)] = 0.5;
  }
  rho[*g.find_edge(a, b)] = 1.0;
  return Density(rho);
}

void check_certificate(const Graph& g, NodeId a, NodeId b, const ModulusResult& r, const SolverConfig& cfg) {
  CHECK(r.lower_bound <= r.value * (1 + 1e-14));
  CHECK(r.value <= r.upper_bound * (1 + 1e-14));
  CHECK(r.relative_gap() <= cfg.tolerance);
  REQUIRE(r.density.size() == g.edge_count());
  const RhoPath shortest = rho_shortest_path(g, r.density, a, b);
  CHECK(shortest.length >= 1.0 - cfg.tolerance);
  CHECK(p_energy(r.density, r.p) == doctest::Approx(r.upper_bound).epsilon(1e-9));
  if (r.p.is_interior()) {
    for (double x : r.density.values()) CHECK(x <= 1.0 + cfg.tolerance);
  }
}

}  // namespace

TEST_SUITE("exponent and config") {
  TEST_CASE("exponent") {
    CHECK(Exponent::parse("inf").is_infinite());
    CHECK(Exponent::parse("2.5").value() == 2.5);
    CHECK(Exponent(1.0).is_one());
    CHECK(Exponent(1.5).is_interior());
    CHECK(Exponent(3.0).conjugate() == doctest::Approx(1.5));
    CHECK(Exponent::infinity().to_string() == "inf");
    CHECK_THROWS_AS(Exponent(0.5), std::invalid_argument);
    CHECK_THROWS_AS(Exponent(std::nan("")), std::invalid_argument);
    CHECK_THROWS(Exponent::parse("two"));
    CHECK(Exponent(2.0) < Exponent::infinity());
  }

  TEST_CASE("config validation") {
    SolverConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.continuation_factor = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    CHECK(parse_method("greedy") == Method::greedy);
    CHECK(parse_method("potential") == Method::potential);
    CHECK_THROWS(parse_method("simplex"));
  }
}

TEST_SUITE("energy and shortest paths") {
  TEST_CASE("p_energy") {
    CHECK(p_energy(Density::constant(5, 1.0), 2.0) == doctest::Approx(5.0));
    CHECK(p_energy(Density({0.5, 0.5}), 2.0) == doctest::Approx(0.5));
    CHECK(p_energy(Density({0.2, 0.9}), Exponent::infinity()) == doctest::Approx(0.9));
    CHECK(p_energy(Density({2.0, 2.0, 2.0}), 100.0) == doctest::Approx(3.0 * std::pow(2.0, 100.0)).epsilon(1e-12));
    CHECK(p_energy(Density({0.5, 0.25}), 40.0) == doctest::Approx(std::pow(0.5, 40.0) + std::pow(0.25, 40.0)).epsilon(1e-12));
    CHECK(p_energy(Density({0.0, 0.0}), 40.0) == 0.0);
  }

  TEST_CASE("rho_shortest_path") {
    const Graph p3 = fixtures::p3();
    const RhoPath r = rho_shortest_path(p3, Density::constant(2, 1.0), p3.node("a"), p3.node("b"));
    CHECK(r.length == 2.0);
    CHECK(r.path.vertices == std::vector<NodeId>{0, 1, 2});

    const Graph c4 = cycle_graph(4);
    const RhoPath arc = rho_shortest_path(c4, Density::constant(4, 0.5), 0, 2);
    CHECK(arc.length == doctest::Approx(1.0));
    // equal hop counts: lexicographically smaller vertex sequence wins
    CHECK(arc.path.vertices == std::vector<NodeId>{0, 1, 2});

    const RhoPath zero = rho_shortest_path(complete_graph(5), Density::constant(10, 0.0), 0, 4);
    CHECK(zero.length == 0.0);
    CHECK(zero.path.vertices == std::vector<NodeId>{0, 4});
  }
}

TEST_SUITE("solvers") {
  TEST_CASE("potential method examples") {
    const Graph p3 = fixtures::p3();
    const ModulusResult r = modulus_potential(p3, 0, 2, 2.0);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.density[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.density[1] == doctest::Approx(0.5).epsilon(1e-6));
    REQUIRE(r.potential);
    CHECK((*r.potential)[0] == doctest::Approx(0.0));
    CHECK((*r.potential)[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK((*r.potential)[2] == doctest::Approx(1.0));

    CHECK(modulus_potential(parallel_paths(3, 2), 0, 1, 3.0).value == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(modulus_potential(cycle_graph(5), 0, 1, 2.0).value == doctest::Approx(1.25).epsilon(1e-6));
    CHECK(modulus_potential(cycle_graph(4), 0, 2, 3.0).value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(modulus_potential(p3, 0, 0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(modulus_potential(p3, 0, 2, 1.0), std::invalid_argument);
  }

  TEST_CASE("greedy method examples") {
    const ModulusResult p3 = modulus_greedy(fixtures::p3(), 0, 2, 2.0);
    CHECK(p3.value == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(p3.active_paths == 1);
    CHECK(modulus_greedy(complete_graph(4), 0, 1, 2.0).value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(modulus_greedy(cycle_graph(6), 0, 1, 2.0).value == doctest::Approx(1.2).epsilon(1e-6));
    CHECK_THROWS_AS(modulus_greedy(fixtures::p3(), 0, 2, Exponent::infinity()), std::invalid_argument);
  }

  TEST_CASE("greedy active set cap") {
    SolverConfig cfg;
    cfg.max_active_paths = 2;
    CHECK_THROWS_AS(modulus_greedy(complete_graph(6), 0, 1, 2.0, cfg), std::runtime_error);
  }

  TEST_CASE("dispatch and special cases") {
    const Graph p3 = fixtures::p3();
    for (double p : {1.0, 1.5, 2.0}) {
      const ModulusResult same = modulus(p3, 1, 1, p);
      CHECK(same.infinite);
      CHECK(std::isinf(same.value));
      CHECK(same.route == Route::coincident);
    }
    const ModulusResult hops = modulus(p3, 0, 2, Exponent::infinity());
    CHECK(hops.value == 0.5);
    CHECK(hops.route == Route::hop_count);
    const ModulusResult cut = modulus(complete_graph(4), 0, 1, 1.0);
    CHECK(cut.value == 3.0);
    CHECK(cut.route == Route::min_cut);
    CHECK(cut.lower_bound == cut.upper_bound);
    const ModulusResult lap = modulus(cycle_graph(4), 0, 1, 2.0);
    CHECK(lap.value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(lap.route == Route::laplacian);
    CHECK(lap.relative_gap() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(modulus(cycle_graph(4), 0, 1, 2.0, {}, Method::greedy).route == Route::greedy);
    CHECK(modulus(cycle_graph(4), 0, 1, 2.5).route == Route::potential);
  }

  TEST_CASE("special-case densities are admissible with matching energy") {
    for (const Graph& g : fixtures::er_suite(5)) {
      for (Exponent p : {Exponent(1.0), Exponent(2.0), Exponent::infinity()}) {
        const ModulusResult r = modulus(g, 0, 7, p);
        const RhoPath shortest = rho_shortest_path(g, r.density, 0, 7);
        CHECK(shortest.length >= 1.0 - 1e-12);
        CHECK(p_energy(r.density, p) == doctest::Approx(r.value).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("certified brackets on random graphs") {
    const SolverConfig cfg;
    for (const Graph& g : fixtures::er_suite(6)) {
      for (double p : {1.1, 1.5, 2.5, 4.0}) {
        for (Method m : {Method::potential, Method::greedy}) {
          const ModulusResult r = modulus(g, 0, 5, p, cfg, m);
          CHECK(r.converged);
          check_certificate(g, 0, 5, r, cfg);
        }
      }
    }
  }

  TEST_CASE("greedy and potential agree with the full-enumeration oracle") {
    const SolverConfig cfg;
    for (const Graph& g : fixtures::er_suite(4)) {
      for (double p : {1.3, 3.0}) {
        const oracle::DirectModulus direct = oracle::direct_modulus(g, 2, 9, p);
        REQUIRE(direct.upper - direct.lower <= 1e-7 * direct.upper);
        const double greedy = modulus_greedy(g, 2, 9, p, cfg).value;
        const double potential = modulus_potential(g, 2, 9, p, cfg).value;
        CHECK(fixtures::rel_diff(greedy, direct.upper) <= 2 * cfg.tolerance);
        CHECK(fixtures::rel_diff(potential, direct.upper) <= 2 * cfg.tolerance);
        // solver upper bounds are energies of admissible densities
        CHECK(greedy >= direct.lower * (1 - 1e-12));
        CHECK(potential >= direct.lower * (1 - 1e-12));
      }
    }
  }

  TEST_CASE("potential method reaches the Laplacian value at p = 2") {
    for (const Graph& g : fixtures::er_suite(5)) {
      const double exact = 1.0 / effective_resistance(g, 1, 8);
      CHECK(modulus(g, 1, 8, 2.0, {}, Method::potential).value == doctest::Approx(exact).epsilon(1e-9));
    }
  }

  TEST_CASE("extreme exponents stay finite and ordered") {
    const Graph g = fixtures::er_suite(1).front();
    const std::size_t hops = shortest_path_hops(g, 0, 9);
    double previous = std::numeric_limits<double>::infinity();
    for (double p : {8.0, 16.0, 32.0}) {
      const ModulusResult r = modulus(g, 0, 9, p);
      REQUIRE(r.converged);
      const double root = std::pow(r.value, 1.0 / p);
      const double distance = std::abs(root - 1.0 / static_cast<double>(hops));
      CHECK(distance <= previous);
      previous = distance;
    }
    CHECK(previous < 0.05);
    const ModulusResult near_one = modulus(g, 0, 9, 1.02);
    CHECK(near_one.converged);
    CHECK(near_one.value <= static_cast<double>(min_cut(g, 0, 9).value) + 1e-9);
  }

  TEST_CASE("monotonicity in p") {
    const SolverConfig cfg;
    for (const Graph& g : fixtures::er_suite(3)) {
      const double edges = static_cast<double>(g.edge_count());
      double prev_value = modulus(g, 0, 4, 1.0).value;
      double prev_root = std::pow(prev_value / edges, 1.0);
      for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
        const double value = modulus(g, 0, 4, p, cfg).value;
        CHECK(value <= prev_value * (1 + cfg.tolerance));
        const double root = std::pow(value / edges, 1.0 / p);
        CHECK(prev_root <= root * (1 + cfg.tolerance));
        prev_value = value;
        prev_root = root;
      }
    }
  }
}

TEST_SUITE("smoothed objective") {
  TEST_CASE("gradient matches central differences") {
    const Graph g = fixtures::er_suite(1).front();
    SplitMix64 rng(11);
    for (double p : {1.5, 2.0, 2.5, 4.0}) {
      for (double eps : {1e-2, 1e-1}) {
        std::vector<double> phi(g.node_count());
        for (double& x : phi) x = rng.uniform();
        phi[0] = 0.0;
        phi[1] = 1.0;
        std::vector<double> grad;
        smoothed_dirichlet_energy(g, phi, p, eps, &grad);
        for (NodeId v = 0; v < g.node_count(); ++v) {
          const double h = 1e-6;
          std::vector<double> up(phi);
          std::vector<double> down(phi);
          up[v] += h;
          down[v] -= h;
          const double fd = (smoothed_dirichlet_energy(g, up, p, eps) - smoothed_dirichlet_energy(g, down, p, eps)) / (2 * h);
          CHECK(grad[v] == doctest::Approx(fd).epsilon(1e-5));
        }
      }
    }
  }

  TEST_CASE("smoothing approaches the true energy") {
    const Graph g = cycle_graph(5);
    const std::vector<double> phi{0.0, 0.3, 0.5, 0.9, 1.0};
    for (double p : {1.5, 3.0}) {
      double exact = 0.0;
      for (const Edge& e : g.edges()) exact += std::pow(std::abs(phi[e.v] - phi[e.u]), p);
      CHECK(smoothed_dirichlet_energy(g, phi, p, 1e-8) == doctest::Approx(exact).epsilon(1e-6));
    }
  }
}

TEST_SUITE("path dual") {
  TEST_CASE("single path") {
    // one path of 3 edges: Mod_p = 3^(1-p)
    PathDual dual(3, 2.0);
    const std::vector<EdgeId> edges{0, 1, 2};
    dual.add_path(edges);
    dual.solve(1e-12, 1000);
    CHECK(dual.dual_value() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(dual.path_length(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dual.restricted_upper_bound() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  TEST_CASE("dual values are lower bounds for any multipliers") {
    const Graph g = complete_graph(5);
    const double exact = 1.0 + 3.0 / std::pow(2.0, 1.5);
    for (double scale : {0.01, 0.3, 1.0, 4.0}) {
      PathDual dual(g.edge_count(), 2.5);
      for (const Path& path : complete_family(g, 0, 1)) dual.add_path(path.edges, scale);
      CHECK(dual.dual_value() <= exact + 1e-12);
      dual.rescale_optimally();
      CHECK(dual.dual_value() <= exact + 1e-12);
    }
    CHECK_THROWS(PathDual(3, 1.0));
    PathDual dual(2, 2.0);
    const std::vector<EdgeId> bad{5};
    CHECK_THROWS(dual.add_path(bad));
  }
}

TEST_SUITE("beurling") {
  TEST_CASE("cycle densities for both pair types") {
    for (std::size_t n : {4, 5, 7, 9}) {
      const Graph g = cycle_graph(n);
      for (NodeId b : {NodeId{1}, NodeId{2}}) {
        const std::vector<Path> arcs = cycle_arcs(g, 0, b);
        const Density rho = cycle_density(g, arcs);
        for (double p : {1.5, 2.0, 3.0}) {
          const BeurlingCertificate cert = beurling_verify(g, arcs, rho, p, 1e-9);
          CHECK(cert.extremal);
          CHECK(cert.admissible);
          CHECK(cert.tight);
          CHECK(cert.in_cone);
          REQUIRE(cert.multipliers.size() == 2);
          CHECK(cert.multipliers[0] >= 0.0);

          std::vector<double> bumped(rho.values().begin(), rho.values().end());
          bumped[arcs[1].edges.front()] += 0.2;
          CHECK_FALSE(beurling_verify(g, arcs, Density(bumped), p, 1e-9).extremal);
        }
      }
    }
  }

  TEST_CASE("complete graph density") {
    for (std::size_t n : {4, 6, 8}) {
      const Graph g = complete_graph(n);
      const std::vector<Path> family = complete_family(g, 0, 1);
      const Density rho = complete_density(g, 0, 1);
      for (double p : {1.5, 2.0, 3.0}) {
        CHECK(beurling_verify(g, family, rho, p, 1e-9).extremal);
        CHECK(p_energy(rho, p) == doctest::Approx(1.0 + 2.0 * (static_cast<double>(n) - 2.0) * std::pow(0.5, p)));
        std::vector<double> bumped(rho.values().begin(), rho.values().end());
        bumped[*g.find_edge(0, 2)] += 0.2;
        CHECK_FALSE(beurling_verify(g, family, Density(bumped), p, 1e-9).extremal);
      }
    }
  }

  TEST_CASE("solver densities pass with the same subfamilies") {
    const SolverConfig cfg;
    for (double p : {1.5, 2.5}) {
      const Graph c = cycle_graph(7);
      const ModulusResult rc = modulus(c, 0, 2, p, cfg, Method::greedy);
      CHECK(beurling_verify(c, cycle_arcs(c, 0, 2), rc.density, p, 1e-5).extremal);
      const Graph k = complete_graph(6);
      const ModulusResult rk = modulus(k, 0, 1, p, cfg, Method::potential);
      CHECK(beurling_verify(k, complete_family(k, 0, 1), rk.density, p, 1e-5).extremal);
    }
  }

  TEST_CASE("small cases") {
    const Graph p3 = fixtures::p3();
    const std::vector<Path> ac{path_from_vertices(p3, {0, 1})};
    CHECK(beurling_verify(p3, ac, Density({1.0, 0.0}), 2.0, 1e-9).extremal);

    // uniform 1/2 on C_4 between neighbors: the short arc has length 1/2
    const Graph c4 = cycle_graph(4);
    const BeurlingCertificate cert = beurling_verify(c4, cycle_arcs(c4, 0, 1), Density::constant(4, 0.5), 2.0, 1e-9);
    CHECK_FALSE(cert.extremal);
    CHECK_FALSE(cert.tight);
    CHECK(cert.min_length == doctest::Approx(0.5));

    CHECK_THROWS_AS(beurling_verify(p3, {}, Density({1.0, 0.0}), 2.0, 1e-9), std::invalid_argument);
    const std::vector<Path> mixed{path_from_vertices(p3, {0, 1}), path_from_vertices(p3, {0, 1, 2})};
    CHECK_THROWS_AS(beurling_verify(p3, mixed, Density({1.0, 0.0}), 2.0, 1e-9), std::invalid_argument);
  }
}
