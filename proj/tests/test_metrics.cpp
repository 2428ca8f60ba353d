#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fixtures.hpp"
#include "pmod/generators.hpp"
#include "pmod/metrics.hpp"
#include "pmod/solvers.hpp"

using namespace pmod;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

bool is_metric(const DistanceMatrix& m) {
  for (NodeId i = 0; i < m.size(); ++i) {
    if (m(i, i) != 0.0) return false;
    for (NodeId j = 0; j < m.size(); ++j) {
      if (m(i, j) != m(j, i)) return false;
      if (i != j && !(m(i, j) > 0.0)) return false;
    }
  }
  return triangle_audit(m, 1.0).holds();
}

}  // namespace

TEST_SUITE("distances") {
  TEST_CASE("dp_distance examples") {
    const Graph p3 = fixtures::p3();
    CHECK(dp_distance(p3, p3.node("a"), p3.node("b"), 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    const Graph c4 = cycle_graph(4);
    CHECK(dp_distance(c4, 0, 2, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dp_distance(c4, 0, 1, 2.0) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK(dp_distance(complete_graph(4), 0, 1, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(dp_distance(c4, 3, 3, 2.5) == 0.0);
    CHECK(dp_distance(c4, 0, 2, Exponent::infinity()) == 2.0);
    // P_3 closed form 2^(1 - 1/p) through the potential solver
    for (double p : {1.5, 3.0, 6.0}) {
      CHECK(dp_distance(p3, 0, 2, p) == doctest::Approx(std::pow(2.0, 1.0 - 1.0 / p)).epsilon(1e-6));
    }
  }

  TEST_CASE("distance matrix examples") {
    const DistanceMatrix hops = distance_matrix(fixtures::p3(), Exponent::infinity());
    CHECK(hops.labels == std::vector<std::string>{"a", "c", "b"});
    CHECK(hops(0, 1) == 1.0);
    CHECK(hops(0, 2) == 2.0);
    CHECK(hops(1, 2) == 1.0);
    CHECK(hops.uncertainty == 0.0);

    const DistanceMatrix c4 = distance_matrix(cycle_graph(4), 2.0);
    for (NodeId i = 0; i < 4; ++i) {
      for (NodeId j = 0; j < 4; ++j) {
        const double expected = i == j ? 0.0 : ((i + j) % 2 == 0 ? 1.0 : std::sqrt(3.0) / 2.0);
        CHECK(c4(i, j) == doctest::Approx(expected).epsilon(1e-12));
      }
    }

    for (double p : {1.0, 2.0, 3.0}) {
      const DistanceMatrix k = distance_matrix(complete_graph(6), p);
      for (NodeId i = 0; i < 6; ++i) {
        for (NodeId j = i + 1; j < 6; ++j) CHECK(k(i, j) == doctest::Approx(k(0, 1)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("parallel workers give identical matrices") {
    const Graph g = fixtures::er_suite(1).front();
    const DistanceMatrix one = distance_matrix(g, 2.5, {}, Method::automatic, 1);
    const DistanceMatrix three = distance_matrix(g, 2.5, {}, Method::automatic, 3);
    CHECK(one.values == three.values);
    CHECK(one.uncertainty > 0.0);
  }

  TEST_CASE("powered matrices") {
    const DistanceMatrix m = distance_matrix(fixtures::p3(), 2.0);
    const DistanceMatrix sq = m.powered(2.0);
    CHECK(sq.t == 2.0);
    CHECK(sq(0, 2) == doctest::Approx(2.0));
  }
}

TEST_SUITE("audits") {
  TEST_CASE("triangle audit on P_3") {
    const DistanceMatrix m = distance_matrix(fixtures::p3(), 2.0);
    const TriangleReport flat = triangle_audit(m, 2.0);
    CHECK(flat.holds());
    REQUIRE(flat.flat.size() == 1);
    CHECK(flat.flat[0].a == 0);
    CHECK(flat.flat[0].b == 2);
    CHECK(flat.flat[0].c == 1);
    CHECK(flat.examined == 3);

    const TriangleReport broken = triangle_audit(m, 2.1);
    REQUIRE(broken.violations.size() == 1);
    CHECK(broken.violations[0].lhs == doctest::Approx(std::pow(2.0, 1.05)));
    CHECK(broken.violations[0].rhs == doctest::Approx(2.0));
  }

  TEST_CASE("d_1 is an ultrametric") {
    for (const Graph& g : fixtures::er_suite(10)) {
      const DistanceMatrix m = distance_matrix(g, 1.0);
      CHECK(ultrametric_audit(m).empty());
      CHECK(triangle_audit(m, 10.0).holds());
    }
    // a path is not ultrametric at p = 2
    CHECK_FALSE(ultrametric_audit(distance_matrix(fixtures::p3(), 2.0)).empty());
  }

  TEST_CASE("metric axioms and snowflaking") {
    for (const Graph& g : fixtures::er_suite(5)) {
      for (Exponent p : {Exponent(1.2), Exponent(2.0), Exponent(5.0), Exponent::infinity()}) {
        const DistanceMatrix m = distance_matrix(g, p);
        REQUIRE(is_metric(m));
        for (double eps : {0.3, 0.7}) CHECK(triangle_audit(m.powered(eps), 1.0).holds());
      }
    }
  }

  TEST_CASE("d_2 is the root of effective resistance") {
    for (std::uint64_t seed : {3, 4, 5}) {
      const Graph g = erdos_renyi_connected(12, 5.0, seed);
      const DistanceMatrix m = distance_matrix(g, 2.0, {}, Method::potential);
      for (NodeId i = 0; i < g.node_count(); ++i) {
        for (NodeId j = i + 1; j < g.node_count(); ++j) {
          CHECK(m(i, j) == doctest::Approx(std::sqrt(effective_resistance(g, i, j))).epsilon(1e-6));
        }
      }
    }
  }

  TEST_CASE("limits in p") {
    for (const Graph& g : fixtures::er_suite(3)) {
      for (NodeId b : {NodeId{3}, NodeId{9}}) {
        const double hops = static_cast<double>(shortest_path_hops(g, 0, b));
        double gap = kInf;
        for (double p : {4.0, 8.0, 16.0, 32.0}) {
          const double next = std::abs(dp_distance(g, 0, b, p) - hops);
          CHECK(next <= gap + 1e-9);
          gap = next;
        }
        // at p = 1.05 the root alone moves MC^(-1/p) about 8% off 1/MC, so
        // compare the modulus there and the distance closer to 1
        const double cut = static_cast<double>(min_cut(g, 0, b).value);
        CHECK(std::abs(modulus(g, 0, b, 1.05).value - cut) <= 0.1 * cut);
        CHECK(dp_distance(g, 0, b, 1.05) <= std::pow(cut, -1.0 / 1.05) * 1.1);
        CHECK(std::abs(dp_distance(g, 0, b, 1.01) - 1.0 / cut) <= 0.1 / cut);
      }
    }
  }
}

TEST_SUITE("antisnowflaking") {
  TEST_CASE("flat exponent examples") {
    CHECK(flat_exponent(std::sqrt(2.0), 1.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(flat_exponent(2.0, 1.0, 1.0).value == 1.0);
    CHECK(std::isinf(flat_exponent(1.0, 1.0, 1.0).value));
    CHECK(flat_exponent(1.0, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0).value ==
          doctest::Approx(4.818841679306416).epsilon(1e-11));
    // argument order does not matter: the largest side is the long one
    CHECK(flat_exponent(1.0, std::sqrt(2.0), 1.0).value == doctest::Approx(2.0).epsilon(1e-11));
    const FlatExponent broken = flat_exponent(3.0, 1.0, 1.0);
    CHECK(broken.violates_triangle);
    CHECK(broken.value < 1.0);
    CHECK_THROWS_AS(flat_exponent(0.0, 1.0, 1.0), std::invalid_argument);
  }

  TEST_CASE("ASFE of small graphs") {
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
      CHECK(asfe_graph(distance_matrix(fixtures::p3(), p)) == doctest::Approx(p / (p - 1.0)).epsilon(1e-8));
      CHECK(std::isinf(asfe_graph(distance_matrix(complete_graph(5), p))));
    }
    CHECK(asfe_graph(distance_matrix(cycle_graph(4), 2.0)) == doctest::Approx(4.818841679306416).epsilon(1e-9));
    CHECK(std::isinf(asfe_graph(distance_matrix(fixtures::er_suite(1).front(), 1.0))));
  }

  TEST_CASE("experiment is deterministic and respects the bound") {
    const std::vector<double> grid{1.5, 2.0, 3.0};
    const AsfeEstimate first = er_experiment(2, 10, 6.0, grid, 17);
    const AsfeEstimate again = er_experiment(2, 10, 6.0, grid, 17);
    CHECK(first.t_of_p == again.t_of_p);
    CHECK(first.graph_seeds == again.graph_seeds);
    CHECK(first.argmin_graph_seed == again.argmin_graph_seed);
    const AsfeEstimate other = er_experiment(2, 10, 6.0, grid, 18);
    CHECK(other.graph_seeds != first.graph_seeds);
    REQUIRE(first.detail.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      CHECK(first.q_of_p[k] == doctest::Approx(grid[k] / (grid[k] - 1.0)));
      CHECK(first.t_of_p[k] >= first.q_of_p[k] - 1e-6);
      CHECK(first.detail[k].size() == 2);
    }
    CHECK(first.min_margin() >= -1e-6);
  }

  TEST_CASE("three-node experiment") {
    const AsfeEstimate tiny = er_experiment(4, 3, 1.5, {2.0}, 5);
    CHECK(tiny.t_of_p[0] >= 2.0 - 1e-6);
  }
}

TEST_CASE("flat exponent terminates for nearly isosceles triangles") {
  // two sides just under the long one: t is about ln 2 / 1e-7
  const FlatExponent far = flat_exponent(1.0, 1.0 - 1e-7, 1.0 - 1e-7);
  CHECK(far.value == doctest::Approx(std::log(2.0) / -std::log1p(-1e-7)).epsilon(1e-9));
}
