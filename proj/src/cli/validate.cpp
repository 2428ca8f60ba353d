#include "pmod/cli/validate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <fmt/format.h>

#include "pmod/generators.hpp"
#include "pmod/parallel.hpp"

namespace pmod::cli {

namespace {

struct Spec {
  std::string family;
  std::string name;
  std::function<Graph()> graph;
  NodeId a;
  NodeId b;
  double p;
  double expected;
};

std::vector<Spec> build_specs() {
  std::vector<Spec> specs;
  for (auto [k, l] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 2}, {4, 4}}) {
    for (double p : {1.5, 2.0, 3.0}) {
      specs.push_back({"parallel", fmt::format("k={} l={}", k, l), [k, l] { return parallel_paths(k, l); }, 0, 1, p,
                       static_cast<double>(k) / std::pow(static_cast<double>(l), p - 1.0)});
    }
  }
  for (std::size_t n : {4, 6, 9}) {
    const double nn = static_cast<double>(n);
    for (double p : {1.5, 2.0, 4.0}) {
      specs.push_back({"cycle", fmt::format("N={} adjacent", n), [n] { return cycle_graph(n); }, 0, 1, p,
                       1.0 + std::pow(nn - 1.0, 1.0 - p)});
      specs.push_back({"cycle", fmt::format("N={} distance-2", n), [n] { return cycle_graph(n); }, 0, 2, p,
                       std::pow(2.0, 1.0 - p) + std::pow(nn - 2.0, 1.0 - p)});
    }
  }
  for (std::size_t n : {4, 6, 10}) {
    for (double p : {2.0, 3.0}) {
      specs.push_back({"complete", fmt::format("N={}", n), [n] { return complete_graph(n); }, 0, 1, p,
                       1.0 + (static_cast<double>(n) - 2.0) / std::pow(2.0, p - 1.0)});
    }
  }
  return specs;
}

}  // namespace

double validation_solver_tolerance(double tol) { return std::max(tol / 10.0, kSolverToleranceFloor); }

std::vector<std::string> validation_families() { return {"parallel", "cycle", "complete"}; }

std::vector<ValidationCase> run_validation(const ValidationOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("validation tolerance must be positive");
  const std::vector<std::string> known = validation_families();
  for (const std::string& family : options.only) {
    if (std::find(known.begin(), known.end(), family) == known.end()) {
      throw std::invalid_argument("unknown validation family '" + family + "'");
    }
  }

  std::vector<Spec> specs = build_specs();
  if (!options.only.empty()) {
    std::erase_if(specs, [&](const Spec& s) {
      return std::find(options.only.begin(), options.only.end(), s.family) == options.only.end();
    });
  }

  SolverConfig cfg;
  cfg.tolerance = validation_solver_tolerance(options.tol);
  std::vector<ValidationCase> cases(specs.size());
  parallel_for(specs.size(), options.jobs, [&](std::size_t i) {
    const Spec& spec = specs[i];
    const ModulusResult r = modulus(spec.graph(), spec.a, spec.b, Exponent(spec.p), cfg, options.method);
    ValidationCase& c = cases[i];
    c.family = spec.family;
    c.name = spec.name;
    c.p = spec.p;
    c.expected = spec.expected;
    c.computed = r.value;
    c.rel_error = std::abs(r.value - spec.expected) / spec.expected;
    c.pass = c.rel_error <= options.tol;
    c.below_floor = options.tol < cfg.tolerance;
  });
  return cases;
}

}  // namespace pmod::cli
