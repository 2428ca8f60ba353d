#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pmod/modulus.hpp"

namespace pmod::cli {

struct ValidationOptions {
  /// Families to run ("parallel", "cycle", "complete"); empty runs all.
  std::vector<std::string> only;
  /// Pass threshold on the relative error.
  double tol = 1e-5;
  Method method = Method::automatic;
  std::size_t jobs = 1;
};

struct ValidationCase {
  std::string family;
  std::string name;
  double p = 0.0;
  double expected = 0.0;
  double computed = 0.0;
  double rel_error = 0.0;
  bool pass = false;
  /// The threshold is tighter than the solver tolerance used, so a failure
  /// here is expected rather than a defect.
  bool below_floor = false;
};

/// Smallest solver tolerance validate will request.
inline constexpr double kSolverToleranceFloor = 1e-10;

/// Solver tolerance used for a pass threshold: max(tol / 10, floor).
double validation_solver_tolerance(double tol);

std::vector<std::string> validation_families();

/// Closed-form moduli of parallel paths, cycles and complete graphs against
/// the solver. Throws std::invalid_argument for an unknown family name.
std::vector<ValidationCase> run_validation(const ValidationOptions& options);

}  // namespace pmod::cli
