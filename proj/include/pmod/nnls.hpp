#pragma once

#include <Eigen/Core>

namespace pmod {

struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;  // ||A x - y||_2
  int iterations = 0;
};

/// min ||A x - y||_2 subject to x >= 0 (Lawson-Hanson active set).
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, int max_iterations = 0);

}  // namespace pmod
