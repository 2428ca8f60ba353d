#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pmod/modulus.hpp"
#include "pmod/nnls.hpp"

namespace pmod {

BeurlingCertificate beurling_verify(const Graph& g, const std::vector<Path>& family, const Density& rho, Exponent p,
                                    double tol) {
  if (family.empty()) throw std::invalid_argument("Beurling check needs a nonempty subfamily");
  if (!p.is_interior()) throw std::invalid_argument("Beurling check needs 1 < p < inf");
  if (rho.size() != g.edge_count()) throw std::invalid_argument("density length does not match edge count");
  const NodeId a = family.front().source();
  const NodeId b = family.front().target();
  for (const Path& path : family) {
    if (!is_valid_walk(g, path)) throw std::invalid_argument("subfamily contains an invalid walk");
    if (path.source() != a || path.target() != b) {
      throw std::invalid_argument("subfamily paths must share endpoints");
    }
  }

  BeurlingCertificate cert;
  cert.admissible = rho_shortest_path(g, rho, a, b).length >= 1.0 - tol;

  cert.min_length = family.front().length(rho);
  cert.max_length = cert.min_length;
  for (const Path& path : family) {
    const double len = path.length(rho);
    cert.min_length = std::min(cert.min_length, len);
    cert.max_length = std::max(cert.max_length, len);
  }
  cert.tight = std::abs(cert.min_length - 1.0) <= tol && std::abs(cert.max_length - 1.0) <= tol;

  // By Farkas' lemma the implication holds iff rho^(p-1) = N^T lambda, lambda >= 0.
  const auto m = static_cast<Eigen::Index>(g.edge_count());
  const auto k = static_cast<Eigen::Index>(family.size());
  Eigen::MatrixXd usage_t = Eigen::MatrixXd::Zero(m, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (EdgeId e : family[static_cast<std::size_t>(j)].edges) usage_t(static_cast<Eigen::Index>(e), j) += 1.0;
  }
  Eigen::VectorXd target(m);
  for (Eigen::Index e = 0; e < m; ++e) {
    const double x = rho[static_cast<EdgeId>(e)];
    target(e) = x > 0.0 ? std::pow(x, p.value() - 1.0) : 0.0;
  }
  NnlsResult fit = nnls(usage_t, target);
  cert.cone_residual = fit.residual;
  cert.in_cone = fit.residual <= tol * std::max(1.0, target.norm());
  cert.multipliers.assign(fit.x.data(), fit.x.data() + fit.x.size());

  cert.extremal = cert.admissible && cert.tight && cert.in_cone;
  return cert;
}

}  // namespace pmod
