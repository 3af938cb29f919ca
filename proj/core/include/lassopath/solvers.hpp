#pragma once

#include <Eigen/Core>

#include "lassopath/kkt.hpp"
#include "lassopath/linalg.hpp"

namespace lassopath {

/// Proximal-gradient configuration. A nonpositive step requests the default
/// 1/L with L = sigma_max(X)^2, the Lipschitz constant of the quadratic
/// gradient. Stopping is on the KKT certificate violation, not on iterate
/// distance.
struct ProxConfig {
  double step = 0.0;
  int max_iter = 200000;
  double stop_kkt_tol = 1e-10;
  bool acceleration = true;
};

/// Thrown when the iterative solver hits max_iter; carries the best
/// certificate achieved.
class NotConverged : public Error {
 public:
  NotConverged(std::string message, KktCertificate best, int iterations)
      : Error(std::move(message)),
        best_certificate(std::move(best)),
        iterations(iterations) {}

  KktCertificate best_certificate;
  int iterations;
};

struct ProxResult {
  LassoSolution solution;
  KktCertificate certificate;
  int iterations = 0;
};

/// Iterates b <- soft_threshold(b - step * X^t(Xb - y), step * lambda) from
/// b = 0, with optional momentum (restarted when the objective increases),
/// until the KKT violation drops to stop_kkt_tol.
ProxResult proximal_solve(const DesignMatrix& design,
                          const ResponseVector& response, double lambda,
                          const ProxConfig& config = {});

struct CombinatorialResult {
  LassoSolution solution;
  KktCertificate certificate;
  bool multiple_optima = false;
  int validating_candidates = 0;
};

/// Hard cap on p for the exhaustive solver (candidate count is exponential).
inline constexpr int kCombinatorialCap = 12;

/// Brute-force oracle: enumerates every (support, sign) pair with |S| <= n
/// and X_S full rank, forms the closed-form candidate, keeps those whose
/// signs match and whose certificate validates, and returns the one with the
/// smallest objective (lexicographic support order breaks exact ties).
CombinatorialResult exact_combinatorial_solve(const DesignMatrix& design,
                                              const ResponseVector& response,
                                              double lambda);

}  // namespace lassopath
