#pragma once

#include <Eigen/Core>
#include <vector>

#include "lassopath/linalg.hpp"

namespace lassopath {

/// Absolute tolerance on the subgradient scale (entries of g live in [-1,1]).
inline constexpr double kKktTol = 1e-8;

/// Entries of a candidate vector with |b_j| <= kSupportTol count as zero when
/// certifying externally supplied vectors.
inline constexpr double kSupportTol = 1e-10;

/// A support together with the signs of the active coefficients. The pair is
/// constant along each path segment.
struct ActiveModel {
  std::vector<int> support;   // sorted, distinct, 0-based
  Eigen::VectorXd signs;      // entries in {-1, +1}, one per support index

  int size() const { return static_cast<int>(support.size()); }
};

enum class CertificateStatus {
  kValid,
  kValidAtBreakpoint,  // off-support bound holds with equality (margin ~ 0)
  kInvalid,
};

/// Subgradient certificate g = X^t(y - Xb) / lambda with feasibility margins.
///
/// Optimality of b requires g_j = sign(b_j) on the support and |g_j| < 1 off
/// it. active_equality_error is the worst on-support deviation;
/// inactive_margin is 1 minus the largest off-support |g_j| (1 when the
/// support covers every column).
struct KktCertificate {
  double lambda = 0.0;
  Eigen::VectorXd subgradient;
  double active_equality_error = 0.0;
  double inactive_margin = 1.0;

  CertificateStatus status(double tol = kKktTol) const {
    if (active_equality_error > tol || !(inactive_margin > -tol)) {
      return CertificateStatus::kInvalid;
    }
    if (inactive_margin <= tol) {
      return CertificateStatus::kValidAtBreakpoint;
    }
    return CertificateStatus::kValid;
  }

  bool is_valid(double tol = kKktTol) const {
    return status(tol) != CertificateStatus::kInvalid;
  }

  /// Worst constraint violation; <= 0 exactly when the certificate is valid
  /// at tolerance zero. Used as the iterative solver's stopping criterion.
  double violation() const {
    return std::max(active_equality_error, -inactive_margin);
  }
};

/// A certified point on the solution path.
struct LassoSolution {
  double lambda = 0.0;
  Eigen::VectorXd coefficients;  // length p, zero off the support
  ActiveModel model;
  Eigen::VectorXd residual;      // y - X b
  double objective = 0.0;        // 0.5 ||y - Xb||^2 + lambda ||b||_1
};

/// 0.5 ||y - Xb||_2^2 + lambda ||b||_1.
double lasso_objective(const DesignMatrix& design, const ResponseVector& response,
                       const Eigen::VectorXd& b, double lambda);

/// Assembles a LassoSolution from restricted coefficients on a model.
LassoSolution make_solution(const DesignMatrix& design,
                            const ResponseVector& response,
                            const ActiveModel& model,
                            const Eigen::VectorXd& restricted, double lambda);

/// Closed-form candidate on a fixed support:
///   b_T = (X_T^t X_T)^{-1} (X_T^t y - lambda * signs).
/// Sign consistency of the result is deliberately not checked here; that is
/// certify_optimality's job.
Eigen::VectorXd solve_on_support(const DesignMatrix& design,
                                 const ResponseVector& response,
                                 const ActiveModel& model, double lambda);

/// Builds the subgradient certificate for an arbitrary candidate vector.
/// Invalid certificates are returned, never thrown.
KktCertificate certify_optimality(const DesignMatrix& design,
                                  const ResponseVector& response,
                                  const Eigen::VectorXd& b, double lambda);

/// Benchmark estimator computed on a known (true) support: identical formula
/// to solve_on_support, returned as a full-length vector that is zero off the
/// support. lambda = 0 yields the restricted least-squares solution.
Eigen::VectorXd oracle_estimator(const DesignMatrix& design,
                                 const ResponseVector& response,
                                 const ActiveModel& true_model, double lambda);

}  // namespace lassopath
