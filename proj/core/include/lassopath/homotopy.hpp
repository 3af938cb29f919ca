#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "lassopath/kkt.hpp"
#include "lassopath/linalg.hpp"

namespace lassopath {

enum class SegmentEventType {
  kCoefficientZero,  // an active coefficient crossed zero and was dropped
  kActivation,       // an inactive correlation reached the penalty level
  kPathEnd,          // the configured lambda_min was reached
};

struct SegmentEvent {
  SegmentEventType type = SegmentEventType::kPathEnd;
  int index = -1;  // affected column (0-based), -1 for kPathEnd
};

/// One maximal interval (lambda_lo, lambda_hi] on which the support and sign
/// pattern are constant. The restricted solution is affine there:
///   b_T(lambda) = intercept - lambda * slope,
/// with intercept = (X_T^t X_T)^{-1} X_T^t y and slope = (X_T^t X_T)^{-1} rho.
struct PathSegment {
  double lambda_hi = 0.0;
  double lambda_lo = 0.0;
  ActiveModel model;
  Eigen::VectorXd intercept;
  Eigen::VectorXd slope;
  SegmentEvent event_at_lo;

  Eigen::VectorXd restricted_coefficients(double lambda) const {
    return intercept - lambda * slope;
  }
};

struct PathWarning {
  double lambda = 0.0;
  std::string message;
};

/// The full piecewise-affine solution path on [lambda_min, tau].
///
/// Segments are stored in decreasing lambda order and abut exactly; the first
/// segment's lambda_hi equals tau = ||X^t y||_inf, above which the solution
/// is identically zero. The path owns copies of the problem data so that
/// evaluation and diagnostics are self-contained.
class LassoPath {
 public:
  LassoPath(DesignMatrix design, ResponseVector response, double tau,
            double lambda_min, std::vector<PathSegment> segments,
            std::vector<PathWarning> warnings, int reactivations)
      : design_(std::move(design)),
        response_(std::move(response)),
        tau_(tau),
        lambda_min_(lambda_min),
        segments_(std::move(segments)),
        warnings_(std::move(warnings)),
        reactivations_(reactivations) {}

  double tau() const { return tau_; }
  double lambda_min() const { return lambda_min_; }
  const std::vector<PathSegment>& segments() const { return segments_; }
  const DesignMatrix& design() const { return design_; }
  const ResponseVector& response() const { return response_; }
  const std::vector<PathWarning>& warnings() const { return warnings_; }
  int reactivations() const { return reactivations_; }

  /// Segment covering lambda; at a shared breakpoint the higher segment wins
  /// (its model is the support of the solution exactly at the breakpoint).
  const PathSegment& segment_at(double lambda) const;

 private:
  DesignMatrix design_;
  ResponseVector response_;
  double tau_;
  double lambda_min_;
  std::vector<PathSegment> segments_;
  std::vector<PathWarning> warnings_;
  int reactivations_;
};

/// Smallest lambda at which the solution is identically zero:
/// tau = ||X^t y||_inf. Throws DegenerateProblem when X^t y = 0.
double compute_tau(const DesignMatrix& design, const ResponseVector& response);

/// Runs the active-set homotopy from tau down to lambda_min.
///
/// On each segment the inactive correlations c_j(lambda) = X_j^t(y - Xb) are
/// affine in lambda; the next breakpoint is the largest lambda below the
/// segment top at which either an active coefficient crosses zero (drop) or
/// an inactive |c_j| reaches lambda (activation, signed by the correlation).
/// Coinciding candidates within tie_tol = 1e-12 * tau are resolved by
/// processing the drop and logging a warning. A dropped variable may
/// re-activate later; such events are counted on the path.
LassoPath compute_path(const DesignMatrix& design,
                       const ResponseVector& response, double lambda_min);

/// Evaluates the path. Returns the zero solution for lambda >= tau and
/// throws OutOfRange below lambda_min (the bottom endpoint itself is valid).
LassoSolution evaluate(const LassoPath& path, double lambda);

/// JSON form: {tau, lambda_min, segments:[{lambda_hi, lambda_lo, support,
/// signs, intercept, slope, event}]} with 1-based support indices.
std::string path_json(const LassoPath& path);

/// Breakpoint table, one row per model change (starting at tau), with header
/// "k,lambda,event,support_size,l1_norm,residual_sq".
std::string breakpoint_csv(const LassoPath& path);

}  // namespace lassopath
