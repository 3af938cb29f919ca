#pragma once

#include <map>
#include <string>
#include <vector>

#include "lassopath/homotopy.hpp"

namespace lassopath {

/// Relative tolerance for the monotonicity audits.
inline constexpr double kAuditTol = 1e-9;

/// Lambda grid description: log-spaced over [lambda_min, tau], explicit
/// values, or the midpoints of the path's segments.
struct GridSpec {
  enum class Kind { kLog, kExplicit, kMidpoints };

  Kind kind = Kind::kLog;
  int count = 50;
  std::vector<double> values;

  static GridSpec log(int count) { return {Kind::kLog, count, {}}; }
  static GridSpec explicit_values(std::vector<double> values) {
    return {Kind::kExplicit, 0, std::move(values)};
  }
  static GridSpec midpoints() { return {Kind::kMidpoints, 0, {}}; }

  /// "log:50", "explicit:v1,v2,...", "midpoints".
  std::string to_string() const;
  static GridSpec parse(const std::string& text);
};

/// Point sample of the path analytics:
///   gamma = lambda * l1 / ||residual||^2   (fidelity vs. penalty ratio)
///   theta = optimal objective value, phi = lambda * l1.
/// gamma is +infinity when the residual vanishes (numerically: below 1e-300).
struct DiagnosticsRow {
  double lambda = 0.0;
  double l1_norm = 0.0;
  double residual_sq = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  int support_size = 0;
};

/// Materializes the grid (ascending) and throws OutOfRange when an explicit
/// grid leaves [lambda_min, tau].
std::vector<double> materialize_grid(const LassoPath& path,
                                     const GridSpec& grid);

std::vector<DiagnosticsRow> sample_curve(const LassoPath& path,
                                         const GridSpec& grid);

DiagnosticsRow diagnostics_row(const LassoPath& path, double lambda);

struct ThetaDerivativeCheck {
  double analytic = 0.0;  // ||b(lambda)||_1
  double numeric = 0.0;   // (theta(lambda+h) - theta(lambda-h)) / (2h)
  double rel_err = 0.0;
};

/// Central-difference check of theta'(lambda) = l1 norm. The window
/// [lambda-h, lambda+h] must stay inside one segment; otherwise
/// SpansBreakpoint is thrown. theta is an exact quadratic per segment, so the
/// central difference carries no truncation error.
ThetaDerivativeCheck theta_derivative_check(const LassoPath& path,
                                            double lambda, double h);

struct ResidualIdentityCheck {
  double lhs = 0.0;  // ||y - X b||^2
  double rhs = 0.0;  // lambda^2 rho^t (X_T^t X_T)^{-1} rho + ||(I - P_T) y||^2
  double gap = 0.0;
};

/// Orthogonal split of the residual on the active segment. When |T| = n the
/// complement term vanishes and the identity reduces to
/// ||y - Xb||^2 = lambda^2 rho^t (X_T^t X_T)^{-1} rho.
ResidualIdentityCheck residual_identity_check(const LassoPath& path,
                                              double lambda);

struct GammaProbe {
  bool applicable = true;
  std::string reason;
  std::vector<std::pair<double, double>> rows;  // (lambda, gamma)
};

/// Tabulates gamma at lambda_min * 2^k for k = 0..max_doublings (capped below
/// tau). Reported as not applicable when X lacks full row rank, since the
/// divergence of gamma at 0 needs the residual to vanish.
GammaProbe gamma_small_lambda_probe(const LassoPath& path,
                                    int max_doublings = 10);

enum class ClaimVerdict { kPass, kFail };

struct ClaimResult {
  ClaimVerdict verdict = ClaimVerdict::kPass;
  double worst_violation = 0.0;  // signed, relative to the local magnitude
  double at_lambda = 0.0;
};

struct MonotonicityAudit {
  std::map<std::string, ClaimResult> claims;
  GridSpec grid;
  double audit_tol = kAuditTol;

  bool all_pass() const;
};

/// Audits GAMMA_DECREASING, RESIDUAL_INCREASING, L1_NONINCREASING,
/// THETA_CONCAVE and THETA_NONDECREASING over the sampled grid, with
/// violations measured relative to the local magnitude of the quantity.
MonotonicityAudit run_audit(const LassoPath& path, const GridSpec& grid);

/// Header "lambda,l1_norm,residual_sq,gamma,theta,phi,support_size", rows by
/// increasing lambda, 17 significant digits.
std::string curve_csv(const std::vector<DiagnosticsRow>& rows);

/// {claims:{name:{verdict, worst_violation, at_lambda}}, grid_spec, tolerances}.
std::string audit_json(const MonotonicityAudit& audit);

}  // namespace lassopath
