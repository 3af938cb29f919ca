#include "lassopath/diagnostics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lassopath/io.hpp"

namespace lassopath {

namespace {

constexpr double kResidualFloor = 1e-300;

double relative_scale(double a, double b) {
  return std::max({std::abs(a), std::abs(b), kResidualFloor});
}

// Tracks the signed worst violation across consecutive comparisons.
struct ClaimAccumulator {
  double worst = 0.0;
  double at_lambda = 0.0;
  bool any = false;

  void update(double violation, double lambda) {
    if (!any || violation > worst) {
      worst = violation;
      at_lambda = lambda;
      any = true;
    }
  }

  ClaimResult finish(double tol) const {
    ClaimResult result;
    result.worst_violation = any ? worst : 0.0;
    result.at_lambda = at_lambda;
    result.verdict =
        result.worst_violation <= tol ? ClaimVerdict::kPass : ClaimVerdict::kFail;
    return result;
  }
};

}  // namespace

std::string GridSpec::to_string() const {
  switch (kind) {
    case Kind::kLog:
      return "log:" + std::to_string(count);
    case Kind::kMidpoints:
      return "midpoints";
    case Kind::kExplicit: {
      std::ostringstream out;
      out << "explicit:";
      for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out << ',';
        out << format_double(values[i]);
      }
      return out.str();
    }
  }
  return "log:50";
}

GridSpec GridSpec::parse(const std::string& text) {
  if (text == "midpoints") {
    return midpoints();
  }
  if (text.rfind("log:", 0) == 0) {
    const int count = std::stoi(text.substr(4));
    if (count < 1) throw Error("grid count must be positive");
    return log(count);
  }
  if (text.rfind("explicit:", 0) == 0) {
    std::vector<double> values;
    std::istringstream in(text.substr(9));
    std::string cell;
    while (std::getline(in, cell, ',')) {
      values.push_back(std::stod(cell));
    }
    if (values.empty()) throw Error("explicit grid needs at least one value");
    return explicit_values(std::move(values));
  }
  throw Error("unrecognized grid spec: " + text);
}

std::vector<double> materialize_grid(const LassoPath& path,
                                     const GridSpec& grid) {
  const double lo = path.lambda_min();
  const double hi = path.tau();
  std::vector<double> lambdas;
  switch (grid.kind) {
    case GridSpec::Kind::kLog: {
      const int count = std::max(grid.count, 1);
      if (count == 1) {
        lambdas.push_back(hi);
        break;
      }
      const double log_lo = std::log(lo);
      const double log_hi = std::log(hi);
      for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        lambdas.push_back(std::exp(log_lo + t * (log_hi - log_lo)));
      }
      lambdas.front() = lo;
      lambdas.back() = hi;
      break;
    }
    case GridSpec::Kind::kMidpoints: {
      for (const PathSegment& segment : path.segments()) {
        lambdas.push_back(0.5 * (segment.lambda_lo + segment.lambda_hi));
      }
      std::sort(lambdas.begin(), lambdas.end());
      break;
    }
    case GridSpec::Kind::kExplicit: {
      lambdas = grid.values;
      std::sort(lambdas.begin(), lambdas.end());
      for (double lambda : lambdas) {
        if (lambda < lo * (1.0 - 1e-12) || lambda > hi * (1.0 + 1e-12)) {
          throw OutOfRange("grid value " + std::to_string(lambda) +
                           " outside [lambda_min, tau]");
        }
      }
      break;
    }
  }
  return lambdas;
}

DiagnosticsRow diagnostics_row(const LassoPath& path, double lambda) {
  const LassoSolution solution = evaluate(path, lambda);
  DiagnosticsRow row;
  row.lambda = lambda;
  row.l1_norm = solution.coefficients.lpNorm<1>();
  row.residual_sq = solution.residual.squaredNorm();
  row.phi = lambda * row.l1_norm;
  row.theta = 0.5 * row.residual_sq + row.phi;
  if (row.residual_sq < kResidualFloor) {
    row.gamma = row.l1_norm == 0.0
                    ? 0.0
                    : std::numeric_limits<double>::infinity();
  } else {
    row.gamma = row.phi / row.residual_sq;
  }
  row.support_size = solution.model.size();
  return row;
}

std::vector<DiagnosticsRow> sample_curve(const LassoPath& path,
                                         const GridSpec& grid) {
  std::vector<DiagnosticsRow> rows;
  for (double lambda : materialize_grid(path, grid)) {
    rows.push_back(diagnostics_row(path, lambda));
  }
  return rows;
}

ThetaDerivativeCheck theta_derivative_check(const LassoPath& path,
                                            double lambda, double h) {
  if (!(h > 0)) {
    throw Error("step h must be positive");
  }
  if (lambda - h > path.tau()) {
    // Entire window past tau: theta is constant there.
    return {0.0, 0.0, 0.0};
  }
  const PathSegment& segment = path.segment_at(lambda);
  const double lo = std::max(segment.lambda_lo, path.lambda_min());
  if (lambda - h < lo || lambda + h > segment.lambda_hi) {
    throw SpansBreakpoint("window [" + std::to_string(lambda - h) + ", " +
                          std::to_string(lambda + h) +
                          "] crosses a breakpoint");
  }

  ThetaDerivativeCheck check;
  check.analytic = evaluate(path, lambda).coefficients.lpNorm<1>();
  const double theta_hi = diagnostics_row(path, lambda + h).theta;
  const double theta_lo = diagnostics_row(path, lambda - h).theta;
  check.numeric = (theta_hi - theta_lo) / (2.0 * h);
  check.rel_err = std::abs(check.numeric - check.analytic) /
                  relative_scale(check.analytic, check.numeric);
  return check;
}

ResidualIdentityCheck residual_identity_check(const LassoPath& path,
                                              double lambda) {
  if (lambda >= path.tau()) {
    throw EmptySupport("solution is zero at lambda >= tau");
  }
  const PathSegment& segment = path.segment_at(lambda);
  const LassoSolution solution = evaluate(path, lambda);

  const Eigen::MatrixXd sub = path.design().submatrix(segment.model.support);
  const Eigen::VectorXd complement =
      path.response().values() - sub * segment.intercept;
  const double quad = segment.model.signs.dot(segment.slope);

  ResidualIdentityCheck check;
  check.lhs = solution.residual.squaredNorm();
  check.rhs = lambda * lambda * quad + complement.squaredNorm();
  check.gap = check.lhs - check.rhs;
  return check;
}

GammaProbe gamma_small_lambda_probe(const LassoPath& path, int max_doublings) {
  GammaProbe probe;
  const Eigen::MatrixXd& X = path.design().matrix();
  if (X.cols() < X.rows()) {
    probe.applicable = false;
    probe.reason = "p < n: the design cannot have full row rank";
    return probe;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kRankTol * sv(0)) {
    probe.applicable = false;
    probe.reason = "design lacks full row rank; the residual does not vanish "
                   "as lambda decreases";
    return probe;
  }
  for (int k = 0; k <= max_doublings; ++k) {
    const double lambda = path.lambda_min() * std::pow(2.0, k);
    if (lambda >= path.tau()) break;
    probe.rows.emplace_back(lambda, diagnostics_row(path, lambda).gamma);
  }
  return probe;
}

bool MonotonicityAudit::all_pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const auto& entry) {
    return entry.second.verdict == ClaimVerdict::kPass;
  });
}

MonotonicityAudit run_audit(const LassoPath& path, const GridSpec& grid) {
  const std::vector<DiagnosticsRow> rows = sample_curve(path, grid);

  ClaimAccumulator gamma_decreasing;
  ClaimAccumulator residual_increasing;
  ClaimAccumulator l1_nonincreasing;
  ClaimAccumulator theta_nondecreasing;
  ClaimAccumulator theta_concave;

  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    const DiagnosticsRow& a = rows[i];
    const DiagnosticsRow& b = rows[i + 1];
    gamma_decreasing.update((b.gamma - a.gamma) / relative_scale(a.gamma, b.gamma),
                            b.lambda);
    residual_increasing.update(
        (a.residual_sq - b.residual_sq) / relative_scale(a.residual_sq, b.residual_sq),
        b.lambda);
    l1_nonincreasing.update(
        (b.l1_norm - a.l1_norm) / relative_scale(a.l1_norm, b.l1_norm), b.lambda);
    theta_nondecreasing.update(
        (a.theta - b.theta) / relative_scale(a.theta, b.theta), b.lambda);
  }
  for (size_t i = 0; i + 2 < rows.size(); ++i) {
    const double slope_left =
        (rows[i + 1].theta - rows[i].theta) / (rows[i + 1].lambda - rows[i].lambda);
    const double slope_right = (rows[i + 2].theta - rows[i + 1].theta) /
                               (rows[i + 2].lambda - rows[i + 1].lambda);
    theta_concave.update(
        (slope_right - slope_left) / relative_scale(slope_left, slope_right),
        rows[i + 1].lambda);
  }

  MonotonicityAudit audit;
  audit.grid = grid;
  audit.audit_tol = kAuditTol;
  audit.claims["GAMMA_DECREASING"] = gamma_decreasing.finish(kAuditTol);
  audit.claims["RESIDUAL_INCREASING"] = residual_increasing.finish(kAuditTol);
  audit.claims["L1_NONINCREASING"] = l1_nonincreasing.finish(kAuditTol);
  audit.claims["THETA_CONCAVE"] = theta_concave.finish(kAuditTol);
  audit.claims["THETA_NONDECREASING"] = theta_nondecreasing.finish(kAuditTol);
  return audit;
}

std::string curve_csv(const std::vector<DiagnosticsRow>& rows) {
  std::ostringstream out;
  out << "lambda,l1_norm,residual_sq,gamma,theta,phi,support_size\n";
  for (const DiagnosticsRow& row : rows) {
    out << format_double(row.lambda) << ',' << format_double(row.l1_norm) << ','
        << format_double(row.residual_sq) << ',' << format_double(row.gamma)
        << ',' << format_double(row.theta) << ',' << format_double(row.phi)
        << ',' << row.support_size << '\n';
  }
  return out.str();
}

std::string audit_json(const MonotonicityAudit& audit) {
  nlohmann::json claims;
  for (const auto& [name, result] : audit.claims) {
    claims[name] = {
        {"verdict", result.verdict == ClaimVerdict::kPass ? "PASS" : "FAIL"},
        {"worst_violation", result.worst_violation},
        {"at_lambda", result.at_lambda},
    };
  }
  nlohmann::json root;
  root["claims"] = std::move(claims);
  root["grid_spec"] = audit.grid.to_string();
  root["tolerances"] = {{"audit_tol", audit.audit_tol}};
  return root.dump(2) + "\n";
}

}  // namespace lassopath
