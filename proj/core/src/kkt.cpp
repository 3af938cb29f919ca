#include "lassopath/kkt.hpp"

#include <algorithm>
#include <cmath>

namespace lassopath {

namespace {

void check_dimensions(const DesignMatrix& design, const ResponseVector& response) {
  if (design.rows() != response.size()) {
    throw Error("design and response dimensions do not match");
  }
}

void check_model(const ActiveModel& model) {
  if (model.support.empty()) {
    throw EmptySupport("active model has empty support");
  }
  if (model.signs.size() != static_cast<Eigen::Index>(model.support.size())) {
    throw Error("sign vector length does not match support size");
  }
  for (Eigen::Index i = 0; i < model.signs.size(); ++i) {
    if (model.signs(i) != 1.0 && model.signs(i) != -1.0) {
      throw Error("sign entries must be +1 or -1");
    }
  }
}

}  // namespace

double lasso_objective(const DesignMatrix& design, const ResponseVector& response,
                       const Eigen::VectorXd& b, double lambda) {
  check_dimensions(design, response);
  const Eigen::VectorXd residual = response.values() - design.matrix() * b;
  return 0.5 * residual.squaredNorm() + lambda * b.lpNorm<1>();
}

LassoSolution make_solution(const DesignMatrix& design,
                            const ResponseVector& response,
                            const ActiveModel& model,
                            const Eigen::VectorXd& restricted, double lambda) {
  check_dimensions(design, response);
  LassoSolution sol;
  sol.lambda = lambda;
  sol.model = model;
  sol.coefficients = Eigen::VectorXd::Zero(design.cols());
  for (size_t k = 0; k < model.support.size(); ++k) {
    sol.coefficients(model.support[k]) = restricted(static_cast<Eigen::Index>(k));
  }
  sol.residual = response.values() - design.matrix() * sol.coefficients;
  sol.objective =
      0.5 * sol.residual.squaredNorm() + lambda * sol.coefficients.lpNorm<1>();
  return sol;
}

Eigen::VectorXd solve_on_support(const DesignMatrix& design,
                                 const ResponseVector& response,
                                 const ActiveModel& model, double lambda) {
  check_dimensions(design, response);
  check_model(model);
  GramFactor factor = gram_factorize(design, model.support);
  const Eigen::MatrixXd sub = design.submatrix(model.support);
  const Eigen::VectorXd rhs =
      sub.transpose() * response.values() - lambda * model.signs;
  return factor.solve(rhs);
}

KktCertificate certify_optimality(const DesignMatrix& design,
                                  const ResponseVector& response,
                                  const Eigen::VectorXd& b, double lambda) {
  check_dimensions(design, response);
  if (!(lambda > 0)) {
    throw Error("lambda must be positive");
  }
  if (b.size() != design.cols()) {
    throw Error("candidate vector length does not match design");
  }

  KktCertificate cert;
  cert.lambda = lambda;
  const Eigen::VectorXd residual = response.values() - design.matrix() * b;
  cert.subgradient = design.matrix().transpose() * residual / lambda;

  double active_err = 0.0;
  double max_inactive = 0.0;
  bool any_inactive = false;
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (std::abs(b(j)) > kSupportTol) {
      const double sign = b(j) > 0 ? 1.0 : -1.0;
      active_err = std::max(active_err, std::abs(cert.subgradient(j) - sign));
    } else {
      any_inactive = true;
      max_inactive = std::max(max_inactive, std::abs(cert.subgradient(j)));
    }
  }
  cert.active_equality_error = active_err;
  cert.inactive_margin = any_inactive ? 1.0 - max_inactive : 1.0;
  return cert;
}

Eigen::VectorXd oracle_estimator(const DesignMatrix& design,
                                 const ResponseVector& response,
                                 const ActiveModel& true_model, double lambda) {
  check_dimensions(design, response);
  check_model(true_model);
  if (lambda < 0) {
    throw Error("lambda must be nonnegative");
  }
  GramFactor factor = gram_factorize(design, true_model.support);
  const Eigen::MatrixXd sub = design.submatrix(true_model.support);
  const Eigen::VectorXd rhs =
      sub.transpose() * response.values() - lambda * true_model.signs;
  const Eigen::VectorXd restricted = factor.solve(rhs);

  Eigen::VectorXd full = Eigen::VectorXd::Zero(design.cols());
  for (size_t k = 0; k < true_model.support.size(); ++k) {
    full(true_model.support[k]) = restricted(static_cast<Eigen::Index>(k));
  }
  return full;
}

}  // namespace lassopath
