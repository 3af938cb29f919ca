#include "lassopath/solvers.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "support_iter.hpp"

namespace lassopath {

namespace {

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double threshold) {
  return v.unaryExpr([threshold](double x) {
    if (x > threshold) return x - threshold;
    if (x < -threshold) return x + threshold;
    return 0.0;
  });
}

ActiveModel model_from_vector(const Eigen::VectorXd& b) {
  ActiveModel model;
  std::vector<double> signs;
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (b(j) != 0.0) {
      model.support.push_back(static_cast<int>(j));
      signs.push_back(b(j) > 0 ? 1.0 : -1.0);
    }
  }
  model.signs = Eigen::Map<const Eigen::VectorXd>(
      signs.data(), static_cast<Eigen::Index>(signs.size()));
  return model;
}

LassoSolution solution_from_vector(const DesignMatrix& design,
                                   const ResponseVector& response,
                                   const Eigen::VectorXd& b, double lambda) {
  LassoSolution sol;
  sol.lambda = lambda;
  sol.coefficients = b;
  sol.model = model_from_vector(b);
  sol.residual = response.values() - design.matrix() * b;
  sol.objective = 0.5 * sol.residual.squaredNorm() + lambda * b.lpNorm<1>();
  return sol;
}

}  // namespace

ProxResult proximal_solve(const DesignMatrix& design,
                          const ResponseVector& response, double lambda,
                          const ProxConfig& config) {
  if (!(lambda > 0)) {
    throw Error("lambda must be positive");
  }
  const Eigen::MatrixXd& X = design.matrix();
  const Eigen::VectorXd& y = response.values();

  double step = config.step;
  if (!(step > 0)) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
    const double sigma_max = svd.singularValues()(0);
    step = 1.0 / (sigma_max * sigma_max);
  }

  Eigen::VectorXd b = Eigen::VectorXd::Zero(design.cols());
  Eigen::VectorXd extrapolated = b;
  double t = 1.0;
  double objective_prev = std::numeric_limits<double>::infinity();

  double best_violation = std::numeric_limits<double>::infinity();
  KktCertificate best_certificate;

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    const Eigen::VectorXd gradient = X.transpose() * (X * extrapolated - y);
    Eigen::VectorXd b_next =
        soft_threshold(extrapolated - step * gradient, step * lambda);

    const KktCertificate certificate =
        certify_optimality(design, response, b_next, lambda);
    const double violation = certificate.violation();
    if (violation < best_violation) {
      best_violation = violation;
      best_certificate = certificate;
    }
    if (violation <= config.stop_kkt_tol) {
      return {solution_from_vector(design, response, b_next, lambda),
              certificate, iter};
    }

    if (config.acceleration) {
      const double objective = lasso_objective(design, response, b_next, lambda);
      if (objective > objective_prev) {
        t = 1.0;
        extrapolated = b_next;
      } else {
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        extrapolated = b_next + ((t - 1.0) / t_next) * (b_next - b);
        t = t_next;
      }
      objective_prev = objective;
    } else {
      extrapolated = b_next;
    }
    b = std::move(b_next);
  }

  throw NotConverged("proximal solver did not reach the KKT tolerance in " +
                         std::to_string(config.max_iter) + " iterations",
                     best_certificate, config.max_iter);
}

CombinatorialResult exact_combinatorial_solve(const DesignMatrix& design,
                                              const ResponseVector& response,
                                              double lambda) {
  if (!(lambda > 0)) {
    throw Error("lambda must be positive");
  }
  const int p = design.cols();
  const int n = design.rows();
  if (p > kCombinatorialCap) {
    throw ProblemTooLarge("combinatorial solver is capped at p = " +
                          std::to_string(kCombinatorialCap));
  }

  std::optional<CombinatorialResult> best;
  int validating = 0;

  auto consider = [&](const Eigen::VectorXd& b) {
    const KktCertificate certificate =
        certify_optimality(design, response, b, lambda);
    if (!certificate.is_valid()) return;
    ++validating;
    LassoSolution candidate = solution_from_vector(design, response, b, lambda);
    if (!best || candidate.objective < best->solution.objective) {
      best = CombinatorialResult{std::move(candidate), certificate, false, 0};
    }
  };

  // The empty support: b = 0 validates iff ||X^t y||_inf <= lambda.
  consider(Eigen::VectorXd::Zero(p));

  const int max_size = std::min(n, p);
  std::vector<int> support;
  while (detail::next_support(support, p, max_size)) {
    GramFactor factor;
    try {
      factor = gram_factorize(design, support);
    } catch (const RankDeficient&) {
      continue;
    }
    const int k = static_cast<int>(support.size());
    const Eigen::MatrixXd sub = design.submatrix(support);
    const Eigen::VectorXd intercept =
        factor.solve(sub.transpose() * response.values());

    Eigen::VectorXd signs(k);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      for (int i = 0; i < k; ++i) {
        signs(i) = (mask >> i) & 1 ? -1.0 : 1.0;
      }
      const Eigen::VectorXd restricted =
          intercept - lambda * factor.solve(signs);
      // Sign consistency: candidates with a zero or flipped coefficient are
      // certified under a different (support, sign) pair, if at all.
      bool consistent = true;
      for (int i = 0; i < k; ++i) {
        if (!(restricted(i) * signs(i) > 0)) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;

      Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
      for (int i = 0; i < k; ++i) b(support[i]) = restricted(i);
      consider(b);
    }
  }

  if (!best) {
    throw Error("no (support, sign) candidate validated; lambda may sit on a "
                "degenerate configuration");
  }
  best->multiple_optima = validating > 1;
  best->validating_candidates = validating;
  return *best;
}

}  // namespace lassopath
