#include "lassopath/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

namespace lassopath {

double Rng::normal_inverse_cdf(double p) {
  // Coefficients from Peter Acklam's published approximation.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  static constexpr double p_low = 0.02425;
  static constexpr double p_high = 1.0 - p_low;

  if (!(p > 0.0) || !(p < 1.0)) {
    throw Error("normal_inverse_cdf requires p in (0,1)");
  }
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= p_high) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

SyntheticInstance generate_instance(int n, int p, int s, double sigma,
                                    std::uint64_t seed) {
  if (n < 1 || p < 1 || s < 0 || s > p || sigma < 0) {
    throw Error("invalid synthetic instance dimensions");
  }
  Rng rng(seed);

  Eigen::MatrixXd design(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      design(i, j) = rng.normal();
    }
  }

  // Partial Fisher-Yates, then sort: the chosen set is what matters.
  std::vector<int> indices(p);
  std::iota(indices.begin(), indices.end(), 0);
  for (int k = 0; k < s; ++k) {
    const int r = k + rng.uniform_int(p - k);
    std::swap(indices[k], indices[r]);
  }
  std::vector<int> support(indices.begin(), indices.begin() + s);
  std::sort(support.begin(), support.end());

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd signs(s);
  for (int k = 0; k < s; ++k) {
    const double magnitude = rng.uniform(0.5, 2.0);
    const double sign = rng.coin_flip() ? 1.0 : -1.0;
    beta(support[k]) = sign * magnitude;
    signs(k) = sign;
  }

  Eigen::VectorXd noise(n);
  for (int i = 0; i < n; ++i) {
    noise(i) = sigma * rng.normal();
  }

  SyntheticInstance instance{
      DesignMatrix(design),
      ResponseVector(design * beta + noise),
      std::move(beta),
      std::move(support),
      std::move(signs),
      std::move(noise),
      n,
      p,
      s,
      sigma,
      seed,
  };
  return instance;
}

std::string truth_json(const SyntheticInstance& instance) {
  nlohmann::json truth;
  truth["n"] = instance.n;
  truth["p"] = instance.p;
  truth["s"] = instance.s;
  truth["sigma"] = instance.sigma;
  truth["seed"] = instance.seed;
  truth["beta"] = std::vector<double>(
      instance.beta_true.data(), instance.beta_true.data() + instance.p);
  std::vector<int> support_one_based;
  for (int j : instance.support) support_one_based.push_back(j + 1);
  truth["support"] = support_one_based;
  truth["signs"] = std::vector<double>(instance.signs.data(),
                                       instance.signs.data() + instance.s);
  truth["noise"] = std::vector<double>(instance.noise.data(),
                                       instance.noise.data() + instance.n);
  return truth.dump(2) + "\n";
}

}  // namespace lassopath
