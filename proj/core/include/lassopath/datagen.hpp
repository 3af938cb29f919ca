#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lassopath/linalg.hpp"

namespace lassopath {

/// Deterministic random source used for synthetic instances.
///
/// The generator is the standard 64-bit Mersenne Twister (mt19937_64), whose
/// algorithm and constants are pinned by the C++ standard, so a seed
/// reproduces the same stream on every conforming implementation. Uniform
/// doubles take the top 53 bits, shifted into (0,1); Gaussian variates are
/// produced by Acklam's rational approximation of the inverse normal CDF
/// (peak relative error about 1.15e-9) applied to that uniform, which keeps
/// the mapping free of library-specific distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in the open interval (0, 1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via inverse-CDF sampling.
  double normal() { return normal_inverse_cdf(uniform01()); }

  /// Uniform integer in [0, n).
  int uniform_int(int n) {
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
  }

  bool coin_flip() { return (next_u64() & 1u) != 0; }

  /// Acklam's inverse normal CDF approximation, exposed for tests.
  static double normal_inverse_cdf(double p);

 private:
  std::mt19937_64 engine_;
};

/// A synthetic regression instance y = X beta + z with the planted truth
/// retained: beta has exactly s nonzeros with magnitudes uniform in [0.5, 2]
/// and random signs; z has i.i.d. N(0, sigma^2) entries.
struct SyntheticInstance {
  DesignMatrix design;
  ResponseVector response;
  Eigen::VectorXd beta_true;
  std::vector<int> support;  // sorted, 0-based
  Eigen::VectorXd signs;     // signs of beta on the support
  Eigen::VectorXd noise;
  int n = 0;
  int p = 0;
  int s = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Deterministic generation given the seed. Draw order: design entries
/// row-major, then the support (partial Fisher-Yates), then magnitudes and
/// signs of beta in ascending support order, then the noise.
SyntheticInstance generate_instance(int n, int p, int s, double sigma,
                                    std::uint64_t seed);

/// JSON record of the planted truth (1-based support indices).
std::string truth_json(const SyntheticInstance& instance);

}  // namespace lassopath
