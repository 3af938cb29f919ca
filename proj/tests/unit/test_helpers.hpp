#pragma once

#include <Eigen/Dense>
#include <random>

#include <lassopath/datagen.hpp>
#include <lassopath/linalg.hpp>

namespace test_helpers {

using lassopath::DesignMatrix;
using lassopath::ResponseVector;

inline DesignMatrix identity_design(int n) {
  return DesignMatrix(Eigen::MatrixXd::Identity(n, n));
}

// The repo's canonical synthetic fixture.
inline lassopath::SyntheticInstance seed42_instance() {
  return lassopath::generate_instance(3, 5, 2, 0.1, 42);
}

// Design with orthonormal columns via QR of a Gaussian square matrix.
inline DesignMatrix orthonormal_design(int n, std::uint64_t seed) {
  lassopath::Rng rng(seed);
  Eigen::MatrixXd raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) raw(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return DesignMatrix(q);
}

inline ResponseVector gaussian_response(int n, std::uint64_t seed) {
  lassopath::Rng rng(seed);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.normal();
  return ResponseVector(y);
}

}  // namespace test_helpers
