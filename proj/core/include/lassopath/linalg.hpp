#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <span>
#include <utility>
#include <vector>

#include "lassopath/errors.hpp"

namespace lassopath {

/// Relative rank tolerance: X_T counts as rank deficient when
/// sigma_min(X_T) <= kRankTol * sigma_max(X_T).
inline constexpr double kRankTol = 1e-10;

/// Dense n x p design matrix with cached Euclidean column norms.
///
/// Immutable after construction; all entries are validated to be finite.
/// Column indices are 0-based throughout the library; file formats and
/// reports use 1-based indices.
class DesignMatrix {
 public:
  explicit DesignMatrix(Eigen::MatrixXd entries);

  int rows() const { return static_cast<int>(entries_.rows()); }
  int cols() const { return static_cast<int>(entries_.cols()); }

  const Eigen::MatrixXd& matrix() const { return entries_; }
  const Eigen::VectorXd& col_norms() const { return col_norms_; }
  double col_norm(int j) const { return col_norms_(j); }

  /// Copy of the submatrix whose columns are the (sorted, 0-based) support.
  Eigen::MatrixXd submatrix(std::span<const int> support) const;

 private:
  Eigen::MatrixXd entries_;
  Eigen::VectorXd col_norms_;
};

/// Observation vector y; length must match the design's row count wherever
/// the two are used together.
class ResponseVector {
 public:
  explicit ResponseVector(Eigen::VectorXd values);

  const Eigen::VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  Eigen::VectorXd values_;
};

/// Cholesky factorization of a Gram submatrix X_T^t X_T together with the
/// extremal singular values of X_T itself.
///
/// Only exists for full-column-rank X_T; gram_factorize throws RankDeficient
/// otherwise. Solves apply one step of iterative refinement so the residual
/// stays at rounding level rather than growing with the Gram condition
/// number. Accuracy degrades once cond(X_T) exceeds roughly 1e7.
class GramFactor {
 public:
  const std::vector<int>& support() const { return support_; }
  int size() const { return static_cast<int>(support_.size()); }

  double min_singular_value() const { return min_sv_; }
  double max_singular_value() const { return max_sv_; }

  /// Solves (X_T^t X_T) w = v.
  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;

  const Eigen::MatrixXd& gram() const { return gram_; }

  /// Lower-triangular Cholesky factor L with L L^t = X_T^t X_T.
  Eigen::MatrixXd matrix_l() const { return llt_.matrixL(); }

 private:
  friend GramFactor gram_factorize(const DesignMatrix&, std::span<const int>);

  std::vector<int> support_;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double min_sv_ = 0.0;
  double max_sv_ = 0.0;
};

/// Factorizes X_T^t X_T for a sorted, distinct, nonempty support.
/// Throws RankDeficient when sigma_min(X_T) <= kRankTol * sigma_max(X_T).
GramFactor gram_factorize(const DesignMatrix& design,
                          std::span<const int> support);

/// Solves (X_T^t X_T) w = v against a previously computed factorization.
Eigen::VectorXd gram_solve(const GramFactor& factor, const Eigen::VectorXd& v);

/// (sigma_min, sigma_max) of the restricted matrix X_T. Never throws; a rank
/// deficient support simply yields sigma_min near zero.
std::pair<double, double> extremal_singular_values(
    const DesignMatrix& design, std::span<const int> support);

}  // namespace lassopath
