#include "lassopath/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <sstream>

namespace lassopath {

namespace {

void validate_support(std::span<const int> support, int p) {
  if (support.empty()) {
    throw Error("support must be nonempty");
  }
  int prev = -1;
  for (int j : support) {
    if (j < 0 || j >= p) {
      throw Error("support index out of range");
    }
    if (j <= prev) {
      throw Error("support must be sorted and distinct");
    }
    prev = j;
  }
}

std::string support_string(std::span<const int> support) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < support.size(); ++i) {
    if (i > 0) out << ",";
    out << support[i] + 1;
  }
  out << "}";
  return out.str();
}

}  // namespace

DesignMatrix::DesignMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw Error("design matrix must have at least one row and one column");
  }
  if (!entries_.allFinite()) {
    throw Error("design matrix entries must be finite");
  }
  col_norms_ = entries_.colwise().norm();
}

Eigen::MatrixXd DesignMatrix::submatrix(std::span<const int> support) const {
  Eigen::MatrixXd sub(entries_.rows(), support.size());
  for (size_t k = 0; k < support.size(); ++k) {
    sub.col(static_cast<Eigen::Index>(k)) = entries_.col(support[k]);
  }
  return sub;
}

ResponseVector::ResponseVector(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() < 1) {
    throw Error("response vector must be nonempty");
  }
  if (!values_.allFinite()) {
    throw Error("response vector entries must be finite");
  }
}

GramFactor gram_factorize(const DesignMatrix& design,
                          std::span<const int> support) {
  validate_support(support, design.cols());

  Eigen::MatrixXd sub = design.submatrix(support);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
  const auto& sv = svd.singularValues();
  const double max_sv = sv(0);
  const double min_sv = sv(sv.size() - 1);
  if (min_sv <= kRankTol * max_sv) {
    throw RankDeficient(
        "rank deficient support " + support_string(support),
        std::vector<int>(support.begin(), support.end()));
  }

  GramFactor factor;
  factor.support_.assign(support.begin(), support.end());
  factor.gram_ = sub.transpose() * sub;
  factor.llt_.compute(factor.gram_);
  if (factor.llt_.info() != Eigen::Success) {
    throw RankDeficient(
        "Cholesky factorization failed for support " + support_string(support),
        std::vector<int>(support.begin(), support.end()));
  }
  factor.min_sv_ = min_sv;
  factor.max_sv_ = max_sv;
  return factor;
}

Eigen::VectorXd GramFactor::solve(const Eigen::VectorXd& v) const {
  if (v.size() != static_cast<Eigen::Index>(support_.size())) {
    throw Error("right-hand side length does not match support size");
  }
  Eigen::VectorXd w = llt_.solve(v);
  // One refinement step keeps the residual at rounding level instead of
  // rank-tol-times-condition-number level.
  w += llt_.solve(v - gram_ * w);
  return w;
}

Eigen::VectorXd gram_solve(const GramFactor& factor, const Eigen::VectorXd& v) {
  return factor.solve(v);
}

std::pair<double, double> extremal_singular_values(
    const DesignMatrix& design, std::span<const int> support) {
  validate_support(support, design.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design.submatrix(support));
  const auto& sv = svd.singularValues();
  return {sv(sv.size() - 1), sv(0)};
}

}  // namespace lassopath
