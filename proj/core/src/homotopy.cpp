#include "lassopath/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lassopath/io.hpp"

namespace lassopath {

namespace {

struct EventCandidate {
  double lambda = -std::numeric_limits<double>::infinity();
  int column = -1;
  double sign = 0.0;  // activation sign; unused for drops

  bool found() const { return column >= 0; }
};

std::string event_string(const SegmentEvent& event) {
  switch (event.type) {
    case SegmentEventType::kCoefficientZero:
      return "coefficient_zero:" + std::to_string(event.index + 1);
    case SegmentEventType::kActivation:
      return "activation:" + std::to_string(event.index + 1);
    case SegmentEventType::kPathEnd:
      return "path_end";
  }
  return "unknown";
}

}  // namespace

double compute_tau(const DesignMatrix& design, const ResponseVector& response) {
  if (design.rows() != response.size()) {
    throw Error("design and response dimensions do not match");
  }
  const Eigen::VectorXd correlations =
      design.matrix().transpose() * response.values();
  const double tau = correlations.lpNorm<Eigen::Infinity>();
  if (tau == 0.0) {
    throw DegenerateProblem(
        "X^t y = 0: the solution is zero for every lambda");
  }
  return tau;
}

LassoPath compute_path(const DesignMatrix& design,
                       const ResponseVector& response, double lambda_min) {
  if (!(lambda_min > 0)) {
    throw Error("lambda_min must be positive");
  }
  const Eigen::MatrixXd& X = design.matrix();
  const Eigen::VectorXd& y = response.values();
  const int n = design.rows();
  const int p = design.cols();

  const Eigen::VectorXd correlations = X.transpose() * y;
  Eigen::Index first = 0;
  const double tau = compute_tau(design, response);
  correlations.cwiseAbs().maxCoeff(&first);
  if (lambda_min >= tau) {
    throw Error("lambda_min must lie strictly below tau");
  }

  const double tie_tol = 1e-12 * tau;
  const int max_segments = 10 * p * n;

  std::vector<int> support{static_cast<int>(first)};
  std::vector<double> signs{correlations(first) > 0 ? 1.0 : -1.0};
  std::set<int> ever_active{static_cast<int>(first)};

  std::vector<PathSegment> segments;
  std::vector<PathWarning> warnings;
  int reactivations = 0;
  double lambda_hi = tau;

  while (true) {
    if (static_cast<int>(segments.size()) >= max_segments) {
      throw IterationCap("segment count exceeded cycling guard of " +
                         std::to_string(max_segments));
    }

    PathSegment segment;
    segment.lambda_hi = lambda_hi;
    segment.model.support = support;
    segment.model.signs =
        Eigen::Map<const Eigen::VectorXd>(signs.data(), signs.size());

    GramFactor factor = gram_factorize(design, support);
    const Eigen::MatrixXd sub = design.submatrix(support);
    segment.intercept = factor.solve(sub.transpose() * y);
    segment.slope = factor.solve(segment.model.signs);

    // Residual is affine on the segment: r(lambda) = base + lambda * drift,
    // so every inactive correlation is too.
    const Eigen::VectorXd base = y - sub * segment.intercept;
    const Eigen::VectorXd drift = sub * segment.slope;
    const Eigen::VectorXd corr_base = X.transpose() * base;
    const Eigen::VectorXd corr_drift = X.transpose() * drift;

    const double top = lambda_hi - tie_tol;

    EventCandidate drop;
    for (size_t k = 0; k < support.size(); ++k) {
      const double d = segment.slope(static_cast<Eigen::Index>(k));
      if (d == 0.0) continue;
      const double lambda = segment.intercept(static_cast<Eigen::Index>(k)) / d;
      if (lambda > 0 && lambda < top && lambda > drop.lambda) {
        drop.lambda = lambda;
        drop.column = support[k];
      }
    }

    EventCandidate activation;
    std::vector<char> is_active(p, 0);
    for (int j : support) is_active[j] = 1;
    for (int j = 0; j < p; ++j) {
      if (is_active[j]) continue;
      const double u = corr_base(j);
      const double v = corr_drift(j);
      // Roots of c_j(lambda) = +lambda and c_j(lambda) = -lambda.
      const double candidates[2] = {u / (1.0 - v), -u / (1.0 + v)};
      const double root_signs[2] = {1.0, -1.0};
      for (int r = 0; r < 2; ++r) {
        const double lambda = candidates[r];
        if (!std::isfinite(lambda)) continue;
        if (lambda > 0 && lambda < top && lambda > activation.lambda) {
          activation.lambda = lambda;
          activation.column = j;
          activation.sign = root_signs[r];
        }
      }
    }

    const double next = std::max(drop.lambda, activation.lambda);
    if ((!drop.found() && !activation.found()) || next <= lambda_min) {
      segment.lambda_lo = lambda_min;
      segment.event_at_lo = {SegmentEventType::kPathEnd, -1};
      segments.push_back(std::move(segment));
      break;
    }

    const bool tie = drop.found() && activation.found() &&
                     std::abs(drop.lambda - activation.lambda) <= tie_tol;
    const bool take_drop =
        drop.found() && (!activation.found() || drop.lambda >= activation.lambda - tie_tol);
    if (tie) {
      warnings.push_back(
          {next, "drop and activation candidates coincide; drop processed first"});
    }

    if (take_drop) {
      segment.lambda_lo = drop.lambda;
      segment.event_at_lo = {SegmentEventType::kCoefficientZero, drop.column};
      const auto it = std::find(support.begin(), support.end(), drop.column);
      const auto offset = std::distance(support.begin(), it);
      support.erase(it);
      signs.erase(signs.begin() + offset);
      lambda_hi = drop.lambda;
      if (support.empty()) {
        throw Error("active set emptied above lambda_min; unexpected path");
      }
    } else {
      segment.lambda_lo = activation.lambda;
      segment.event_at_lo = {SegmentEventType::kActivation, activation.column};
      const auto it =
          std::lower_bound(support.begin(), support.end(), activation.column);
      const auto offset = std::distance(support.begin(), it);
      support.insert(it, activation.column);
      signs.insert(signs.begin() + offset, activation.sign);
      if (!ever_active.insert(activation.column).second) {
        ++reactivations;
      }
      lambda_hi = activation.lambda;
    }
    segments.push_back(std::move(segment));
  }

  return LassoPath(design, response, tau, lambda_min, std::move(segments),
                   std::move(warnings), reactivations);
}

const PathSegment& LassoPath::segment_at(double lambda) const {
  for (const PathSegment& segment : segments_) {
    if (lambda >= segment.lambda_lo) {
      return segment;
    }
  }
  throw OutOfRange("lambda " + std::to_string(lambda) +
                   " below the computed path range");
}

LassoSolution evaluate(const LassoPath& path, double lambda) {
  if (!(lambda > 0)) {
    throw Error("lambda must be positive");
  }
  if (lambda < path.lambda_min() * (1.0 - 1e-12)) {
    throw OutOfRange("lambda " + std::to_string(lambda) +
                     " below lambda_min " + std::to_string(path.lambda_min()));
  }
  lambda = std::max(lambda, path.lambda_min());

  const DesignMatrix& design = path.design();
  const ResponseVector& response = path.response();
  if (lambda >= path.tau()) {
    LassoSolution zero;
    zero.lambda = lambda;
    zero.coefficients = Eigen::VectorXd::Zero(design.cols());
    zero.model = ActiveModel{};
    zero.residual = response.values();
    zero.objective = 0.5 * zero.residual.squaredNorm();
    return zero;
  }

  const PathSegment& segment = path.segment_at(lambda);
  return make_solution(design, response, segment.model,
                       segment.restricted_coefficients(lambda), lambda);
}

std::string path_json(const LassoPath& path) {
  nlohmann::json root;
  root["tau"] = path.tau();
  root["lambda_min"] = path.lambda_min();
  nlohmann::json segments = nlohmann::json::array();
  for (const PathSegment& segment : path.segments()) {
    nlohmann::json item;
    item["lambda_hi"] = segment.lambda_hi;
    item["lambda_lo"] = segment.lambda_lo;
    std::vector<int> support;
    for (int j : segment.model.support) support.push_back(j + 1);
    item["support"] = support;
    std::vector<int> signs;
    for (Eigen::Index k = 0; k < segment.model.signs.size(); ++k) {
      signs.push_back(segment.model.signs(k) > 0 ? 1 : -1);
    }
    item["signs"] = signs;
    item["intercept"] = std::vector<double>(
        segment.intercept.data(), segment.intercept.data() + segment.intercept.size());
    item["slope"] = std::vector<double>(
        segment.slope.data(), segment.slope.data() + segment.slope.size());
    item["event"] = event_string(segment.event_at_lo);
    segments.push_back(std::move(item));
  }
  root["segments"] = std::move(segments);
  return root.dump(2) + "\n";
}

std::string breakpoint_csv(const LassoPath& path) {
  std::ostringstream out;
  out << "k,lambda,event,support_size,l1_norm,residual_sq\n";
  int k = 0;
  for (const PathSegment& segment : path.segments()) {
    // Each row is the model change at the segment's top: the first segment
    // starts at tau with the initial activation, later segments start at the
    // previous segment's event.
    SegmentEvent event;
    if (k == 0) {
      event = {SegmentEventType::kActivation, segment.model.support.front()};
    } else {
      event = path.segments()[k - 1].event_at_lo;
    }
    const LassoSolution at_top = evaluate(path, segment.lambda_hi);
    out << k << ',' << format_double(segment.lambda_hi) << ','
        << event_string(event) << ',' << segment.model.support.size() << ','
        << format_double(at_top.coefficients.lpNorm<1>()) << ','
        << format_double(at_top.residual.squaredNorm()) << '\n';
    ++k;
  }
  return out.str();
}

}  // namespace lassopath
