// Acceptance suite: one self-contained check per shipped guarantee, each
// printed as a single PASS/FAIL line. Exit code is the number of failures.
//
// Usage: acceptance <cli-binary> <golden-dir>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <lassopath/datagen.hpp>
#include <lassopath/diagnostics.hpp>
#include <lassopath/gpc.hpp>
#include <lassopath/homotopy.hpp>
#include <lassopath/io.hpp>
#include <lassopath/kkt.hpp>
#include <lassopath/solvers.hpp>

namespace {

namespace fs = std::filesystem;
using namespace lassopath;
using Clock = std::chrono::steady_clock;

std::string g_cli;
fs::path g_golden;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& message) {
    if (!ok && pass) {
      pass = false;
      detail << message;
    }
  }
};

int g_failures = 0;

void run_criterion(int number, const std::string& name, double budget_seconds,
                   const std::function<void(Check&)>& body) {
  Check check;
  const auto start = Clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_seconds > 0 && seconds >= budget_seconds) {
    check.require(false, "runtime " + std::to_string(seconds) +
                             " s exceeded budget of " +
                             std::to_string(budget_seconds) + " s");
  }
  std::printf("[%s] %2d %s (%.2f s)%s%s\n", check.pass ? "PASS" : "FAIL",
              number, name.c_str(), seconds,
              check.detail.str().empty() ? "" : ": ",
              check.detail.str().c_str());
  std::fflush(stdout);
  if (!check.pass) ++g_failures;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(lo * std::pow(hi / lo, t));
  }
  return out;
}

DesignMatrix orthonormal_design(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) raw(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  return DesignMatrix(qr.householderQ() * Eigen::MatrixXd::Identity(n, n));
}

ResponseVector gaussian_response(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.normal();
  return ResponseVector(y);
}

// The shared Monte Carlo batch: 100 moderate instances.
struct BatchInstance {
  SyntheticInstance instance;
  double tau;
  LassoPath path;
};

std::vector<BatchInstance> make_batch(int count, std::uint64_t seed0, int n,
                                      int p, int s, double sigma,
                                      double lambda_min_factor) {
  std::vector<BatchInstance> batch;
  batch.reserve(count);
  for (int i = 0; i < count; ++i) {
    SyntheticInstance instance =
        generate_instance(n, p, s, sigma, seed0 + static_cast<std::uint64_t>(i));
    const double tau = compute_tau(instance.design, instance.response);
    LassoPath path = compute_path(instance.design, instance.response,
                                  lambda_min_factor * tau);
    batch.push_back({std::move(instance), tau, std::move(path)});
  }
  return batch;
}

void criterion_soft_thresholding(Check& check) {
  for (int i = 0; i < 20; ++i) {
    const int n = 10 + 2 * i;  // up to 48
    const DesignMatrix X = orthonormal_design(n, 100 + i);
    const ResponseVector y = gaussian_response(n, 1100 + i);
    const Eigen::VectorXd correlations = X.matrix().transpose() * y.values();
    const double tau = correlations.lpNorm<Eigen::Infinity>();
    const LassoPath path = compute_path(X, y, 1e-3 * tau);

    for (double lambda : log_spaced(1.05e-3 * tau, 0.97 * tau, 20)) {
      const Eigen::VectorXd from_path = evaluate(path, lambda).coefficients;
      Eigen::VectorXd oracle(n);
      for (int j = 0; j < n; ++j) {
        const double c = correlations(j);
        oracle(j) = (c > 0 ? 1.0 : -1.0) * std::max(std::abs(c) - lambda, 0.0);
      }
      const double err = (from_path - oracle).lpNorm<Eigen::Infinity>();
      check.require(err <= 1e-10,
                    "soft-threshold mismatch " + std::to_string(err) +
                        " at n=" + std::to_string(n));
      if (!check.pass) return;
    }
  }
}

void criterion_oracle_triangle(Check& check) {
  ProxConfig prox_config;
  prox_config.stop_kkt_tol = 1e-10;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + (i % 4);
    const int p = 7 + (i % 4);
    const SyntheticInstance inst =
        generate_instance(n, p, 2, 0.3, 200 + static_cast<std::uint64_t>(i));
    const double tau = compute_tau(inst.design, inst.response);
    const double lambda_min = 1e-3 * tau;
    const LassoPath path = compute_path(inst.design, inst.response, lambda_min);

    for (double lambda : log_spaced(1.05 * lambda_min, 0.97 * tau, 20)) {
      const Eigen::VectorXd a = evaluate(path, lambda).coefficients;
      const Eigen::VectorXd b =
          proximal_solve(inst.design, inst.response, lambda, prox_config)
              .solution.coefficients;
      const Eigen::VectorXd c =
          exact_combinatorial_solve(inst.design, inst.response, lambda)
              .solution.coefficients;
      const double ab = (a - b).lpNorm<Eigen::Infinity>();
      const double ac = (a - c).lpNorm<Eigen::Infinity>();
      const double bc = (b - c).lpNorm<Eigen::Infinity>();
      check.require(ab <= 1e-6 && ac <= 1e-6 && bc <= 1e-6,
                    "triangle gap (path/prox/comb) = " + std::to_string(ab) +
                        "/" + std::to_string(ac) + "/" + std::to_string(bc) +
                        " at seed " + std::to_string(200 + i));
      if (!check.pass) return;
    }
  }
}

void criterion_kkt_validity(Check& check) {
  const auto batch = make_batch(100, 300, 10, 25, 5, 0.5, 1e-6);
  for (const BatchInstance& item : batch) {
    for (const PathSegment& segment : item.path.segments()) {
      const double lambda = 0.5 * (segment.lambda_lo + segment.lambda_hi);
      const LassoSolution sol = evaluate(item.path, lambda);
      const KktCertificate cert =
          certify_optimality(item.instance.design, item.instance.response,
                             sol.coefficients, lambda);
      check.require(cert.is_valid(1e-8),
                    "invalid certificate at seed " +
                        std::to_string(item.instance.seed) + ", lambda " +
                        std::to_string(lambda));
      if (!check.pass) return;
    }
  }
}

void criterion_monotonicity_audit(Check& check) {
  const auto batch = make_batch(100, 300, 10, 25, 5, 0.5, 1e-6);
  int gamma_failures = 0;
  double worst_gamma = 0.0;
  std::uint64_t worst_seed = 0;
  for (const BatchInstance& item : batch) {
    const MonotonicityAudit audit = run_audit(item.path, GridSpec::log(50));
    for (const auto& [name, claim] : audit.claims) {
      if (name == "GAMMA_DECREASING") {
        if (claim.verdict != ClaimVerdict::kPass) {
          ++gamma_failures;
          if (claim.worst_violation > worst_gamma) {
            worst_gamma = claim.worst_violation;
            worst_seed = item.instance.seed;
          }
        }
        continue;
      }
      check.require(claim.verdict == ClaimVerdict::kPass,
                    name + " failed at seed " +
                        std::to_string(item.instance.seed) +
                        " (worst violation " +
                        std::to_string(claim.worst_violation) + ")");
    }
    const DiagnosticsRow top = diagnostics_row(item.path, item.tau);
    check.require(top.gamma == 0.0, "gamma(tau) not exactly zero at seed " +
                                        std::to_string(item.instance.seed));
    if (!check.pass) return;
  }
  // Known honest failure: on partial-support ranges gamma is genuinely
  // non-monotone for some instances (the flagged points carry valid
  // certificates and are reproduced by the iterative solver), so the audit
  // correctly reports violations far above the 1e-9 band.
  check.require(gamma_failures == 0,
                "GAMMA_DECREASING failed on " + std::to_string(gamma_failures) +
                    "/100 instances (worst relative violation " +
                    std::to_string(worst_gamma) + " at seed " +
                    std::to_string(worst_seed) +
                    "); the increase is a true property of those instances, "
                    "not an audit artifact");
}

void criterion_tau_formula(Check& check) {
  std::vector<std::pair<SyntheticInstance, double>> instances;
  for (std::uint64_t seed : {42ull, 300ull, 357ull, 399ull, 211ull, 703ull}) {
    SyntheticInstance inst = generate_instance(10, 25, 5, 0.5, seed);
    const double tau = compute_tau(inst.design, inst.response);
    instances.emplace_back(std::move(inst), tau);
  }
  {
    SyntheticInstance fixture = generate_instance(3, 5, 2, 0.1, 42);
    const double tau = compute_tau(fixture.design, fixture.response);
    instances.emplace_back(std::move(fixture), tau);
  }

  for (const auto& [inst, tau] : instances) {
    const double direct = (inst.design.matrix().transpose() *
                           inst.response.values())
                              .lpNorm<Eigen::Infinity>();
    const LassoPath path = compute_path(inst.design, inst.response, 1e-6 * tau);
    const double first_breakpoint = path.segments().front().lambda_hi;
    check.require(std::abs(first_breakpoint - direct) <= 1e-12 * direct,
                  "first breakpoint differs from ||X^t y||_inf");

    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(inst.design.cols());
    for (double factor : {1.0, 1.5, 10.0}) {
      const KktCertificate cert = certify_optimality(
          inst.design, inst.response, zero, factor * tau);
      check.require(cert.is_valid(),
                    "zero solution does not certify at " +
                        std::to_string(factor) + " tau");
    }
    if (!check.pass) return;
  }
}

void criterion_theta_derivative(Check& check) {
  const auto batch = make_batch(100, 300, 10, 25, 5, 0.5, 1e-6);
  double worst = 0.0;
  for (const BatchInstance& item : batch) {
    for (const PathSegment& segment : item.path.segments()) {
      const double width = segment.lambda_hi - segment.lambda_lo;
      const double lambda = segment.lambda_lo + 0.5 * width;
      const double h = 0.45 * width;
      const ThetaDerivativeCheck result =
          theta_derivative_check(item.path, lambda, h);
      worst = std::max(worst, result.rel_err);
      check.require(result.rel_err <= 1e-6,
                    "theta' mismatch " + std::to_string(result.rel_err) +
                        " at seed " + std::to_string(item.instance.seed));
      if (!check.pass) return;
    }
  }
  check.detail << "worst rel err " << worst;
}

void criterion_divergence_probe(Check& check) {
  for (int i = 0; i < 20; ++i) {
    const int n = 3 + (i % 8);
    const int p = 2 * n + 3;
    const SyntheticInstance inst = generate_instance(
        n, p, std::max(1, n / 2), 0.4, 700 + static_cast<std::uint64_t>(i));
    const double tau = compute_tau(inst.design, inst.response);
    const LassoPath path = compute_path(inst.design, inst.response, 1e-6 * tau);
    const GammaProbe probe = gamma_small_lambda_probe(path, 10);
    check.require(probe.applicable, "probe unexpectedly not applicable");
    check.require(probe.rows.size() == 11, "probe truncated before k = 10");
    if (!check.pass) return;

    for (size_t k = 1; k < probe.rows.size(); ++k) {
      check.require(probe.rows[k].second < probe.rows[k - 1].second,
                    "gamma not strictly decreasing in k at seed " +
                        std::to_string(inst.seed));
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& [lambda, gamma] : probe.rows) {
      if (lambda > 10 * path.lambda_min()) continue;
      lo = std::min(lo, gamma * lambda);
      hi = std::max(hi, gamma * lambda);
    }
    check.require(hi <= 2 * lo,
                  "gamma * lambda leaves the factor-2 band at seed " +
                      std::to_string(inst.seed));
    if (!check.pass) return;
  }
}

void criterion_gpc_checker(Check& check) {
  const GpcReport identity_report =
      check_gpc(DesignMatrix(Eigen::MatrixXd::Identity(3, 3)));
  bool identity_zeta = false;
  for (const GpcViolation& violation : identity_report.violations) {
    if (violation.inequation == GpcInequation::kZetaZero) identity_zeta = true;
  }
  check.require(identity_zeta, "identity design produced no ZETA_ZERO");

  const GpcReport orthonormal_report = check_gpc(orthonormal_design(4, 808));
  bool orthonormal_zeta = false;
  for (const GpcViolation& violation : orthonormal_report.violations) {
    if (violation.inequation == GpcInequation::kZetaZero) {
      orthonormal_zeta = true;
    }
  }
  check.require(orthonormal_zeta, "orthonormal design produced no ZETA_ZERO");

  for (int i = 0; i < 20; ++i) {
    const SyntheticInstance inst =
        generate_instance(3, 5, 2, 0.1, 800 + static_cast<std::uint64_t>(i));
    GpcOptions options;
    options.jobs = 2;
    const GpcReport report = check_gpc(inst.design, options);
    check.require(report.mode == GpcMode::kExhaustive, "expected exhaustive");
    check.require(report.violations.empty(),
                  "violations on Gaussian design seed " +
                      std::to_string(inst.seed));
    if (!check.pass) return;
  }
}

void criterion_residual_identity(Check& check) {
  const auto batch = make_batch(100, 300, 10, 25, 5, 0.5, 1e-6);
  for (const BatchInstance& item : batch) {
    for (const PathSegment& segment : item.path.segments()) {
      const double lambda =
          0.5 * (segment.lambda_lo + segment.lambda_hi);
      const ResidualIdentityCheck result =
          residual_identity_check(item.path, lambda);
      check.require(std::abs(result.gap) <= 1e-8 * result.lhs,
                    "identity gap " + std::to_string(result.gap) +
                        " at seed " + std::to_string(item.instance.seed));
      if (segment.model.size() == item.instance.n) {
        // Full support: the display collapses to the pure lambda^2 term.
        const double quad = segment.model.signs.dot(segment.slope);
        check.require(
            std::abs(result.lhs - lambda * lambda * quad) <= 1e-8 * result.lhs,
            "full-support collapse failed at seed " +
                std::to_string(item.instance.seed));
      }
      if (!check.pass) return;
    }
  }
}

void criterion_support_bound(Check& check) {
  try {
    const auto batch = make_batch(100, 300, 10, 25, 5, 0.5, 1e-6);
    for (const BatchInstance& item : batch) {
      for (const PathSegment& segment : item.path.segments()) {
        check.require(segment.model.size() <= item.instance.n,
                      "support exceeded n at seed " +
                          std::to_string(item.instance.seed));
        const double mid = 0.5 * (segment.lambda_lo + segment.lambda_hi);
        check.require(
            evaluate(item.path, mid).model.size() <= item.instance.n,
            "midpoint support exceeded n");
        check.require(
            evaluate(item.path, segment.lambda_hi).model.size() <=
                item.instance.n,
            "breakpoint support exceeded n");
        if (!check.pass) return;
      }
    }
    for (int i = 0; i < 20; ++i) {
      const int n = 3 + (i % 8);
      const SyntheticInstance inst = generate_instance(
          n, 2 * n + 3, std::max(1, n / 2), 0.4,
          700 + static_cast<std::uint64_t>(i));
      const double tau = compute_tau(inst.design, inst.response);
      const LassoPath path =
          compute_path(inst.design, inst.response, 1e-6 * tau);
      for (const PathSegment& segment : path.segments()) {
        check.require(segment.model.size() <= n, "support exceeded n");
      }
    }
  } catch (const RankDeficient& e) {
    check.require(false, std::string("RankDeficient on a generic design: ") +
                             e.what());
  }
}

int run_command(const fs::path& cwd, const std::string& args) {
  const std::string command =
      "cd '" + cwd.string() + "' && '" + g_cli + "' " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::vector<std::string> kGoldenFiles = {
    "gen/design.csv",   "gen/response.csv", "gen/truth.json",
    "gen/run_config.json", "path/path.json", "path/breakpoints.csv",
    "path/curve.csv",   "path/run_config.json", "audit/audit.json",
    "audit/run_config.json",
};

void run_cli_pipeline(const fs::path& dir, Check& check) {
  fs::create_directories(dir);
  check.require(
      run_command(dir, "generate --synthetic 3,5,2,0.1 --seed 42 --out gen") == 0,
      "generate failed");
  check.require(
      run_command(dir, "path --design gen/design.csv --response "
                       "gen/response.csv --out path") == 0,
      "path failed");
  check.require(
      run_command(dir, "audit --design gen/design.csv --response "
                       "gen/response.csv --out audit") == 0,
      "audit failed");
}

void criterion_cli_determinism(Check& check) {
  const fs::path base =
      fs::temp_directory_path() / "lassopath_acceptance_cli";
  fs::remove_all(base);
  const fs::path run_a = base / "a";
  const fs::path run_b = base / "b";
  run_cli_pipeline(run_a, check);
  run_cli_pipeline(run_b, check);
  if (!check.pass) return;

  for (const std::string& name : kGoldenFiles) {
    const std::string a = read_text_file(run_a / name);
    const std::string b = read_text_file(run_b / name);
    check.require(a == b, name + " differs between consecutive runs");
    if (!check.pass) return;

    const fs::path golden = g_golden / "seed42" / name;
    check.require(fs::exists(golden),
                  "golden file missing: " + golden.string());
    if (!check.pass) return;
    check.require(read_text_file(golden) == a,
                  name + " differs from the committed golden file");
    if (!check.pass) return;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <golden-dir>\n";
    return 64;
  }
  g_cli = fs::absolute(argv[1]).string();
  g_golden = fs::absolute(argv[2]);

  run_criterion(1, "soft-thresholding exactness on orthonormal designs", 1.0,
                criterion_soft_thresholding);
  run_criterion(2, "oracle triangle: path / proximal / combinatorial", 60.0,
                criterion_oracle_triangle);
  run_criterion(3, "KKT validity at every segment midpoint", 30.0,
                criterion_kkt_validity);
  run_criterion(4, "monotonicity audit of gamma, residual, l1, theta", 60.0,
                criterion_monotonicity_audit);
  run_criterion(5, "tau formula and zero-solution certificates", 0.0,
                criterion_tau_formula);
  run_criterion(6, "theta derivative equals the l1 norm", 0.0,
                criterion_theta_derivative);
  run_criterion(7, "gamma divergence probe near zero", 0.0,
                criterion_divergence_probe);
  run_criterion(8, "general position checker", 120.0, criterion_gpc_checker);
  run_criterion(9, "residual identity at segment midpoints", 0.0,
                criterion_residual_identity);
  run_criterion(10, "support bound and rank safety", 0.0,
                criterion_support_bound);
  run_criterion(11, "CLI determinism against golden files", 0.0,
                criterion_cli_determinism);

  if (g_failures == 0) {
    std::printf("all 11 acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
