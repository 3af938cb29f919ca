// Command line front end: path computation, general-position checking,
// monotonicity audits, synthetic data generation and single-lambda solves.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include <lassopath/datagen.hpp>
#include <lassopath/diagnostics.hpp>
#include <lassopath/gpc.hpp>
#include <lassopath/homotopy.hpp>
#include <lassopath/io.hpp>
#include <lassopath/solvers.hpp>

#include "svg.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lassopath;

constexpr int kExitAuditFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitSolverError = 4;
constexpr int kExitOverflow = 5;

struct Options {
  std::string command;
  std::string design_path;
  std::string response_path;
  std::string synthetic;  // "N,P,S,SIGMA"
  std::uint64_t seed = 0;
  double lambda_min_factor = 1e-6;
  std::string grid = "log:50";
  std::string out_dir = ".";
  std::uint64_t gpc_budget = 10'000'000;
  bool exhaustive = false;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bool svg = false;
  double lambda = 0.0;
};

struct SyntheticSpec {
  int n = 0, p = 0, s = 0;
  double sigma = 0.0;
};

SyntheticSpec parse_synthetic(const std::string& text) {
  SyntheticSpec spec;
  const auto fail = [&]() {
    throw Error("--synthetic expects N,P,S,SIGMA, got '" + text + "'");
  };
  std::istringstream in(text);
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (cells.size() != 4) fail();
  try {
    spec.n = std::stoi(cells[0]);
    spec.p = std::stoi(cells[1]);
    spec.s = std::stoi(cells[2]);
    spec.sigma = std::stod(cells[3]);
  } catch (const std::exception&) {
    fail();
  }
  return spec;
}

struct Instance {
  DesignMatrix design;
  std::optional<ResponseVector> response;
};

Instance load_instance(const Options& options, bool need_response) {
  if (!options.synthetic.empty()) {
    const SyntheticSpec spec = parse_synthetic(options.synthetic);
    SyntheticInstance instance = generate_instance(spec.n, spec.p, spec.s,
                                                   spec.sigma, options.seed);
    return {std::move(instance.design), std::move(instance.response)};
  }
  if (options.design_path.empty()) {
    throw Error("provide either --design (with --response) or --synthetic");
  }
  DesignMatrix design(read_matrix_csv(options.design_path));
  std::optional<ResponseVector> response;
  if (!options.response_path.empty()) {
    response = ResponseVector(read_vector_csv(options.response_path));
  } else if (need_response) {
    throw Error("--response is required for this command");
  }
  return {std::move(design), std::move(response)};
}

nlohmann::json effective_config(const Options& options) {
  nlohmann::json config;
  config["command"] = options.command;
  config["design"] = options.design_path;
  config["response"] = options.response_path;
  config["synthetic"] = options.synthetic;
  config["seed"] = options.seed;
  config["lambda_min_factor"] = options.lambda_min_factor;
  config["grid"] = options.grid;
  config["out"] = options.out_dir;
  config["gpc_budget"] = options.gpc_budget;
  config["exhaustive"] = options.exhaustive;
  config["jobs"] = options.jobs;
  config["svg"] = options.svg;
  config["lambda"] = options.lambda;
  return config;
}

void write_outputs(const Options& options,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  const fs::path dir(options.out_dir);
  fs::create_directories(dir);
  for (const auto& [name, content] : files) {
    write_text_file(dir / name, content);
  }
  write_text_file(dir / "run_config.json",
                  effective_config(options).dump(2) + "\n");
}

int cmd_generate(const Options& options) {
  const SyntheticSpec spec = parse_synthetic(options.synthetic);
  const SyntheticInstance instance =
      generate_instance(spec.n, spec.p, spec.s, spec.sigma, options.seed);
  write_outputs(options,
                {{"design.csv", matrix_csv(instance.design.matrix())},
                 {"response.csv", vector_csv(instance.response.values())},
                 {"truth.json", truth_json(instance)}});
  return 0;
}

int cmd_path(const Options& options) {
  const Instance instance = load_instance(options, true);
  const double tau = compute_tau(instance.design, *instance.response);
  const LassoPath path = compute_path(instance.design, *instance.response,
                                      options.lambda_min_factor * tau);
  const GridSpec grid = GridSpec::parse(options.grid);
  const std::vector<DiagnosticsRow> rows = sample_curve(path, grid);
  write_outputs(options, {{"path.json", path_json(path)},
                          {"breakpoints.csv", breakpoint_csv(path)},
                          {"curve.csv", curve_csv(rows)}});
  return 0;
}

int cmd_check_gpc(const Options& options) {
  const Instance instance = load_instance(options, false);
  GpcOptions gpc_options;
  gpc_options.budget = options.gpc_budget;
  gpc_options.seed = options.seed;
  gpc_options.force_exhaustive = options.exhaustive;
  gpc_options.jobs = std::max(1, options.jobs);
  const GpcReport report = check_gpc(instance.design, gpc_options);
  write_outputs(options, {{"gpc_report.json", gpc_report_json(report)}});
  // Violations are findings, not failures.
  return 0;
}

int cmd_audit(const Options& options) {
  const Instance instance = load_instance(options, true);
  const double tau = compute_tau(instance.design, *instance.response);
  const LassoPath path = compute_path(instance.design, *instance.response,
                                      options.lambda_min_factor * tau);
  const GridSpec grid = GridSpec::parse(options.grid);
  const MonotonicityAudit audit = run_audit(path, grid);

  std::vector<std::pair<std::string, std::string>> files{
      {"audit.json", audit_json(audit)}};
  if (options.svg) {
    files.emplace_back("curves.svg",
                       lassopath::tools::curves_svg(sample_curve(path, grid)));
  }
  write_outputs(options, files);
  return audit.all_pass() ? 0 : kExitAuditFailed;
}

int cmd_solve(const Options& options) {
  if (!(options.lambda > 0)) {
    throw Error("--lambda must be positive for solve");
  }
  const Instance instance = load_instance(options, true);
  const ProxResult result =
      proximal_solve(instance.design, *instance.response, options.lambda);

  nlohmann::json out;
  out["lambda"] = options.lambda;
  out["coefficients"] = std::vector<double>(
      result.solution.coefficients.data(),
      result.solution.coefficients.data() + result.solution.coefficients.size());
  std::vector<int> support;
  for (int j : result.solution.model.support) support.push_back(j + 1);
  out["support"] = support;
  std::vector<int> signs;
  for (Eigen::Index i = 0; i < result.solution.model.signs.size(); ++i) {
    signs.push_back(result.solution.model.signs(i) > 0 ? 1 : -1);
  }
  out["signs"] = signs;
  out["objective"] = result.solution.objective;
  out["iterations"] = result.iterations;
  out["certificate"] = {
      {"active_equality_error", result.certificate.active_equality_error},
      {"inactive_margin", result.certificate.inactive_margin},
      {"valid", result.certificate.is_valid()},
  };
  write_outputs(options, {{"solution.json", out.dump(2) + "\n"}});
  return 0;
}

nlohmann::json error_payload(const std::string& type, const std::string& what) {
  nlohmann::json payload;
  payload["error"] = type;
  payload["message"] = what;
  return payload;
}

int dispatch(const Options& options) {
  try {
    if (options.command == "generate") return cmd_generate(options);
    if (options.command == "path") return cmd_path(options);
    if (options.command == "check-gpc") return cmd_check_gpc(options);
    if (options.command == "audit") return cmd_audit(options);
    if (options.command == "solve") return cmd_solve(options);
    std::cerr << "unknown command: " << options.command << "\n";
    return kExitParseError;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitParseError;
  } catch (const DegenerateProblem& e) {
    std::cerr << e.what() << "\n";
    return kExitDegenerate;
  } catch (const CombinatorialOverflow& e) {
    std::cerr << e.what() << "\n";
    return kExitOverflow;
  } catch (const RankDeficient& e) {
    nlohmann::json payload = error_payload("RankDeficient", e.what());
    std::vector<int> support;
    for (int j : e.support) support.push_back(j + 1);
    payload["support"] = support;
    std::cerr << payload.dump() << "\n";
    return kExitSolverError;
  } catch (const IterationCap& e) {
    std::cerr << error_payload("IterationCap", e.what()).dump() << "\n";
    return kExitSolverError;
  } catch (const NotConverged& e) {
    nlohmann::json payload = error_payload("NotConverged", e.what());
    payload["best_violation"] = e.best_certificate.violation();
    std::cerr << payload.dump() << "\n";
    return kExitSolverError;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitParseError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise-affine l1-penalized least-squares paths with "
               "optimality certificates and design diagnostics"};
  app.require_subcommand(1);

  Options options;
  const auto add_common = [&](CLI::App* cmd, bool with_solver_flags) {
    cmd->add_option("--design", options.design_path, "Design matrix CSV");
    cmd->add_option("--response", options.response_path, "Response CSV");
    cmd->add_option("--synthetic", options.synthetic,
                    "Synthetic instance N,P,S,SIGMA");
    cmd->add_option("--seed", options.seed, "Random seed");
    cmd->add_option("--out", options.out_dir, "Output directory");
    cmd->add_option("--jobs", options.jobs, "Worker thread bound");
    if (with_solver_flags) {
      cmd->add_option("--lambda-min-factor", options.lambda_min_factor,
                      "Path stops at this fraction of tau");
      cmd->add_option("--grid", options.grid,
                      "log:COUNT | explicit:v1,v2,... | midpoints");
    }
  };

  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic instance");
  add_common(generate, false);

  CLI::App* path = app.add_subcommand("path", "Compute the full solution path");
  add_common(path, true);

  CLI::App* check = app.add_subcommand("check-gpc", "Check the general position condition");
  add_common(check, false);
  check->add_option("--gpc-budget", options.gpc_budget, "Pair budget");
  check->add_flag("--exhaustive", options.exhaustive,
                  "Fail instead of sampling when over budget");

  CLI::App* audit = app.add_subcommand("audit", "Audit the monotonicity properties");
  add_common(audit, true);
  audit->add_flag("--svg", options.svg, "Also write curves.svg");

  CLI::App* solve = app.add_subcommand("solve", "Solve a single lambda iteratively");
  add_common(solve, false);
  solve->add_option("--lambda", options.lambda, "Penalty level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << e.what() << "\n";
    return kExitParseError;
  }

  options.command = app.get_subcommands().front()->get_name();
  return dispatch(options);
}
