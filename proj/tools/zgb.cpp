#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "zgb/cli_io.hpp"
#include "zgb/errors.hpp"
#include "zgb/null_conditions.hpp"

namespace cli = zgb::cli;

namespace {

struct Flags {
  std::string config_file;
  std::string precision;
  double tol = 0.0;
  int bernoulli_depth = 0;
  int nodes = -1;
  int max_nodes = 0;
  std::string output_dir;
  std::uint64_t seed = 0;
};

cli::RunConfig resolve(const CLI::App& app, const Flags& f) {
  cli::RunConfig config = cli::load_config(f.config_file, std::getenv("ZGB_CONFIG"));
  nlohmann::json overrides = nlohmann::json::object();
  if (app.count("--precision")) overrides["precision_mode"] = f.precision;
  if (app.count("--tol")) overrides["tol"] = f.tol;
  if (app.count("--bernoulli-depth")) overrides["bernoulli_depth"] = f.bernoulli_depth;
  if (app.count("--nodes")) overrides["quadrature_nodes"] = f.nodes;
  if (app.count("--max-nodes")) overrides["max_nodes"] = f.max_nodes;
  if (app.count("--output-dir")) overrides["output_dir"] = f.output_dir;
  if (app.count("--seed")) overrides["seed"] = f.seed;
  cli::apply_config_json(config, overrides);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gram-Backlund zeta evaluation, Laurent decomposition about s = 1/2 and null-condition residuals"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config_file, "JSON config file");
  app.add_option("--precision", flags.precision, "standard | extended");
  app.add_option("--tol", flags.tol, "target absolute tolerance");
  app.add_option("--bernoulli-depth", flags.bernoulli_depth, "largest Bernoulli index kept");
  app.add_option("--nodes", flags.nodes, "quadrature nodes (0 = automatic)");
  app.add_option("--max-nodes", flags.max_nodes, "node limit for adaptive extraction");
  app.add_option("--output-dir,-o", flags.output_dir, "directory for output files");
  app.add_option("--seed", flags.seed, "seed for randomized verification grids");

  std::string literal;
  auto* eval = app.add_subcommand("eval", "evaluate Z_GB(s)");
  eval->add_option("s", literal, "complex literal X+Yi")->required();

  cli::CoeffsRequest coeffs_req;
  std::string format = "json";
  auto* coeffs = app.add_subcommand("coeffs", "Laurent coefficients about s = 1/2");
  auto* decompose = app.add_subcommand("decompose", "symmetric / anti-symmetric split of the coefficients");
  for (auto* sub : {coeffs, decompose}) {
    sub->add_option("function", coeffs_req.function, "fgb | q")->required();
    sub->add_option("--rho", coeffs_req.rho, "circle radius")->required();
    sub->add_option("--window", coeffs_req.window, "symmetric exponent window (default adaptive for fgb, 40 for q)");
    sub->add_option("--format", format, "json | csv");
  }

  double rho_min = 0, rho_max = 0, step = zgb::kDefaultScanStep;
  auto* scan = app.add_subcommand("scan", "locate critical-line zeros with residuals");
  scan->add_option("rho_min", rho_min)->required();
  scan->add_option("rho_max", rho_max)->required();
  scan->add_option("step", step, "grid step");

  double rho = 1.0;
  int count = 16;
  auto* quartet = app.add_subcommand("quartet-map", "residual map over admissible quartet angles");
  quartet->add_option("--rho", rho)->required();
  quartet->add_option("--alpha-count", count, "number of angles");

  int points = 360;
  auto* figures = app.add_subcommand("figures", "data for the figure series on the circle");
  figures->add_option("--rho", rho, "circle radius");
  figures->add_option("--points", points, "samples on the circle (even)");

  std::string suite = "all";
  std::string fault = "none";
  auto* verify = app.add_subcommand("verify", "run invariant suites");
  verify->add_option("suite", suite, "identity | symmetry | orthogonality | oracle | all");
  verify->add_option("--inject-fault", fault, "none | bernoulli");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const cli::RunConfig config = resolve(app, flags);
    cli::CommandResult result;
    if (*eval) {
      result = cli::cmd_eval(literal, config);
    } else if (*coeffs || *decompose) {
      coeffs_req.format = cli::parse_format(format);
      result = *coeffs ? cli::cmd_coeffs(coeffs_req, config) : cli::cmd_decompose(coeffs_req, config);
    } else if (*scan) {
      result = cli::cmd_scan(rho_min, rho_max, step, config);
    } else if (*quartet) {
      result = cli::cmd_quartet_map(rho, count, config);
    } else if (*figures) {
      result = cli::cmd_figures(rho, points, config);
    } else if (*verify) {
      if (fault != "none" && fault != "bernoulli") throw zgb::UsageError("unknown fault '" + fault + "'");
      result = cli::cmd_verify(suite, fault == "bernoulli" ? cli::Fault::bernoulli : cli::Fault::none, config);
    }
    cli::write_outputs(result, config.output_dir);
    std::cout << result.stdout_text;
    if (result.exit_code != 0) std::cerr << "zgb: verification failed\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "zgb: " << e.what() << "\n";
    return cli::exit_code_for(e);
  }
}
