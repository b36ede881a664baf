#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rkr/errors.hpp"

#include "rkrcli/commands.hpp"
#include "rkrcli/options.hpp"

namespace rkrcli {

namespace {

// A config file supplies defaults, so it must be applied before CLI11 binds
// flag defaults. Scan argv for the subcommand's --config ahead of parsing.
std::string find_config_arg(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

void add_weights_options(CLI::App* cmd, WeightsCmd& cfg) {
  cmd->add_option("--weight-family", cfg.weight_family,
                  "gauss|laplace|huber|hampel|tukey|andrew|welsch|sigmoid")
      ->capture_default_str();
  cmd->add_option("--lambda", cfg.lambdas, "sigmoid lambda values (one curve file each)")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--k", cfg.ks, "scale values for huber/tukey/andrew/welsch")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--hampel-a", cfg.hampel_a)->capture_default_str();
  cmd->add_option("--hampel-b", cfg.hampel_b)->capture_default_str();
  cmd->add_option("--hampel-c", cfg.hampel_c)->capture_default_str();
  cmd->add_option("--weight-floor", cfg.weight_floor)->capture_default_str();
  cmd->add_option("--min", cfg.min, "curve range lower end")->capture_default_str();
  cmd->add_option("--max", cfg.max, "curve range upper end")->capture_default_str();
  cmd->add_option("--step", cfg.step, "curve step")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output directory")->capture_default_str();
}

void add_synthetic_options(CLI::App* cmd, SyntheticCmd& cfg) {
  cmd->add_option("--noise", cfg.noise, "gauss|laplace|chisq4|none")->capture_default_str();
  cmd->add_option("--model", cfg.model, "lssvr|irls-svr|elm|irls-elm")->capture_default_str();
  cmd->add_option("--weight-family", cfg.weight_family)->capture_default_str();
  cmd->add_option("--c", cfg.c, "regularization trade-off C")->capture_default_str();
  cmd->add_option("--gamma", cfg.gamma, "Gaussian kernel gamma")->capture_default_str();
  cmd->add_option("--lambda", cfg.lambda, "weight-family parameter")->capture_default_str();
  cmd->add_option("--hidden-frac", cfg.hidden_frac, "ELM hidden nodes as fraction of N")
      ->capture_default_str();
  cmd->add_option("--max-iter", cfg.max_iter)->capture_default_str();
  cmd->add_option("--tol", cfg.tol)->capture_default_str();
  cmd->add_flag("--contaminate", cfg.contaminate, "multiply 20% of training labels by 10");
  cmd->add_option("--n-train", cfg.n_train)->capture_default_str();
  cmd->add_option("--n-test", cfg.n_test)->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "base seed")->capture_default_str();
  cmd->add_option("--runs", cfg.runs, "number of consecutive seeds")->capture_default_str();
  cmd->add_option("--seeds", cfg.seeds, "explicit seed list (overrides --seed/--runs)")
      ->delimiter(',');
  cmd->add_option("--out", cfg.out)->capture_default_str();
}

void add_benchmark_options(CLI::App* cmd, BenchmarkCmd& cfg) {
  cmd->add_option("--data", cfg.data, "input CSV path");
  cmd->add_option("--target", cfg.target, "target column (name, or 0-based index)")
      ->capture_default_str();
  cmd->add_flag("--header", cfg.header, "first CSV line is a header");
  cmd->add_option("--model", cfg.model, "lssvr|irls-svr|elm|irls-elm")->capture_default_str();
  cmd->add_option("--weight-family", cfg.weight_family)->capture_default_str();
  cmd->add_option("--c-grid", cfg.c_grid, "C grid (default 2^-4..2^8)")->delimiter(',');
  cmd->add_option("--gamma-grid", cfg.gamma_grid, "gamma grid (default 2^-3..2^3)")
      ->delimiter(',');
  cmd->add_option("--lambda-grid", cfg.lambda_grid, "lambda grid (default 2^-3..2^3)")
      ->delimiter(',');
  cmd->add_option("--hidden-frac-grid", cfg.hidden_frac_grid,
                  "ELM hidden fractions (default 5%..50%)")
      ->delimiter(',');
  cmd->add_flag("--contaminate", cfg.contaminate);
  cmd->add_option("--outlier-fraction", cfg.outlier_fraction)->capture_default_str();
  cmd->add_option("--outlier-factor", cfg.outlier_factor)->capture_default_str();
  cmd->add_flag("--scale-targets", cfg.scale_targets, "min-max scale targets to [0,1]");
  cmd->add_option("--folds", cfg.folds)->capture_default_str();
  cmd->add_option("--repeats", cfg.repeats)->capture_default_str();
  cmd->add_option("--max-iter", cfg.max_iter)->capture_default_str();
  cmd->add_option("--tol", cfg.tol)->capture_default_str();
  cmd->add_option("--seed", cfg.seed)->capture_default_str();
  cmd->add_option("--out", cfg.out)->capture_default_str();
}

void add_sensitivity_options(CLI::App* cmd, SensitivityCmd& cfg) {
  cmd->add_option("--test", cfg.test, "test1|test2")->capture_default_str();
  cmd->add_option("--weight-family", cfg.weight_family)->capture_default_str();
  cmd->add_option("--c", cfg.c)->capture_default_str();
  cmd->add_option("--gamma", cfg.gamma)->capture_default_str();
  cmd->add_option("--lambda", cfg.lambda)->capture_default_str();
  cmd->add_option("--max-iter", cfg.max_iter)->capture_default_str();
  cmd->add_option("--tol", cfg.tol)->capture_default_str();
  cmd->add_option("--grid-points", cfg.grid_points)->capture_default_str();
  cmd->add_option("--out", cfg.out)->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"rkr: robust kernel regression toolkit (IRLS on LS-SVR and ELM)"};
  app.require_subcommand(1);

  WeightsCmd weights_cfg;
  SyntheticCmd synthetic_cfg;
  BenchmarkCmd benchmark_cfg;
  SensitivityCmd sensitivity_cfg;
  std::string config_path = find_config_arg(argc, argv);

  std::function<std::vector<std::filesystem::path>()> action;

  auto* weights = app.add_subcommand("weights", "export loss/gradient/weight curves");
  auto* synthetic = app.add_subcommand("synthetic", "sinc benchmark under noise/outliers");
  auto* benchmark = app.add_subcommand("benchmark", "grid search + CV on a CSV dataset");
  auto* sensitivity =
      app.add_subcommand("sensitivity", "outlier weight trajectories and sensitivity curves");

  try {
    // The subcommand is always the first positional token; config-file
    // defaults must be in place before CLI11 binds the flag defaults.
    if (!config_path.empty() && argc > 1 && argv[1][0] != '-') {
      const std::string sub = argv[1];
      if (sub == "weights") load_config_file(config_path, weights_cfg);
      if (sub == "synthetic") load_config_file(config_path, synthetic_cfg);
      if (sub == "benchmark") load_config_file(config_path, benchmark_cfg);
      if (sub == "sensitivity") load_config_file(config_path, sensitivity_cfg);
    }
  } catch (const rkr::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }

  std::string config_sink;
  for (auto* cmd : {weights, synthetic, benchmark, sensitivity})
    cmd->add_option("--config", config_sink, "JSON config file (or a previous manifest)");

  add_weights_options(weights, weights_cfg);
  add_synthetic_options(synthetic, synthetic_cfg);
  add_benchmark_options(benchmark, benchmark_cfg);
  add_sensitivity_options(sensitivity, sensitivity_cfg);

  weights->callback([&] { action = [&] { return cmd_weights(weights_cfg); }; });
  synthetic->callback([&] { action = [&] { return cmd_synthetic(synthetic_cfg); }; });
  benchmark->callback([&] { action = [&] { return cmd_benchmark(benchmark_cfg); }; });
  sensitivity->callback([&] { action = [&] { return cmd_sensitivity(sensitivity_cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto outputs = action();
    for (const auto& p : outputs) std::cout << p.string() << '\n';
    return kExitOk;
  } catch (const rkr::CsvParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const rkr::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const rkr::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace rkrcli
