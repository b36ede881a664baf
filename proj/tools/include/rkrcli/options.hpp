#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace rkrcli {

// Every command config round-trips through JSON. A config file (--config)
// supplies defaults; command-line flags override it. Manifests embed the
// fully resolved config, so a manifest is itself a valid config file.

struct WeightsCmd {
  std::string weight_family = "sigmoid";
  std::vector<double> lambdas = {1.0, 3.0, 5.0};  // sigmoid: one file per value
  std::vector<double> ks = {1.345};               // huber/tukey/andrew/welsch
  double hampel_a = 1.0, hampel_b = 2.0, hampel_c = 3.0;
  double weight_floor = 1e-8;
  double min = -3.0, max = 3.0, step = 0.01;
  std::string out = "out";
};

struct SyntheticCmd {
  std::string noise = "gauss";  // gauss | laplace | chisq4 | none
  std::string model = "irls-svr";  // lssvr | irls-svr | elm | irls-elm
  std::string weight_family = "sigmoid";
  double c = 1.0;
  double gamma = 0.125;
  double lambda = 4.0;
  double hidden_frac = 0.1;
  int max_iter = 50;
  double tol = 1e-6;
  bool contaminate = false;      // 20% of training labels x10
  int n_train = 500;
  int n_test = 300;
  std::uint64_t seed = 1;        // base seed when --seeds is not given
  int runs = 10;
  std::vector<std::uint64_t> seeds;  // explicit seed list; overrides seed/runs
  std::string out = "out";
};

struct BenchmarkCmd {
  std::string data;              // CSV path
  std::string target = "0";      // column name, or 0-based index if numeric
  bool header = false;
  std::string model = "irls-svr";
  std::string weight_family = "sigmoid";
  std::vector<double> c_grid;       // defaults set in resolve_grids()
  std::vector<double> gamma_grid;
  std::vector<double> lambda_grid;
  std::vector<double> hidden_frac_grid;
  bool contaminate = false;
  double outlier_fraction = 0.2;
  double outlier_factor = 10.0;
  bool scale_targets = false;
  int folds = 10;
  int repeats = 5;
  int max_iter = 50;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::string out = "out";

  void resolve_grids();  // fill empty grids with the powers-of-two defaults
};

struct SensitivityCmd {
  std::string test = "test1";    // test1 | test2
  std::string weight_family = "sigmoid";
  double c = 100.0;
  double gamma = 10.0;
  double lambda = 4.0;
  int max_iter = 50;
  double tol = 1e-6;
  int grid_points = 401;
  std::string out = "out";
};

void to_json(nlohmann::json& j, const WeightsCmd& c);
void from_json(const nlohmann::json& j, WeightsCmd& c);
void to_json(nlohmann::json& j, const SyntheticCmd& c);
void from_json(const nlohmann::json& j, SyntheticCmd& c);
void to_json(nlohmann::json& j, const BenchmarkCmd& c);
void from_json(const nlohmann::json& j, BenchmarkCmd& c);
void to_json(nlohmann::json& j, const SensitivityCmd& c);
void from_json(const nlohmann::json& j, SensitivityCmd& c);

/// Load a config file into `cfg`. Accepts either a bare config object or a
/// run manifest (whose "config" member is used). Unknown keys are ignored;
/// missing keys keep their current values.
template <typename Cmd>
void load_config_file(const std::string& path, Cmd& cfg);

}  // namespace rkrcli
