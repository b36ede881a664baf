#include "rkrcli/options.hpp"

#include <cmath>
#include <fstream>

#include "rkr/errors.hpp"

namespace rkrcli {

namespace {

// Keep current value when the key is absent.
template <typename T>
void get(const nlohmann::json& j, const char* key, T& into) {
  if (auto it = j.find(key); it != j.end()) into = it->get<T>();
}

std::vector<double> pow2_range(int lo, int hi) {
  std::vector<double> v;
  for (int i = lo; i <= hi; ++i) v.push_back(std::ldexp(1.0, i));
  return v;
}

}  // namespace

void BenchmarkCmd::resolve_grids() {
  if (c_grid.empty()) c_grid = pow2_range(-4, 8);
  if (gamma_grid.empty()) gamma_grid = pow2_range(-3, 3);
  if (lambda_grid.empty()) lambda_grid = pow2_range(-3, 3);
  if (hidden_frac_grid.empty()) hidden_frac_grid = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
}

void to_json(nlohmann::json& j, const WeightsCmd& c) {
  j = {{"weight-family", c.weight_family}, {"lambda", c.lambdas}, {"k", c.ks},
       {"hampel-a", c.hampel_a},           {"hampel-b", c.hampel_b},
       {"hampel-c", c.hampel_c},           {"weight-floor", c.weight_floor},
       {"min", c.min},                     {"max", c.max},
       {"step", c.step},                   {"out", c.out}};
}

void from_json(const nlohmann::json& j, WeightsCmd& c) {
  get(j, "weight-family", c.weight_family);
  get(j, "lambda", c.lambdas);
  get(j, "k", c.ks);
  get(j, "hampel-a", c.hampel_a);
  get(j, "hampel-b", c.hampel_b);
  get(j, "hampel-c", c.hampel_c);
  get(j, "weight-floor", c.weight_floor);
  get(j, "min", c.min);
  get(j, "max", c.max);
  get(j, "step", c.step);
  get(j, "out", c.out);
}

void to_json(nlohmann::json& j, const SyntheticCmd& c) {
  j = {{"noise", c.noise},           {"model", c.model},
       {"weight-family", c.weight_family},
       {"c", c.c},                   {"gamma", c.gamma},
       {"lambda", c.lambda},         {"hidden-frac", c.hidden_frac},
       {"max-iter", c.max_iter},     {"tol", c.tol},
       {"contaminate", c.contaminate},
       {"n-train", c.n_train},       {"n-test", c.n_test},
       {"seed", c.seed},             {"runs", c.runs},
       {"seeds", c.seeds},           {"out", c.out}};
}

void from_json(const nlohmann::json& j, SyntheticCmd& c) {
  get(j, "noise", c.noise);
  get(j, "model", c.model);
  get(j, "weight-family", c.weight_family);
  get(j, "c", c.c);
  get(j, "gamma", c.gamma);
  get(j, "lambda", c.lambda);
  get(j, "hidden-frac", c.hidden_frac);
  get(j, "max-iter", c.max_iter);
  get(j, "tol", c.tol);
  get(j, "contaminate", c.contaminate);
  get(j, "n-train", c.n_train);
  get(j, "n-test", c.n_test);
  get(j, "seed", c.seed);
  get(j, "runs", c.runs);
  get(j, "seeds", c.seeds);
  get(j, "out", c.out);
}

void to_json(nlohmann::json& j, const BenchmarkCmd& c) {
  j = {{"data", c.data},
       {"target", c.target},
       {"header", c.header},
       {"model", c.model},
       {"weight-family", c.weight_family},
       {"c-grid", c.c_grid},
       {"gamma-grid", c.gamma_grid},
       {"lambda-grid", c.lambda_grid},
       {"hidden-frac-grid", c.hidden_frac_grid},
       {"contaminate", c.contaminate},
       {"outlier-fraction", c.outlier_fraction},
       {"outlier-factor", c.outlier_factor},
       {"scale-targets", c.scale_targets},
       {"folds", c.folds},
       {"repeats", c.repeats},
       {"max-iter", c.max_iter},
       {"tol", c.tol},
       {"seed", c.seed},
       {"out", c.out}};
}

void from_json(const nlohmann::json& j, BenchmarkCmd& c) {
  get(j, "data", c.data);
  get(j, "target", c.target);
  get(j, "header", c.header);
  get(j, "model", c.model);
  get(j, "weight-family", c.weight_family);
  get(j, "c-grid", c.c_grid);
  get(j, "gamma-grid", c.gamma_grid);
  get(j, "lambda-grid", c.lambda_grid);
  get(j, "hidden-frac-grid", c.hidden_frac_grid);
  get(j, "contaminate", c.contaminate);
  get(j, "outlier-fraction", c.outlier_fraction);
  get(j, "outlier-factor", c.outlier_factor);
  get(j, "scale-targets", c.scale_targets);
  get(j, "folds", c.folds);
  get(j, "repeats", c.repeats);
  get(j, "max-iter", c.max_iter);
  get(j, "tol", c.tol);
  get(j, "seed", c.seed);
  get(j, "out", c.out);
}

void to_json(nlohmann::json& j, const SensitivityCmd& c) {
  j = {{"test", c.test},       {"weight-family", c.weight_family},
       {"c", c.c},             {"gamma", c.gamma},
       {"lambda", c.lambda},   {"max-iter", c.max_iter},
       {"tol", c.tol},         {"grid-points", c.grid_points},
       {"out", c.out}};
}

void from_json(const nlohmann::json& j, SensitivityCmd& c) {
  get(j, "test", c.test);
  get(j, "weight-family", c.weight_family);
  get(j, "c", c.c);
  get(j, "gamma", c.gamma);
  get(j, "lambda", c.lambda);
  get(j, "max-iter", c.max_iter);
  get(j, "tol", c.tol);
  get(j, "grid-points", c.grid_points);
  get(j, "out", c.out);
}

template <typename Cmd>
void load_config_file(const std::string& path, Cmd& cfg) {
  std::ifstream in(path);
  if (!in) throw rkr::IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw rkr::CsvParseError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (j.contains("config")) j = j["config"];  // accept a manifest directly
  from_json(j, cfg);
}

template void load_config_file<WeightsCmd>(const std::string&, WeightsCmd&);
template void load_config_file<SyntheticCmd>(const std::string&, SyntheticCmd&);
template void load_config_file<BenchmarkCmd>(const std::string&, BenchmarkCmd&);
template void load_config_file<SensitivityCmd>(const std::string&, SensitivityCmd&);

}  // namespace rkrcli
