#include "rkrcli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "rkr/errors.hpp"
#include "rkr/eval.hpp"
#include "rkr/rng.hpp"
#include "rkr/robustness.hpp"

#include "rkrcli/experiments.hpp"
#include "rkrcli/manifest.hpp"

namespace rkrcli {

using namespace rkr;
namespace fs = std::filesystem;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd m;
  if (xs.empty()) return m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

// --------------------------------------------------------------------------
// weights: loss/gradient/weight curves, one CSV per parameter setting.

std::vector<fs::path> cmd_weights(const WeightsCmd& cfg) {
  Stopwatch watch;
  if (!(cfg.step > 0.0) || !(cfg.max > cfg.min))
    throw std::invalid_argument("weights: need max > min and step > 0");
  const fs::path dir = prepare_out_dir(cfg.out);

  struct Setting {
    std::string tag;
    WeightSpec spec;
  };
  std::vector<Setting> settings;
  const std::string& fam = cfg.weight_family;
  if (fam == "sigmoid") {
    for (double lam : cfg.lambdas)
      settings.push_back({"_lambda" + fmt(lam), WeightSpec::sigmoid_induced(lam)});
  } else if (fam == "huber" || fam == "tukey" || fam == "andrew" || fam == "welsch") {
    for (double k : cfg.ks) settings.push_back({"_k" + fmt(k), make_weight_spec(fam, k)});
  } else if (fam == "hampel") {
    settings.push_back({"_a" + fmt(cfg.hampel_a) + "_b" + fmt(cfg.hampel_b) + "_c" + fmt(cfg.hampel_c),
                        WeightSpec::hampel(cfg.hampel_a, cfg.hampel_b, cfg.hampel_c)});
  } else if (fam == "gauss" || fam == "laplace") {
    settings.push_back({"", make_weight_spec(fam, 0.0)});
  } else {
    throw std::invalid_argument("weights: unknown family " + fam);
  }
  if (settings.empty()) throw std::invalid_argument("weights: empty parameter list");

  const auto points = static_cast<long>(std::floor((cfg.max - cfg.min) / cfg.step + 1e-9)) + 1;

  std::vector<fs::path> outputs;
  for (auto& s : settings) {
    s.spec.weight_floor = cfg.weight_floor;
    s.spec.validate();
    const fs::path path = dir / ("weights_" + fam + s.tag + ".csv");
    CsvWriter csv(path, {"x", "loss", "gradient", "weight"});
    for (long i = 0; i < points; ++i) {
      const double x = cfg.min + static_cast<double>(i) * cfg.step;
      csv.row({fmt(x), fmt(loss(s.spec, x)), fmt(gradient(s.spec, x)), fmt(weight(s.spec, x))});
    }
    outputs.push_back(path);
  }

  RunManifest manifest{"weights", nlohmann::json(cfg), outputs, watch.seconds()};
  outputs.push_back(manifest.write(dir));
  return outputs;
}

// --------------------------------------------------------------------------
// synthetic: the sinc protocol, Table-3-shaped summary.

std::vector<fs::path> cmd_synthetic(const SyntheticCmd& cfg) {
  Stopwatch watch;
  const fs::path dir = prepare_out_dir(cfg.out);

  const auto rows = run_sinc_protocol(cfg);
  const bool svr = cfg.model == "lssvr" || cfg.model == "irls-svr";

  const fs::path runs_path = dir / "runs.csv";
  {
    CsvWriter csv(runs_path, {"seed", "method", "rmse", "mae"});
    for (const auto& r : rows)
      csv.row({std::to_string(r.seed), r.method, fmt(r.rmse), fmt(r.mae)});
  }

  const fs::path summary_path = dir / "summary.csv";
  {
    CsvWriter csv(summary_path, {"method", "c", "gamma", "lambda", "hidden_frac",
                                 "rmse_mean", "rmse_sd", "mae_mean", "mae_sd"});
    const std::vector<std::string> methods =
        svr ? std::vector<std::string>{"ls-svr", "w-ls-svr", "irls-svr"}
            : std::vector<std::string>{"elm", "w-elm", "irls-elm"};
    for (const auto& method : methods) {
      std::vector<double> rmse, mae;
      for (const auto& r : rows)
        if (r.method == method) {
          rmse.push_back(r.rmse);
          mae.push_back(r.mae);
        }
      const MeanSd rm = mean_sd(rmse), am = mean_sd(mae);
      const bool weighted = method.rfind("ls-svr", 0) != 0 && method != "elm";
      csv.row({method, fmt(cfg.c), svr ? fmt(cfg.gamma) : "",
               weighted ? fmt(cfg.lambda) : "", svr ? "" : fmt(cfg.hidden_frac),
               fmt(rm.mean), fmt(rm.sd), fmt(am.mean), fmt(am.sd)});
    }
  }

  nlohmann::json config(cfg);
  config["seeds"] = resolve_seeds(cfg);  // record the resolved list
  RunManifest manifest{"synthetic", config, {runs_path, summary_path}, watch.seconds()};
  std::vector<fs::path> outputs{runs_path, summary_path};
  outputs.push_back(manifest.write(dir));
  return outputs;
}

// --------------------------------------------------------------------------
// benchmark: CSV ingestion, grid search on clean data, 5x10-fold evaluation
// on clean and contaminated variants with the clean-optimal parameters.

namespace {

FitterFactory benchmark_factory(const BenchmarkCmd& cfg) {
  const std::string& model = cfg.model;
  const std::string family = cfg.weight_family;
  const int max_iter = cfg.max_iter;
  const double tol = cfg.tol;
  const std::uint64_t hseed = derive_seed(cfg.seed, "hidden");
  return [model, family, max_iter, tol, hseed](const GridPoint& p) -> Fitter {
    IrlsConfig irls;
    irls.max_iter = max_iter;
    irls.tol = tol;
    irls.weight_spec = make_weight_spec(family, p.lambda);
    if (model == "lssvr") return svr_fitter(model, p.C, p.gamma);
    if (model == "irls-svr") return irls_svr_fitter(model, p.C, p.gamma, irls);
    if (model == "elm") return elm_fitter(model, p.C, p.L_fraction, hseed);
    if (model == "irls-elm") return irls_elm_fitter(model, p.C, p.L_fraction, hseed, irls);
    throw std::invalid_argument("unknown model kind: " + model);
  };
}

}  // namespace

std::vector<fs::path> cmd_benchmark(const BenchmarkCmd& cfg_in) {
  Stopwatch watch;
  BenchmarkCmd cfg = cfg_in;
  cfg.resolve_grids();
  const fs::path dir = prepare_out_dir(cfg.out);

  const bool svr = cfg.model == "lssvr" || cfg.model == "irls-svr";
  const bool elm = cfg.model == "elm" || cfg.model == "irls-elm";
  if (!svr && !elm) throw std::invalid_argument("unknown model kind: " + cfg.model);

  // Target column: numeric string means 0-based index.
  ColumnRef target;
  if (!cfg.target.empty() &&
      cfg.target.find_first_not_of("0123456789") == std::string::npos) {
    try {
      target = static_cast<Index>(std::stol(cfg.target));
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("benchmark: target index out of range: " + cfg.target);
    }
  } else {
    target = cfg.target;
  }

  Dataset data = load_csv(cfg.data, target, cfg.header);
  auto [scaled, params] = scale_unit_interval(data);
  double target_min = 0.0, target_span = 1.0;
  if (cfg.scale_targets) {
    target_min = scaled.targets.minCoeff();
    target_span = scaled.targets.maxCoeff() - target_min;
    if (target_span == 0.0) target_span = 1.0;
    scaled.targets = (scaled.targets.array() - target_min) / target_span;
  }

  GridSpec grid;
  grid.C_values = cfg.c_grid;
  grid.gamma_values = svr ? cfg.gamma_grid : std::vector<double>{1.0};
  grid.lambda_values = (cfg.model == "irls-svr" || cfg.model == "irls-elm")
                           ? cfg.lambda_grid
                           : std::vector<double>{4.0};
  grid.L_fractions = elm ? cfg.hidden_frac_grid : std::vector<double>{0.1};

  const auto search = grid_search(benchmark_factory(cfg), grid, scaled, cfg.folds,
                                  derive_seed(cfg.seed, "grid"));

  const fs::path grid_path = dir / "grid.csv";
  {
    CsvWriter csv(grid_path, {"c", "gamma", "lambda", "hidden_frac", "rmse_mean",
                              "rmse_sd", "failed"});
    for (const auto& cell : search.table)
      csv.row({fmt(cell.point.C), fmt(cell.point.gamma), fmt(cell.point.lambda),
               fmt(cell.point.L_fraction), cell.failed ? "inf" : fmt(cell.cv.rmse.mean),
               cell.failed ? "" : fmt(cell.cv.rmse.sd), cell.failed ? "1" : "0"});
  }

  // Evaluation at the winning parameters: the plain, single-pass, and fully
  // iterated variants share them (the contaminated runs reuse clean-optimal
  // parameters rather than re-searching).
  const GridPoint best = search.best;
  IrlsConfig irls;
  irls.max_iter = cfg.max_iter;
  irls.tol = cfg.tol;
  irls.weight_spec = make_weight_spec(cfg.weight_family, best.lambda);
  IrlsConfig one_pass = irls;
  one_pass.max_iter = 1;
  const std::uint64_t hseed = derive_seed(cfg.seed, "hidden");

  std::vector<Fitter> fitters;
  if (svr) {
    fitters.push_back(svr_fitter("ls-svr", best.C, best.gamma));
    fitters.push_back(irls_svr_fitter("w-ls-svr", best.C, best.gamma, one_pass));
    fitters.push_back(irls_svr_fitter("irls-svr", best.C, best.gamma, irls));
  } else {
    fitters.push_back(elm_fitter("elm", best.C, best.L_fraction, hseed));
    fitters.push_back(irls_elm_fitter("w-elm", best.C, best.L_fraction, hseed, one_pass));
    fitters.push_back(irls_elm_fitter("irls-elm", best.C, best.L_fraction, hseed, irls));
  }

  Dataset contaminated;
  if (cfg.contaminate)
    contaminated = inject_outliers(scaled, cfg.outlier_fraction, cfg.outlier_factor,
                                   derive_seed(cfg.seed, "outliers"));

  const fs::path results_path = dir / "results.csv";
  {
    CsvWriter csv(results_path,
                  {"method", "variant", "c", "gamma", "lambda", "hidden_frac",
                   "rmse_mean", "rmse_sd", "rmse_sd_repeats", "mae_mean", "mae_sd",
                   "mre_mean", "mre_sd"});
    const auto emit = [&](const Fitter& fitter, const std::string& variant,
                          const Dataset& train_view,
                          const std::optional<Vector>& eval_targets) {
      const CvResult cv = cross_validate(fitter, train_view, cfg.folds,
                                         derive_seed(cfg.seed, "eval"), cfg.repeats,
                                         eval_targets);
      const bool weighted = fitter.label != "ls-svr" && fitter.label != "elm";
      csv.row({fitter.label, variant, fmt(best.C), svr ? fmt(best.gamma) : "",
               weighted ? fmt(best.lambda) : "", elm ? fmt(best.L_fraction) : "",
               fmt(cv.rmse.mean), fmt(cv.rmse.sd), fmt(cv.rmse.repeat_sd),
               fmt(cv.mae.mean), fmt(cv.mae.sd), fmt(cv.mre.mean), fmt(cv.mre.sd)});
    };
    for (const auto& fitter : fitters) emit(fitter, "clean", scaled, std::nullopt);
    if (cfg.contaminate) {
      // Train folds see the contaminated labels; held-out rows are scored
      // against the clean ones.
      const std::optional<Vector> clean_targets = scaled.targets;
      for (const auto& fitter : fitters)
        emit(fitter, "contaminated", contaminated, clean_targets);
    }
  }

  nlohmann::json config(cfg);
  nlohmann::json extra;
  extra["best"] = {{"c", best.C}, {"gamma", best.gamma}, {"lambda", best.lambda},
                   {"hidden-frac", best.L_fraction}};
  extra["rows"] = data.rows();
  extra["features"] = data.cols();
  extra["provenance"] = {{"source", scaled.provenance.source},
                         {"scaling", scaled.provenance.scaling}};
  if (cfg.scale_targets) extra["target-scale"] = {{"min", target_min}, {"span", target_span}};
  if (cfg.contaminate) extra["outlier-indices"] = contaminated.provenance.outlier_indices;
  config["resolved"] = extra;

  RunManifest manifest{"benchmark", config, {grid_path, results_path}, watch.seconds()};
  std::vector<fs::path> outputs{grid_path, results_path};
  outputs.push_back(manifest.write(dir));
  return outputs;
}

// --------------------------------------------------------------------------
// sensitivity: regression curves, outlier weight trajectories, and
// per-outlier sensitivity curves for the two curve-fitting test beds.

std::vector<fs::path> cmd_sensitivity(const SensitivityCmd& cfg) {
  Stopwatch watch;
  const fs::path dir = prepare_out_dir(cfg.out);

  const SensitivityBed bed = make_sensitivity_bed(cfg.test);
  const KernelSpec kernel{cfg.gamma};
  IrlsConfig irls;
  irls.max_iter = cfg.max_iter;
  irls.tol = cfg.tol;
  irls.weight_spec = make_weight_spec(cfg.weight_family, cfg.lambda);

  const SvrModel ls_model = fit_lssvr(bed.data, cfg.c, kernel);
  const auto [irls_model, trace] = fit_irls_svr(bed.data, cfg.c, kernel, irls);

  const Vector grid = curve_grid(-1.0, 1.0, cfg.grid_points);
  Matrix grid_x(grid.size(), 1);
  grid_x.col(0) = grid;

  std::vector<fs::path> outputs;

  // Regression curves.
  {
    const fs::path path = dir / ("curve_" + bed.id + ".csv");
    CsvWriter csv(path, {"x", "true", "ls_svr", "irls_svr"});
    const auto truth = bed.true_curve(grid);
    const Vector ls_pred = predict_svr(ls_model, grid_x);
    const Vector irls_pred = predict_svr(irls_model, grid_x);
    for (Index i = 0; i < grid.size(); ++i)
      csv.row({fmt(grid(i)), fmt(truth[static_cast<std::size_t>(i)]), fmt(ls_pred(i)),
               fmt(irls_pred(i))});
    outputs.push_back(path);
  }

  // Outlier weight trajectories plus the clean-sample median per iteration.
  {
    const fs::path path = dir / ("trajectories_" + bed.id + ".csv");
    std::vector<std::string> header{"iteration"};
    for (std::size_t j = 0; j < bed.outliers.size(); ++j)
      header.push_back("outlier" + std::to_string(j + 1) + "_weight");
    header.push_back("clean_median");
    CsvWriter csv(path, header);

    const auto series = weight_trajectory(trace, bed.outlier_indices);
    const Index n_clean = bed.data.rows() - static_cast<Index>(bed.outliers.size());
    const auto clean_median = [&](const Vector& weights) {
      std::vector<double> w(static_cast<std::size_t>(n_clean));
      for (Index i = 0; i < n_clean; ++i) w[static_cast<std::size_t>(i)] = weights(i);
      return median(std::move(w));
    };
    for (std::size_t k = 0; k <= trace.iterations.size(); ++k) {
      std::vector<std::string> cells{std::to_string(k)};
      for (const auto& s : series) cells.push_back(fmt(s[k]));
      cells.push_back(fmt(clean_median(k < trace.iterations.size()
                                           ? trace.iterations[k].weights
                                           : trace.final_weights)));
      csv.row(cells);
    }
    outputs.push_back(path);
  }

  // Per-outlier sensitivity curves for both models.
  {
    const Fitter ls = svr_fitter("ls-svr", cfg.c, cfg.gamma);
    const Fitter ir = irls_svr_fitter("irls-svr", cfg.c, cfg.gamma, irls);
    for (std::size_t j = 0; j < bed.outliers.size(); ++j) {
      std::vector<Index> keep;
      for (Index i = 0; i < bed.data.rows(); ++i)
        if (i != bed.outlier_indices[j]) keep.push_back(i);
      const Dataset without = bed.data.subset(keep);
      const auto [zx, zy] = bed.outliers[j];
      const auto sc_ls = sensitivity_curve(without, zx, zy, ls, grid);
      const auto sc_ir = sensitivity_curve(without, zx, zy, ir, grid);

      const fs::path path =
          dir / ("sensitivity_" + bed.id + "_outlier" + std::to_string(j + 1) + ".csv");
      CsvWriter csv(path, {"x", "sc_ls_svr", "sc_irls_svr"});
      for (Index i = 0; i < grid.size(); ++i)
        csv.row({fmt(grid(i)), fmt(sc_ls.values(i)), fmt(sc_ir.values(i))});
      outputs.push_back(path);
    }
  }

  RunManifest manifest{"sensitivity", nlohmann::json(cfg), outputs, watch.seconds()};
  outputs.push_back(manifest.write(dir));
  return outputs;
}

}  // namespace rkrcli
