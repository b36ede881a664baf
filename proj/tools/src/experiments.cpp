#include "rkrcli/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "rkr/eval.hpp"
#include "rkr/rng.hpp"

namespace rkrcli {

using namespace rkr;

WeightSpec make_weight_spec(const std::string& family, double param) {
  if (family == "gauss") return WeightSpec::gauss();
  if (family == "laplace") return WeightSpec::laplace();
  if (family == "huber") return WeightSpec::huber(param);
  if (family == "hampel") return WeightSpec::hampel(1.0, 2.0, 3.0);
  if (family == "tukey") return WeightSpec::tukey(param);
  if (family == "andrew") return WeightSpec::andrew(param);
  if (family == "welsch") return WeightSpec::welsch(param);
  if (family == "sigmoid") return WeightSpec::sigmoid_induced(param);
  throw std::invalid_argument("unknown weight family: " + family);
}

Index hidden_count(double fraction, Index n_train) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("hidden fraction must be in (0, 1]");
  const auto L = static_cast<Index>(std::floor(fraction * static_cast<double>(n_train) + 0.5));
  return std::max<Index>(L, 1);
}

Fitter svr_fitter(const std::string& label, double C, double gamma) {
  return {label, [C, gamma](const Dataset& train) {
            SvrModel model = fit_lssvr(train, C, KernelSpec{gamma});
            return Predictor([model = std::move(model)](const Matrix& X) {
              return predict_svr(model, X);
            });
          }};
}

Fitter irls_svr_fitter(const std::string& label, double C, double gamma,
                       const IrlsConfig& cfg) {
  return {label, [C, gamma, cfg](const Dataset& train) {
            auto [model, trace] = fit_irls_svr(train, C, KernelSpec{gamma}, cfg);
            return Predictor([model = std::move(model)](const Matrix& X) {
              return predict_svr(model, X);
            });
          }};
}

Fitter elm_fitter(const std::string& label, double C, double hidden_frac,
                  std::uint64_t seed) {
  return {label, [C, hidden_frac, seed](const Dataset& train) {
            ElmModel model = fit_elm(train, C, hidden_count(hidden_frac, train.rows()), seed);
            return Predictor([model = std::move(model)](const Matrix& X) {
              return predict_elm(model, X);
            });
          }};
}

Fitter irls_elm_fitter(const std::string& label, double C, double hidden_frac,
                       std::uint64_t seed, const IrlsConfig& cfg) {
  return {label, [C, hidden_frac, seed, cfg](const Dataset& train) {
            auto [model, trace] =
                fit_irls_elm(train, C, hidden_count(hidden_frac, train.rows()), seed, cfg);
            return Predictor([model = std::move(model)](const Matrix& X) {
              return predict_elm(model, X);
            });
          }};
}

std::vector<std::uint64_t> resolve_seeds(const SyntheticCmd& cfg) {
  if (!cfg.seeds.empty()) return cfg.seeds;
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < cfg.runs; ++i) seeds.push_back(cfg.seed + static_cast<std::uint64_t>(i));
  return seeds;
}

namespace {

NoiseSpec noise_for(const std::string& kind, std::uint64_t seed) {
  if (kind == "gauss") return NoiseSpec::gaussian(0.0, 0.3, seed);
  if (kind == "laplace") return NoiseSpec::laplace(0.0, 1.0, seed);
  if (kind == "chisq4") return NoiseSpec::chi_squared(4, seed);
  throw std::invalid_argument("unknown noise kind: " + kind);
}

}  // namespace

std::vector<SincRun> run_sinc_protocol(const SyntheticCmd& cfg) {
  const auto seeds = resolve_seeds(cfg);
  if (seeds.empty()) throw std::invalid_argument("synthetic: empty seed list");
  const bool svr = cfg.model == "lssvr" || cfg.model == "irls-svr";
  if (!svr && cfg.model != "elm" && cfg.model != "irls-elm")
    throw std::invalid_argument("unknown model kind: " + cfg.model);

  IrlsConfig irls;
  irls.max_iter = cfg.max_iter;
  irls.tol = cfg.tol;
  irls.weight_spec = make_weight_spec(cfg.weight_family, cfg.lambda);
  IrlsConfig one_pass = irls;
  one_pass.max_iter = 1;

  std::vector<SincRun> rows;
  for (std::uint64_t s : seeds) {
    auto [train, test] = gen_sinc(cfg.n_train, cfg.n_test, s);
    if (cfg.noise != "none") {
      const NoiseSpec noise = noise_for(cfg.noise, derive_seed(s, "noise"));
      train.targets = add_noise(train.targets, noise);
      train.provenance.noise = noise.describe();
    }
    if (cfg.contaminate)
      train = inject_outliers(train, 0.2, 10.0, derive_seed(s, "outliers"));

    const auto score = [&](const std::string& method, const Vector& pred) {
      const MetricSet m = metrics(test.targets, pred);
      rows.push_back({s, method, m.rmse, m.mae});
    };

    if (svr) {
      const KernelSpec kernel{cfg.gamma};
      score("ls-svr", predict_svr(fit_lssvr(train, cfg.c, kernel), test.features));
      score("w-ls-svr",
            predict_svr(fit_irls_svr(train, cfg.c, kernel, one_pass).first, test.features));
      score("irls-svr",
            predict_svr(fit_irls_svr(train, cfg.c, kernel, irls).first, test.features));
    } else {
      const Index L = hidden_count(cfg.hidden_frac, train.rows());
      const std::uint64_t hseed = derive_seed(s, "hidden");
      score("elm", predict_elm(fit_elm(train, cfg.c, L, hseed), test.features));
      score("w-elm",
            predict_elm(fit_irls_elm(train, cfg.c, L, hseed, one_pass).first, test.features));
      score("irls-elm",
            predict_elm(fit_irls_elm(train, cfg.c, L, hseed, irls).first, test.features));
    }
  }
  return rows;
}

std::vector<double> SensitivityBed::true_curve(const Vector& grid) const {
  std::vector<double> y(static_cast<std::size_t>(grid.size()));
  for (Index i = 0; i < grid.size(); ++i) {
    const double z = grid(i);
    y[static_cast<std::size_t>(i)] =
        id == "test1" ? std::sin(z) * std::cos(z * z)
                      : 15.0 * std::pow(z * z - 1.0, 2.0) * std::pow(z, 4.0) * std::exp(-z);
  }
  return y;
}

SensitivityBed make_sensitivity_bed(const std::string& test_id) {
  if (test_id != "test1" && test_id != "test2")
    throw std::invalid_argument("unknown test id: " + test_id + " (expected test1 or test2)");

  SensitivityBed bed;
  bed.id = test_id;
  bed.outliers = test_id == "test1"
                     ? std::vector<std::pair<double, double>>{{-0.8, -5.0}, {0.8, 5.0}}
                     : std::vector<std::pair<double, double>>{
                           {0.0, 5.0}, {0.1, 5.0}, {0.7, 5.0}, {0.8, 5.0}};

  const Index n_clean = 100;
  const Index n = n_clean + static_cast<Index>(bed.outliers.size());
  bed.data.features.resize(n, 1);
  bed.data.targets.resize(n);
  Vector grid(n_clean);
  for (Index i = 0; i < n_clean; ++i)
    grid(i) = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_clean - 1);
  const auto truth = bed.true_curve(grid);
  for (Index i = 0; i < n_clean; ++i) {
    bed.data.features(i, 0) = grid(i);
    bed.data.targets(i) = truth[static_cast<std::size_t>(i)];
  }
  for (std::size_t j = 0; j < bed.outliers.size(); ++j) {
    const Index row = n_clean + static_cast<Index>(j);
    bed.data.features(row, 0) = bed.outliers[j].first;
    bed.data.targets(row) = bed.outliers[j].second;
    bed.outlier_indices.push_back(row);
  }
  bed.data.provenance.source = "sensitivity:" + test_id;
  bed.data.provenance.outlier_indices = bed.outlier_indices;
  return bed;
}

}  // namespace rkrcli
