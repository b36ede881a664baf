#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rkr/data.hpp"
#include "rkr/fitter.hpp"

namespace rkr {

struct MetricSet {
  double rmse = 0.0;
  double mae = 0.0;
  double mre = 0.0;              // mean |(y - yhat)/y| over |y| > 1e-12
  Index mre_excluded_count = 0;  // targets too close to zero for relative error
};

/// Throws std::invalid_argument on empty input or length mismatch.
MetricSet metrics(const Vector& y_true, const Vector& y_pred);

/// Seeded permutation of 0..N-1 split into k folds with sizes differing by
/// at most one. Throws std::invalid_argument unless 2 <= k <= N.
std::vector<std::vector<Index>> kfold_indices(Index N, int k, std::uint64_t seed);

struct CvMetric {
  double mean = 0.0;
  double sd = 0.0;         // sample sd across all k*repeats fold scores
  double repeat_sd = 0.0;  // sample sd across the per-repetition means
};

struct CvResult {
  CvMetric rmse, mae, mre;
  int folds = 0;
  int repeats = 0;
};

/// k-fold cross validation, repeated `repeats` times with fold seeds derived
/// from `seed`. When `eval_targets` is set, held-out rows are scored against
/// it instead of data.targets (used to train on contaminated labels while
/// evaluating against the clean ones). Fit failures propagate annotated with
/// the repetition and fold index.
CvResult cross_validate(const Fitter& fitter, const Dataset& data, int k,
                        std::uint64_t seed, int repeats = 1,
                        const std::optional<Vector>& eval_targets = std::nullopt);

/// Cartesian hyperparameter grid. Lists that do not apply to a model family
/// are passed as single-element placeholders.
struct GridSpec {
  std::vector<double> C_values;
  std::vector<double> gamma_values;
  std::vector<double> lambda_values;
  std::vector<double> L_fractions;  // ELM hidden-node count as a fraction of N

  void validate() const;
};

struct GridPoint {
  double C = 1.0;
  double gamma = 0.125;
  double lambda = 4.0;
  double L_fraction = 0.1;
};

struct GridCell {
  GridPoint point;
  CvResult cv;
  bool failed = false;  // failed cells score +inf RMSE, search continues
};

struct GridSearchResult {
  GridPoint best;
  CvResult best_cv;
  std::vector<GridCell> table;
};

using FitterFactory = std::function<Fitter(const GridPoint&)>;

/// Exhaustive search over the grid by mean CV RMSE; ties broken by smaller
/// (C, gamma, lambda, L_fraction) in that order.
GridSearchResult grid_search(const FitterFactory& factory, const GridSpec& grid,
                             const Dataset& data, int k, std::uint64_t seed);

}  // namespace rkr
