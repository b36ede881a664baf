#pragma once

#include <string>
#include <vector>

#include "rkr/data.hpp"
#include "rkr/eval.hpp"
#include "rkr/fitter.hpp"
#include "rkr/irls.hpp"

namespace rkr {

/// Finite-sample influence proxy: SC(g) = n * (f_with(g) - f_without(g)) on a
/// 1-D evaluation grid, where f_with is fitted on train + {z} and n = |train|+1.
struct SensitivityCurve {
  Vector grid;            // evaluation abscissae
  Vector values;          // n * (f_with - f_without)
  double contaminant_x = 0.0;
  double contaminant_y = 0.0;
  Index n = 0;            // contaminated-set size used for scaling

  double max_abs() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

/// Fit once with and once without the added point z = (z_x, z_y), evaluate
/// both decision functions on the grid. 1-D feature space only.
/// Fitter failures propagate annotated with which of the two fits failed.
SensitivityCurve sensitivity_curve(const Dataset& train, double z_x, double z_y,
                                   const Fitter& fitter, const Vector& grid);

/// Equispaced default grid over [lo, hi] with `points` entries.
Vector curve_grid(double lo, double hi, Index points = 401);

/// v(xi_i^(k)) across iterations (plus the final model's weights) for the
/// flagged sample indices. Throws std::invalid_argument on out-of-range index.
std::vector<std::vector<double>> weight_trajectory(const FitTrace& trace,
                                                   const std::vector<Index>& indices);

struct ComparisonRow {
  std::string label;
  MetricSet metrics;
};

/// Score each labelled predictor on a shared test set.
std::vector<ComparisonRow> compare_fits(
    const std::vector<std::pair<std::string, Predictor>>& models, const Dataset& test);

}  // namespace rkr
