#include "rkr/robustness.hpp"

#include <stdexcept>

#include "rkr/errors.hpp"

namespace rkr {

Vector curve_grid(double lo, double hi, Index points) {
  if (points < 2) throw std::invalid_argument("curve_grid: need at least two points");
  if (!(hi > lo)) throw std::invalid_argument("curve_grid: hi must exceed lo");
  Vector g(points);
  for (Index i = 0; i < points; ++i)
    g(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return g;
}

SensitivityCurve sensitivity_curve(const Dataset& train, double z_x, double z_y,
                                   const Fitter& fitter, const Vector& grid) {
  train.validate();
  if (train.cols() != 1)
    throw std::invalid_argument("sensitivity_curve: 1-D feature space required");
  if (grid.size() < 1) throw std::invalid_argument("sensitivity_curve: empty grid");

  Dataset with = train;
  const Index n0 = train.rows();
  with.features.conservativeResize(n0 + 1, 1);
  with.targets.conservativeResize(n0 + 1);
  with.features(n0, 0) = z_x;
  with.targets(n0) = z_y;

  Predictor f_with, f_without;
  try {
    f_with = fitter.fit(with);
  } catch (const std::exception& e) {
    throw NumericalError(std::string("sensitivity_curve: fit with contaminant failed: ") + e.what());
  }
  try {
    f_without = fitter.fit(train);
  } catch (const std::exception& e) {
    throw NumericalError(std::string("sensitivity_curve: fit without contaminant failed: ") + e.what());
  }

  Matrix gx(grid.size(), 1);
  gx.col(0) = grid;

  SensitivityCurve sc;
  sc.grid = grid;
  sc.n = n0 + 1;
  sc.contaminant_x = z_x;
  sc.contaminant_y = z_y;
  sc.values = static_cast<double>(sc.n) * (f_with(gx) - f_without(gx));
  return sc;
}

std::vector<std::vector<double>> weight_trajectory(const FitTrace& trace,
                                                   const std::vector<Index>& indices) {
  const Index n = trace.final_weights.size();
  for (Index idx : indices)
    if (idx < 0 || idx >= n)
      throw std::invalid_argument("weight_trajectory: index out of range");

  std::vector<std::vector<double>> series(indices.size());
  for (std::size_t s = 0; s < indices.size(); ++s) {
    series[s].reserve(trace.iterations.size() + 1);
    for (const auto& rec : trace.iterations) series[s].push_back(rec.weights(indices[s]));
    series[s].push_back(trace.final_weights(indices[s]));
  }
  return series;
}

std::vector<ComparisonRow> compare_fits(
    const std::vector<std::pair<std::string, Predictor>>& models, const Dataset& test) {
  test.validate();
  std::vector<ComparisonRow> rows;
  rows.reserve(models.size());
  for (const auto& [label, predict] : models)
    rows.push_back({label, metrics(test.targets, predict(test.features))});
  return rows;
}

}  // namespace rkr
