#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rkr/kernel.hpp"  // Matrix/Vector aliases

namespace rkr {

/// How a dataset came to be: generator or file, transforms applied, seeds.
/// Serialized into run manifests by the CLI.
struct Provenance {
  std::string source;                       // "sinc", "csv:<path>", ...
  std::string scaling;                      // "", "unit-interval", ...
  std::string noise;                        // "", "gaussian(0,0.3)", ...
  std::vector<Index> outlier_indices;       // sorted, distinct
  std::uint64_t seed = 0;
};

struct Dataset {
  Matrix features;  // N x n
  Vector targets;   // N
  Provenance provenance;

  Index rows() const { return features.rows(); }
  Index cols() const { return features.cols(); }

  /// Throws std::invalid_argument on shape mismatch or non-finite values.
  void validate() const;

  /// Row subset (copies), keeping provenance.
  Dataset subset(const std::vector<Index>& indices) const;
};

struct NoiseSpec {
  enum class Kind { Gaussian, Laplace, ChiSquared };
  Kind kind = Kind::Gaussian;
  double mean = 0.0;      // Gaussian
  double sd = 0.3;        // Gaussian, > 0
  double location = 0.0;  // Laplace
  double scale = 1.0;     // Laplace, > 0
  int dof = 4;            // ChiSquared, >= 1
  bool center = false;    // ChiSquared: subtract the mean (= dof) if set
  std::uint64_t seed = 0;

  static NoiseSpec gaussian(double mean, double sd, std::uint64_t seed);
  static NoiseSpec laplace(double location, double scale, std::uint64_t seed);
  static NoiseSpec chi_squared(int dof, std::uint64_t seed, bool center = false);

  void validate() const;
  std::string describe() const;
};

/// sin(x)/x with the removable singularity filled: sinc(0) = 1.
double sinc(double x);

/// sinc benchmark: y = sinc(x), inputs uniform on [-10, 10]. Both splits are
/// noise-free; noise is added to the training targets separately via add_noise.
std::pair<Dataset, Dataset> gen_sinc(Index n_train, Index n_test, std::uint64_t seed);

/// y + e with e i.i.d. from the named distribution (seeded by spec.seed).
Vector add_noise(const Vector& y, const NoiseSpec& spec);

/// Multiply round(fraction*N) distinct targets (round-half-up) by `factor`,
/// chosen uniformly without replacement; indices recorded in provenance.
Dataset inject_outliers(const Dataset& data, double fraction, double factor,
                        std::uint64_t seed);

/// Target column chosen by 0-based index or by header name.
using ColumnRef = std::variant<Index, std::string>;

/// Comma-separated numeric CSV, optional single header line, no quoting.
/// Throws IoError (missing file) or CsvParseError (bad cell, with row/column).
Dataset load_csv(const std::string& path, const ColumnRef& target_column, bool header);

/// Per-column affine transform fitted by scale_unit_interval.
struct ScaleParams {
  Vector col_min;               // per-column minimum
  Vector col_span;              // max - min; 0 marks a constant column
  std::vector<bool> constant;   // constant columns map to 0.5

  Matrix apply(const Matrix& X) const;
  Matrix invert(const Matrix& X) const;
};

/// Min-max scale every feature column to [0, 1]; constant columns map to 0.5.
std::pair<Dataset, ScaleParams> scale_unit_interval(const Dataset& data);

}  // namespace rkr
