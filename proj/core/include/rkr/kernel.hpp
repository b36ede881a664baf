#pragma once

#include <Eigen/Core>

namespace rkr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Gaussian kernel K(x, x') = exp(-gamma * ||x - x'||^2), gamma = 1/(2 sigma^2).
struct KernelSpec {
  double gamma = 0.125;

  /// Throws std::invalid_argument unless gamma is finite and > 0.
  void validate() const;
};

/// N x N kernel matrix of the rows of X. Symmetric, unit diagonal.
/// Throws std::invalid_argument on non-finite input.
Matrix gram(const Matrix& X, const KernelSpec& spec);

/// M x N cross-kernel: entry (i,j) = K(Xa_i, Xb_j).
/// Throws std::invalid_argument on column-count mismatch or non-finite input.
Matrix cross(const Matrix& Xa, const Matrix& Xb, const KernelSpec& spec);

}  // namespace rkr
