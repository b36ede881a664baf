#include "rkr/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace rkr {

void KernelSpec::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("KernelSpec: gamma must be finite and > 0");
}

namespace {

void require_finite(const Matrix& X, const char* what) {
  if (!X.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace

Matrix gram(const Matrix& X, const KernelSpec& spec) {
  spec.validate();
  if (X.rows() < 1) throw std::invalid_argument("gram: need at least one row");
  require_finite(X, "gram");

  const Index n = X.rows();
  Matrix K(n, n);
  for (Index i = 0; i < n; ++i) {
    K(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      const double d2 = (X.row(i) - X.row(j)).squaredNorm();
      const double k = std::exp(-spec.gamma * d2);
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

Matrix cross(const Matrix& Xa, const Matrix& Xb, const KernelSpec& spec) {
  spec.validate();
  if (Xa.cols() != Xb.cols())
    throw std::invalid_argument("cross: feature dimension mismatch");
  require_finite(Xa, "cross");
  require_finite(Xb, "cross");

  Matrix K(Xa.rows(), Xb.rows());
  for (Index i = 0; i < Xa.rows(); ++i)
    for (Index j = 0; j < Xb.rows(); ++j)
      K(i, j) = std::exp(-spec.gamma * (Xa.row(i) - Xb.row(j)).squaredNorm());
  return K;
}

}  // namespace rkr
