#pragma once

// Brute-force reference solvers for checking the library's linear-algebra
// paths. Hand-rolled Gaussian elimination on plain vectors, deliberately
// independent of the Eigen factorizations used by the implementation.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rkr/kernel.hpp"

namespace oracle {

using Dense = std::vector<std::vector<double>>;

/// Solve A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(Dense A, std::vector<double> b) {
  const std::size_t n = A.size();
  if (n == 0 || b.size() != n) throw std::invalid_argument("solve_dense: bad shapes");

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[pivot][col])) pivot = r;
    if (A[pivot][col] == 0.0) throw std::runtime_error("solve_dense: singular matrix");
    std::swap(A[col], A[pivot]);
    std::swap(b[col], b[pivot]);

    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }

  std::vector<double> x(n);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= A[ri][c] * x[c];
    x[ri] = s / A[ri][ri];
  }
  return x;
}

struct SvrSolution {
  std::vector<double> alpha;
  double bias = 0.0;
};

/// Full (N+1)-dimensional bordered LS-SVR system
///   [0 1^T; 1 K+diag(V)] [b; alpha] = [0; Y], solved densely.
inline SvrSolution solve_bordered(const rkr::Matrix& K, const rkr::Vector& Y,
                                  const rkr::Vector& Vdiag) {
  const auto n = static_cast<std::size_t>(K.rows());
  Dense A(n + 1, std::vector<double>(n + 1, 0.0));
  std::vector<double> rhs(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    A[0][i + 1] = 1.0;
    A[i + 1][0] = 1.0;
    rhs[i + 1] = Y(static_cast<rkr::Index>(i));
    for (std::size_t j = 0; j < n; ++j)
      A[i + 1][j + 1] = K(static_cast<rkr::Index>(i), static_cast<rkr::Index>(j));
    A[i + 1][i + 1] += Vdiag(static_cast<rkr::Index>(i));
  }
  const auto x = solve_dense(std::move(A), std::move(rhs));
  SvrSolution s;
  s.bias = x[0];
  s.alpha.assign(x.begin() + 1, x.end());
  return s;
}

/// ELM weighted normal equations (I/C + H^T D H) beta = H^T D Y, densely.
inline std::vector<double> solve_elm_normal(const rkr::Matrix& H, const rkr::Vector& Y,
                                            const rkr::Vector& d, double C) {
  const auto N = static_cast<std::size_t>(H.rows());
  const auto L = static_cast<std::size_t>(H.cols());
  Dense A(L, std::vector<double>(L, 0.0));
  std::vector<double> rhs(L, 0.0);
  for (std::size_t i = 0; i < L; ++i) {
    A[i][i] = 1.0 / C;
    for (std::size_t j = 0; j < L; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < N; ++r)
        s += H(static_cast<rkr::Index>(r), static_cast<rkr::Index>(i)) *
             d(static_cast<rkr::Index>(r)) *
             H(static_cast<rkr::Index>(r), static_cast<rkr::Index>(j));
      A[i][j] += s;
    }
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
      s += H(static_cast<rkr::Index>(r), static_cast<rkr::Index>(i)) *
           d(static_cast<rkr::Index>(r)) * Y(static_cast<rkr::Index>(r));
    rhs[i] = s;
  }
  return solve_dense(std::move(A), std::move(rhs));
}

}  // namespace oracle
