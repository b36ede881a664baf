#pragma once

#include <utility>

#include "rkr/data.hpp"
#include "rkr/irls.hpp"
#include "rkr/kernel.hpp"

namespace rkr {

/// Fitted LS-SVR: f(x) = sum_i alpha_i K(x, x_i) + bias.
/// The dual coefficients satisfy sum(alpha) = 0 (bias row of the KKT system).
struct SvrModel {
  Matrix train_inputs;  // N x n copy of the training features
  Vector alpha;         // N dual coefficients
  double bias = 0.0;
  KernelSpec kernel;
  double C = 1.0;
};

/// Solve the bordered system
///   [0  1^T] [b    ]   [0]
///   [1  K+V] [alpha] = [Y]
/// with V = diag(Vdiag) supplied by the caller. The bias is eliminated by a
/// Schur complement against the SPD core K+V (one factorization, two solves).
/// Throws std::invalid_argument for non-positive Vdiag entries and
/// NumericalError if the factorization or the residual check fails.
std::pair<Vector, double> solve_weighted_system(const Matrix& K, const Vector& Y,
                                                const Vector& Vdiag);

/// Plain LS-SVR: the system above with Vdiag = (1/C) * ones.
SvrModel fit_lssvr(const Dataset& data, double C, const KernelSpec& kernel);

/// Iteratively reweighted LS-SVR. Each pass computes training residuals,
/// forms Vdiag_i = 1/(C v(xi_i)), and re-solves; stops when the squared
/// alpha change drops below cfg.tol or after cfg.max_iter solves.
std::pair<SvrModel, FitTrace> fit_irls_svr(const Dataset& data, double C,
                                           const KernelSpec& kernel,
                                           const IrlsConfig& cfg);

/// Evaluate f on the rows of X.
Vector predict_svr(const SvrModel& model, const Matrix& X);

/// max_i |alpha_i - C v(xi_i) xi_i| with xi = Y - f(X_train): the stationarity
/// gap of the reweighted KKT system. Small at a converged fixed point.
double kkt_residual(const SvrModel& model, const Dataset& data,
                    const WeightSpec& weight_spec);

/// Monitored regularized risk of an SVR iterate:
///   R = (1/(N C)) alpha^T K alpha + (1/N) sum_i loss(xi_i).
double svr_risk(const Matrix& K, const Vector& alpha, const Vector& residuals,
                double C, const WeightSpec& weight_spec);

}  // namespace rkr
