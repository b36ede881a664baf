#pragma once

#include <cstdint>
#include <utility>

#include "rkr/data.hpp"
#include "rkr/irls.hpp"

namespace rkr {

enum class Activation { LogisticSigmoid };

/// Single-hidden-layer network with random, frozen hidden parameters and
/// closed-form output weights: f(x) = h(x) beta, h_j(x) = sigmoid(a_j.x + b_j).
/// Hidden parameters are fully determined by (seed, L, n).
struct ElmModel {
  Matrix hidden_weights;  // L x n rows a_j
  Vector hidden_biases;   // L
  Activation activation = Activation::LogisticSigmoid;
  Vector beta;            // L output weights
  double C = 1.0;
  std::uint64_t seed = 0;
};

/// Draw hidden weights (L x n, row-major fill) then biases (L), all i.i.d.
/// uniform on [-1, 1] from Rng(seed). Refits with the same seed reproduce
/// the parameters bit-exactly.
std::pair<Matrix, Vector> init_hidden(Index L, Index n, std::uint64_t seed);

/// N x L hidden-layer output H_ij = sigmoid(a_j . x_i + b_j), entries in (0,1).
Matrix hidden_output(const Matrix& hidden_weights, const Vector& hidden_biases,
                     const Matrix& X);
Matrix hidden_output(const ElmModel& model, const Matrix& X);

/// Weighted regularized solve with D = diag(d), d >= 0:
///   N >= L:  beta = (I/C + H^T D H)^-1 H^T D Y
///   N <  L:  beta = H^T D^1/2 (I/C + D^1/2 H H^T D^1/2)^-1 D^1/2 Y
/// (the two branches agree where both apply).
Vector solve_weighted_elm(const Matrix& H, const Vector& Y, const Vector& d, double C);

/// Regularized ELM (unit weights).
ElmModel fit_elm(const Dataset& data, double C, Index L, std::uint64_t seed);

/// Iteratively reweighted ELM with D_k = diag(v(xi^(k))); stops when the
/// squared beta change drops below cfg.tol or after cfg.max_iter solves.
std::pair<ElmModel, FitTrace> fit_irls_elm(const Dataset& data, double C, Index L,
                                           std::uint64_t seed, const IrlsConfig& cfg);

Vector predict_elm(const ElmModel& model, const Matrix& X);

/// Monitored regularized risk of an ELM iterate:
///   R = (1/(N C)) ||beta||^2 + (1/N) sum_i loss(xi_i).
double elm_risk(const Vector& beta, const Vector& residuals, double C,
                const WeightSpec& weight_spec);

}  // namespace rkr
