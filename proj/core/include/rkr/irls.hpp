#pragma once

#include <vector>

#include "rkr/kernel.hpp"
#include "rkr/weights.hpp"

namespace rkr {

enum class IrlsInit {
  UnweightedSolve,  // first pass with unit weights (plain LS-SVR / ELM)
  Zero,             // all coefficients zero
};

struct IrlsConfig {
  int max_iter = 50;      // M
  double tol = 1e-6;      // epsilon, on the squared coefficient change
  WeightSpec weight_spec;
  IrlsInit init = IrlsInit::UnweightedSolve;

  void validate() const;
};

enum class StopReason { Converged, MaxIter };

/// One reweighted solve: the residuals and weights that formed the system,
/// the monitored regularized risk of the model *before* the solve, and the
/// squared coefficient change produced by the solve.
struct IterationRecord {
  Vector residuals;        // xi^(k)
  Vector weights;          // v(xi^(k)), clamped by weight_floor
  double risk = 0.0;       // R_k = quad_k/(N*C) + mean loss(xi^(k))
  double param_change_sq = 0.0;  // ||coef_k - coef_{k+1}||^2
};

/// Audit trail of an IRLS fit. iterations.size() <= max_iter. The final_*
/// fields describe the returned model, so the monitored risk sequence is
/// iterations[0].risk, ..., iterations.back().risk, final_risk.
struct FitTrace {
  std::vector<IterationRecord> iterations;
  Vector final_residuals;
  Vector final_weights;
  double final_risk = 0.0;
  StopReason stop = StopReason::MaxIter;

  /// R_0, ..., R_T including the final model. Each solve minimizes a
  /// majorizing surrogate of this risk, so the sequence is non-increasing
  /// (up to numerical slack).
  std::vector<double> risk_sequence() const;
};

}  // namespace rkr
