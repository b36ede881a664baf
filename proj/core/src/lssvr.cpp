#include "rkr/lssvr.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

#include "rkr/errors.hpp"

namespace rkr {

void IrlsConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("IrlsConfig: max_iter must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("IrlsConfig: tol must be > 0");
  weight_spec.validate();
}

std::vector<double> FitTrace::risk_sequence() const {
  std::vector<double> r;
  r.reserve(iterations.size() + 1);
  for (const auto& it : iterations) r.push_back(it.risk);
  r.push_back(final_risk);
  return r;
}

namespace {

// Weights can be +inf (Laplace at a zero residual); cap them so the
// reweighted diagonal stays strictly positive.
constexpr double kWeightCap = 1e18;

void check_system_inputs(const Matrix& K, const Vector& Y, const Vector& Vdiag) {
  if (K.rows() != K.cols()) throw std::invalid_argument("solve_weighted_system: K not square");
  if (Y.size() != K.rows() || Vdiag.size() != K.rows())
    throw std::invalid_argument("solve_weighted_system: size mismatch");
  for (Index i = 0; i < Vdiag.size(); ++i)
    if (!(Vdiag(i) > 0.0) || !std::isfinite(Vdiag(i)))
      throw std::invalid_argument("solve_weighted_system: Vdiag entries must be positive and finite");
}

}  // namespace

std::pair<Vector, double> solve_weighted_system(const Matrix& K, const Vector& Y,
                                                const Vector& Vdiag) {
  check_system_inputs(K, Y, Vdiag);
  const Index n = K.rows();

  Matrix A = K;
  A.diagonal() += Vdiag;

  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << "solve_weighted_system: Cholesky failed (N=" << n
       << ", min Vdiag=" << Vdiag.minCoeff() << ", max Vdiag=" << Vdiag.maxCoeff() << ")";
    throw NumericalError(os.str());
  }

  // One step of iterative refinement keeps the residual near machine level
  // even when clamped weights make the diagonal badly scaled.
  const auto solve_refined = [&](const Vector& rhs) {
    Vector x = llt.solve(rhs);
    x += llt.solve(rhs - A * x);
    return x;
  };

  const Vector ones = Vector::Ones(n);
  const Vector Ai_y = solve_refined(Y);
  const Vector Ai_1 = solve_refined(ones);

  const double denom = ones.dot(Ai_1);
  if (!(denom > 0.0) || !std::isfinite(denom))
    throw NumericalError("solve_weighted_system: degenerate bias elimination (1^T A^-1 1 <= 0)");

  const double bias = ones.dot(Ai_y) / denom;
  Vector alpha = Ai_y - bias * Ai_1;

  const double yscale = std::max(Y.norm(), 1e-300);
  const double resid = (A * alpha + bias * ones - Y).norm();
  if (!std::isfinite(resid) || resid > 1e-8 * std::max(1.0, yscale)) {
    std::ostringstream os;
    os << "solve_weighted_system: residual " << resid << " exceeds tolerance for ||Y||=" << yscale;
    throw NumericalError(os.str());
  }
  return {std::move(alpha), bias};
}

SvrModel fit_lssvr(const Dataset& data, double C, const KernelSpec& kernel) {
  data.validate();
  kernel.validate();
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("fit_lssvr: C must be > 0");
  if (data.rows() < 2) throw std::invalid_argument("fit_lssvr: need at least two samples");

  const Matrix K = gram(data.features, kernel);
  const Vector Vdiag = Vector::Constant(data.rows(), 1.0 / C);
  auto [alpha, bias] = solve_weighted_system(K, data.targets, Vdiag);

  SvrModel model;
  model.train_inputs = data.features;
  model.alpha = std::move(alpha);
  model.bias = bias;
  model.kernel = kernel;
  model.C = C;
  return model;
}

double svr_risk(const Matrix& K, const Vector& alpha, const Vector& residuals,
                double C, const WeightSpec& weight_spec) {
  const auto n = static_cast<double>(residuals.size());
  double emp = 0.0;
  for (Index i = 0; i < residuals.size(); ++i) emp += loss(weight_spec, residuals(i));
  return alpha.dot(K * alpha) / (n * C) + emp / n;
}

std::pair<SvrModel, FitTrace> fit_irls_svr(const Dataset& data, double C,
                                           const KernelSpec& kernel,
                                           const IrlsConfig& cfg) {
  data.validate();
  kernel.validate();
  cfg.validate();
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("fit_irls_svr: C must be > 0");
  if (data.rows() < 2) throw std::invalid_argument("fit_irls_svr: need at least two samples");

  const Index n = data.rows();
  const Vector& Y = data.targets;
  const Matrix K = gram(data.features, kernel);

  Vector alpha;
  double bias;
  if (cfg.init == IrlsInit::UnweightedSolve) {
    std::tie(alpha, bias) = solve_weighted_system(K, Y, Vector::Constant(n, 1.0 / C));
  } else {
    alpha = Vector::Zero(n);
    bias = 0.0;
  }

  FitTrace trace;
  for (int k = 0; k < cfg.max_iter; ++k) {
    const Vector residuals = Y - (K * alpha + Vector::Constant(n, bias));

    Vector v(n), Vdiag(n);
    for (Index i = 0; i < n; ++i) {
      v(i) = weight(cfg.weight_spec, residuals(i));
      Vdiag(i) = 1.0 / (C * std::min(v(i), kWeightCap));
    }

    IterationRecord rec;
    rec.residuals = residuals;
    rec.weights = v;
    rec.risk = svr_risk(K, alpha, residuals, C, cfg.weight_spec);

    auto [alpha_next, bias_next] = solve_weighted_system(K, Y, Vdiag);
    rec.param_change_sq = (alpha - alpha_next).squaredNorm();
    if (std::isnan(rec.param_change_sq))
      throw NumericalError("fit_irls_svr: non-finite coefficient change");

    trace.iterations.push_back(std::move(rec));
    alpha = std::move(alpha_next);
    bias = bias_next;

    if (trace.iterations.back().param_change_sq < cfg.tol) {
      trace.stop = StopReason::Converged;
      break;
    }
  }

  trace.final_residuals = Y - (K * alpha + Vector::Constant(n, bias));
  trace.final_weights.resize(n);
  for (Index i = 0; i < n; ++i)
    trace.final_weights(i) = weight(cfg.weight_spec, trace.final_residuals(i));
  trace.final_risk = svr_risk(K, alpha, trace.final_residuals, C, cfg.weight_spec);

  SvrModel model;
  model.train_inputs = data.features;
  model.alpha = std::move(alpha);
  model.bias = bias;
  model.kernel = kernel;
  model.C = C;
  return {std::move(model), std::move(trace)};
}

Vector predict_svr(const SvrModel& model, const Matrix& X) {
  if (X.cols() != model.train_inputs.cols())
    throw std::invalid_argument("predict_svr: feature dimension mismatch");
  return cross(X, model.train_inputs, model.kernel) * model.alpha +
         Vector::Constant(X.rows(), model.bias);
}

double kkt_residual(const SvrModel& model, const Dataset& data,
                    const WeightSpec& weight_spec) {
  weight_spec.validate();
  const Vector residuals = data.targets - predict_svr(model, data.features);
  double worst = 0.0;
  for (Index i = 0; i < residuals.size(); ++i) {
    const double v = std::min(weight(weight_spec, residuals(i)), kWeightCap);
    worst = std::max(worst, std::fabs(model.alpha(i) - model.C * v * residuals(i)));
  }
  return worst;
}

}  // namespace rkr
