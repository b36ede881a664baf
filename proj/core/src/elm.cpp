#include "rkr/elm.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

#include "rkr/errors.hpp"
#include "rkr/rng.hpp"

namespace rkr {

namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

Vector llt_solve_refined(const Eigen::LLT<Matrix>& llt, const Matrix& A, const Vector& rhs) {
  Vector x = llt.solve(rhs);
  x += llt.solve(rhs - A * x);
  return x;
}

}  // namespace

std::pair<Matrix, Vector> init_hidden(Index L, Index n, std::uint64_t seed) {
  if (L < 1 || n < 1) throw std::invalid_argument("init_hidden: L and n must be >= 1");
  Rng rng(seed);
  Matrix W(L, n);
  for (Index i = 0; i < L; ++i)
    for (Index j = 0; j < n; ++j) W(i, j) = rng.uniform_symmetric();
  Vector b(L);
  for (Index i = 0; i < L; ++i) b(i) = rng.uniform_symmetric();
  return {std::move(W), std::move(b)};
}

Matrix hidden_output(const Matrix& hidden_weights, const Vector& hidden_biases,
                     const Matrix& X) {
  if (X.cols() != hidden_weights.cols())
    throw std::invalid_argument("hidden_output: feature dimension mismatch");
  if (hidden_biases.size() != hidden_weights.rows())
    throw std::invalid_argument("hidden_output: bias length mismatch");
  Matrix H = X * hidden_weights.transpose();
  H.rowwise() += hidden_biases.transpose();
  return H.unaryExpr([](double t) { return sigmoid(t); });
}

Matrix hidden_output(const ElmModel& model, const Matrix& X) {
  return hidden_output(model.hidden_weights, model.hidden_biases, X);
}

Vector solve_weighted_elm(const Matrix& H, const Vector& Y, const Vector& d, double C) {
  const Index N = H.rows(), L = H.cols();
  if (Y.size() != N || d.size() != N)
    throw std::invalid_argument("solve_weighted_elm: size mismatch");
  if (!(C > 0.0) || !std::isfinite(C))
    throw std::invalid_argument("solve_weighted_elm: C must be > 0");
  for (Index i = 0; i < N; ++i)
    if (!(d(i) >= 0.0) || !std::isfinite(d(i)))
      throw std::invalid_argument("solve_weighted_elm: weights must be finite and >= 0");

  const auto fail = [&](const char* which) {
    std::ostringstream os;
    os << "solve_weighted_elm: Cholesky failed (" << which << ", N=" << N << ", L=" << L << ")";
    throw NumericalError(os.str());
  };

  if (N >= L) {
    Matrix A = H.transpose() * d.asDiagonal() * H;
    A.diagonal().array() += 1.0 / C;
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success) fail("normal equations");
    return llt_solve_refined(llt, A, H.transpose() * (d.asDiagonal() * Y));
  }

  // N < L: symmetrized form of beta = H^T (I/C + D H H^T)^-1 D Y.
  const Vector s = d.array().sqrt();
  const Matrix Hs = s.asDiagonal() * H;
  Matrix M = Hs * Hs.transpose();
  M.diagonal().array() += 1.0 / C;
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success) fail("dual form");
  const Vector u = llt_solve_refined(llt, M, (s.array() * Y.array()).matrix());
  return Hs.transpose() * u;
}

ElmModel fit_elm(const Dataset& data, double C, Index L, std::uint64_t seed) {
  data.validate();
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("fit_elm: C must be > 0");
  if (L < 1) throw std::invalid_argument("fit_elm: L must be >= 1");

  ElmModel model;
  std::tie(model.hidden_weights, model.hidden_biases) = init_hidden(L, data.cols(), seed);
  model.C = C;
  model.seed = seed;
  const Matrix H = hidden_output(model, data.features);
  model.beta = solve_weighted_elm(H, data.targets, Vector::Ones(data.rows()), C);
  return model;
}

double elm_risk(const Vector& beta, const Vector& residuals, double C,
                const WeightSpec& weight_spec) {
  const auto n = static_cast<double>(residuals.size());
  double emp = 0.0;
  for (Index i = 0; i < residuals.size(); ++i) emp += loss(weight_spec, residuals(i));
  return beta.squaredNorm() / (n * C) + emp / n;
}

std::pair<ElmModel, FitTrace> fit_irls_elm(const Dataset& data, double C, Index L,
                                           std::uint64_t seed, const IrlsConfig& cfg) {
  data.validate();
  cfg.validate();
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("fit_irls_elm: C must be > 0");
  if (L < 1) throw std::invalid_argument("fit_irls_elm: L must be >= 1");

  const Index n = data.rows();
  const Vector& Y = data.targets;

  ElmModel model;
  std::tie(model.hidden_weights, model.hidden_biases) = init_hidden(L, data.cols(), seed);
  model.C = C;
  model.seed = seed;
  const Matrix H = hidden_output(model, data.features);

  Vector beta = cfg.init == IrlsInit::UnweightedSolve
                    ? solve_weighted_elm(H, Y, Vector::Ones(n), C)
                    : Vector::Zero(L);

  FitTrace trace;
  for (int k = 0; k < cfg.max_iter; ++k) {
    const Vector residuals = Y - H * beta;

    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = weight(cfg.weight_spec, residuals(i));

    IterationRecord rec;
    rec.residuals = residuals;
    rec.weights = v;
    rec.risk = elm_risk(beta, residuals, C, cfg.weight_spec);

    // Infinite weights (Laplace at a zero residual) would poison H^T D H.
    Vector d = v.array().min(1e18);
    Vector beta_next = solve_weighted_elm(H, Y, d, C);
    rec.param_change_sq = (beta - beta_next).squaredNorm();
    if (std::isnan(rec.param_change_sq))
      throw NumericalError("fit_irls_elm: non-finite coefficient change");

    trace.iterations.push_back(std::move(rec));
    beta = std::move(beta_next);

    if (trace.iterations.back().param_change_sq < cfg.tol) {
      trace.stop = StopReason::Converged;
      break;
    }
  }

  trace.final_residuals = Y - H * beta;
  trace.final_weights.resize(n);
  for (Index i = 0; i < n; ++i)
    trace.final_weights(i) = weight(cfg.weight_spec, trace.final_residuals(i));
  trace.final_risk = elm_risk(beta, trace.final_residuals, C, cfg.weight_spec);

  model.beta = std::move(beta);
  return {std::move(model), std::move(trace)};
}

Vector predict_elm(const ElmModel& model, const Matrix& X) {
  if (X.cols() != model.hidden_weights.cols())
    throw std::invalid_argument("predict_elm: feature dimension mismatch");
  return hidden_output(model, X) * model.beta;
}

}  // namespace rkr
