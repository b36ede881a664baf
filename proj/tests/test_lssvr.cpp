#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rkr/errors.hpp"
#include "rkr/lssvr.hpp"
#include "rkr/rng.hpp"
#include "support/oracles.hpp"

using namespace rkr;

namespace {

Dataset random_instance(std::uint64_t seed, Index n, Index dim = 1,
                        double outlier_rate = 0.0) {
  Rng rng(seed);
  Dataset d;
  d.features.resize(n, dim);
  d.targets.resize(n);
  for (Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index j = 0; j < dim; ++j) {
      d.features(i, j) = rng.uniform(-3, 3);
      s += d.features(i, j);
    }
    d.targets(i) = std::sin(s) + 0.2 * rng.normal();
    if (outlier_rate > 0.0 && rng.uniform() < outlier_rate) d.targets(i) += 8.0 * rng.normal();
  }
  return d;
}

Dataset two_point_instance() {
  Dataset d;
  d.features.resize(2, 1);
  d.features << 0.0, 1.0;
  d.targets.resize(2);
  d.targets << 0.0, 1.0;
  return d;
}

}  // namespace

TEST_CASE("fit_lssvr: frozen 3x3 bordered instance") {
  // With C = 2 and gamma = 1 the bordered matrix is exactly
  // [[0,1,1],[1,1.5,e^-1],[1,e^-1,1.5]] and rhs (0,0,1): by elimination
  // b = 1/2, alpha2 = -alpha1 = 1/(2(1.5 - e^-1)).
  const Dataset d = two_point_instance();
  const SvrModel m = fit_lssvr(d, 2.0, KernelSpec{1.0});
  const double a2 = 0.44164907712422996;  // 1/(2(1.5 - e^-1))
  CHECK(m.bias == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.alpha(1) == doctest::Approx(a2).epsilon(1e-12));
  CHECK(m.alpha(0) == doctest::Approx(-a2).epsilon(1e-12));

  // Same instance against the dense oracle, C = 1 and C = 2.
  for (double C : {1.0, 2.0}) {
    const SvrModel mc = fit_lssvr(d, C, KernelSpec{1.0});
    const Matrix K = gram(d.features, KernelSpec{1.0});
    const auto ref = oracle::solve_bordered(K, d.targets, Vector::Constant(2, 1.0 / C));
    CHECK(mc.bias == doctest::Approx(ref.bias).epsilon(1e-12));
    for (Index i = 0; i < 2; ++i)
      CHECK(mc.alpha(i) == doctest::Approx(ref.alpha[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("solve_weighted_system: frozen weighted instance and reductions") {
  const Dataset d = two_point_instance();
  const Matrix K = gram(d.features, KernelSpec{1.0});

  Vector vd(2);
  vd << 2.0, 2.0;
  const auto [alpha, bias] = solve_weighted_system(K, d.targets, vd);
  CHECK(bias == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(alpha(1) == doctest::Approx(0.18996090369907989).epsilon(1e-12));  // 1/(2(3-e^-1))

  // Unit weights 1/C reduce exactly to fit_lssvr's system.
  const double C = 3.0;
  const auto [a_sys, b_sys] = solve_weighted_system(K, d.targets, Vector::Constant(2, 1.0 / C));
  const SvrModel m = fit_lssvr(d, C, KernelSpec{1.0});
  CHECK((m.alpha - a_sys).cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.bias == b_sys);

  Vector bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(solve_weighted_system(K, d.targets, bad), std::invalid_argument);
  bad << 1.0, -2.0;
  CHECK_THROWS_AS(solve_weighted_system(K, d.targets, bad), std::invalid_argument);
}

TEST_CASE("solve_weighted_system: enlarging one Vdiag entry shrinks that alpha") {
  const Dataset d = random_instance(8, 12);
  const Matrix K = gram(d.features, KernelSpec{0.7});
  Vector vd = Vector::Constant(12, 0.5);
  const auto [a1, b1] = solve_weighted_system(K, d.targets, vd);
  vd(4) *= 2.0;
  const auto [a2, b2] = solve_weighted_system(K, d.targets, vd);
  CHECK(std::fabs(a2(4)) < std::fabs(a1(4)));
}

TEST_CASE("fit_lssvr: constant targets give alpha = 0, bias = c") {
  const double c = 3.25;
  Dataset d = random_instance(21, 15, 2);
  d.targets.setConstant(c);
  const SvrModel m = fit_lssvr(d, 4.0, KernelSpec{0.5});
  CHECK(m.alpha.cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(m.bias == doctest::Approx(c).epsilon(1e-10));
}

TEST_CASE("fit_lssvr: sum(alpha) = 0 and oracle equivalence on random instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Rng rng(seed * 1000);
    const Index n = 3 + static_cast<Index>(rng.below(6));  // N <= 8
    const Dataset d = random_instance(seed, n, 1 + static_cast<Index>(rng.below(2)));
    const double C = std::exp(rng.uniform(-2, 3));
    const KernelSpec kernel{0.2 + rng.uniform()};

    const SvrModel m = fit_lssvr(d, C, kernel);
    CHECK(std::fabs(m.alpha.sum()) <=
          1e-8 * std::max(1e-12, m.alpha.cwiseAbs().sum()));

    const Matrix K = gram(d.features, kernel);
    const auto ref = oracle::solve_bordered(K, d.targets, Vector::Constant(n, 1.0 / C));
    CHECK(std::fabs(m.bias - ref.bias) <= 1e-9);
    for (Index i = 0; i < n; ++i)
      CHECK(std::fabs(m.alpha(i) - ref.alpha[static_cast<std::size_t>(i)]) <= 1e-9);
  }
}

TEST_CASE("predict_svr: direct formula cases") {
  Matrix train(2, 1);
  train << -1.0, 1.0;
  SvrModel m;
  m.train_inputs = train;
  m.alpha.resize(2);
  m.alpha << 1.0, -1.0;
  m.bias = 0.5;
  m.kernel = KernelSpec{0.9};
  m.C = 1.0;

  Matrix x(1, 1);
  x << 0.3;
  const double want = std::exp(-0.9 * std::pow(0.3 + 1.0, 2)) -
                      std::exp(-0.9 * std::pow(0.3 - 1.0, 2)) + 0.5;
  CHECK(predict_svr(m, x)(0) == doctest::Approx(want).epsilon(1e-15));

  m.alpha.setZero();
  m.bias = -2.0;
  Matrix xs(5, 1);
  xs << -2, -1, 0, 1, 2;
  const Vector p = predict_svr(m, xs);
  for (Index i = 0; i < 5; ++i) CHECK(p(i) == -2.0);

  Matrix wrong(1, 2);
  wrong.setZero();
  CHECK_THROWS_AS(predict_svr(m, wrong), std::invalid_argument);
}

TEST_CASE("predict_svr: training-point prediction matches the oracle reconstruction") {
  const Dataset d = two_point_instance();
  const double C = 2.0;
  const SvrModel m = fit_lssvr(d, C, KernelSpec{1.0});
  const Matrix K = gram(d.features, KernelSpec{1.0});
  const auto ref = oracle::solve_bordered(K, d.targets, Vector::Constant(2, 1.0 / C));
  const Vector pred = predict_svr(m, d.features);
  for (Index i = 0; i < 2; ++i) {
    double want = ref.bias;
    for (Index j = 0; j < 2; ++j) want += ref.alpha[static_cast<std::size_t>(j)] * K(i, j);
    CHECK(pred(i) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("fit_irls_svr: Gauss weights converge in one step to fit_lssvr") {
  for (std::uint64_t seed : {3u, 9u, 27u}) {
    const Dataset d = random_instance(seed, 25, 1, 0.1);
    const double C = 2.0;
    const KernelSpec kernel{0.6};
    IrlsConfig cfg;
    cfg.weight_spec = WeightSpec::gauss();
    const auto [m, trace] = fit_irls_svr(d, C, kernel, cfg);
    const SvrModel plain = fit_lssvr(d, C, kernel);
    CHECK((m.alpha - plain.alpha).cwiseAbs().maxCoeff() <=
          1e-10 * std::max(1.0, plain.alpha.cwiseAbs().maxCoeff()));
    CHECK(std::fabs(m.bias - plain.bias) <= 1e-10 * std::max(1.0, std::fabs(plain.bias)));
    CHECK(trace.iterations.size() == 1);
    CHECK(trace.stop == StopReason::Converged);
    for (const auto& rec : trace.iterations)
      CHECK((rec.weights.array() == 1.0).all());
  }
}

TEST_CASE("fit_irls_svr: max_iter = 1 is exactly one reweighted solve") {
  const Dataset d = random_instance(5, 20, 1, 0.15);
  const double C = 3.0;
  const KernelSpec kernel{0.8};
  IrlsConfig cfg;
  cfg.weight_spec = WeightSpec::sigmoid_induced(3.0);
  cfg.max_iter = 1;

  const auto [m, trace] = fit_irls_svr(d, C, kernel, cfg);
  CHECK(trace.iterations.size() == 1);

  // Reconstruct by hand: plain solve, residuals, one weighted solve.
  const Matrix K = gram(d.features, kernel);
  const auto [a0, b0] = solve_weighted_system(K, d.targets, Vector::Constant(20, 1.0 / C));
  const Vector xi = d.targets - (K * a0 + Vector::Constant(20, b0));
  Vector vd(20);
  for (Index i = 0; i < 20; ++i) vd(i) = 1.0 / (C * weight(cfg.weight_spec, xi(i)));
  const auto [a1, b1] = solve_weighted_system(K, d.targets, vd);
  CHECK((m.alpha - a1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.bias == b1);
}

TEST_CASE("fit_irls_svr: trace contract (records <= M, bias row, weights)") {
  const Dataset d = random_instance(13, 30, 1, 0.2);
  IrlsConfig cfg;
  cfg.weight_spec = WeightSpec::sigmoid_induced(4.0);
  cfg.max_iter = 7;
  cfg.tol = 1e-14;  // force the iteration cap
  const auto [m, trace] = fit_irls_svr(d, 5.0, KernelSpec{0.5}, cfg);
  CHECK(trace.iterations.size() <= 7);
  CHECK(trace.stop == StopReason::MaxIter);
  CHECK(std::fabs(m.alpha.sum()) <= 1e-8 * m.alpha.cwiseAbs().sum());
  for (const auto& rec : trace.iterations) {
    CHECK(rec.weights.minCoeff() >= cfg.weight_spec.weight_floor);
    CHECK(rec.residuals.size() == 30);
  }
  CHECK(trace.risk_sequence().size() == trace.iterations.size() + 1);
}

TEST_CASE("fit_irls_svr: monitored risk is non-increasing (descent)") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Rng rng(seed + 400);
    const Index n = 10 + static_cast<Index>(rng.below(41));
    const Dataset d = random_instance(seed + 50, n, 1, 0.15);
    IrlsConfig cfg;
    cfg.weight_spec = WeightSpec::sigmoid_induced(1.0 + static_cast<double>(rng.below(5)));
    cfg.max_iter = 40;
    cfg.tol = 1e-12;
    cfg.init = seed % 2 ? IrlsInit::UnweightedSolve : IrlsInit::Zero;
    const auto [m, trace] = fit_irls_svr(d, std::exp(rng.uniform(-1, 3)), KernelSpec{0.7}, cfg);
    const auto risks = trace.risk_sequence();
    for (std::size_t i = 0; i + 1 < risks.size(); ++i)
      CHECK(risks[i + 1] <= risks[i] + 1e-10);
  }
}

TEST_CASE("kkt_residual: solved system vs converged fixed point vs cold start") {
  const Dataset d = random_instance(77, 30, 1, 0.1);
  const double C = 5.0;
  const KernelSpec kernel{1.0};

  // Gauss weights: the stationarity identity alpha_i = C xi_i is a row of
  // the solved system itself.
  const SvrModel plain = fit_lssvr(d, C, kernel);
  CHECK(kkt_residual(plain, d, WeightSpec::gauss()) <=
        1e-8 * plain.alpha.cwiseAbs().maxCoeff());

  IrlsConfig cfg;
  cfg.weight_spec = WeightSpec::sigmoid_induced(3.0);
  cfg.tol = 1e-10;
  cfg.max_iter = 500;
  const auto [m, trace] = fit_irls_svr(d, C, kernel, cfg);
  CHECK(trace.stop == StopReason::Converged);
  CHECK(kkt_residual(m, d, cfg.weight_spec) <= 1e-6 * m.alpha.cwiseAbs().maxCoeff());

  IrlsConfig one = cfg;
  one.max_iter = 1;
  one.init = IrlsInit::Zero;
  const auto [m1, trace1] = fit_irls_svr(d, C, kernel, one);
  CHECK(kkt_residual(m1, d, cfg.weight_spec) > 1e-3 * m1.alpha.cwiseAbs().maxCoeff());
}

TEST_CASE("fit_irls_svr: outliers are down-weighted below the clean median") {
  // y = sin(z)cos(z^2) on [-1,1] plus outliers at (-0.8,-5) and (0.8,5).
  const Index n_clean = 100;
  Dataset d;
  d.features.resize(n_clean + 2, 1);
  d.targets.resize(n_clean + 2);
  for (Index i = 0; i < n_clean; ++i) {
    const double z = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_clean - 1);
    d.features(i, 0) = z;
    d.targets(i) = std::sin(z) * std::cos(z * z);
  }
  d.features(n_clean, 0) = -0.8;
  d.targets(n_clean) = -5.0;
  d.features(n_clean + 1, 0) = 0.8;
  d.targets(n_clean + 1) = 5.0;

  IrlsConfig cfg;
  cfg.weight_spec = WeightSpec::sigmoid_induced(4.0);
  const auto [m, trace] = fit_irls_svr(d, 100.0, KernelSpec{10.0}, cfg);

  for (std::size_t k = 1; k <= trace.iterations.size(); ++k) {
    const Vector& w = k < trace.iterations.size() ? trace.iterations[k].weights
                                                  : trace.final_weights;
    std::vector<double> clean(static_cast<std::size_t>(n_clean));
    for (Index i = 0; i < n_clean; ++i) clean[static_cast<std::size_t>(i)] = w(i);
    std::nth_element(clean.begin(), clean.begin() + clean.size() / 2, clean.end());
    const double median = clean[clean.size() / 2];
    CHECK(w(n_clean) < median);
    CHECK(w(n_clean + 1) < median);
  }
  // Non-increasing trajectories for both outliers.
  const auto get = [&](std::size_t k, Index i) {
    return k < trace.iterations.size() ? trace.iterations[k].weights(i)
                                       : trace.final_weights(i);
  };
  for (Index i : {n_clean, n_clean + 1})
    for (std::size_t k = 0; k < trace.iterations.size(); ++k)
      CHECK(get(k + 1, i) <= get(k, i) * (1.0 + 1e-9) + 1e-12);
}

TEST_CASE("fit_lssvr: duplicate data with huge C fails with diagnostics") {
  Dataset d;
  d.features.resize(3, 1);
  d.features << 1.0, 1.0, 1.0;  // identical inputs, conflicting labels
  d.targets.resize(3);
  d.targets << 0.0, 1.0, 2.0;
  CHECK_NOTHROW(fit_lssvr(d, 1.0, KernelSpec{1.0}));
  CHECK_THROWS_AS(fit_lssvr(d, 1e16, KernelSpec{1.0}), NumericalError);
}

TEST_CASE("lssvr: precondition failures") {
  const Dataset d = two_point_instance();
  CHECK_THROWS_AS(fit_lssvr(d, 0.0, KernelSpec{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_lssvr(d, -2.0, KernelSpec{1.0}), std::invalid_argument);

  Dataset one;
  one.features = Matrix::Zero(1, 1);
  one.targets = Vector::Zero(1);
  CHECK_THROWS_AS(fit_lssvr(one, 1.0, KernelSpec{1.0}), std::invalid_argument);

  IrlsConfig cfg;
  cfg.weight_spec = WeightSpec::gauss();
  cfg.max_iter = 0;
  CHECK_THROWS_AS(fit_irls_svr(d, 1.0, KernelSpec{1.0}, cfg), std::invalid_argument);
  cfg.max_iter = 5;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(fit_irls_svr(d, 1.0, KernelSpec{1.0}, cfg), std::invalid_argument);
}
