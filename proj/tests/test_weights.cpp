#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "rkr/weights.hpp"

using namespace rkr;

namespace {

const std::vector<WeightSpec> kAllFamilies = {
    WeightSpec::gauss(),        WeightSpec::laplace(),
    WeightSpec::huber(1.345),   WeightSpec::hampel(1.0, 2.0, 3.0),
    WeightSpec::tukey(4.685),   WeightSpec::andrew(1.339),
    WeightSpec::welsch(2.985),  WeightSpec::sigmoid_induced(3.0),
};

}  // namespace

TEST_CASE("gradient: tabulated examples") {
  CHECK(gradient(WeightSpec::sigmoid_induced(2.0), 0.0) == 0.0);
  CHECK(gradient(WeightSpec::laplace(), -3.0) == -1.0);
  // lambda/(1+e^{-lambda x}) - lambda/2 -> lambda/2 as x -> inf
  CHECK(gradient(WeightSpec::sigmoid_induced(1.0), 100.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gradient(WeightSpec::huber(1.345), 0.5) == 0.5);
  CHECK(gradient(WeightSpec::huber(1.345), -4.0) == -1.345);
  CHECK(gradient(WeightSpec::hampel(1, 2, 3), 2.5) == doctest::Approx(0.5));
  CHECK(gradient(WeightSpec::hampel(1, 2, 3), 4.0) == 0.0);
  CHECK(gradient(WeightSpec::tukey(1.0), 2.0) == 0.0);
  CHECK(gradient(WeightSpec::andrew(1.0), 0.5) == doctest::Approx(1.0));  // sin(pi/2)
}

TEST_CASE("weight: tabulated examples and the x=0 limits") {
  // Continuous limit lambda^2/8, not Eq-(6)'s psi'(0) = lambda^2/4.
  CHECK(weight_unclamped(WeightSpec::sigmoid_induced(2.0), 0.0) == 0.5);
  // Numerical confirmation of the limit near zero.
  for (double x : {1e-8, -1e-8}) {
    const double v = gradient(WeightSpec::sigmoid_induced(2.0), x) / (2.0 * x);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-6));
  }
  CHECK(weight_unclamped(WeightSpec::huber(1.345), 0.5) == 0.5);

  WeightSpec tukey = WeightSpec::tukey(1.0);
  tukey.weight_floor = 0.0;
  CHECK(weight(tukey, 2.0) == 0.0);

  CHECK(weight_unclamped(WeightSpec::gauss(), 7.3) == 1.0);
  CHECK(std::isinf(weight_unclamped(WeightSpec::laplace(), 0.0)));
  CHECK(weight_unclamped(WeightSpec::andrew(2.0), 0.0) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("loss: tabulated examples") {
  for (double lam : {0.5, 1.0, 2.0, 5.0})
    CHECK(loss(WeightSpec::sigmoid_induced(lam), 0.0) == 0.0);
  CHECK(loss(WeightSpec::gauss(), 2.0) == 4.0);
  // Independent overflow-safe evaluation of ln(1+e^{lambda x}) - (lambda/2)x - ln 2,
  // frozen: lambda=2, x=10.
  const double frozen = 9.3068528215012076;
  const double direct = std::log1p(std::exp(-20.0)) + 20.0 - 10.0 - std::log(2.0);
  CHECK(direct == doctest::Approx(frozen).epsilon(1e-15));
  CHECK(loss(WeightSpec::sigmoid_induced(2.0), 10.0) == doctest::Approx(frozen).epsilon(1e-9));
}

TEST_CASE("psi(x) = 2 x v(x) within 1e-12 relative, all families") {
  for (const auto& spec : kAllFamilies) {
    for (double x = -5.0; x <= 5.0; x += 0.01) {
      if (x == 0.0) continue;
      const double psi = gradient(spec, x);
      const double v = weight_unclamped(spec, x);
      CHECK(std::fabs(psi - 2.0 * x * v) <= 1e-12 * std::max(1.0, std::fabs(psi)));
    }
  }
}

TEST_CASE("finite differences of loss match gradient on smooth families") {
  const double h = 1e-5;
  const std::vector<WeightSpec> smooth = {WeightSpec::gauss(), WeightSpec::welsch(1.5),
                                          WeightSpec::sigmoid_induced(1.0),
                                          WeightSpec::sigmoid_induced(5.0)};
  for (const auto& spec : smooth) {
    for (double x = -5.0; x <= 5.0; x += 0.0101) {
      const double fd = (loss(spec, x + h) - loss(spec, x - h)) / (2.0 * h);
      CHECK(std::fabs(fd - gradient(spec, x)) <= 1e-6);
    }
  }
  // Huber away from the +-k kinks.
  const WeightSpec hub = WeightSpec::huber(1.345);
  for (double x = -5.0; x <= 5.0; x += 0.0101) {
    if (std::fabs(std::fabs(x) - hub.k) < 0.01) continue;
    const double fd = (loss(hub, x + h) - loss(hub, x - h)) / (2.0 * h);
    CHECK(std::fabs(fd - gradient(hub, x)) <= 1e-6);
  }
}

TEST_CASE("piecewise losses differentiate back to their gradients") {
  // The redescending losses are hand-derived antiderivatives; check them by
  // finite differences away from the breakpoints.
  const double h = 1e-6;
  const auto check_family = [&](const WeightSpec& s, const std::vector<double>& kinks) {
    for (double x = -5.0; x <= 5.0; x += 0.0173) {
      bool near_kink = false;
      for (double kk : kinks)
        if (std::fabs(std::fabs(x) - kk) < 0.01) near_kink = true;
      if (near_kink) continue;
      const double fd = (loss(s, x + h) - loss(s, x - h)) / (2.0 * h);
      CHECK(std::fabs(fd - gradient(s, x)) <= 1e-6);
    }
  };
  check_family(WeightSpec::hampel(1, 2, 3), {1.0, 2.0, 3.0});
  check_family(WeightSpec::tukey(2.5), {2.5});
  check_family(WeightSpec::andrew(2.0), {2.0});
  check_family(WeightSpec::laplace(), {0.0});
}

TEST_CASE("piecewise losses are continuous at their breakpoints") {
  const double eps = 1e-9;
  const auto jump = [&](const WeightSpec& s, double at) {
    return std::fabs(loss(s, at + eps) - loss(s, at - eps));
  };
  CHECK(jump(WeightSpec::huber(1.345), 1.345) < 1e-7);
  const WeightSpec ham = WeightSpec::hampel(1, 2, 3);
  CHECK(jump(ham, 1.0) < 1e-7);
  CHECK(jump(ham, 2.0) < 1e-7);
  CHECK(jump(ham, 3.0) < 1e-7);
  CHECK(jump(WeightSpec::tukey(2.0), 2.0) < 1e-7);
  CHECK(jump(WeightSpec::andrew(2.0), 2.0) < 1e-7);
}

TEST_CASE("sigmoid-induced loss is convex and asymptotically linear") {
  for (double lam : {1.0, 3.0}) {
    const WeightSpec s = WeightSpec::sigmoid_induced(lam);
    const double h = 1e-4;
    for (double x = -10.0; x <= 10.0; x += 0.05) {
      const double second = loss(s, x + h) - 2.0 * loss(s, x) + loss(s, x - h);
      CHECK(second >= -1e-9);
    }
    // rho(x)/|x| -> lambda/2; the exact deviation at x = 50/lambda is
    // 2 ln2 / 50 = 2.77%, shrinking like 1/x.
    const double at50 = loss(s, 50.0 / lam) / (50.0 / lam);
    CHECK(std::fabs(at50 - lam / 2) <= 0.029 * (lam / 2));
    const double at500 = loss(s, 500.0 / lam) / (500.0 / lam);
    CHECK(std::fabs(at500 - lam / 2) <= 0.003 * (lam / 2));
  }
}

TEST_CASE("exact symmetries: weight even, gradient odd, loss even") {
  for (const auto& spec : kAllFamilies) {
    for (double x = 0.005; x < 6.0; x *= 1.37) {
      CHECK(weight_unclamped(spec, x) == weight_unclamped(spec, -x));
      CHECK(gradient(spec, -x) == -gradient(spec, x));
      CHECK(loss(spec, x) == loss(spec, -x));
    }
  }
}

TEST_CASE("weight floor clamps from below; redescenders vanish with floor 0") {
  for (auto spec : kAllFamilies) {
    spec.weight_floor = 1e-8;
    for (double x : {0.0, 0.5, 3.0, 50.0, 1e6}) CHECK(weight(spec, x) >= 1e-8);
  }
  for (auto spec : {WeightSpec::tukey(1.0), WeightSpec::andrew(1.0),
                    WeightSpec::hampel(0.5, 0.7, 1.0)}) {
    spec.weight_floor = 0.0;
    CHECK(weight(spec, 1.5) == 0.0);
    CHECK(gradient(spec, 1.5) == 0.0);
  }
}

TEST_CASE("overflow safety at |lambda x| up to 1e4") {
  const WeightSpec s = WeightSpec::sigmoid_induced(100.0);
  const double x = 100.0;  // lambda*x = 1e4
  CHECK(loss(s, x) == doctest::Approx(100.0 * 100.0 / 2 - std::numbers::ln2).epsilon(1e-14));
  CHECK(gradient(s, x) == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(weight(s, x) == doctest::Approx(50.0 / (2 * x)).epsilon(1e-12));
  CHECK(std::isfinite(loss(s, -x)));
}

TEST_CASE("check_conditions: catalog verdicts on the +-5 grid") {
  const auto grid = symmetric_grid(5.0, 0.01);

  const auto sig = check_conditions(WeightSpec::sigmoid_induced(3.0), grid);
  CHECK(sig.all_pass());

  const auto gau = check_conditions(WeightSpec::gauss(), grid);
  CHECK_FALSE(gau.c3.pass);  // psi = 2z keeps growing beyond the grid
  CHECK(gau.c3.failed_at.value() > 5.0);
  CHECK(gau.v1.pass);
  CHECK(gau.v2.pass);
  CHECK(gau.v3.pass);
  CHECK(gau.c1.pass);
  CHECK(gau.c2.pass);
  CHECK(gau.c4.pass);

  const auto ham = check_conditions(WeightSpec::hampel(1, 2, 3), grid);
  CHECK_FALSE(ham.c4.pass);  // psi decreasing on (b, c]
  CHECK(ham.v1.pass);
  CHECK(ham.c1.pass);
  CHECK(ham.c2.pass);
  CHECK(ham.c3.pass);

  const auto lap = check_conditions(WeightSpec::laplace(), grid);
  CHECK_FALSE(lap.v1.pass);  // v = 1/(2|z|) unbounded toward 0
  CHECK_FALSE(lap.c2.pass);  // sign(z) jumps at 0
  CHECK(lap.c1.pass);
  CHECK(lap.c3.pass);
  CHECK(lap.c4.pass);

  CHECK(check_conditions(WeightSpec::huber(1.345), grid).all_pass());
  CHECK_FALSE(check_conditions(WeightSpec::tukey(1.0), grid).c4.pass);
  CHECK_FALSE(check_conditions(WeightSpec::welsch(1.0), grid).c4.pass);
}

TEST_CASE("check_conditions: grid validation") {
  const WeightSpec s = WeightSpec::gauss();
  CHECK_THROWS_AS(check_conditions(s, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_conditions(s, {-1.0, 0.0, 2.0}), std::invalid_argument);
  CHECK_NOTHROW(check_conditions(s, {-2.0, 0.0, 2.0}));
  CHECK_NOTHROW(check_conditions(s, {-1.5, 1.5}));
}

TEST_CASE("WeightSpec validation") {
  CHECK_THROWS_AS(WeightSpec::huber(0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::huber(-1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::hampel(2, 1, 3).validate(), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::hampel(0, 1, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(WeightSpec::sigmoid_induced(0.0).validate(), std::invalid_argument);
  WeightSpec bad = WeightSpec::gauss();
  bad.weight_floor = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(WeightSpec::hampel(1, 1, 1).validate());
}
