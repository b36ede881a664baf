#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rkr {

/// M-estimator families. Each family defines a loss rho, its gradient psi,
/// and the IRLS weight v = psi/(2x) (continuous limit at x = 0).
enum class WeightFamily {
  Gauss,           // rho = x^2         (plain least squares, v == 1)
  Laplace,         // rho = |x|
  Huber,           // quadratic core, linear tails (scale k)
  Hampel,          // three-part redescending (0 < a <= b <= c)
  Tukey,           // biweight, hard zero beyond k
  Andrew,          // sine wave, hard zero beyond k
  Welsch,          // exponential decay (scale k)
  SigmoidInduced,  // gradient (lambda/2)*tanh(lambda*x/2), convex loss
};

std::string to_string(WeightFamily family);

/// One member of the catalog: a family plus its parameters.
///
/// weight_floor is a lower clamp applied by weight(); downstream solvers
/// divide by C*v, so a zero weight would blow up the reweighted system.
struct WeightSpec {
  WeightFamily family = WeightFamily::SigmoidInduced;

  double k = 1.345;        // Huber / Tukey / Andrew / Welsch scale
  double a = 1.0;          // Hampel breakpoints, a <= b <= c
  double b = 2.0;
  double c = 3.0;
  double lambda = 4.0;     // SigmoidInduced steepness

  double weight_floor = 1e-8;

  static WeightSpec gauss();
  static WeightSpec laplace();
  static WeightSpec huber(double k);
  static WeightSpec hampel(double a, double b, double c);
  static WeightSpec tukey(double k);
  static WeightSpec andrew(double k);
  static WeightSpec welsch(double k);
  static WeightSpec sigmoid_induced(double lambda);

  /// Throws std::invalid_argument if parameters are out of range.
  void validate() const;
};

/// Gradient function psi(x). Odd in x, exactly.
double gradient(const WeightSpec& spec, double x);

/// Weight v(x) = psi(x)/(2x) with the x = 0 limit filled in, before the
/// floor clamp. Even in x, exactly. Laplace diverges at x = 0 (returns +inf).
double weight_unclamped(const WeightSpec& spec, double x);

/// max(weight_unclamped(x), weight_floor).
double weight(const WeightSpec& spec, double x);

/// Loss rho(x): antiderivative of psi anchored at rho(0) = 0.
/// SigmoidInduced uses log1p so |lambda*x| up to ~1e4 stays exact.
double loss(const WeightSpec& spec, double x);

/// Outcome of probing one convergence condition on a grid.
struct ConditionCheck {
  bool pass = true;
  std::optional<double> failed_at;  // grid/probe point of the first failure
};

/// v1-v3 are the weight-function conditions required for IRLS convergence;
/// c1-c4 are the gradient-function guidelines (c4 relaxed to non-decreasing).
struct ConditionReport {
  ConditionCheck v1;  // v non-negative and bounded
  ConditionCheck v2;  // v even
  ConditionCheck v3;  // v non-increasing on x > 0
  ConditionCheck c1;  // psi odd
  ConditionCheck c2;  // psi continuous (finite-gap bisection probe)
  ConditionCheck c3;  // psi bounded (widest probe beyond the grid)
  ConditionCheck c4;  // psi non-decreasing
  bool all_pass() const {
    return v1.pass && v2.pass && v3.pass && c1.pass && c2.pass && c3.pass && c4.pass;
  }
};

/// Numerically probe conditions v1-v3 and c1-c4 on a grid symmetric about 0.
/// Throws std::invalid_argument for an empty or asymmetric grid.
ConditionReport check_conditions(const WeightSpec& spec, const std::vector<double>& grid);

/// Convenience: symmetric grid {-hi, ..., -step, 0, step, ..., hi}.
std::vector<double> symmetric_grid(double hi, double step);

}  // namespace rkr
