#include "rkr/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rkr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
double sq(double x) { return x * x; }

}  // namespace

std::string to_string(WeightFamily family) {
  switch (family) {
    case WeightFamily::Gauss: return "gauss";
    case WeightFamily::Laplace: return "laplace";
    case WeightFamily::Huber: return "huber";
    case WeightFamily::Hampel: return "hampel";
    case WeightFamily::Tukey: return "tukey";
    case WeightFamily::Andrew: return "andrew";
    case WeightFamily::Welsch: return "welsch";
    case WeightFamily::SigmoidInduced: return "sigmoid";
  }
  return "unknown";
}

WeightSpec WeightSpec::gauss() { return WeightSpec{WeightFamily::Gauss}; }
WeightSpec WeightSpec::laplace() { return WeightSpec{WeightFamily::Laplace}; }
WeightSpec WeightSpec::huber(double k) {
  WeightSpec s{WeightFamily::Huber};
  s.k = k;
  return s;
}
WeightSpec WeightSpec::hampel(double a, double b, double c) {
  WeightSpec s{WeightFamily::Hampel};
  s.a = a;
  s.b = b;
  s.c = c;
  return s;
}
WeightSpec WeightSpec::tukey(double k) {
  WeightSpec s{WeightFamily::Tukey};
  s.k = k;
  return s;
}
WeightSpec WeightSpec::andrew(double k) {
  WeightSpec s{WeightFamily::Andrew};
  s.k = k;
  return s;
}
WeightSpec WeightSpec::welsch(double k) {
  WeightSpec s{WeightFamily::Welsch};
  s.k = k;
  return s;
}
WeightSpec WeightSpec::sigmoid_induced(double lambda) {
  WeightSpec s{WeightFamily::SigmoidInduced};
  s.lambda = lambda;
  return s;
}

void WeightSpec::validate() const {
  if (!(weight_floor >= 0.0) || !std::isfinite(weight_floor))
    throw std::invalid_argument("WeightSpec: weight_floor must be finite and >= 0");
  switch (family) {
    case WeightFamily::Gauss:
    case WeightFamily::Laplace:
      return;
    case WeightFamily::Huber:
    case WeightFamily::Tukey:
    case WeightFamily::Andrew:
    case WeightFamily::Welsch:
      if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("WeightSpec: k must be finite and > 0");
      return;
    case WeightFamily::Hampel:
      if (!(a > 0.0) || !(a <= b) || !(b <= c) || !std::isfinite(c))
        throw std::invalid_argument("WeightSpec: Hampel needs 0 < a <= b <= c, finite");
      return;
    case WeightFamily::SigmoidInduced:
      if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("WeightSpec: lambda must be finite and > 0");
      return;
  }
  throw std::invalid_argument("WeightSpec: unknown family");
}

// Odd/even symmetry is kept exact by evaluating on |x| and applying sign(x)
// where needed.
double gradient(const WeightSpec& spec, double x) {
  const double ax = std::fabs(x);
  switch (spec.family) {
    case WeightFamily::Gauss:
      return 2.0 * x;
    case WeightFamily::Laplace:
      return sign(x);
    case WeightFamily::Huber:
      return ax <= spec.k ? x : spec.k * sign(x);
    case WeightFamily::Hampel:
      if (ax <= spec.a) return x;
      if (ax <= spec.b) return spec.a * sign(x);
      if (ax <= spec.c) return spec.a * sign(x) * (spec.c - ax) / (spec.c - spec.b);
      return 0.0;
    case WeightFamily::Tukey:
      return ax <= spec.k ? x * sq(1.0 - sq(x / spec.k)) : 0.0;
    case WeightFamily::Andrew:
      return ax <= spec.k ? sign(x) * spec.k * std::sin(kPi * ax / spec.k) : 0.0;
    case WeightFamily::Welsch:
      return x * std::exp(-0.5 * sq(x / spec.k));
    case WeightFamily::SigmoidInduced:
      // lambda/(1+e^{-lambda x}) - lambda/2 == (lambda/2)*tanh(lambda x / 2)
      return sign(x) * 0.5 * spec.lambda * std::tanh(0.5 * spec.lambda * ax);
  }
  return 0.0;
}

double weight_unclamped(const WeightSpec& spec, double x) {
  const double ax = std::fabs(x);
  switch (spec.family) {
    case WeightFamily::Gauss:
      return 1.0;
    case WeightFamily::Laplace:
      // psi/(2x) = 1/(2|x|); the singularity at 0 is not removable.
      return ax == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / (2.0 * ax);
    case WeightFamily::Huber:
      return ax <= spec.k ? 0.5 : spec.k / (2.0 * ax);
    case WeightFamily::Hampel:
      if (ax <= spec.a) return 0.5;
      if (ax <= spec.b) return spec.a / (2.0 * ax);
      if (ax <= spec.c) return spec.a * (spec.c - ax) / (2.0 * (spec.c - spec.b) * ax);
      return 0.0;
    case WeightFamily::Tukey:
      return ax <= spec.k ? 0.5 * sq(1.0 - sq(x / spec.k)) : 0.0;
    case WeightFamily::Andrew:
      if (ax > spec.k) return 0.0;
      if (ax == 0.0) return 0.5 * kPi;  // limit of k*sin(pi x/k)/(2x)
      return spec.k * std::sin(kPi * ax / spec.k) / (2.0 * ax);
    case WeightFamily::Welsch:
      return 0.5 * std::exp(-0.5 * sq(x / spec.k));
    case WeightFamily::SigmoidInduced: {
      // (lambda^2/8) * tanh(u)/u with u = lambda*|x|/2; limit lambda^2/8 at 0.
      const double u = 0.5 * spec.lambda * ax;
      const double base = spec.lambda * spec.lambda / 8.0;
      return u == 0.0 ? base : base * std::tanh(u) / u;
    }
  }
  return 0.0;
}

double weight(const WeightSpec& spec, double x) {
  return std::max(weight_unclamped(spec, x), spec.weight_floor);
}

double loss(const WeightSpec& spec, double x) {
  const double ax = std::fabs(x);
  switch (spec.family) {
    case WeightFamily::Gauss:
      return x * x;
    case WeightFamily::Laplace:
      return ax;
    case WeightFamily::Huber:
      return ax <= spec.k ? 0.5 * x * x : spec.k * ax - 0.5 * spec.k * spec.k;
    case WeightFamily::Hampel: {
      const double a = spec.a, b = spec.b, c = spec.c;
      if (ax <= a) return 0.5 * x * x;
      if (ax <= b) return a * ax - 0.5 * a * a;
      if (ax <= c) {
        const double at_b = a * b - 0.5 * a * a;
        return at_b + a / (c - b) * (c * (ax - b) - 0.5 * (ax * ax - b * b));
      }
      return 0.5 * a * (b + c - a);
    }
    case WeightFamily::Tukey: {
      const double k2 = spec.k * spec.k;
      if (ax > spec.k) return k2 / 6.0;
      const double x2 = x * x;
      return 0.5 * x2 - 0.5 * x2 * x2 / k2 + x2 * x2 * x2 / (6.0 * k2 * k2);
    }
    case WeightFamily::Andrew: {
      const double k2pi = spec.k * spec.k / kPi;
      return ax <= spec.k ? k2pi * (1.0 - std::cos(kPi * ax / spec.k)) : 2.0 * k2pi;
    }
    case WeightFamily::Welsch:
      return spec.k * spec.k * (1.0 - std::exp(-0.5 * sq(x / spec.k)));
    case WeightFamily::SigmoidInduced: {
      // ln(1+e^{lambda x}) - (lambda/2) x - ln 2, even in x; the |x| form is
      // overflow-safe: lambda|x|/2 + log1p(e^{-lambda|x|}) - ln 2.
      const double u = spec.lambda * ax;
      return 0.5 * u + std::log1p(std::exp(-u)) - kLn2;
    }
  }
  return 0.0;
}

namespace {

struct GridView {
  std::vector<double> sorted;  // ascending
  double max_abs = 0.0;
};

GridView prepare_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("check_conditions: empty grid");
  GridView g;
  g.sorted = grid;
  std::sort(g.sorted.begin(), g.sorted.end());
  const std::size_t n = g.sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = g.sorted[i];
    const double hi = g.sorted[n - 1 - i];
    if (!std::isfinite(lo))
      throw std::invalid_argument("check_conditions: non-finite grid point");
    if (std::fabs(lo + hi) > 1e-12 * std::max(1.0, std::fabs(lo)))
      throw std::invalid_argument("check_conditions: grid not symmetric about 0");
  }
  g.max_abs = std::max(std::fabs(g.sorted.front()), std::fabs(g.sorted.back()));
  return g;
}

}  // namespace

std::vector<double> symmetric_grid(double hi, double step) {
  if (!(hi > 0.0) || !(step > 0.0))
    throw std::invalid_argument("symmetric_grid: hi and step must be > 0");
  std::vector<double> g;
  const long m = static_cast<long>(std::floor(hi / step + 0.5));
  for (long i = -m; i <= m; ++i) g.push_back(static_cast<double>(i) * step);
  return g;
}

ConditionReport check_conditions(const WeightSpec& spec, const std::vector<double>& grid) {
  spec.validate();
  const GridView g = prepare_grid(grid);
  const std::size_t n = g.sorted.size();

  std::vector<double> v(n), psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = weight_unclamped(spec, g.sorted[i]);
    psi[i] = gradient(spec, g.sorted[i]);
  }

  double v_scale = 0.0, psi_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(v[i])) v_scale = std::max(v_scale, std::fabs(v[i]));
    if (std::isfinite(psi[i])) psi_scale = std::max(psi_scale, std::fabs(psi[i]));
  }

  ConditionReport report;

  // v1: non-negative and bounded. Boundedness is probed toward 0, where a
  // non-increasing even weight attains its supremum.
  for (std::size_t i = 0; i < n && report.v1.pass; ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i])) report.v1 = {false, g.sorted[i]};
  }
  if (report.v1.pass) {
    double smallest_pos = 0.0;
    for (double x : g.sorted)
      if (x > 0.0) {
        smallest_pos = x;
        break;
      }
    if (smallest_pos > 0.0) {
      for (double div : {8.0, 64.0, 4096.0}) {
        const double x = smallest_pos / div;
        const double vx = weight_unclamped(spec, x);
        if (!std::isfinite(vx) || vx > v_scale * 1.01 + 1e-12) {
          report.v1 = {false, x};
          break;
        }
      }
    }
  }

  // v2: even; c1: odd. Infinities at the same mirrored points compare equal.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    const bool both_inf = std::isinf(v[i]) && std::isinf(v[j]) && v[i] == v[j];
    if (!both_inf && std::fabs(v[i] - v[j]) > 1e-12 * std::max(1.0, std::fabs(v[j]))) {
      report.v2 = {false, g.sorted[j]};
      break;
    }
  }
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    if (std::fabs(psi[i] + psi[j]) > 1e-12 * std::max(1.0, std::fabs(psi[j]))) {
      report.c1 = {false, g.sorted[j]};
      break;
    }
  }

  // v3: non-increasing on the positive grid.
  {
    double prev = -1.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (g.sorted[i] <= 0.0) continue;
      if (have_prev && v[i] > prev + 1e-12 * std::max(1.0, v_scale)) {
        report.v3 = {false, g.sorted[i]};
        break;
      }
      prev = v[i];
      have_prev = true;
    }
  }

  // c2: continuity. Bisect every adjacent gap down to ~machine width; a jump
  // that survives is a discontinuity.
  for (std::size_t i = 0; i + 1 < n && report.c2.pass; ++i) {
    double lo = g.sorted[i], hi = g.sorted[i + 1];
    double flo = psi[i], fhi = psi[i + 1];
    if (std::fabs(fhi - flo) <= 1e-9 * std::max(1.0, psi_scale)) continue;
    for (int step = 0; step < 80 && (hi - lo) > 0.0; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fmid = gradient(spec, mid);
      if (std::fabs(fmid - flo) >= std::fabs(fhi - fmid)) {
        hi = mid;
        fhi = fmid;
      } else {
        lo = mid;
        flo = fmid;
      }
    }
    if (std::fabs(fhi - flo) > 1e-9 * std::max(1.0, psi_scale))
      report.c2 = {false, 0.5 * (lo + hi)};
  }

  // c3: bounded. Probe beyond the widest grid point; growth there means the
  // gradient is unbounded (e.g. the Gauss family).
  for (std::size_t i = 0; i < n && report.c3.pass; ++i) {
    if (!std::isfinite(psi[i])) report.c3 = {false, g.sorted[i]};
  }
  if (report.c3.pass && g.max_abs > 0.0) {
    for (double mult : {2.0, 4.0, 10.0}) {
      const double x = g.max_abs * mult;
      const double px = gradient(spec, x);
      if (!std::isfinite(px) || std::fabs(px) > psi_scale * 1.01 + 1e-12) {
        report.c3 = {false, x};
        break;
      }
    }
  }

  // c4 (relaxed): non-decreasing across the whole grid.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (psi[i + 1] < psi[i] - 1e-12 * std::max(1.0, psi_scale)) {
      report.c4 = {false, g.sorted[i + 1]};
      break;
    }
  }

  return report;
}

}  // namespace rkr
