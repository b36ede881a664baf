#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rkr {

/// Derive an independent stream seed from a master seed and a tag.
/// splitmix64 of (master xor fnv1a64(tag)); stable across platforms.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

/// Seeded generator with explicit draw-to-double mappings so that results
/// are reproducible bit-for-bit for a given seed. mt19937_64 output is
/// standard-defined; the mappings below avoid the implementation-defined
/// std::*_distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0,1): (x >> 11) * 2^-53 + 2^-54.
  double uniform();
  /// Uniform on (lo, hi).
  double uniform(double lo, double hi);
  /// Uniform on (-1, 1).
  double uniform_symmetric() { return uniform(-1.0, 1.0); }

  /// Standard normal via Box-Muller (two uniforms per draw, cosine branch).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Laplace(location, scale) by inverse CDF.
  double laplace(double location, double scale);

  /// Chi-squared with `dof` degrees of freedom as a sum of squared normals.
  double chi_squared(int dof);

  /// Random integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct indices drawn uniformly from [0, n) (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace rkr
