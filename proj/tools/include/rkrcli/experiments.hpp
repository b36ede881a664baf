#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rkr/data.hpp"
#include "rkr/elm.hpp"
#include "rkr/fitter.hpp"
#include "rkr/irls.hpp"
#include "rkr/lssvr.hpp"

#include "rkrcli/options.hpp"

namespace rkrcli {

/// Parse a weight-family name ("gauss", "laplace", "huber", "hampel",
/// "tukey", "andrew", "welsch", "sigmoid"). `param` is lambda for the
/// sigmoid-induced family and the scale k for the Huber-type families.
rkr::WeightSpec make_weight_spec(const std::string& family, double param);

/// Fitters wrapping the core solvers, for cross-validation and diagnostics.
rkr::Fitter svr_fitter(const std::string& label, double C, double gamma);
rkr::Fitter irls_svr_fitter(const std::string& label, double C, double gamma,
                            const rkr::IrlsConfig& cfg);
rkr::Fitter elm_fitter(const std::string& label, double C, double hidden_frac,
                       std::uint64_t seed);
rkr::Fitter irls_elm_fitter(const std::string& label, double C, double hidden_frac,
                            std::uint64_t seed, const rkr::IrlsConfig& cfg);

/// Hidden-node count from a fraction of the training-set size, at least 1.
rkr::Index hidden_count(double fraction, rkr::Index n_train);

struct SincRun {
  std::uint64_t seed = 0;
  std::string method;
  double rmse = 0.0;
  double mae = 0.0;
};

/// The sinc experiment: 500/300 split (sizes from cfg), noise and/or 20%x10
/// contamination on the training targets only, then the plain, single-pass
/// weighted, and fully iterated variants of the chosen model family. One row
/// per (seed, method), ordered by the seed list.
std::vector<SincRun> run_sinc_protocol(const SyntheticCmd& cfg);

/// Resolved seed list: cfg.seeds if given, else cfg.runs consecutive seeds
/// starting at cfg.seed.
std::vector<std::uint64_t> resolve_seeds(const SyntheticCmd& cfg);

/// The two curve-fitting test beds: 100 equispaced clean samples on [-1, 1]
/// plus the listed outliers appended at the end.
struct SensitivityBed {
  rkr::Dataset data;                                // clean + outliers
  std::vector<std::pair<double, double>> outliers;  // (x, y) as injected
  std::vector<rkr::Index> outlier_indices;          // rows within `data`
  std::vector<double> true_curve(const rkr::Vector& grid) const;
  std::string id;
};

SensitivityBed make_sensitivity_bed(const std::string& test_id);

}  // namespace rkrcli
