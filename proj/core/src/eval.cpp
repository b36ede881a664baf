#include "rkr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "rkr/errors.hpp"
#include "rkr/rng.hpp"

namespace rkr {

MetricSet metrics(const Vector& y_true, const Vector& y_pred) {
  if (y_true.size() < 1) throw std::invalid_argument("metrics: empty input");
  if (y_true.size() != y_pred.size())
    throw std::invalid_argument("metrics: length mismatch");

  const Index n = y_true.size();
  double sq = 0.0, abs = 0.0, rel = 0.0;
  Index included = 0;
  for (Index i = 0; i < n; ++i) {
    const double e = y_true(i) - y_pred(i);
    sq += e * e;
    abs += std::fabs(e);
    if (std::fabs(y_true(i)) > 1e-12) {
      rel += std::fabs(e / y_true(i));
      ++included;
    }
  }

  MetricSet m;
  m.rmse = std::sqrt(sq / static_cast<double>(n));
  m.mae = abs / static_cast<double>(n);
  m.mre = included > 0 ? rel / static_cast<double>(included) : 0.0;
  m.mre_excluded_count = n - included;
  return m;
}

std::vector<std::vector<Index>> kfold_indices(Index N, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_indices: k must be >= 2");
  if (static_cast<Index>(k) > N) throw std::invalid_argument("kfold_indices: k must be <= N");

  std::vector<Index> perm(static_cast<std::size_t>(N));
  std::iota(perm.begin(), perm.end(), Index{0});
  Rng rng(seed);
  rng.shuffle(perm);

  std::vector<std::vector<Index>> folds(static_cast<std::size_t>(k));
  std::size_t pos = 0;
  for (int f = 0; f < k; ++f) {
    const auto size = static_cast<std::size_t>(N / k + (f < N % k ? 1 : 0));
    folds[static_cast<std::size_t>(f)].assign(perm.begin() + static_cast<long>(pos),
                                              perm.begin() + static_cast<long>(pos + size));
    pos += size;
  }
  return folds;
}

namespace {

CvMetric summarize(const std::vector<double>& scores,
                   const std::vector<double>& repeat_means) {
  const auto n = static_cast<double>(scores.size());
  CvMetric m;
  m.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  if (scores.size() > 1) {
    double ss = 0.0;
    for (double s : scores) ss += (s - m.mean) * (s - m.mean);
    m.sd = std::sqrt(ss / (n - 1.0));
  }
  if (repeat_means.size() > 1) {
    const auto r = static_cast<double>(repeat_means.size());
    const double rm = std::accumulate(repeat_means.begin(), repeat_means.end(), 0.0) / r;
    double ss = 0.0;
    for (double s : repeat_means) ss += (s - rm) * (s - rm);
    m.repeat_sd = std::sqrt(ss / (r - 1.0));
  }
  return m;
}

}  // namespace

CvResult cross_validate(const Fitter& fitter, const Dataset& data, int k,
                        std::uint64_t seed, int repeats,
                        const std::optional<Vector>& eval_targets) {
  data.validate();
  if (repeats < 1) throw std::invalid_argument("cross_validate: repeats must be >= 1");
  if (eval_targets && eval_targets->size() != data.rows())
    throw std::invalid_argument("cross_validate: eval_targets length mismatch");

  const Index N = data.rows();
  std::vector<double> rmse_all, mae_all, mre_all;
  std::vector<double> rmse_rep, mae_rep, mre_rep;

  for (int rep = 0; rep < repeats; ++rep) {
    const auto folds = kfold_indices(N, k, derive_seed(seed, static_cast<std::uint64_t>(rep)));
    double rep_rmse = 0.0, rep_mae = 0.0, rep_mre = 0.0;

    for (std::size_t f = 0; f < folds.size(); ++f) {
      std::vector<Index> train_idx;
      train_idx.reserve(static_cast<std::size_t>(N) - folds[f].size());
      for (std::size_t g = 0; g < folds.size(); ++g)
        if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());

      const Dataset train = data.subset(train_idx);

      Vector y_test(static_cast<Index>(folds[f].size()));
      Matrix x_test(static_cast<Index>(folds[f].size()), data.cols());
      for (std::size_t r = 0; r < folds[f].size(); ++r) {
        const Index i = folds[f][r];
        x_test.row(static_cast<Index>(r)) = data.features.row(i);
        y_test(static_cast<Index>(r)) = eval_targets ? (*eval_targets)(i) : data.targets(i);
      }

      MetricSet m;
      try {
        const Predictor predict = fitter.fit(train);
        m = metrics(y_test, predict(x_test));
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << "cross_validate: fit failed at repetition " << rep << ", fold " << f
           << ": " << e.what();
        throw NumericalError(os.str());
      }

      rmse_all.push_back(m.rmse);
      mae_all.push_back(m.mae);
      mre_all.push_back(m.mre);
      rep_rmse += m.rmse;
      rep_mae += m.mae;
      rep_mre += m.mre;
    }
    rmse_rep.push_back(rep_rmse / k);
    mae_rep.push_back(rep_mae / k);
    mre_rep.push_back(rep_mre / k);
  }

  CvResult out;
  out.rmse = summarize(rmse_all, rmse_rep);
  out.mae = summarize(mae_all, mae_rep);
  out.mre = summarize(mre_all, mre_rep);
  out.folds = k;
  out.repeats = repeats;
  return out;
}

void GridSpec::validate() const {
  const auto check = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw std::invalid_argument(std::string("GridSpec: empty ") + name);
    for (double x : v)
      if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument(std::string("GridSpec: non-positive value in ") + name);
  };
  check(C_values, "C_values");
  check(gamma_values, "gamma_values");
  check(lambda_values, "lambda_values");
  check(L_fractions, "L_fractions");
  for (double f : L_fractions)
    if (f > 1.0) throw std::invalid_argument("GridSpec: L_fraction must be in (0, 1]");
}

GridSearchResult grid_search(const FitterFactory& factory, const GridSpec& grid,
                             const Dataset& data, int k, std::uint64_t seed) {
  grid.validate();

  GridSearchResult result;
  double best_score = std::numeric_limits<double>::infinity();
  bool have_best = false;

  const auto tie_key = [](const GridPoint& p) {
    return std::make_tuple(p.C, p.gamma, p.lambda, p.L_fraction);
  };

  for (double C : grid.C_values)
    for (double gamma : grid.gamma_values)
      for (double lambda : grid.lambda_values)
        for (double frac : grid.L_fractions) {
          GridCell cell;
          cell.point = {C, gamma, lambda, frac};
          double score;
          try {
            cell.cv = cross_validate(factory(cell.point), data, k, seed);
            score = cell.cv.rmse.mean;
          } catch (const std::exception&) {
            cell.failed = true;
            score = std::numeric_limits<double>::infinity();
          }
          const bool better =
              !have_best || score < best_score ||
              (score == best_score && tie_key(cell.point) < tie_key(result.best));
          if (better && !cell.failed) {
            result.best = cell.point;
            result.best_cv = cell.cv;
            best_score = score;
            have_best = true;
          }
          result.table.push_back(std::move(cell));
        }

  if (!have_best) throw NumericalError("grid_search: every grid cell failed");
  return result;
}

}  // namespace rkr
