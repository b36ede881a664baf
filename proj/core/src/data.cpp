#include "rkr/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rkr/errors.hpp"
#include "rkr/rng.hpp"

namespace rkr {

void Dataset::validate() const {
  if (features.rows() < 1) throw std::invalid_argument("Dataset: need at least one row");
  if (targets.size() != features.rows())
    throw std::invalid_argument("Dataset: target length != feature rows");
  if (!features.allFinite() || !targets.allFinite())
    throw std::invalid_argument("Dataset: non-finite values");
  for (Index i : provenance.outlier_indices)
    if (i < 0 || i >= rows())
      throw std::invalid_argument("Dataset: outlier index out of range");
}

Dataset Dataset::subset(const std::vector<Index>& indices) const {
  Dataset out;
  out.features.resize(static_cast<Index>(indices.size()), cols());
  out.targets.resize(static_cast<Index>(indices.size()));
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const Index i = indices[r];
    if (i < 0 || i >= rows()) throw std::invalid_argument("Dataset::subset: index out of range");
    out.features.row(static_cast<Index>(r)) = features.row(i);
    out.targets(static_cast<Index>(r)) = targets(i);
  }
  out.provenance = provenance;
  out.provenance.outlier_indices.clear();
  return out;
}

NoiseSpec NoiseSpec::gaussian(double mean, double sd, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = Kind::Gaussian;
  s.mean = mean;
  s.sd = sd;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::laplace(double location, double scale, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = Kind::Laplace;
  s.location = location;
  s.scale = scale;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::chi_squared(int dof, std::uint64_t seed, bool center) {
  NoiseSpec s;
  s.kind = Kind::ChiSquared;
  s.dof = dof;
  s.center = center;
  s.seed = seed;
  return s;
}

void NoiseSpec::validate() const {
  switch (kind) {
    case Kind::Gaussian:
      if (!(sd > 0.0)) throw std::invalid_argument("NoiseSpec: sd must be > 0");
      return;
    case Kind::Laplace:
      if (!(scale > 0.0)) throw std::invalid_argument("NoiseSpec: scale must be > 0");
      return;
    case Kind::ChiSquared:
      if (dof < 1) throw std::invalid_argument("NoiseSpec: dof must be >= 1");
      return;
  }
  throw std::invalid_argument("NoiseSpec: unknown kind");
}

std::string NoiseSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Gaussian: os << "gaussian(" << mean << "," << sd << ")"; break;
    case Kind::Laplace: os << "laplace(" << location << "," << scale << ")"; break;
    case Kind::ChiSquared:
      os << "chisq(" << dof << (center ? ",centered" : "") << ")";
      break;
  }
  return os.str();
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

namespace {

Dataset make_sinc_split(Index n, std::uint64_t seed, const char* source) {
  Dataset d;
  d.features.resize(n, 1);
  d.targets.resize(n);
  Rng rng(seed);
  for (Index i = 0; i < n; ++i) {
    const double x = rng.uniform(-10.0, 10.0);
    d.features(i, 0) = x;
    d.targets(i) = sinc(x);
  }
  d.provenance.source = source;
  d.provenance.seed = seed;
  return d;
}

}  // namespace

std::pair<Dataset, Dataset> gen_sinc(Index n_train, Index n_test, std::uint64_t seed) {
  if (n_train < 1 || n_test < 1)
    throw std::invalid_argument("gen_sinc: counts must be >= 1");
  Dataset train = make_sinc_split(n_train, derive_seed(seed, "sinc-train"), "sinc-train");
  Dataset test = make_sinc_split(n_test, derive_seed(seed, "sinc-test"), "sinc-test");
  return {std::move(train), std::move(test)};
}

Vector add_noise(const Vector& y, const NoiseSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Vector out(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    double e = 0.0;
    switch (spec.kind) {
      case NoiseSpec::Kind::Gaussian: e = rng.normal(spec.mean, spec.sd); break;
      case NoiseSpec::Kind::Laplace: e = rng.laplace(spec.location, spec.scale); break;
      case NoiseSpec::Kind::ChiSquared:
        e = rng.chi_squared(spec.dof);
        if (spec.center) e -= static_cast<double>(spec.dof);
        break;
    }
    out(i) = y(i) + e;
  }
  return out;
}

Dataset inject_outliers(const Dataset& data, double fraction, double factor,
                        std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("inject_outliers: fraction must be in [0, 1]");
  data.validate();

  const auto n = static_cast<std::size_t>(data.rows());
  const auto count = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + 0.5));

  Rng rng(seed);
  auto picked = rng.sample_without_replacement(n, count);
  std::sort(picked.begin(), picked.end());

  Dataset out = data;
  out.provenance.outlier_indices.clear();
  for (std::size_t i : picked) {
    const auto idx = static_cast<Index>(i);
    out.targets(idx) *= factor;
    out.provenance.outlier_indices.push_back(idx);
  }
  return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, long row, long col) {
  const std::string s = trim(raw);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    std::ostringstream os;
    os << "CSV parse error: non-numeric cell '" << s << "' at row " << row
       << ", column " << col;
    throw CsvParseError(os.str(), row, col);
  }
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const ColumnRef& target_column, bool header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file: " + path);

  std::vector<std::pair<std::string, long>> lines;  // content, 1-based file row
  std::string line;
  long file_line = 0;
  while (std::getline(in, line)) {
    ++file_line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) lines.emplace_back(line, file_line);
  }
  if (lines.empty()) throw CsvParseError("empty CSV file: " + path);

  std::size_t first_data = 0;
  std::vector<std::string> names;
  if (header) {
    names = split_fields(lines[0].first);
    for (auto& nm : names) nm = trim(nm);
    first_data = 1;
    if (lines.size() == 1) throw CsvParseError("CSV has a header but no data rows: " + path);
  }

  const std::size_t ncols = split_fields(lines[first_data].first).size();
  if (ncols < 2)
    throw CsvParseError("CSV needs at least one feature column plus the target");

  Index target = -1;
  if (std::holds_alternative<Index>(target_column)) {
    target = std::get<Index>(target_column);
  } else {
    if (!header)
      throw std::invalid_argument("load_csv: target by name requires a header row");
    const std::string& want = std::get<std::string>(target_column);
    for (std::size_t j = 0; j < names.size(); ++j)
      if (names[j] == want) target = static_cast<Index>(j);
    if (target < 0) throw std::invalid_argument("load_csv: no column named '" + want + "'");
  }
  if (target < 0 || target >= static_cast<Index>(ncols))
    throw std::invalid_argument("load_csv: target column index out of range");

  const auto nrows = static_cast<Index>(lines.size() - first_data);
  Dataset d;
  d.features.resize(nrows, static_cast<Index>(ncols - 1));
  d.targets.resize(nrows);

  for (Index r = 0; r < nrows; ++r) {
    const auto& [content, file_row] = lines[first_data + static_cast<std::size_t>(r)];
    const auto fields = split_fields(content);
    if (fields.size() != ncols) {
      std::ostringstream os;
      os << "CSV parse error: row " << file_row << " has " << fields.size()
         << " fields, expected " << ncols;
      throw CsvParseError(os.str(), file_row, 0);
    }
    Index fcol = 0;
    for (std::size_t j = 0; j < ncols; ++j) {
      const double val = parse_cell(fields[j], file_row, static_cast<long>(j) + 1);
      if (static_cast<Index>(j) == target)
        d.targets(r) = val;
      else
        d.features(r, fcol++) = val;
    }
  }

  d.provenance.source = "csv:" + path;
  return d;
}

Matrix ScaleParams::apply(const Matrix& X) const {
  if (X.cols() != col_min.size())
    throw std::invalid_argument("ScaleParams::apply: column count mismatch");
  Matrix out(X.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    if (constant[static_cast<std::size_t>(j)])
      out.col(j).setConstant(0.5);
    else
      out.col(j) = (X.col(j).array() - col_min(j)) / col_span(j);
  }
  return out;
}

Matrix ScaleParams::invert(const Matrix& X) const {
  if (X.cols() != col_min.size())
    throw std::invalid_argument("ScaleParams::invert: column count mismatch");
  Matrix out(X.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    if (constant[static_cast<std::size_t>(j)])
      out.col(j).setConstant(col_min(j));
    else
      out.col(j) = X.col(j).array() * col_span(j) + col_min(j);
  }
  return out;
}

std::pair<Dataset, ScaleParams> scale_unit_interval(const Dataset& data) {
  data.validate();
  ScaleParams p;
  const Index n = data.cols();
  p.col_min.resize(n);
  p.col_span.resize(n);
  p.constant.assign(static_cast<std::size_t>(n), false);
  for (Index j = 0; j < n; ++j) {
    const double lo = data.features.col(j).minCoeff();
    const double hi = data.features.col(j).maxCoeff();
    p.col_min(j) = lo;
    p.col_span(j) = hi - lo;
    if (hi == lo) p.constant[static_cast<std::size_t>(j)] = true;
  }
  Dataset out = data;
  out.features = p.apply(data.features);
  out.provenance.scaling = "unit-interval";
  return {std::move(out), std::move(p)};
}

}  // namespace rkr
