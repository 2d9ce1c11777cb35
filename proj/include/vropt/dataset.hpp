#ifndef VROPT_DATASET_HPP
#define VROPT_DATASET_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vropt/errors.hpp"
#include "vropt/rng.hpp"

namespace vropt {

using vec = Eigen::VectorXd;

/// One sample in compressed sparse form. Indices are 0-based and strictly
/// increasing; values are finite.
struct sparse_row {
  std::vector<int> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }

  double squared_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
  }
};

/// Dot product with a dense vector. Accumulation runs in ascending index
/// order so results are bit-reproducible.
inline double sparse_dot(const sparse_row& row, const vec& x) {
  if (!row.indices.empty() && row.indices.back() >= x.size())
    throw dimension_error("sparse_dot: row index " +
                          std::to_string(row.indices.back()) +
                          " out of range for dimension " +
                          std::to_string(x.size()));
  double s = 0.0;
  for (std::size_t j = 0; j < row.indices.size(); ++j)
    s += row.values[j] * x[row.indices[j]];
  return s;
}

/// Scatter-add w * row into a dense accumulator.
inline void sparse_axpy(double w, const sparse_row& row, vec& acc) {
  for (std::size_t j = 0; j < row.indices.size(); ++j)
    acc[row.indices[j]] += w * row.values[j];
}

struct dataset {
  std::vector<sparse_row> rows;
  std::vector<double> labels;  // each exactly -1.0 or +1.0
  int dim = 0;

  std::size_t n() const { return rows.size(); }
};

/// Maps a two-valued label set onto {-1, +1}: the larger raw value becomes
/// +1, the smaller -1.
inline std::vector<double> normalize_labels(const std::vector<double>& raw) {
  std::set<double> distinct(raw.begin(), raw.end());
  if (distinct.size() != 2)
    throw parse_error("labels must take exactly two distinct values, found " +
                      std::to_string(distinct.size()));
  const double lo = *distinct.begin();
  const double hi = *distinct.rbegin();
  std::vector<double> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out[i] = (raw[i] == hi) ? 1.0 : -1.0;
  return out;
}

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + tok.size() && tok.size() > 0 && std::isfinite(out);
}

}  // namespace detail

/// Reads LIBSVM text: `<label> <idx>:<val> ...` per line, 1-based indices,
/// optional `#` comment suffix. Indices are shifted to 0-based; dim is the
/// largest observed index + 1, or `min_dim` if that is larger.
inline dataset parse_libsvm(std::istream& in, int min_dim = 0) {
  dataset ds;
  std::vector<double> raw_labels;
  std::string line;
  long line_no = 0;
  int max_index = -1;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);

    std::size_t pos = 0;
    auto next_token = [&](std::string& tok) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos >= line.size()) return false;
      std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      tok = line.substr(start, pos - start);
      return true;
    };

    std::string tok;
    if (!next_token(tok)) continue;  // blank line

    double label;
    if (!detail::parse_double(tok, label))
      throw parse_error("malformed label '" + tok + "'", line_no);

    sparse_row row;
    int prev_index = 0;
    while (next_token(tok)) {
      auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw parse_error("malformed feature token '" + tok + "'", line_no);
      double idx_d, val;
      if (!detail::parse_double(tok.substr(0, colon), idx_d) ||
          idx_d != std::floor(idx_d))
        throw parse_error("malformed feature index in '" + tok + "'", line_no);
      const long idx = static_cast<long>(idx_d);
      if (idx <= 0)
        throw parse_error("feature index must be >= 1, got " +
                          std::to_string(idx), line_no);
      if (idx <= prev_index)
        throw parse_error("feature indices must be strictly increasing", line_no);
      if (!detail::parse_double(tok.substr(colon + 1), val))
        throw parse_error("malformed feature value in '" + tok + "'", line_no);
      prev_index = static_cast<int>(idx);
      row.indices.push_back(static_cast<int>(idx) - 1);
      row.values.push_back(val);
    }
    max_index = std::max(max_index, prev_index - 1);
    ds.rows.push_back(std::move(row));
    raw_labels.push_back(label);
  }

  if (ds.rows.empty()) throw parse_error("empty dataset");
  ds.labels = normalize_labels(raw_labels);
  ds.dim = std::max(max_index + 1, min_dim);
  return ds;
}

/// Writes LIBSVM text that parse_libsvm maps back to an identical dataset.
/// Values use 17 significant digits so the float round trip is exact.
inline void serialize_libsvm(const dataset& ds, std::ostream& out) {
  char buf[64];
  for (std::size_t i = 0; i < ds.n(); ++i) {
    out << (ds.labels[i] > 0 ? "+1" : "-1");
    const sparse_row& row = ds.rows[i];
    for (std::size_t j = 0; j < row.nnz(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", row.values[j]);
      out << ' ' << (row.indices[j] + 1) << ':' << buf;
    }
    out << '\n';
  }
}

/// Checks every structural invariant; throws on the first violation.
inline void validate_dataset(const dataset& ds) {
  if (ds.rows.empty()) throw parse_error("empty dataset");
  if (ds.rows.size() != ds.labels.size())
    throw parse_error("row/label count mismatch");
  if (ds.dim < 1) throw parse_error("dimension must be >= 1");
  for (std::size_t i = 0; i < ds.n(); ++i) {
    if (ds.labels[i] != 1.0 && ds.labels[i] != -1.0)
      throw parse_error("label not in {-1,+1}", static_cast<long>(i + 1));
    const sparse_row& row = ds.rows[i];
    if (row.indices.size() != row.values.size())
      throw parse_error("index/value length mismatch", static_cast<long>(i + 1));
    int prev = -1;
    for (std::size_t j = 0; j < row.nnz(); ++j) {
      if (row.indices[j] <= prev)
        throw parse_error("indices not strictly increasing",
                          static_cast<long>(i + 1));
      if (row.indices[j] >= ds.dim)
        throw parse_error("index exceeds dimension", static_cast<long>(i + 1));
      if (!std::isfinite(row.values[j]))
        throw parse_error("non-finite feature value", static_cast<long>(i + 1));
      prev = row.indices[j];
    }
  }
}

/// Deterministic two-class sample for runs that have no data file at hand.
/// Binary indicator features with power-law appearance frequencies emulate
/// the one-hot census encodings of the common LIBSVM binary benchmarks:
/// frequent features carry most of the curvature while the long tail keeps
/// the problem badly conditioned. Labels come from a planted hyperplane with
/// a fixed fraction flipped so the classes stay non-separable.
inline dataset synthetic_logistic_dataset(int n, int d, std::uint64_t seed,
                                          double tail_exponent = 0.9,
                                          double flip_fraction = 0.05) {
  if (n < 1 || d < 1 || tail_exponent < 0.0)
    throw config_error("synthetic_logistic_dataset: invalid shape");
  rng r(seed);
  vec w_true(d);
  for (int j = 0; j < d; ++j) w_true[j] = r.normal();

  dataset ds;
  ds.dim = d;
  ds.rows.reserve(n);
  ds.labels.reserve(n);
  for (int i = 0; i < n; ++i) {
    sparse_row row;
    double margin = 0.0;
    for (int j = 0; j < d; ++j) {
      const double p_j =
          std::min(1.0, 1.2 * std::pow(j + 1.0, -tail_exponent));
      if (r.uniform01() < p_j) {
        row.indices.push_back(j);
        row.values.push_back(1.0);
        margin += w_true[j];
      }
    }
    if (row.indices.empty()) {  // keep every sample informative
      row.indices.push_back(0);
      row.values.push_back(1.0);
      margin += w_true[0];
    }
    double label = margin >= 0.0 ? 1.0 : -1.0;
    if (r.uniform01() < flip_fraction) label = -label;
    ds.rows.push_back(std::move(row));
    ds.labels.push_back(label);
  }
  return ds;
}

}  // namespace vropt

#endif
