#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "rcurves/classifiers.hpp"
#include "rcurves/csv.hpp"
#include "rcurves/error.hpp"
#include "rcurves/norms.hpp"

namespace rcurves {

struct Sample {
  Point x;
  Label y = Label::Positive;
};

/// Weighted labelled points of one common dimension, stored row-major.
class LabeledDataset {
 public:
  static constexpr double kWeightSumTolerance = 1e-9;

  LabeledDataset() = default;
  explicit LabeledDataset(std::size_t dimension, std::uint64_t seed = 0) : dim_(dimension), seed_(seed) {
    if (dimension == 0) throw InvalidInput("dataset dimension must be at least 1");
  }

  void reserve(std::size_t n) {
    coords_.reserve(n * dim_);
    labels_.reserve(n);
    weights_.reserve(n);
  }

  void add(std::span<const double> x, Label y, double weight) {
    require_same_dimension(x.size(), dim_);
    require_finite(x);
    if (!(weight >= 0.0) || !std::isfinite(weight)) throw InvalidInput("weights must be finite and nonnegative");
    coords_.insert(coords_.end(), x.begin(), x.end());
    labels_.push_back(y);
    weights_.push_back(weight);
  }

  /// Sizes the dataset to n zero rows so that rows can be filled by index,
  /// possibly from several workers.
  void resize(std::size_t n) {
    coords_.assign(n * dim_, 0.0);
    labels_.assign(n, Label::Positive);
    weights_.assign(n, 0.0);
  }

  void set(std::size_t i, std::span<const double> x, Label y, double weight) {
    require_same_dimension(x.size(), dim_);
    require_finite(x);
    std::copy(x.begin(), x.end(), coords_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    labels_[i] = y;
    weights_[i] = weight;
  }

  /// Replaces all weights by 1/N.
  void set_uniform_weights() {
    const double w = size() == 0 ? 0.0 : 1.0 / static_cast<double>(size());
    weights_.assign(size(), w);
  }

  std::size_t size() const { return labels_.size(); }
  std::size_t dimension() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  Label label(std::size_t i) const { return labels_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  double total_weight() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
  }

  void validate() const {
    if (size() == 0) throw InvalidInput("dataset is empty");
    if (std::abs(total_weight() - 1.0) > kWeightSumTolerance) {
      throw InvalidInput("dataset weights must sum to 1 (got " + csv::format_double(total_weight()) + ")");
    }
  }

  // The seed is provenance only and does not take part in equality.
  bool operator==(const LabeledDataset& o) const {
    return dim_ == o.dim_ && coords_ == o.coords_ && labels_ == o.labels_ && weights_ == o.weights_;
  }

 private:
  std::size_t dim_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> coords_;
  std::vector<Label> labels_;
  std::vector<double> weights_;
};

// CSV layout: header `x1,...,x<d>,y,weight`, weight optional on input.

inline std::string dataset_to_csv(const LabeledDataset& ds) {
  std::string out;
  for (std::size_t j = 0; j < ds.dimension(); ++j) out += "x" + std::to_string(j + 1) + ",";
  out += "y,weight\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.point(i)) {
      out += csv::format_double(v);
      out += ',';
    }
    out += ds.label(i) == Label::Positive ? "1," : "-1,";
    out += csv::format_double(ds.weight(i));
    out += '\n';
  }
  return out;
}

inline LabeledDataset dataset_from_lines(const std::vector<std::string>& lines) {
  if (lines.empty()) throw ParseError("missing header", 1);
  const auto header = csv::split(lines[0]);
  std::size_t dim = 0;
  while (dim < header.size() && csv::trim(header[dim]) == "x" + std::to_string(dim + 1)) ++dim;
  if (dim == 0) throw ParseError("header must start with x1", 1);
  if (dim >= header.size() || csv::trim(header[dim]) != "y") throw ParseError("expected column 'y' after x" + std::to_string(dim), 1);
  const bool has_weight = header.size() == dim + 2;
  if (has_weight && csv::trim(header[dim + 1]) != "weight") throw ParseError("last column must be 'weight'", 1);
  if (header.size() > dim + 2) throw ParseError("unexpected extra columns", 1);

  LabeledDataset ds(dim);
  ds.reserve(lines.size() - 1);
  Point x(dim);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const auto fields = csv::split(lines[li]);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()), line_no);
    }
    for (std::size_t j = 0; j < dim; ++j) x[j] = csv::parse_double(fields[j], line_no);
    const double yv = csv::parse_double(fields[dim], line_no);
    if (yv != 1.0 && yv != -1.0) throw ParseError("label must be -1 or 1", line_no);
    double w = 1.0;
    if (has_weight) {
      w = csv::parse_double(fields[dim + 1], line_no);
      if (w < 0.0) throw ParseError("negative weight", line_no);
    }
    ds.add(x, label_from_value(yv), w);
  }
  if (ds.size() == 0) throw ParseError("dataset has no rows", 0);
  if (!has_weight) {
    ds.set_uniform_weights();
  } else if (std::abs(ds.total_weight() - 1.0) > LabeledDataset::kWeightSumTolerance) {
    throw ParseError("weights sum to " + csv::format_double(ds.total_weight()) + ", expected 1", 0);
  }
  return ds;
}

inline LabeledDataset load_dataset_csv(const std::string& path) { return dataset_from_lines(csv::read_lines(path)); }

inline void save_dataset_csv(const LabeledDataset& ds, const std::string& path) {
  csv::write_text(path, dataset_to_csv(ds));
}

/// 64-bit FNV-1a over arbitrary bytes, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Content hash of the dataset's CSV rendering.
inline std::string fingerprint(const LabeledDataset& ds) { return fnv1a_hex(dataset_to_csv(ds)); }

}  // namespace rcurves
