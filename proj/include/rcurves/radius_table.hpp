#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcurves/boundary_distance.hpp"
#include "rcurves/classifiers.hpp"
#include "rcurves/csv.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/parallel.hpp"

namespace rcurves {

/// Per-sample margin data: whether the sample is misclassified and its raw
/// distance to the decision boundary under each norm. Whether a misclassified
/// point counts as radius zero is decided when a curve is built.
struct RadiusRecord {
  std::size_t sample_index = 0;
  bool misclassified = false;
  double r_l1 = 0.0;
  double r_l2 = 0.0;
  double r_linf = 0.0;
  double weight = 0.0;

  double radius(Norm tag) const {
    switch (tag) {
      case Norm::L1: return r_l1;
      case Norm::L2: return r_l2;
      case Norm::Linf: return r_linf;
    }
    return r_l2;
  }

  bool operator==(const RadiusRecord&) const = default;
};

struct RadiusTable {
  static constexpr double kOrderingTolerance = 1e-9;

  std::vector<RadiusRecord> records;
  std::size_t dimension = 0;     // 0 when unknown (e.g. loaded from CSV)
  nlohmann::json classifier;     // null when unknown
  std::string dataset_fingerprint;

  double total_weight() const {
    double s = 0.0;
    for (const auto& r : records) s += r.weight;
    return s;
  }

  bool is_linear() const { return classifier.is_object() && classifier.value("kind", "") == "linear"; }
};

/// Largest violation of r_linf <= r_l2 <= r_l1 <= sqrt(d) r_l2 <= d r_linf
/// (0 when the record is consistent).
inline double dual_ordering_violation(const RadiusRecord& r, std::size_t d) {
  const double sd = std::sqrt(static_cast<double>(d));
  const double dd = static_cast<double>(d);
  const double chain[] = {r.r_linf, r.r_l2, r.r_l1, sd * r.r_l2, dd * r.r_linf};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, chain[i] - chain[i + 1]);
  return worst;
}

/// Generic builder over any indexable sample source: `sample_at(i)` must
/// return a Sample (and may be called from several workers at once);
/// `weight_at(i)` the probability mass of sample i.
template <typename SampleAt, typename WeightAt>
RadiusTable build_radius_table_from(std::size_t n, std::size_t dim, SampleAt&& sample_at, WeightAt&& weight_at,
                                    const Classifier& f, unsigned workers = default_workers()) {
  if (std::holds_alternative<BlackBoxClassifier>(f)) {
    throw InvalidInput(
        "no exact distance solver for black-box classifiers; use brute_force_radius (verify --brute-force)");
  }
  require_same_dimension(dimension(f), dim);
  RadiusTable table;
  table.dimension = dim;
  table.classifier = to_json(f);
  table.records.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const Sample s = sample_at(i);
    RadiusRecord& rec = table.records[i];
    rec.sample_index = i;
    rec.misclassified = classify(f, s.x) != s.y;
    rec.r_l1 = exact_boundary_distance(f, s.x, Norm::L1);
    rec.r_l2 = exact_boundary_distance(f, s.x, Norm::L2);
    rec.r_linf = exact_boundary_distance(f, s.x, Norm::Linf);
    rec.weight = weight_at(i);
  });
  return table;
}

inline RadiusTable build_radius_table(const LabeledDataset& ds, const Classifier& f,
                                      unsigned workers = default_workers()) {
  ds.validate();
  auto table = build_radius_table_from(
      ds.size(), ds.dimension(),
      [&](std::size_t i) {
        auto p = ds.point(i);
        return Sample{Point(p.begin(), p.end()), ds.label(i)};
      },
      [&](std::size_t i) { return ds.weight(i); }, f, workers);
  table.dataset_fingerprint = fingerprint(ds);
  return table;
}

// CSV: `index,misclassified,r_l1,r_l2,r_linf,weight`, rows in sample order.

inline std::string radius_table_to_csv(const RadiusTable& t) {
  std::string out = "index,misclassified,r_l1,r_l2,r_linf,weight\n";
  for (const auto& r : t.records) {
    out += std::to_string(r.sample_index);
    out += r.misclassified ? ",1," : ",0,";
    out += csv::format_double(r.r_l1) + "," + csv::format_double(r.r_l2) + "," + csv::format_double(r.r_linf) +
           "," + csv::format_double(r.weight) + "\n";
  }
  return out;
}

inline RadiusTable radius_table_from_lines(const std::vector<std::string>& lines) {
  if (lines.empty() || csv::trim(lines[0]) != "index,misclassified,r_l1,r_l2,r_linf,weight") {
    throw ParseError("expected header index,misclassified,r_l1,r_l2,r_linf,weight", 1);
  }
  RadiusTable t;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const auto f = csv::split(lines[li]);
    if (f.size() != 6) throw ParseError("expected 6 fields, found " + std::to_string(f.size()), line_no);
    RadiusRecord r;
    const double idx = csv::parse_double(f[0], line_no);
    if (idx < 0 || idx != std::floor(idx)) throw ParseError("index must be a nonnegative integer", line_no);
    r.sample_index = static_cast<std::size_t>(idx);
    const auto flag = csv::trim(f[1]);
    if (flag != "0" && flag != "1") throw ParseError("misclassified must be 0 or 1", line_no);
    r.misclassified = flag == "1";
    r.r_l1 = csv::parse_double(f[2], line_no);
    r.r_l2 = csv::parse_double(f[3], line_no);
    r.r_linf = csv::parse_double(f[4], line_no);
    r.weight = csv::parse_double(f[5], line_no);
    if (r.r_l1 < 0 || r.r_l2 < 0 || r.r_linf < 0) throw ParseError("radii must be nonnegative", line_no);
    if (r.weight < 0) throw ParseError("negative weight", line_no);
    t.records.push_back(r);
  }
  if (t.records.empty()) throw ParseError("radius table has no rows", 0);
  if (std::abs(t.total_weight() - 1.0) > LabeledDataset::kWeightSumTolerance) {
    throw ParseError("weights sum to " + csv::format_double(t.total_weight()) + ", expected 1", 0);
  }
  return t;
}

inline RadiusTable load_radius_table_csv(const std::string& path) {
  return radius_table_from_lines(csv::read_lines(path));
}

inline void save_radius_table_csv(const RadiusTable& t, const std::string& path) {
  csv::write_text(path, radius_table_to_csv(t));
}

}  // namespace rcurves
