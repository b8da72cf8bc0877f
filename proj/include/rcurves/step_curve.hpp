#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcurves/csv.hpp"
#include "rcurves/error.hpp"

namespace rcurves {

/// Neumaier-compensated running sum of nonnegative masses.
class CompensatedSum {
 public:
  void add(double w) {
    const double t = sum_ + w;
    carry_ += std::abs(sum_) >= std::abs(w) ? (sum_ - t) + w : (w - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Right-continuous, non-decreasing step function on [0, inf) with values in
/// [0, 1]. `base()` is the value on [0, first breakpoint); breakpoints are
/// strictly positive and strictly increasing, and `values()[k]` holds on
/// [breakpoints()[k], breakpoints()[k+1]).
class StepCurve {
 public:
  /// Radii closer than this to the first radius of a group collapse into one
  /// breakpoint; radii within it of zero fold into the base value.
  static constexpr double kTieTolerance = 1e-12;

  StepCurve() = default;

  StepCurve(double base, std::vector<double> breakpoints, std::vector<double> values)
      : base_(base), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() != values_.size()) throw InvalidInput("step curve: breakpoints/values length mismatch");
    if (!(base_ >= 0.0 && base_ <= 1.0)) throw InvalidInput("step curve: base value outside [0, 1]");
    double prev_x = 0.0;
    double prev_v = base_;
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
      if (!(breakpoints_[k] > prev_x) || !std::isfinite(breakpoints_[k])) {
        throw InvalidInput("step curve: breakpoints must be positive and strictly increasing");
      }
      if (!(values_[k] >= prev_v && values_[k] <= 1.0)) {
        throw InvalidInput("step curve: values must be non-decreasing within [0, 1]");
      }
      prev_x = breakpoints_[k];
      prev_v = values_[k];
    }
  }

  /// Weighted empirical CDF of the radii: curve(eps) = sum of weights with radius <= eps.
  static StepCurve from_radii(std::span<const double> radii, std::span<const double> weights) {
    if (radii.size() != weights.size()) throw InvalidInput("step curve: radii/weights length mismatch");
    std::vector<std::size_t> order(radii.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return radii[a] != radii[b] ? radii[a] < radii[b] : a < b;
    });

    double base = 0.0;
    std::vector<double> xs;
    std::vector<double> vs;
    // n copies of 1/n must land on 1.
    CompensatedSum cumulative;
    std::size_t k = 0;
    while (k < order.size()) {
      const double start = radii[order[k]];
      if (!(start >= 0.0)) throw InvalidInput("step curve: radii must be nonnegative");
      bool has_mass = false;
      while (k < order.size() && radii[order[k]] - start <= kTieTolerance) {
        has_mass = has_mass || weights[order[k]] > 0.0;
        cumulative.add(weights[order[k++]]);
      }
      const double v = std::min(cumulative.value(), 1.0);
      if (start <= kTieTolerance) {
        base = v;
      } else if (has_mass) {
        xs.push_back(start);
        vs.push_back(v);
      }
    }
    return StepCurve(base, std::move(xs), std::move(vs));
  }

  double base() const { return base_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double final_value() const { return values_.empty() ? base_ : values_.back(); }

  double operator()(double eps) const {
    if (!(eps >= 0.0)) throw InvalidInput("curve evaluated at a negative or NaN epsilon");
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), eps);
    if (it == breakpoints_.begin()) return base_;
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

  bool operator==(const StepCurve&) const = default;

 private:
  double base_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

inline double eval_curve(const StepCurve& curve, double eps) { return curve(eps); }

/// Stretches the epsilon axis: rescale_curve(c, a)(a * eps) == c(eps).
inline StepCurve rescale_curve(const StepCurve& curve, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidInput("rescale factor must be positive");
  std::vector<double> xs = curve.breakpoints();
  for (double& x : xs) x *= factor;
  return StepCurve(curve.base(), std::move(xs), curve.values());
}

/// Largest |a(eps) - b(eps)| over both curves' breakpoints, probed just below
/// and just above each one (relative offset `rel`), plus eps = 0.
inline double sup_distance(const StepCurve& a, const StepCurve& b, double rel = 1e-12) {
  double worst = std::abs(a.base() - b.base());
  for (const auto* c : {&a, &b}) {
    for (double x : c->breakpoints()) {
      for (double probe : {x * (1.0 - rel), x * (1.0 + rel)}) worst = std::max(worst, std::abs(a(probe) - b(probe)));
    }
  }
  return worst;
}

// CSV: `epsilon,loss`, a `0,<base>` row followed by one row per breakpoint.

inline std::string curve_to_csv(const StepCurve& c) {
  std::string out = "epsilon,loss\n0," + csv::format_double(c.base()) + "\n";
  for (std::size_t k = 0; k < c.breakpoints().size(); ++k) {
    out += csv::format_double(c.breakpoints()[k]) + "," + csv::format_double(c.values()[k]) + "\n";
  }
  return out;
}

inline StepCurve curve_from_lines(const std::vector<std::string>& lines) {
  if (lines.empty() || csv::trim(lines[0]) != "epsilon,loss") throw ParseError("expected header epsilon,loss", 1);
  if (lines.size() < 2) throw ParseError("curve file has no rows", 0);
  double base = 0.0;
  std::vector<double> xs;
  std::vector<double> vs;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = csv::split(lines[li]);
    if (f.size() != 2) throw ParseError("expected 2 fields", li + 1);
    const double x = csv::parse_double(f[0], li + 1);
    const double v = csv::parse_double(f[1], li + 1);
    if (li == 1) {
      if (x != 0.0) throw ParseError("first row must be at epsilon 0", li + 1);
      base = v;
    } else {
      xs.push_back(x);
      vs.push_back(v);
    }
  }
  try {
    return StepCurve(base, std::move(xs), std::move(vs));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 0);
  }
}

inline StepCurve load_curve_csv(const std::string& path) { return curve_from_lines(csv::read_lines(path)); }

inline void save_curve_csv(const StepCurve& c, const std::string& path) { csv::write_text(path, curve_to_csv(c)); }

}  // namespace rcurves
