#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "rcurves/classifiers.hpp"
#include "rcurves/distributions.hpp"
#include "rcurves/norms.hpp"
#include "rcurves/radius_table.hpp"
#include "rcurves/step_curve.hpp"

namespace rcurves {

enum class CurveKind { Robustness, Margin };

inline std::string_view to_string(CurveKind k) { return k == CurveKind::Robustness ? "robustness" : "margin"; }

inline CurveKind curve_kind_from_string(std::string_view s) {
  if (s == "robustness") return CurveKind::Robustness;
  if (s == "margin") return CurveKind::Margin;
  throw InvalidInput("unknown curve kind '" + std::string(s) + "' (expected robustness or margin)");
}

/// eps -> adversarial loss. Misclassified points are vulnerable at every
/// radius, so their effective radius is 0 and curve(0) is the standard loss
/// (plus the mass of correctly classified points sitting on the boundary).
inline StepCurve robustness_curve(const RadiusTable& table, Norm tag) {
  std::vector<double> radii;
  std::vector<double> weights;
  radii.reserve(table.records.size());
  weights.reserve(table.records.size());
  for (const auto& r : table.records) {
    radii.push_back(r.misclassified ? 0.0 : r.radius(tag));
    weights.push_back(r.weight);
  }
  return StepCurve::from_radii(radii, weights);
}

/// eps -> margin loss: mass within eps of the decision boundary, labels ignored.
inline StepCurve margin_curve(const RadiusTable& table, Norm tag) {
  std::vector<double> radii;
  std::vector<double> weights;
  radii.reserve(table.records.size());
  weights.reserve(table.records.size());
  for (const auto& r : table.records) {
    radii.push_back(r.radius(tag));
    weights.push_back(r.weight);
  }
  return StepCurve::from_radii(radii, weights);
}

inline StepCurve make_curve(const RadiusTable& table, Norm tag, CurveKind kind) {
  return kind == CurveKind::Robustness ? robustness_curve(table, tag) : margin_curve(table, tag);
}

inline double standard_loss(const RadiusTable& table) {
  CompensatedSum s;
  for (const auto& r : table.records) {
    if (r.misclassified) s.add(r.weight);
  }
  return s.value();
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<double> eps_grid;  // empty when the checks probe breakpoints instead

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }

  void add(std::string name, double deviation, double tolerance) {
    checks.push_back({std::move(name), deviation, tolerance, deviation <= tolerance});
  }

  void append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    if (eps_grid.empty()) eps_grid = other.eps_grid;
  }

  std::string to_text() const {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-44s %14s %10s  %s\n", "check", "max_deviation", "tolerance", "result");
    out += line;
    for (const auto& c : checks) {
      std::snprintf(line, sizeof(line), "%-44s %14.6e %10.1e  %s\n", c.name.c_str(), c.max_deviation, c.tolerance,
                    c.passed ? "PASS" : "FAIL");
      out += line;
    }
    if (!eps_grid.empty()) {
      std::snprintf(line, sizeof(line), "eps grid: %zu points over [%g, %g]\n", eps_grid.size(), eps_grid.front(),
                    eps_grid.back());
      out += line;
    }
    out += passed() ? "overall: PASS\n" : "overall: FAIL\n";
    return out;
  }
};

inline std::vector<double> make_eps_grid(double eps_min, double eps_max, std::size_t points) {
  if (!(eps_min >= 0.0) || !(eps_max >= eps_min) || points < 2) {
    throw InvalidInput("eps grid needs 0 <= min <= max and at least 2 points");
  }
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = eps_min + (eps_max - eps_min) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

/// Largest finite radius across all three norms (0 for an all-zero table).
inline double max_radius(const RadiusTable& table) {
  double m = 0.0;
  for (const auto& r : table.records) m = std::max({m, r.r_l1, r.r_l2, r.r_linf});
  return m;
}

struct ScalingConstants {
  double c = 1.0;        // ||w||_2 / ||w||_inf
  double c_prime = 1.0;  // ||w||_1 / ||w||_inf
};

inline ScalingConstants scaling_constants(const LinearClassifier& f) {
  const double inf = norm(f.weights(), Norm::Linf);
  return {norm(f.weights(), Norm::L2) / inf, norm(f.weights(), Norm::L1) / inf};
}

/// Relative epsilon offset used when probing a curve next to a breakpoint, so
/// that last-bit rounding in the radii cannot decide which side of a jump a
/// probe lands on.
inline constexpr double kBreakpointProbe = 1e-12;

namespace detail {

/// max over probes eps of |a(eps) - b(eps / factor)|, probing next to every
/// breakpoint of a and of the rescaled b.
inline double rescaled_deviation(const StepCurve& a, const StepCurve& b, double factor) {
  return sup_distance(a, rescale_curve(b, factor), kBreakpointProbe);
}

}  // namespace detail

/// For a hyperplane the three radii are fixed multiples of one another, so
/// L1(eps) == L2(eps / c) == LINF(eps / c') for the empirical curves as well.
/// Checked on both robustness and margin curves at every breakpoint.
inline VerificationReport verify_linear_scaling(const RadiusTable& table, const LinearClassifier& f) {
  if (!table.classifier.is_null() && !table.is_linear()) {
    throw InvalidInput("linear scaling check needs a table built from a linear classifier");
  }
  if (table.dimension != 0) require_same_dimension(table.dimension, f.dimension());
  const auto k = scaling_constants(f);
  VerificationReport report;
  for (CurveKind kind : {CurveKind::Robustness, CurveKind::Margin}) {
    const auto l1 = make_curve(table, Norm::L1, kind);
    const auto l2 = make_curve(table, Norm::L2, kind);
    const auto li = make_curve(table, Norm::Linf, kind);
    const std::string prefix(to_string(kind));
    report.add(prefix + ": |L1(e) - L2(e/c)|", detail::rescaled_deviation(l1, l2, k.c), kExactTolerance);
    report.add(prefix + ": |L1(e) - LINF(e/c')|", detail::rescaled_deviation(l1, li, k.c_prime), kExactTolerance);
  }
  return report;
}

/// Loss ordering at each grid eps:
///   LINF(e) >= L2(e) >= L1(e) >= L2(e/sqrt(d)) >= L1(e/d).
/// Each right-hand term is probed at e * (1 - 1e-12) so that equality cases
/// (the chain is tight) are not broken by rounding in the radii.
inline VerificationReport verify_norm_ordering(const StepCurve& l1, const StepCurve& l2, const StepCurve& linf,
                                               std::size_t d, const std::vector<double>& eps_grid,
                                               const std::string& label = "") {
  if (d < 1) throw InvalidInput("norm ordering check needs d >= 1");
  const double sd = std::sqrt(static_cast<double>(d));
  const double dd = static_cast<double>(d);
  const double lo = 1.0 - kBreakpointProbe;
  double dev[4] = {0, 0, 0, 0};
  for (double e : eps_grid) {
    dev[0] = std::max(dev[0], l2(e * lo) - linf(e));
    dev[1] = std::max(dev[1], l1(e * lo) - l2(e));
    dev[2] = std::max(dev[2], l2(e / sd * lo) - l1(e));
    dev[3] = std::max(dev[3], l1(e / dd * lo) - l2(e / sd));
  }
  const std::string p = label.empty() ? "" : label + ": ";
  VerificationReport report;
  report.eps_grid = eps_grid;
  report.add(p + "LINF(e) >= L2(e)", dev[0], kExactTolerance);
  report.add(p + "L2(e) >= L1(e)", dev[1], kExactTolerance);
  report.add(p + "L1(e) >= L2(e/sqrt d)", dev[2], kExactTolerance);
  report.add(p + "L2(e/sqrt d) >= L1(e/d)", dev[3], kExactTolerance);
  return report;
}

/// Ordering check on both curve kinds built from one table.
inline VerificationReport verify_norm_ordering(const RadiusTable& table, std::size_t d,
                                               const std::vector<double>& eps_grid) {
  VerificationReport report;
  for (CurveKind kind : {CurveKind::Robustness, CurveKind::Margin}) {
    report.append(verify_norm_ordering(make_curve(table, Norm::L1, kind), make_curve(table, Norm::L2, kind),
                                       make_curve(table, Norm::Linf, kind), d, eps_grid,
                                       std::string(to_string(kind))));
  }
  return report;
}

/// Per-record dual ordering r_linf <= r_l2 <= r_l1 <= sqrt(d) r_l2 <= d r_linf.
inline CheckResult check_record_ordering(const RadiusTable& table, std::size_t d) {
  double worst = 0.0;
  for (const auto& r : table.records) worst = std::max(worst, dual_ordering_violation(r, d));
  const double tol = RadiusTable::kOrderingTolerance;
  return {"records: dual-norm radius ordering", worst, tol, worst <= tol};
}

// ---------------------------------------------------------------------------
// Closed-form curves
// ---------------------------------------------------------------------------

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Robustness curves of P1 under f_avg (w = (0, 1/d, ..., 1/d)) and
/// f_rob (w = e1). For f_avg, y<w,x> ~ N(eta, 1/d) and the three radii are
/// |<w,x>| divided by ||w||_1 = 1, ||w||_2 = 1/sqrt(d), ||w||_inf = 1/d.
class P1ClosedFormCurves {
 public:
  explicit P1ClosedFormCurves(P1Params params) : params_(params) { params_.validate(); }

  double f_avg(Norm tag, double eps) const {
    const double sd = std::sqrt(static_cast<double>(params_.d));
    const double d = static_cast<double>(params_.d);
    switch (tag) {
      case Norm::Linf: return normal_cdf(sd * (eps - params_.eta));
      case Norm::L2: return normal_cdf(eps - params_.eta * sd);
      case Norm::L1: return normal_cdf(sd * (eps / d - params_.eta));
    }
    return 0.0;
  }

  /// Identical for every norm: x1 = ±1 puts every point at distance 1.
  double f_rob(double eps) const { return eps < 1.0 ? 1.0 - params_.p : 1.0; }

 private:
  P1Params params_;
};

inline P1ClosedFormCurves closed_form_p1_curves(const P1Params& params) { return P1ClosedFormCurves(params); }

/// LINF robustness curve of P2 under f_s = sgn(sum x_i). With k ~ Bin(d, 0.51)
/// agreeing coordinates, y * sum x = 2k - d and the radius is |2k - d| / d,
/// so L(eps) = P(2k - d <= eps d). The binomial CDF is accumulated in log space.
class P2ClosedFormCurve {
 public:
  explicit P2ClosedFormCurve(P2Params params) : d_(params.d) {
    params.validate();
    const double n = static_cast<double>(d_);
    const double lp = std::log(params.agree_prob);
    const double lq = std::log1p(-params.agree_prob);
    const double lg_n = std::lgamma(n + 1.0);
    cdf_.resize(d_ + 1);
    double log_cdf = -INFINITY;
    for (std::size_t k = 0; k <= d_; ++k) {
      const double kk = static_cast<double>(k);
      const double log_pmf = lg_n - std::lgamma(kk + 1.0) - std::lgamma(n - kk + 1.0) + kk * lp + (n - kk) * lq;
      const double hi = std::max(log_cdf, log_pmf);
      log_cdf = hi + std::log(std::exp(log_cdf - hi) + std::exp(log_pmf - hi));
      cdf_[k] = std::min(1.0, std::exp(log_cdf));
    }
  }

  /// P(k <= k_max).
  double binomial_cdf(std::size_t k_max) const { return cdf_[std::min(k_max, d_)]; }

  double operator()(double eps) const {
    if (!(eps >= 0.0)) throw InvalidInput("curve evaluated at a negative or NaN epsilon");
    const double n = static_cast<double>(d_);
    const double k_max = std::floor((n + eps * n) / 2.0);
    return binomial_cdf(static_cast<std::size_t>(std::min(k_max, n)));
  }

 private:
  std::size_t d_;
  std::vector<double> cdf_;
};

inline P2ClosedFormCurve closed_form_p2_curve(const P2Params& params) { return P2ClosedFormCurve(params); }

}  // namespace rcurves
