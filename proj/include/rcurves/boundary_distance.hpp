#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "rcurves/classifiers.hpp"
#include "rcurves/error.hpp"
#include "rcurves/norms.hpp"

namespace rcurves {

// Hyperplane distances use the dual norm of w:
//   d_1 = |b + <w,x>| / ||w||_inf,  d_2 = ... / ||w||_2,  d_inf = ... / ||w||_1.
inline double hyperplane_distance(const LinearClassifier& f, std::span<const double> x, Norm tag) {
  require_same_dimension(x.size(), f.dimension());
  require_finite(x);
  return std::abs(f.score(x)) / norm(f.weights(), dual(tag));
}

namespace detail {

inline double parabola_offset_norm(double x1, double x2, double t, Norm tag) {
  const double a = std::abs(x1 - t);
  const double b = std::abs(x2 - t * t);
  switch (tag) {
    case Norm::L1: return a + b;
    case Norm::L2: return std::hypot(a, b);
    case Norm::Linf: return std::max(a, b);
  }
  return 0.0;
}

/// Golden-section search for a minimum of `f` on [lo, hi]; returns the best
/// value seen, not the abscissa.
template <typename F>
double golden_section_min(F&& f, double lo, double hi, double width) {
  constexpr double inv_phi = 0.6180339887498948482;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  double best = std::min({f(lo), f(hi), fc, fd});
  for (int iter = 0; iter < 200 && hi - lo > width; ++iter) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
      best = std::min(best, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
      best = std::min(best, fd);
    }
  }
  return std::min(best, f(0.5 * (lo + hi)));
}

}  // namespace detail

inline constexpr int kParabolaGridPoints = 2048;

/// Distance from x to the curve {x2 = x1²}: min over t of ||(x1 - t, x2 - t²)||.
///
/// Every minimiser lies within objective(x1) of x1 because the horizontal
/// term alone would exceed that otherwise, so [x1 - M, x1 + M] with
/// M = objective(x1) + 1 brackets all of them. The L1 and LINF objectives are
/// only piecewise smooth and may have several local minima, hence a dense
/// grid followed by golden-section refinement around every local grid minimum.
/// The kink locations t = x1 and t = ±sqrt(x2) are always evaluated.
inline double parabola_distance(std::span<const double> x, Norm tag) {
  if (x.size() != 2) throw InvalidInput("parabola distance needs a 2-D point");
  require_finite(x);
  const double x1 = x[0];
  const double x2 = x[1];
  auto objective = [&](double t) { return detail::parabola_offset_norm(x1, x2, t, tag); };

  double best = objective(x1);
  if (best == 0.0) return 0.0;
  if (x2 >= 0.0) {
    best = std::min({best, objective(std::sqrt(x2)), objective(-std::sqrt(x2))});
  }

  const double half_width = best + 1.0;
  const double lo = x1 - half_width;
  const double step = 2.0 * half_width / (kParabolaGridPoints - 1);
  std::array<double, kParabolaGridPoints> values;
  for (int i = 0; i < kParabolaGridPoints; ++i) values[i] = objective(lo + step * i);

  for (int i = 0; i < kParabolaGridPoints; ++i) {
    const bool left_ok = i == 0 || values[i] < values[i - 1];
    const bool right_ok = i == kParabolaGridPoints - 1 || values[i] <= values[i + 1];
    if (!left_ok || !right_ok) continue;
    const double a = lo + step * std::max(i - 1, 0);
    const double b = lo + step * std::min(i + 1, kParabolaGridPoints - 1);
    best = std::min(best, detail::golden_section_min(objective, a, b, 1e-12));
  }
  return best;
}

/// Real roots of t³ + p t + q = 0.
inline std::vector<double> depressed_cubic_roots(double p, double q) {
  std::vector<double> roots;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (p == 0.0 && q == 0.0) {
    roots.push_back(0.0);
  } else if (disc > 0.0) {
    // Cardano, arranged so the two cube roots never cancel.
    const double s = std::sqrt(disc);
    const double a = -std::copysign(std::cbrt(std::abs(q) / 2.0 + s), q);
    const double b = a == 0.0 ? 0.0 : -p / (3.0 * a);
    roots.push_back(a + b);
  } else {
    // Three real roots (p < 0): trigonometric form.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
  }
  return roots;
}

/// Euclidean distance to the parabola from the stationarity condition
/// 2t³ + (1 - 2 x2) t - x1 = 0, solved in closed form.
inline double parabola_distance_l2_closed_form(std::span<const double> x) {
  if (x.size() != 2) throw InvalidInput("parabola distance needs a 2-D point");
  require_finite(x);
  const double x1 = x[0];
  const double x2 = x[1];
  const double p = (1.0 - 2.0 * x2) / 2.0;
  const double q = -x1 / 2.0;
  double best = std::numeric_limits<double>::infinity();
  for (double t : depressed_cubic_roots(p, q)) {
    // Newton polish against rounding in the trigonometric branch.
    for (int i = 0; i < 2; ++i) {
      const double g = 2.0 * t * t * t + 2.0 * p * t - x1;
      const double dg = 6.0 * t * t + 2.0 * p;
      if (dg != 0.0) t -= g / dg;
    }
    best = std::min(best, std::hypot(x1 - t, x2 - t * t));
  }
  return best;
}

namespace detail {

/// Unit-sphere point of `tag` in direction angle.
inline std::array<double, 2> unit_sphere_point(double angle, Norm tag) {
  const std::array<double, 2> dir = {std::cos(angle), std::sin(angle)};
  const double n = norm(dir, tag);
  return {dir[0] / n, dir[1] / n};
}

/// `count` points on the unit sphere of `tag`: uniform angles for L2,
/// equal spacing along each polygon edge (vertices included) for L1 / LINF.
inline std::vector<std::array<double, 2>> sphere_samples(Norm tag, int count) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(count);
  if (tag == Norm::L2) {
    for (int k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * k / count;
      pts.push_back({std::cos(a), std::sin(a)});
    }
    return pts;
  }
  const std::array<std::array<double, 2>, 4> vertices =
      tag == Norm::L1 ? std::array<std::array<double, 2>, 4>{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}}
                      : std::array<std::array<double, 2>, 4>{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
  const int per_edge = (count + 3) / 4;
  for (int e = 0; e < 4; ++e) {
    const auto& a = vertices[e];
    const auto& b = vertices[(e + 1) % 4];
    for (int k = 0; k < per_edge; ++k) {
      const double s = static_cast<double>(k) / per_edge;
      pts.push_back({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])});
    }
  }
  return pts;
}

/// `count` interior points of the unit ball on a golden-angle spiral.
inline std::vector<std::array<double, 2>> ball_samples(Norm tag, int count) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(count);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double rho = std::sqrt((k + 0.5) / count);
    const auto u = unit_sphere_point(golden_angle * k, tag);
    pts.push_back({rho * u[0], rho * u[1]});
  }
  return pts;
}

}  // namespace detail

inline constexpr int kBisectionIterations = 30;

/// Black-box radius estimate: bisection on eps over [0, eps_max], deciding
/// feasibility by sampling the eps-sphere and the eps-ball for a label flip.
/// Returns std::nullopt when no flip exists within eps_max. The estimate can
/// only overshoot the true radius (by the sphere sampling resolution).
inline std::optional<double> brute_force_radius(const BlackBoxClassifier& f, std::span<const double> x, Norm tag,
                                                double eps_max, int grid) {
  if (x.size() != 2) throw InvalidInput("brute-force radius search is 2-D only");
  require_finite(x);
  if (!(eps_max > 0.0) || !std::isfinite(eps_max)) throw InvalidInput("eps_max must be positive");
  if (grid < 64) throw InvalidInput("grid must be at least 64");

  const Label own = f.predicate(x);
  const auto sphere = detail::sphere_samples(tag, grid);
  const auto ball = detail::ball_samples(tag, grid);

  auto flips = [&](double eps) {
    std::array<double, 2> probe;
    for (const auto* set : {&sphere, &ball}) {
      for (const auto& u : *set) {
        probe = {x[0] + eps * u[0], x[1] + eps * u[1]};
        if (f.predicate(probe) != own) return true;
      }
    }
    return false;
  };

  if (!flips(eps_max)) return std::nullopt;
  double lo = 0.0;
  double hi = eps_max;
  for (int i = 0; i < kBisectionIterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (flips(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// Exact boundary distance for the classifier kinds that have a solver.
inline double exact_boundary_distance(const Classifier& f, std::span<const double> x, Norm tag) {
  if (const auto* lin = std::get_if<LinearClassifier>(&f)) return hyperplane_distance(*lin, x, tag);
  if (std::holds_alternative<ParabolaClassifier>(f)) return parabola_distance(x, tag);
  throw InvalidInput(
      "no exact distance solver for black-box classifiers; use brute_force_radius (verify --brute-force)");
}

}  // namespace rcurves
