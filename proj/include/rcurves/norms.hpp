#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcurves/error.hpp"

namespace rcurves {

using Point = std::vector<double>;

/// The three norms under study. Declaration order follows ball inclusion at a
/// fixed radius: the LINF ball is the largest, the L1 ball the smallest.
enum class Norm { Linf, L2, L1 };

inline constexpr std::array<Norm, 3> kAllNorms = {Norm::L1, Norm::L2, Norm::Linf};

/// Absolute tolerance for quantities that are exact in real arithmetic.
inline constexpr double kExactTolerance = 1e-12;

inline std::string_view to_string(Norm n) {
  switch (n) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::Linf: return "linf";
  }
  return "?";
}

inline Norm norm_from_string(std::string_view s) {
  if (s == "l1") return Norm::L1;
  if (s == "l2") return Norm::L2;
  if (s == "linf") return Norm::Linf;
  throw InvalidInput("unknown norm '" + std::string(s) + "' (expected l1, l2 or linf)");
}

/// Dual exponent: the norm whose value divides the hyperplane offset.
constexpr Norm dual(Norm n) {
  switch (n) {
    case Norm::L1: return Norm::Linf;
    case Norm::Linf: return Norm::L1;
    case Norm::L2: return Norm::L2;
  }
  return n;
}

inline void require_finite(std::span<const double> p) {
  for (double v : p) {
    if (!std::isfinite(v)) throw InvalidInput("point has a non-finite coordinate");
  }
}

inline void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidInput("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

inline double norm(std::span<const double> p, Norm tag) {
  require_finite(p);
  switch (tag) {
    case Norm::L1: {
      double s = 0.0;
      for (double v : p) s += std::abs(v);
      return s;
    }
    case Norm::L2: {
      // Scaled accumulation so huge or tiny coordinates neither overflow nor underflow.
      double scale = 0.0;
      for (double v : p) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double v : p) {
        const double r = v / scale;
        s += r * r;
      }
      return scale * std::sqrt(s);
    }
    case Norm::Linf: {
      double m = 0.0;
      for (double v : p) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

/// The five terms ‖p‖∞ ≤ ‖p‖₂ ≤ ‖p‖₁ ≤ √d‖p‖₂ ≤ d‖p‖∞.
inline std::array<double, 5> norm_chain(std::span<const double> p) {
  const double d = static_cast<double>(p.size());
  const double l2 = norm(p, Norm::L2);
  return {norm(p, Norm::Linf), l2, norm(p, Norm::L1), std::sqrt(d) * l2, d * norm(p, Norm::Linf)};
}

inline bool check_norm_chain(std::span<const double> p) {
  const auto chain = norm_chain(p);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    // Absolute below magnitude one, relative above it.
    if (chain[i] > chain[i + 1] + kExactTolerance * std::max(1.0, chain[i + 1])) return false;
  }
  return true;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  require_same_dimension(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace rcurves
