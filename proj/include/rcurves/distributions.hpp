#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rcurves/classifiers.hpp"
#include "rcurves/dataset.hpp"
#include "rcurves/error.hpp"
#include "rcurves/parallel.hpp"
#include "rcurves/random.hpp"

namespace rcurves {

// ---------------------------------------------------------------------------
// P1: y uniform on {-1, +1}; x1 = y w.p. p (else -y); x2..x_{d+1} ~ N(eta*y, 1).
// ---------------------------------------------------------------------------

struct P1Params {
  std::size_t d = 100;  // number of Gaussian coordinates; total dimension d + 1
  double eta = 0.2;
  double p = 0.95;

  void validate() const {
    if (d < 1) throw InvalidInput("P1: d must be at least 1");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidInput("P1: eta must be positive");
    if (!(p > 0.5 && p <= 1.0)) throw InvalidInput("P1: p must lie in (0.5, 1]");
  }

  std::size_t dimension() const { return d + 1; }
};

/// Draws sample `i` of a P1 stream as a pure function of (seed, i).
class P1Sampler {
 public:
  P1Sampler(P1Params params, std::uint64_t seed) : params_(params), seed_(seed) { params_.validate(); }

  Sample operator()(std::size_t i) const {
    SampleStream rng(seed_, i);
    Sample s;
    s.y = rng.bernoulli(0.5) ? Label::Positive : Label::Negative;
    const double y = to_int(s.y);
    s.x.resize(params_.dimension());
    s.x[0] = rng.bernoulli(params_.p) ? y : -y;
    for (std::size_t j = 1; j <= params_.d; ++j) s.x[j] = params_.eta * y + rng.normal();
    return s;
  }

  std::size_t dimension() const { return params_.dimension(); }

 private:
  P1Params params_;
  std::uint64_t seed_;
};

// ---------------------------------------------------------------------------
// P2: y uniform on {-1, +1}; each x_i = y w.p. 0.51, else -y.
// ---------------------------------------------------------------------------

struct P2Params {
  std::size_t d = 101;  // odd d avoids score ties
  double agree_prob = 0.51;

  void validate() const {
    if (d < 1) throw InvalidInput("P2: d must be at least 1");
    if (agree_prob != 0.51) throw InvalidInput("P2: agree_prob is fixed at 0.51");
  }
};

class P2Sampler {
 public:
  P2Sampler(P2Params params, std::uint64_t seed)
      : params_(params), seed_(seed), threshold_(SampleStream::bernoulli_threshold(params.agree_prob)) {
    params_.validate();
  }

  Sample operator()(std::size_t i) const {
    SampleStream rng(seed_, i);
    Sample s;
    s.y = rng.bernoulli(0.5) ? Label::Positive : Label::Negative;
    const double y = to_int(s.y);
    s.x.resize(params_.d);
    for (auto& v : s.x) v = rng.next_u32() < threshold_ ? y : -y;
    return s;
  }

  std::size_t dimension() const { return params_.d; }

 private:
  P2Params params_;
  std::uint64_t seed_;
  std::uint64_t threshold_;
};

/// Materialises n draws of an indexable sampler with uniform weights.
template <typename Sampler>
LabeledDataset materialize(const Sampler& sampler, std::size_t n, std::uint64_t seed,
                           unsigned workers = default_workers()) {
  if (n < 1) throw InvalidInput("sample count must be at least 1");
  LabeledDataset ds(sampler.dimension(), seed);
  ds.resize(n);
  const double w = 1.0 / static_cast<double>(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const Sample s = sampler(i);
    ds.set(i, s.x, s.y, w);
  });
  return ds;
}

inline LabeledDataset sample_p1(const P1Params& params, std::size_t n, std::uint64_t seed,
                                unsigned workers = default_workers()) {
  return materialize(P1Sampler(params, seed), n, seed, workers);
}

inline LabeledDataset sample_p2(const P2Params& params, std::size_t n, std::uint64_t seed,
                                unsigned workers = default_workers()) {
  return materialize(P2Sampler(params, seed), n, seed, workers);
}

// ---------------------------------------------------------------------------
// Planar datasets around the parabola x2 = x1², built by offsetting curve
// points (t, t²) along the unit normal.
// ---------------------------------------------------------------------------

enum class ParabolaMode { FiniteL2Shell, ContinuousL2Shell, ApexVertical };
enum class ShellSide { Outside, Inside, BothWhereValid };

struct ParabolaDatasetParams {
  ParabolaMode mode = ParabolaMode::FiniteL2Shell;
  double delta = 1.0;
  double t_min = -1.0;
  double t_max = 1.0;
  std::size_t count = 9;
  ShellSide side = ShellSide::Outside;

  void validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput("parabola dataset: delta must be positive");
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || t_min > t_max) {
      throw InvalidInput("parabola dataset: need finite t_min <= t_max");
    }
    if (count < 1) throw InvalidInput("parabola dataset: count must be at least 1");
  }
};

/// Largest inward offset at parameter t whose nearest boundary point is still
/// the foot (t, t²): the distance along the inward normal to the symmetry
/// axis, sqrt(1 + 4t²)/2. It never exceeds the curvature radius (1 + 4t²)^{3/2}/2.
inline double inside_reach(double t) { return std::sqrt(1.0 + 4.0 * t * t) / 2.0; }

inline double curvature_radius(double t) { return std::pow(1.0 + 4.0 * t * t, 1.5) / 2.0; }

inline bool inside_offset_valid(double t, double delta) { return delta <= inside_reach(t); }

/// (t, t²) + delta * nu(t), nu the unit normal pointing outside (x2 < x1²)
/// or, with `inside`, into the epigraph.
inline Point parabola_offset_point(double t, double delta, bool inside) {
  const double s = std::sqrt(1.0 + 4.0 * t * t);
  const double sign = inside ? -1.0 : 1.0;
  return {t + sign * delta * 2.0 * t / s, t * t - sign * delta / s};
}

inline LabeledDataset make_parabola_dataset(const ParabolaDatasetParams& params, std::uint64_t seed) {
  params.validate();
  std::vector<Point> pts;

  auto check_inside = [&](double t) {
    if (!inside_offset_valid(t, params.delta)) {
      throw InvalidInput("inside offset " + csv::format_double(params.delta) + " exceeds the reach " +
                         csv::format_double(inside_reach(t)) + " at t = " + csv::format_double(t));
    }
  };

  switch (params.mode) {
    case ParabolaMode::FiniteL2Shell: {
      for (std::size_t k = 0; k < params.count; ++k) {
        const double t = params.count == 1
                             ? params.t_min
                             : params.t_min + (params.t_max - params.t_min) * static_cast<double>(k) /
                                                  static_cast<double>(params.count - 1);
        if (params.side == ShellSide::Inside) check_inside(t);
        if (params.side != ShellSide::Inside) pts.push_back(parabola_offset_point(t, params.delta, false));
        if (params.side == ShellSide::Inside ||
            (params.side == ShellSide::BothWhereValid && inside_offset_valid(t, params.delta))) {
          pts.push_back(parabola_offset_point(t, params.delta, true));
        }
      }
      break;
    }
    case ParabolaMode::ContinuousL2Shell: {
      if (params.side == ShellSide::Inside) {
        // The reach is smallest at the parameter closest to zero.
        const double t_near = (params.t_min <= 0.0 && params.t_max >= 0.0)
                                  ? 0.0
                                  : (std::abs(params.t_min) < std::abs(params.t_max) ? params.t_min : params.t_max);
        check_inside(t_near);
      }
      pts.resize(params.count);
      for (std::size_t i = 0; i < params.count; ++i) {
        SampleStream rng(seed, i);
        const double t = rng.uniform(params.t_min, params.t_max);
        bool inside = params.side == ShellSide::Inside;
        if (params.side == ShellSide::BothWhereValid) inside = rng.bernoulli(0.5) && inside_offset_valid(t, params.delta);
        pts[i] = parabola_offset_point(t, params.delta, inside);
      }
      break;
    }
    case ParabolaMode::ApexVertical: {
      pts.resize(params.count);
      for (std::size_t i = 0; i < params.count; ++i) {
        SampleStream rng(seed, i);
        pts[i] = {0.0, -rng.uniform(params.delta, 2.0 * params.delta)};
      }
      break;
    }
  }

  LabeledDataset ds(2, seed);
  ds.reserve(pts.size());
  const double w = 1.0 / static_cast<double>(pts.size());
  for (const auto& p : pts) ds.add(p, classify_parabola(p), w);
  return ds;
}

inline ParabolaMode parabola_mode_from_string(const std::string& s) {
  if (s == "finite") return ParabolaMode::FiniteL2Shell;
  if (s == "continuous") return ParabolaMode::ContinuousL2Shell;
  if (s == "apex") return ParabolaMode::ApexVertical;
  throw InvalidInput("unknown parabola mode '" + s + "' (expected finite, continuous or apex)");
}

inline ShellSide shell_side_from_string(const std::string& s) {
  if (s == "outside") return ShellSide::Outside;
  if (s == "inside") return ShellSide::Inside;
  if (s == "both") return ShellSide::BothWhereValid;
  throw InvalidInput("unknown side '" + s + "' (expected outside, inside or both)");
}

}  // namespace rcurves
