#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcurves/error.hpp"
#include "rcurves/norms.hpp"

namespace rcurves {

enum class Label : std::int8_t { Negative = -1, Positive = 1 };

constexpr int to_int(Label y) { return static_cast<int>(y); }

/// sgn with the convention sgn(0) = +1.
constexpr Label sign_label(double v) { return v >= 0.0 ? Label::Positive : Label::Negative; }

inline Label label_from_value(double v) {
  if (v == 1.0) return Label::Positive;
  if (v == -1.0) return Label::Negative;
  throw InvalidInput("label must be -1 or +1");
}

/// f(x) = sgn(<w, x> + b).
class LinearClassifier {
 public:
  LinearClassifier(std::vector<double> w, double b = 0.0) : w_(std::move(w)), b_(b) {
    require_finite(w_);
    if (!std::isfinite(b_)) throw InvalidInput("linear classifier offset must be finite");
    if (w_.empty() || norm(w_, Norm::L2) == 0.0) {
      throw InvalidInput("linear classifier needs a nonzero weight vector");
    }
  }

  const std::vector<double>& weights() const { return w_; }
  double offset() const { return b_; }
  std::size_t dimension() const { return w_.size(); }

  double score(std::span<const double> x) const { return dot(w_, x) + b_; }

  bool operator==(const LinearClassifier&) const = default;

 private:
  std::vector<double> w_;
  double b_;
};

/// f(x) = sgn(x1² − x2) on the plane.
struct ParabolaClassifier {
  static constexpr std::size_t dimension() { return 2; }
  static double score(std::span<const double> x) { return x[0] * x[0] - x[1]; }
  bool operator==(const ParabolaClassifier&) const = default;
};

/// Opaque planar predicate. Only the brute-force radius search can handle it.
/// The predicate must be deterministic and safe to call concurrently.
struct BlackBoxClassifier {
  std::function<Label(std::span<const double>)> predicate;
  static constexpr std::size_t dimension() { return 2; }
};

using Classifier = std::variant<LinearClassifier, ParabolaClassifier, BlackBoxClassifier>;

inline Label classify_linear(const LinearClassifier& f, std::span<const double> x) {
  require_same_dimension(x.size(), f.dimension());
  return sign_label(f.score(x));
}

inline Label classify_parabola(std::span<const double> x) {
  if (x.size() != 2) throw InvalidInput("parabola classifier is defined on 2-D points only");
  return sign_label(ParabolaClassifier::score(x));
}

inline Label classify(const Classifier& f, std::span<const double> x) {
  return std::visit(
      [&](const auto& c) -> Label {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LinearClassifier>) {
          return classify_linear(c, x);
        } else if constexpr (std::is_same_v<T, ParabolaClassifier>) {
          return classify_parabola(x);
        } else {
          require_same_dimension(x.size(), 2);
          return c.predicate(x);
        }
      },
      f);
}

inline std::size_t dimension(const Classifier& f) {
  return std::visit([](const auto& c) { return c.dimension(); }, f);
}

inline std::string kind_name(const Classifier& f) {
  switch (f.index()) {
    case 0: return "linear";
    case 1: return "parabola";
    default: return "blackbox";
  }
}

inline BlackBoxClassifier as_black_box(Classifier f) {
  if (dimension(f) != 2) throw InvalidInput("black-box wrapping needs a 2-D classifier");
  return BlackBoxClassifier{[f = std::move(f)](std::span<const double> x) { return classify(f, x); }};
}

// JSON documents: {"kind":"linear","w":[...],"b":...} or {"kind":"parabola"}.
// nlohmann/json writes doubles in shortest round-trip form, so values survive
// a round trip exactly.

inline nlohmann::json to_json(const Classifier& f) {
  if (const auto* lin = std::get_if<LinearClassifier>(&f)) {
    return {{"kind", "linear"}, {"w", lin->weights()}, {"b", lin->offset()}};
  }
  if (std::holds_alternative<ParabolaClassifier>(f)) return {{"kind", "parabola"}};
  throw InvalidInput("black-box classifiers cannot be serialized");
}

inline Classifier classifier_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
    throw ParseError("classifier document needs a string field \"kind\"", 0);
  }
  const auto kind = doc["kind"].get<std::string>();
  if (kind == "parabola") return ParabolaClassifier{};
  if (kind == "linear") {
    if (!doc.contains("w") || !doc["w"].is_array()) {
      throw ParseError("linear classifier needs an array field \"w\"", 0);
    }
    std::vector<double> w;
    for (const auto& v : doc["w"]) {
      if (!v.is_number()) throw ParseError("\"w\" entries must be numbers", 0);
      w.push_back(v.get<double>());
    }
    double b = 0.0;
    if (doc.contains("b")) {
      if (!doc["b"].is_number()) throw ParseError("\"b\" must be a number", 0);
      b = doc["b"].get<double>();
    }
    return LinearClassifier(std::move(w), b);
  }
  if (kind == "blackbox") {
    throw InvalidInput(
        "black-box classifiers have no exact distance solver; use the brute-force check "
        "(verify --brute-force) instead");
  }
  throw InvalidInput("unknown classifier kind '" + kind + "'");
}

inline Classifier load_classifier(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open classifier file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("classifier JSON: ") + e.what(), 0);
  }
  return classifier_from_json(doc);
}

}  // namespace rcurves
