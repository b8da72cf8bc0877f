#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "rcurves/error.hpp"
#include "rcurves/step_curve.hpp"

namespace rcurves {

struct PlotSeries {
  std::string label;
  StepCurve curve;
};

struct PlotOptions {
  double eps_max = 0.0;  // <= 0: 1.25 x the largest breakpoint
  std::string title;
  int width = 640;
  int height = 400;
};

namespace detail {

inline std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline const char* series_color(const std::string& label, std::size_t i) {
  if (label == "l1") return "#1f77b4";
  if (label == "l2") return "#d62728";
  if (label == "linf") return "#2ca02c";
  static const char* palette[] = {"#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % 6];
}

}  // namespace detail

/// Self-contained SVG with one step polyline per series (horizontal run to
/// each breakpoint, then the vertical jump). Coordinates are printed at fixed
/// precision so identical inputs give byte-identical files.
inline std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& opt = {}) {
  if (series.empty()) throw InvalidInput("plot needs at least one curve");
  double eps_max = opt.eps_max;
  if (!(eps_max > 0.0)) {
    double largest = 0.0;
    for (const auto& s : series) {
      if (!s.curve.breakpoints().empty()) largest = std::max(largest, s.curve.breakpoints().back());
    }
    eps_max = largest > 0.0 ? 1.25 * largest : 1.0;
  }

  const double left = 60, right = 110, top = opt.title.empty() ? 20 : 40, bottom = 50;
  const double pw = opt.width - left - right;
  const double ph = opt.height - top - bottom;
  auto sx = [&](double e) { return left + pw * std::min(e, eps_max) / eps_max; };
  auto sy = [&](double v) { return top + ph * (1.0 - v); };
  using detail::fmt;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
         std::to_string(opt.height) + "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opt.title.empty()) {
    out += "<text x=\"" + fmt("%.2f", left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
           detail::xml_escape(opt.title) + "</text>\n";
  }

  // Axes, ticks and grid.
  out += "<g stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double y = sy(i / 5.0);
    const double x = left + pw * i / 5.0;
    out += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" + fmt("%.2f", left + pw) +
           "\" y2=\"" + fmt("%.2f", y) + "\"/>\n";
    out += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", top) + "\" x2=\"" + fmt("%.2f", x) +
           "\" y2=\"" + fmt("%.2f", top + ph) + "\"/>\n";
  }
  out += "</g>\n";
  out += "<rect x=\"" + fmt("%.2f", left) + "\" y=\"" + fmt("%.2f", top) + "\" width=\"" + fmt("%.2f", pw) +
         "\" height=\"" + fmt("%.2f", ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    out += "<text x=\"" + fmt("%.2f", left - 6) + "\" y=\"" + fmt("%.2f", sy(i / 5.0) + 4) +
           "\" text-anchor=\"end\">" + fmt("%.1f", i / 5.0) + "</text>\n";
    out += "<text x=\"" + fmt("%.2f", left + pw * i / 5.0) + "\" y=\"" + fmt("%.2f", top + ph + 16) +
           "\" text-anchor=\"middle\">" + fmt("%.3g", eps_max * i / 5.0) + "</text>\n";
  }
  out += "<text x=\"" + fmt("%.2f", left + pw / 2) + "\" y=\"" + fmt("%.2f", top + ph + 36) +
         "\" text-anchor=\"middle\">epsilon</text>\n";
  out += "<text transform=\"translate(16," + fmt("%.2f", top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">loss</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& c = series[i].curve;
    std::string pts = fmt("%.2f", sx(0)) + "," + fmt("%.2f", sy(c.base()));
    double prev = c.base();
    for (std::size_t k = 0; k < c.breakpoints().size() && c.breakpoints()[k] <= eps_max; ++k) {
      const double x = sx(c.breakpoints()[k]);
      pts += " " + fmt("%.2f", x) + "," + fmt("%.2f", sy(prev));
      pts += " " + fmt("%.2f", x) + "," + fmt("%.2f", sy(c.values()[k]));
      prev = c.values()[k];
    }
    pts += " " + fmt("%.2f", sx(eps_max)) + "," + fmt("%.2f", sy(prev));
    const char* color = detail::series_color(series[i].label, i);
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
           "\"/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(i);
    out += "<line x1=\"" + fmt("%.2f", left + pw + 12) + "\" y1=\"" + fmt("%.2f", ly) + "\" x2=\"" +
           fmt("%.2f", left + pw + 36) + "\" y2=\"" + fmt("%.2f", ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt("%.2f", left + pw + 42) + "\" y=\"" + fmt("%.2f", ly + 4) + "\">" +
           detail::xml_escape(series[i].label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace rcurves
