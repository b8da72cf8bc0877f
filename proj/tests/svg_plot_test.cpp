#include "rcurves/svg_plot.hpp"

#include <gtest/gtest.h>

namespace rcurves {
namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::vector<PlotSeries> three_norms() {
  return {{"l1", StepCurve(0.05, {0.4, 1.0}, {0.5, 1.0})},
          {"l2", StepCurve(0.05, {0.3, 0.8}, {0.6, 1.0})},
          {"linf", StepCurve(0.05, {0.2}, {1.0})}};
}

TEST(SvgPlotTest, Deterministic) {
  const PlotOptions opt{.eps_max = 1.5, .title = "demo"};
  EXPECT_EQ(render_svg(three_norms(), opt), render_svg(three_norms(), opt));
}

TEST(SvgPlotTest, OnePolylineAndLegendEntryPerSeries) {
  const auto svg = render_svg(three_norms(), {.title = "t"});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_EQ(count(svg, "<polyline"), 3u);
  EXPECT_NE(svg.find(">l1</text>"), std::string::npos);
  EXPECT_NE(svg.find(">linf</text>"), std::string::npos);
  EXPECT_NE(svg.find("#1f77b4"), std::string::npos);
  EXPECT_NE(svg.find("#d62728"), std::string::npos);
  EXPECT_NE(svg.find("#2ca02c"), std::string::npos);
  EXPECT_NE(svg.find("</svg>\n"), std::string::npos);
}

TEST(SvgPlotTest, StepPolylineHasTwoVerticesPerBreakpoint) {
  // Default 640x400 frame without a title: plot area x in [60, 530], y in [20, 350].
  const auto svg = render_svg({{"c", StepCurve(0.0, {0.5}, {1.0})}}, {.eps_max = 1.0, .title = ""});
  EXPECT_NE(svg.find("points=\"60.00,350.00 295.00,350.00 295.00,20.00 530.00,20.00\""), std::string::npos);
}

TEST(SvgPlotTest, EscapesLabelsAndTitle) {
  const auto svg = render_svg({{"a<b", StepCurve(0.0, {1.0}, {1.0})}}, {.title = "x & y"});
  EXPECT_NE(svg.find("a&lt;b"), std::string::npos);
  EXPECT_NE(svg.find("x &amp; y"), std::string::npos);
}

TEST(SvgPlotTest, EmptyInputRejected) { EXPECT_THROW(render_svg({}), InvalidInput); }

}  // namespace
}  // namespace rcurves
