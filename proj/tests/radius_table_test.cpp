#include "rcurves/radius_table.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "rcurves/distributions.hpp"

namespace rcurves {
namespace {

LabeledDataset single_point(Point x, Label y) {
  LabeledDataset ds(x.size());
  ds.add(x, y, 1.0);
  return ds;
}

TEST(BuildRadiusTableTest, ParabolaSampleCorrectlyClassified) {
  const auto t = build_radius_table(single_point({0.0, 1.0}, Label::Negative), ParabolaClassifier{});
  ASSERT_EQ(t.records.size(), 1u);
  const auto& r = t.records[0];
  EXPECT_FALSE(r.misclassified);
  EXPECT_NEAR(r.r_l1, 1.0, 1e-9);
  EXPECT_NEAR(r.r_l2, std::sqrt(3.0) / 2.0, 1e-9);
  EXPECT_NEAR(r.r_linf, (std::sqrt(5.0) - 1.0) / 2.0, 1e-9);
  EXPECT_EQ(r.weight, 1.0);
  EXPECT_EQ(t.dimension, 2u);
  EXPECT_EQ(t.classifier["kind"], "parabola");
}

TEST(BuildRadiusTableTest, LabelFlipOnlyTogglesFlag) {
  const auto a = build_radius_table(single_point({0.0, 1.0}, Label::Negative), ParabolaClassifier{});
  const auto b = build_radius_table(single_point({0.0, 1.0}, Label::Positive), ParabolaClassifier{});
  EXPECT_TRUE(b.records[0].misclassified);
  EXPECT_EQ(a.records[0].r_l1, b.records[0].r_l1);
  EXPECT_EQ(a.records[0].r_l2, b.records[0].r_l2);
  EXPECT_EQ(a.records[0].r_linf, b.records[0].r_linf);
}

TEST(BuildRadiusTableTest, RobustClassifierOnP1HasEqualRadii) {
  const P1Params params{.d = 20, .eta = 0.3, .p = 0.9};
  const auto ds = sample_p1(params, 500, 3);
  Point w(params.dimension(), 0.0);
  w[0] = 1.0;
  const auto t = build_radius_table(ds, LinearClassifier(w));
  for (const auto& r : t.records) {
    EXPECT_EQ(r.r_l1, 1.0);
    EXPECT_EQ(r.r_l2, 1.0);
    EXPECT_EQ(r.r_linf, 1.0);
  }
  EXPECT_NEAR(t.total_weight(), 1.0, 1e-9);
}

TEST(BuildRadiusTableTest, RejectsBlackBoxAndMismatch) {
  const auto ds = single_point({0.0, 1.0}, Label::Negative);
  EXPECT_THROW(build_radius_table(ds, as_black_box(ParabolaClassifier{})), InvalidInput);
  EXPECT_THROW(build_radius_table(ds, LinearClassifier({1.0, 1.0, 1.0})), InvalidInput);
  const auto ds3 = single_point({0.0, 1.0, 2.0}, Label::Negative);
  EXPECT_THROW(build_radius_table(ds3, ParabolaClassifier{}), InvalidInput);
}

TEST(BuildRadiusTableTest, DualOrderingProperty) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-5, 5);
  LabeledDataset planar(2);
  for (int i = 0; i < 300; ++i) {
    const Point x = {u(rng), u(rng)};
    planar.add(x, classify_parabola(x), 1.0);
  }
  planar.set_uniform_weights();
  for (const auto& r : build_radius_table(planar, ParabolaClassifier{}).records) {
    EXPECT_LE(dual_ordering_violation(r, 2), RadiusTable::kOrderingTolerance);
  }

  std::normal_distribution<double> g;
  for (std::size_t d : {2u, 5u, 13u}) {
    Point w(d);
    for (auto& v : w) v = g(rng);
    const auto ds = sample_p1({.d = d - 1, .eta = 0.5, .p = 0.7}, 200, d);
    for (const auto& r : build_radius_table(ds, LinearClassifier(w, 0.25)).records) {
      EXPECT_LE(dual_ordering_violation(r, d), RadiusTable::kOrderingTolerance);
    }
  }
}

TEST(BuildRadiusTableTest, LinearRadiusRatiosAreConstant) {
  const Point w = {0.5, -2.0, 1.0, 0.25};
  const LinearClassifier f(w, 0.1);
  const auto ds = sample_p1({.d = 3, .eta = 0.4, .p = 0.8}, 400, 12);
  const double l1 = norm(w, Norm::L1), l2 = norm(w, Norm::L2), li = norm(w, Norm::Linf);
  for (const auto& r : build_radius_table(ds, f).records) {
    if (r.r_l2 < 1e-9) continue;
    EXPECT_NEAR(r.r_l1 / r.r_l2, l2 / li, 1e-12);
    EXPECT_NEAR(r.r_l1 / r.r_linf, l1 / li, 1e-12);
  }
}

TEST(BuildRadiusTableTest, IndependentOfWorkerCount) {
  const auto ds = make_parabola_dataset({.mode = ParabolaMode::ContinuousL2Shell, .delta = 0.3, .t_min = -1.5,
                                         .t_max = 1.5, .count = 64, .side = ShellSide::BothWhereValid},
                                        21);
  const auto a = build_radius_table(ds, ParabolaClassifier{}, 1);
  const auto b = build_radius_table(ds, ParabolaClassifier{}, 5);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(radius_table_to_csv(a), radius_table_to_csv(b));
}

TEST(RadiusTableCsvTest, RoundTripAndFormat) {
  const auto ds = sample_p1({.d = 4, .eta = 0.4, .p = 0.8}, 30, 2);
  const auto t = build_radius_table(ds, LinearClassifier({0.0, 0.25, 0.25, 0.25, 0.25}));
  const auto text = radius_table_to_csv(t);
  EXPECT_EQ(text.substr(0, text.find('\n')), "index,misclassified,r_l1,r_l2,r_linf,weight");
  const auto path = (std::filesystem::temp_directory_path() / "rcurves_radii_test.csv").string();
  save_radius_table_csv(t, path);
  const auto back = load_radius_table_csv(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.records, t.records);
}

TEST(RadiusTableCsvTest, RejectsMalformedInput) {
  EXPECT_THROW(radius_table_from_lines({"index,r"}), ParseError);
  EXPECT_THROW(radius_table_from_lines({"index,misclassified,r_l1,r_l2,r_linf,weight", "0,2,1,1,1,1"}), ParseError);
  EXPECT_THROW(radius_table_from_lines({"index,misclassified,r_l1,r_l2,r_linf,weight", "0,0,-1,1,1,1"}), ParseError);
  EXPECT_THROW(radius_table_from_lines({"index,misclassified,r_l1,r_l2,r_linf,weight", "0,0,1,1,1,0.5"}), ParseError);
  EXPECT_THROW(radius_table_from_lines({"index,misclassified,r_l1,r_l2,r_linf,weight"}), ParseError);
}

}  // namespace
}  // namespace rcurves
