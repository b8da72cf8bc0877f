#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "rcurves/rcurves.hpp"

namespace fs = std::filesystem;

namespace rcurves {
namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("rcurves_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) {
    const std::string cmd = std::string(RCURVES_CLI) + " " + args + " > " + path("stdout.txt") + " 2> " +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    out_ = slurp(path("stdout.txt"));
    err_ = slurp(path("stderr.txt"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static void spit(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

  fs::path dir_;
  std::string out_, err_;
};

TEST_F(CliTest, LinearPipeline) {
  ASSERT_EQ(run("sample --dist p1 --d 20 --n 2000 --seed 3 --out " + path("p1.csv")), 0) << err_;
  EXPECT_NE(out_.find("rows 2000"), std::string::npos);
  EXPECT_NE(out_.find("dimension 21"), std::string::npos);
  ASSERT_EQ(run("classifier --preset f_avg --d 20 --out " + path("favg.json")), 0) << err_;
  ASSERT_EQ(run("radii --in " + path("p1.csv") + " --classifier " + path("favg.json") + " --out " + path("r.csv")),
            0)
      << err_;
  ASSERT_EQ(run("curve --in " + path("r.csv") + " --norm all --out " + path("curve.csv")), 0) << err_;
  for (const char* n : {"l1", "l2", "linf"}) {
    EXPECT_TRUE(fs::exists(path(std::string("curve_") + n + ".csv"))) << n;
  }
  const auto c = load_curve_csv(path("curve_linf.csv"));
  const auto expected = robustness_curve(load_radius_table_csv(path("r.csv")), Norm::Linf);
  EXPECT_EQ(c, expected);

  ASSERT_EQ(run("verify --in " + path("r.csv") + " --classifier " + path("favg.json") + " --data " + path("p1.csv")),
            0)
      << out_ << err_;
  EXPECT_NE(out_.find("overall: PASS"), std::string::npos);

  ASSERT_EQ(run("plot --in " + path("curve_l1.csv") + " --in " + path("curve_l2.csv") + " --in " +
                path("curve_linf.csv") + " --title P1 --out " + path("plot.svg")),
            0)
      << err_;
  const auto svg = slurp(path("plot.svg"));
  EXPECT_NE(svg.find(">linf</text>"), std::string::npos);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  for (const char* tag : {"a", "b"}) {
    const std::string t = tag;
    ASSERT_EQ(run("sample --dist parabola --mode continuous --side both --delta 0.4 --n 200 --seed 11 --out " +
                  path(t + ".csv")),
              0)
        << err_;
    ASSERT_EQ(run("classifier --preset parabola --out " + path(t + ".json")), 0);
    ASSERT_EQ(run("radii --in " + path(t + ".csv") + " --classifier " + path(t + ".json") + " --out " +
                  path(t + "_r.csv")),
              0);
    ASSERT_EQ(run("curve --in " + path(t + "_r.csv") + " --kind margin --norm l2 --out " + path(t + "_c.csv")), 0);
  }
  for (const char* suffix : {".csv", ".json", "_r.csv", "_c.csv"}) {
    EXPECT_EQ(slurp(path(std::string("a") + suffix)), slurp(path(std::string("b") + suffix))) << suffix;
  }
}

TEST_F(CliTest, SampleRequiresSeed) {
  EXPECT_EQ(run("sample --dist p1 --out " + path("x.csv")), 2);
  EXPECT_NE(err_.find("--seed"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(CliTest, P2SamplesAreSignVectors) {
  ASSERT_EQ(run("sample --dist p2 --d 31 --n 50 --seed 1 --out " + path("p2.csv")), 0) << err_;
  const auto ds = load_dataset_csv(path("p2.csv"));
  EXPECT_EQ(ds.dimension(), 31u);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.point(i)) EXPECT_EQ(std::abs(v), 1.0);
  }
}

TEST_F(CliTest, BlackBoxClassifierFileIsRejected) {
  ASSERT_EQ(run("sample --dist parabola --mode apex --n 10 --seed 2 --out " + path("d.csv")), 0) << err_;
  spit(path("bb.json"), "{\"kind\": \"blackbox\"}\n");
  EXPECT_EQ(run("radii --in " + path("d.csv") + " --classifier " + path("bb.json") + " --out " + path("r.csv")), 2);
  EXPECT_NE(err_.find("--brute-force"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("r.csv")));
}

TEST_F(CliTest, MalformedInputsExitTwo) {
  spit(path("bad.csv"), "x1,x2,y,weight\n0,1,1,0.5\n0,2,3,0.5\n");
  ASSERT_EQ(run("classifier --preset parabola --out " + path("p.json")), 0);
  EXPECT_EQ(run("radii --in " + path("bad.csv") + " --classifier " + path("p.json") + " --out " + path("r.csv")), 2);
  EXPECT_NE(err_.find("line 3"), std::string::npos) << err_;
  EXPECT_EQ(run("radii --in " + path("missing.csv") + " --classifier " + path("p.json") + " --out " + path("r.csv")),
            2);
  EXPECT_EQ(run("curve --in " + path("bad.csv") + " --norm l7 --out " + path("c.csv")), 2);
  EXPECT_EQ(run("sample --dist p3 --seed 1 --out " + path("x.csv")), 2);
  EXPECT_EQ(run("sample --dist parabola --mode finite --side inside --delta 5 --seed 1 --out " + path("x.csv")), 2);
  EXPECT_EQ(run("radii --in " + path("p.json") + " --classifier " + path("p.json") + " --out " + path("p.json")), 2);
}

TEST_F(CliTest, TamperedTableFailsVerification) {
  ASSERT_EQ(run("sample --dist p1 --d 4 --n 300 --seed 9 --out " + path("p1.csv")), 0) << err_;
  ASSERT_EQ(run("classifier --preset f_avg --d 4 --out " + path("f.json")), 0);
  ASSERT_EQ(run("radii --in " + path("p1.csv") + " --classifier " + path("f.json") + " --out " + path("r.csv")), 0);
  auto table = load_radius_table_csv(path("r.csv"));
  table.records[5].r_l1 *= 1.5;
  save_radius_table_csv(table, path("r.csv"));
  EXPECT_EQ(run("verify --in " + path("r.csv") + " --classifier " + path("f.json")), 1);
  EXPECT_NE(out_.find("FAIL"), std::string::npos);
  EXPECT_NE(out_.find("overall: FAIL"), std::string::npos);
}

TEST_F(CliTest, BruteForceVerifyOnParabola) {
  ASSERT_EQ(run("sample --dist parabola --mode finite --t-min -2 --t-max 2 --n 9 --delta 0.5 --side both --seed 1 "
                "--out " +
                path("d.csv")),
            0)
      << err_;
  ASSERT_EQ(run("classifier --preset parabola --out " + path("p.json")), 0);
  ASSERT_EQ(run("radii --in " + path("d.csv") + " --classifier " + path("p.json") + " --out " + path("r.csv")), 0);
  EXPECT_EQ(run("verify --brute-force --grid 1024 --in " + path("r.csv") + " --classifier " + path("p.json") +
                " --data " + path("d.csv")),
            0)
      << out_ << err_;
  EXPECT_NE(out_.find("brute force"), std::string::npos);
}

TEST_F(CliTest, ConfigFileFillsOptionsAndFlagsWin) {
  spit(path("cfg.json"), "{\"dist\": \"p1\", \"d\": 6, \"n\": 40, \"seed\": 5, \"out\": \"" + path("cfg.csv") +
                             "\"}\n");
  ASSERT_EQ(run("sample --config " + path("cfg.json")), 0) << err_;
  EXPECT_NE(out_.find("rows 40"), std::string::npos);
  EXPECT_NE(out_.find("dimension 7"), std::string::npos);
  ASSERT_EQ(run("sample --config " + path("cfg.json") + " --n 12"), 0) << err_;
  EXPECT_NE(out_.find("rows 12"), std::string::npos);
  spit(path("bad_cfg.json"), "{\"dist\": \"p1\", \"bogus\": 1}");
  EXPECT_EQ(run("sample --seed 1 --out " + path("z.csv") + " --config " + path("bad_cfg.json")), 2);
}

TEST_F(CliTest, SeedChangesDataset) {
  ASSERT_EQ(run("sample --dist p1 --d 3 --n 20 --seed 1 --out " + path("a.csv")), 0);
  ASSERT_EQ(run("sample --dist p1 --d 3 --n 20 --seed 2 --out " + path("b.csv")), 0);
  EXPECT_NE(slurp(path("a.csv")), slurp(path("b.csv")));
}

}  // namespace
}  // namespace rcurves
