#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "smokehouse/cli.hpp"
#include "smokehouse/config.hpp"

namespace smokehouse::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("smokehouse_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, RunPresetSucceeds) {
  const auto r = run({"run", "--preset", "tilapia", "--out", path("t.csv")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(path("t.csv")));
  EXPECT_NE(r.out.find("terminal=Done"), std::string::npos);
}

TEST_F(CliTest, FaultExitsTwo) {
  const auto r = run({"run", "--preset", "tilapia", "--set", "plan.overtemp_limit=90", "--out",
                      path("f.csv")});
  EXPECT_EQ(r.code, kExitFault);
  EXPECT_NE(r.out.find("fault_cause=Overtemp"), std::string::npos);
}

TEST_F(CliTest, ConfigErrorsExitOne) {
  EXPECT_EQ(run({"run", "--preset", "salmon", "--out", path("x.csv")}).code, kExitConfig);
  EXPECT_EQ(run({"run", "--set", "plan.nope=1", "--out", path("x.csv")}).code, kExitConfig);
  EXPECT_EQ(run({"run", "--config", path("missing.json")}).code, kExitConfig);
  EXPECT_EQ(run({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(run({}).code, kExitConfig);
  // nothing but the declared output may appear
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(CliTest, ValidateReportsViolations) {
  {
    std::ofstream f(path("bad.json"));
    f << R"({"plan": {"cook_setpoint": 95}, "plant": {"nodes": [{"name": "boiler_water", "heat_capacity": 0, "temperature": 29}]}})";
  }
  const auto r = run({"validate", "--config", path("bad.json")});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("plan.cook_setpoint"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("'boiler_water'"), std::string::npos) << r.err;
  EXPECT_EQ(run({"validate", "--preset", "milkfish"}).code, kExitOk);
}

TEST_F(CliTest, MechanicsReport) {
  auto r = run({"mechanics"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("driven_speed_rpm=50"), std::string::npos);
  r = run({"mechanics", "--set", "mechanics.center_distance=0.01"});
  EXPECT_EQ(r.code, kExitConfig);
}

TEST_F(CliTest, SummarizeMatchesRun) {
  const auto a = run({"run", "--preset", "scad_medium", "--out", path("m.csv")});
  ASSERT_EQ(a.code, kExitOk);
  const auto b = run({"summarize", "--preset", "scad_medium", path("m.csv")});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  const auto block = [](const std::string& s) { return s.substr(s.find("[summary]")); };
  EXPECT_EQ(block(a.out), block(b.out));
  std::ofstream(path("junk.csv")) << "not,a\ntelemetry,file\n";
  EXPECT_EQ(run({"summarize", path("junk.csv")}).code, kExitConfig);
}

TEST_F(CliTest, TuneWritesFragmentNextToConfig) {
  {
    std::ofstream f(path("batch.json"));
    f << R"({"preset": "tilapia"})";
  }
  const auto r = run({"tune", "--config", path("batch.json"), "--phase", "cook", "--budget", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  ASSERT_TRUE(fs::exists(path("batch.tuned-cook.json")));
  const auto frag = config::parse_json(config::read_file(path("batch.tuned-cook.json")), "frag");
  EXPECT_TRUE(frag.contains("gains"));
  // the fragment layers onto the original file
  auto doc = config::parse_json(config::read_file(path("batch.json")), "batch");
  doc.merge_patch(frag);
  EXPECT_NO_THROW(config::load_scenario(doc.dump(), "merged"));
  EXPECT_EQ(run({"tune", "--phase", "bake"}).code, kExitConfig);
  EXPECT_EQ(run({"tune", "--budget", "0"}).code, kExitConfig);
}

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"run", "--help"}).code, kExitOk);
}

}  // namespace
}  // namespace smokehouse::cli
