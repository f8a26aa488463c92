#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corrkit/cli.hpp"
#include "corrkit/io.hpp"
#include "corrkit/monotones.hpp"

namespace fs = std::filesystem;
using corrkit::io::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("corrkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("CORRKIT_SEED");
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = corrkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EvalBellState) {
  ASSERT_EQ(run({"construct", "bell", "--out", path("bell.json")}).code, 0);
  const auto r = run({"eval", path("bell.json"), "I"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1.386294"), std::string::npos) << r.out;
}

TEST_F(Cli, EvalProductAndGhz) {
  ASSERT_EQ(run({"construct", "pure_schmidt", "--lambda", "1.0", "--out", path("product.json")}).code, 0);
  auto r = run({"eval", path("product.json"), "I", "--out", path("values.json")});
  EXPECT_EQ(r.code, 0);
  const Json values = corrkit::io::read_file(path("values.json"));
  EXPECT_EQ(values.at("values")[0].at("value").get<double>(), 0.0);

  ASSERT_EQ(run({"construct", "ghz", "--dims", "2,2,2", "--out", path("ghz.json")}).code, 0);
  r = run({"eval", path("ghz.json"), "pairwise:1,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pairwise:1,2"), std::string::npos);
  const Json ghz = corrkit::io::read_file(path("ghz.json"));
  EXPECT_NEAR(corrkit::pairwise_monotone(corrkit::io::density_from_json(ghz), 1, 2), 0.0, 1e-12);
}

TEST_F(Cli, EvalErrors) {
  std::ofstream(path("broken.json")) << R"({"dims":[2],"matrix":[[[0.9,0],[0,0]],[[0,0],[0.2,0]]]})";
  EXPECT_EQ(run({"eval", path("broken.json"), "I"}).code, 2);
  EXPECT_EQ(run({"eval", path("missing.json"), "I"}).code, 2);
  std::ofstream(path("extra.json")) << R"({"dims":[1],"matrix":[[[1,0]]],"note":1})";
  EXPECT_EQ(run({"eval", path("extra.json"), "I"}).code, 2);
  ASSERT_EQ(run({"construct", "mps", "--d1", "2", "--d2", "4", "--Q", "2", "--p", "0.5,0.5", "--out",
                 path("mps.json")}).code, 0);
  EXPECT_EQ(run({"eval", path("mps.json"), "entropy:q=1"}).code, 3);
  EXPECT_EQ(run({"eval", path("mps.json"), "no-such-measure"}).code, 2);
}

TEST_F(Cli, ConstructMpsValidates) {
  ASSERT_EQ(run({"construct", "mps", "--d1", "2", "--d2", "4", "--Q", "2", "--p", "0.5,0.5", "--out",
                 path("mps.json")}).code, 0);
  const auto rho = corrkit::io::density_from_json(corrkit::io::read_file(path("mps.json")));
  EXPECT_EQ(rho.factorization().dims(), (std::vector<int>{2, 4}));
  // Sum tolerance is 1e-9.
  EXPECT_EQ(run({"construct", "mps", "--d1", "2", "--d2", "4", "--Q", "2", "--p", "0.5,0.5000000001"}).code, 0);
  EXPECT_EQ(run({"construct", "mps", "--d1", "2", "--d2", "4", "--Q", "2", "--p", "0.5,0.51"}).code, 2);
  EXPECT_EQ(run({"construct", "mps", "--d1", "2", "--d2", "3", "--Q", "2", "--p", "0.5,0.5"}).code, 2);
  std::ofstream(path("spec.json")) << R"({"d1":2,"d2":4,"Q":2,"p":[0.25,0.75]})";
  EXPECT_EQ(run({"construct", "mps", "--spec", path("spec.json"), "--out", path("mps2.json")}).code, 0);
}

TEST_F(Cli, ConstructNpartiteDimensionCondition) {
  EXPECT_EQ(run({"construct", "npartite_max", "--dims", "2,2,3"}).code, 2);
  const auto r = run({"construct", "npartite_max", "--dims", "2,2,4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(corrkit::io::density_from_json(Json::parse(r.out)).factorization().dims(), (std::vector<int>{2, 2, 4}));
  EXPECT_EQ(run({"construct", "teapot"}).code, 2);
}

TEST_F(Cli, CheckPassesForMutualInformation) {
  const auto r = run({"check", "2", "I", "--dims", "2,2", "--trials", "500", "--seed", "7", "--out", path("r.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const Json report = corrkit::io::read_file(path("r.json"));
  EXPECT_EQ(report.at("config").at("seed"), 7);
  EXPECT_EQ(report.at("config").at("tolerance"), 1e-8);
  EXPECT_EQ(report.at("report").at("verdict"), "pass");
}

TEST_F(Cli, CheckReportsViolationWithWitness) {
  const auto r = run({"check", "1", "neg-I-fixture", "--seed", "1", "--trials", "20", "--out", path("r.json")});
  EXPECT_EQ(r.code, 1);
  const Json report = corrkit::io::read_file(path("r.json"));
  EXPECT_FALSE(report.at("report").at("witness").is_null());
}

TEST_F(Cli, CheckInconclusiveWhenSkipsDominate) {
  EXPECT_EQ(run({"check", "1", "entropy:q=1", "--seed", "1", "--trials", "20"}).code, 4);
}

TEST_F(Cli, FilterDemo) {
  const auto r = run({"check", "3", "entropy:q=1", "--demo-filter", "--d1", "2", "--lambda", "0.8,0.2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("outcome"), std::string::npos);
  EXPECT_NE(r.out.find("0.5004"), std::string::npos) << r.out;
}

TEST_F(Cli, SeedIsMandatoryWithEnvironmentFallback) {
  EXPECT_EQ(run({"check", "1", "I", "--trials", "5"}).code, 2);
  setenv("CORRKIT_SEED", "12", 1);
  EXPECT_EQ(run({"check", "1", "I", "--trials", "5", "--out", path("env.json")}).code, 0);
  EXPECT_EQ(run({"check", "1", "I", "--trials", "5", "--seed", "12", "--out", path("flag.json")}).code, 0);
  EXPECT_EQ(slurp("env.json"), slurp("flag.json"));
  setenv("CORRKIT_SEED", "twelve", 1);
  EXPECT_EQ(run({"check", "1", "I", "--trials", "5"}).code, 2);
}

TEST_F(Cli, IdenticalConfigGivesIdenticalReports) {
  const std::vector<std::string> base{"check", "oneway", "I", "--dims", "2,3", "--trials", "40", "--seed", "5"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.json"), "--threads", "1"});
  b.insert(b.end(), {"--out", path("b.json"), "--threads", "3"});
  run(a);
  run(b);
  EXPECT_FALSE(slurp("a.json").empty());
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
}

TEST_F(Cli, ScanBellReductions) {
  ASSERT_EQ(run({"construct", "bell", "--out", path("bell.json")}).code, 0);
  auto r = run({"scan", "I", path("bell.json"), "--trials", "200", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  r = run({"bell", path("bell.json"), "--seed", "1", "--restarts", "5", "--out", path("b.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(corrkit::io::read_file(path("b.json")).at("result").at("value").get<double>(), 2.0 * std::sqrt(2.0), 1e-3);
  EXPECT_EQ(run({"bell", path("bell.json")}).code, 2);  // no seed
  ASSERT_EQ(run({"construct", "npartite_max", "--dims", "2,2,4", "--out", path("star.json")}).code, 0);
  EXPECT_EQ(run({"reductions", path("star.json")}).code, 0);
  ASSERT_EQ(run({"construct", "ghz", "--dims", "2,2,2,2", "--out", path("ghz4.json")}).code, 0);
  EXPECT_EQ(run({"reductions", path("ghz4.json")}).code, 1);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check", "1", "I", "--trials", "0", "--seed", "1"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
