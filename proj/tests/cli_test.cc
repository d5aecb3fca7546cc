// Copyright 2026 The gmdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "gmdlab/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gmdlab/errors.h"
#include "gmdlab/exact.h"
#include "test_util.h"

namespace gmdlab {
namespace {

namespace fs = std::filesystem;
using testing::FixturePath;
using testing::ReadFixture;

struct CliRun {
  int code;
  std::string out, err;
};

CliRun Cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = RunCommand(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gmdlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("GMDLAB_CAPS");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("GMDLAB_CAPS");
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SolveTriangleMatchesBruteForce) {
  std::string expected = ToString(OptGmdBruteForce(ParseGmd(ReadFixture("tri.gmd"))).value);
  ASSERT_EQ(expected, "1/3");
  CliRun r = Cli({"solve", "--in", FixturePath("tri.gmd")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("opt = " + expected + "\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, SolveWritesJsonWithRationalStrings) {
  CliRun r = Cli({"solve", "--in", FixturePath("tri.gmd"), "--out", Path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string json = Slurp(Path("s.json"));
  EXPECT_NE(json.find("\"opt\": \"1/3\""), std::string::npos) << json;
}

TEST_F(CliTest, SolveGpGrid) {
  GpInstance gp = ParseGp(ReadFixture("edge.gp"));
  std::string expected = ToString(OptGpGrid(gp, HalfIntegralGrid(gp)).value);
  CliRun r = Cli({"solve", "--in", FixturePath("edge.gp")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("opt = " + expected + "\n"), std::string::npos);
}

TEST_F(CliTest, MissingInputIsValidationError) {
  CliRun r = Cli({"solve", "--in", Path("missing.gmd")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing.gmd"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagAndSubcommand) {
  EXPECT_EQ(Cli({"solve", "--in", FixturePath("tri.gmd"), "--bogus"}).code, 1);
  EXPECT_EQ(Cli({"frobnicate"}).code, 1);
  EXPECT_EQ(Cli({}).code, 1);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(Cli({"--help"}).code, 0); }

TEST_F(CliTest, ReduceWritesBudgetTokens) {
  CliRun r = Cli({"reduce", "--in", FixturePath("e1.gmd"), "--M", "10", "--out", Path("e1.gp")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string gp = Slurp(Path("e1.gp"));
  EXPECT_NE(gp.find("M 10\n"), std::string::npos) << gp;
  EXPECT_NE(gp.find(" M^1 "), std::string::npos) << gp;

  ASSERT_EQ(Cli({"reduce", "--in", FixturePath("e1.gmd"), "--M", "10", "--expand", "--out",
                 Path("e1x.gp")})
                .code,
            0);
  std::string expanded = Slurp(Path("e1x.gp"));
  EXPECT_EQ(expanded.find("M^"), std::string::npos);
  EXPECT_NO_THROW(ParseGp(expanded));
}

TEST_F(CliTest, CapBreachExitsTwo) {
  setenv("GMDLAB_CAPS", "zero_set_vertices=2", 1);
  CliRun r = Cli({"solve", "--in", FixturePath("tri.gmd"), "--method", "zero-sets"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cap"), std::string::npos);

  setenv("GMDLAB_CAPS", "trials=10", 1);
  EXPECT_EQ(Cli({"approx", "--in", FixturePath("e1.gmd"), "--trials", "11"}).code, 2);
  EXPECT_EQ(Cli({"approx", "--in", FixturePath("e1.gmd"), "--trials", "10"}).code, 0);
}

TEST_F(CliTest, BadCapsEnvIsValidationError) {
  setenv("GMDLAB_CAPS", "warp_factor=9", 1);
  EXPECT_EQ(Cli({"solve", "--in", FixturePath("tri.gmd")}).code, 1);
}

TEST(ParseCapsTest, KeysAndErrors) {
  CliCaps caps = ParseCaps("trials=5,sa_rounds=4,");
  EXPECT_EQ(caps.trials, 5);
  EXPECT_EQ(caps.sa_rounds, 4);
  EXPECT_EQ(caps.zero_set_vertices, CliCaps{}.zero_set_vertices);
  EXPECT_THROW(ParseCaps("trials"), ValidationError);
  EXPECT_THROW(ParseCaps("trials=-1"), ValidationError);
  EXPECT_THROW(ParseCaps("trials=1x"), ValidationError);
}

TEST(ConfigHashTest, IgnoresOutputPathsOnly) {
  uint64_t a = ConfigHash({"approx", "--in", "x", "--seed", "1", "--csv", "a.csv"});
  EXPECT_EQ(a, ConfigHash({"approx", "--in", "x", "--seed", "1", "--csv", "other/b.csv"}));
  EXPECT_EQ(a, ConfigHash({"approx", "--in", "x", "--seed", "1", "--csv=c.csv"}));
  EXPECT_NE(a, ConfigHash({"approx", "--in", "x", "--seed", "2", "--csv", "a.csv"}));
  // Token boundaries matter.
  EXPECT_NE(ConfigHash({"ab", "c"}), ConfigHash({"a", "bc"}));
}

TEST_F(CliTest, ApproxCsvIsDeterministicAndRecordsSeed) {
  std::vector<std::string> args = {"approx", "--in", FixturePath("star3.gmd"), "--algo", "gmd4",
                                   "--trials", "500", "--seed", "77", "--csv", Path("a.csv")};
  ASSERT_EQ(Cli(args).code, 0);
  std::string first = Slurp(Path("a.csv"));
  ASSERT_EQ(Cli(args).code, 0);
  EXPECT_EQ(first, Slurp(Path("a.csv")));

  EXPECT_EQ(first.rfind("# gmdlab 0.1.0 command=approx config=", 0), 0u);
  EXPECT_NE(first.find(" seed=77\ntrial,value\n"), std::string::npos);
  EXPECT_NE(first.find("\nmean,"), std::string::npos);
  EXPECT_NE(first.find("\nstderr,"), std::string::npos);
  // 2 header lines + 500 trials + 3 summary rows.
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 505);

  args[8] = "78";
  ASSERT_EQ(Cli(args).code, 0);
  EXPECT_NE(first, Slurp(Path("a.csv")));
}

TEST_F(CliTest, ApproxLpReportsExactExpectation) {
  CliRun r = Cli({"approx", "--in", FixturePath("e1.gmd"), "--algo", "gmdlp", "--trials", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  // Single edge: LP value 1 with integral marginals, so the rounding accepts
  // with probability 1 * 1/2.
  EXPECT_NE(r.out.find("lp=1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("expectation=1/2\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, ApproxRejectsWrongInstanceKind) {
  EXPECT_EQ(Cli({"approx", "--in", FixturePath("e1.gmd"), "--algo", "gp4"}).code, 1);
  EXPECT_EQ(Cli({"approx", "--in", FixturePath("edge.gp"), "--algo", "gmd4"}).code, 1);
}

TEST_F(CliTest, FailedCommandLeavesNoFiles) {
  CliRun r = Cli({"solve", "--in", Path("missing.gmd"), "--out", Path("s.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(Path("s.json")));
  EXPECT_EQ(Cli({"approx", "--in", FixturePath("e1.gmd"), "--csv", Path("nodir/a.csv")}).code, 1);
  for (const auto& entry : fs::directory_iterator(dir_)) ADD_FAILURE() << entry.path();
}

TEST_F(CliTest, SalpTriangleValueAndTable) {
  CliRun r = Cli({"salp", "--in", FixturePath("tri.gmd"), "--rounds", "2", "--csv", Path("t.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("value = 1/2\n"), std::string::npos);
  std::string csv = Slurp(Path("t.csv"));
  EXPECT_NE(csv.find("\nset,assignment,value\n"), std::string::npos);
  // 3 singletons x 2 labels + 3 pairs x 4 assignments.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + 6 + 12);
}

TEST_F(CliTest, GapOneRowPerSeed) {
  CliRun r = Cli({"gap", "--n", "12", "--T", "2", "--seed", "5", "--seeds", "3", "--base", "complete",
               "--csv", Path("g.csv"), "--out", Path("g.gmd")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string csv = Slurp(Path("g.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + 3);
  EXPECT_NE(csv.find("\n5,12,2,"), std::string::npos);
  EXPECT_NE(csv.find("\n7,12,2,"), std::string::npos);
  for (int s : {5, 6, 7}) {
    std::string text = Slurp(Path("g.gmd." + std::to_string(s)));
    EXPECT_NO_THROW(ParseGmd(text)) << s;
  }
}

TEST_F(CliTest, GapFileBaseWithCycleRejected) {
  CliRun r = Cli({"gap", "--n", "3", "--base", "file:" + FixturePath("tri.gmd")});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, SasolTableAndSummary) {
  CliRun r = Cli({"sasol", "--T", "2", "--mu", "1/100", "--L", "1", "--k", "2", "--trials", "2000",
               "--seed", "3", "--csv", Path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("consistent = true\n"), std::string::npos) << r.out;
  std::string csv = Slurp(Path("s.csv"));
  EXPECT_NE(csv.find("seed=3\nset,assignment,frequency\n"), std::string::npos);
  // Two singletons x 3 labels, one pair x 9, plus the objective row.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2 + 6 + 9 + 1);
}

TEST_F(CliTest, DictEvalDictatorExact) {
  const int T = 16;
  Rational delta = Rational(1) / 2;
  Rational expected = (1 - delta) / T;
  CliRun r = Cli({"dict", "--T", "16", "--R", "2", "--delta", "1/2", "--emit", "eval"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("acceptance = " + ToString(expected) + "\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, DictInstanceAndFunctionFile) {
  ASSERT_EQ(Cli({"dict", "--T", "2", "--R", "1", "--delta", "1/2", "--emit", "instance", "--out",
                 Path("d.gmd")})
                .code,
            0);
  GmdInstance inst = ParseGmd(Slurp(Path("d.gmd")));
  EXPECT_EQ(inst.num_vertices(), 2 * 3);
  EXPECT_TRUE(inst.weights_normalized());

  // Constant 0 on the tail, constant 1 on the head: accepted on label-1 edges,
  // which carry half the weight.
  std::ofstream(Path("f.txt")) << "dict 2 1\nf 0 0 0 0\nf 1 1 1 1\n";
  CliRun r = Cli({"dict", "--T", "2", "--R", "1", "--delta", "1/2", "--emit", "eval", "--functions",
               Path("f.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("acceptance = 1/2\n"), std::string::npos) << r.out;

  std::ofstream(Path("bad.txt")) << "dict 2 1\nf 0 0 0\n";
  EXPECT_EQ(Cli({"dict", "--T", "2", "--R", "1", "--emit", "eval", "--functions", Path("bad.txt")})
                .code,
            1);
}

TEST_F(CliTest, DictEdgeCap) {
  setenv("GMDLAB_CAPS", "dict_edges=4", 1);
  EXPECT_EQ(Cli({"dict", "--T", "2", "--R", "2", "--emit", "instance"}).code, 2);
}

TEST_F(CliTest, GaussCsvColumns) {
  CliRun r = Cli({"gauss", "--csv", Path("g.csv"), "--maxgap-csv", Path("m.csv"), "--trials", "2000",
               "--seed", "4", "--eps", "0.1,0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string grid = Slurp(Path("g.csv"));
  EXPECT_NE(grid.find("\nkind,T,rho,a,b,gamma,bound,pass\n"), std::string::npos);
  EXPECT_EQ(grid.find(",false\n"), std::string::npos);
  std::string mg = Slurp(Path("m.csv"));
  EXPECT_NE(mg.find("seed=4\n"), std::string::npos);
  EXPECT_EQ(std::count(mg.begin(), mg.end(), '\n'), 2 + 2);
}

TEST_F(CliTest, ReportSummaryAndPlotScript) {
  std::ofstream(Path("in.csv")) << "# comment\nx,y,name\n1,1/2,a\n3,3/2,b\n";
  CliRun r = Cli({"report", "--csv", Path("in.csv"), "--out", Path("sum.csv"), "--plot",
               Path("plot.py")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string sum = Slurp(Path("sum.csv"));
  EXPECT_NE(sum.find("\nx,2,2,1,2,3\n"), std::string::npos) << sum;
  EXPECT_NE(sum.find("\ny,2,2,0.5,1,1.5\n"), std::string::npos) << sum;
  EXPECT_NE(sum.find("\nname,2,0,,,\n"), std::string::npos) << sum;
  std::string py = Slurp(Path("plot.py"));
  EXPECT_NE(py.find("'in.csv'"), std::string::npos);
  EXPECT_EQ(py.find(dir_.string()), std::string::npos);

  EXPECT_EQ(Cli({"report", "--csv", Path("in.csv"), "--plot", Path("p.py"), "--y", "zz"}).code, 1);
}

TEST_F(CliTest, ConfigFileSuppliesFlags) {
  std::ofstream(Path("c.toml")) << "[solve]\nin = \"" << FixturePath("tri.gmd") << "\"\n";
  CliRun r = Cli({"--config", Path("c.toml"), "solve"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("opt = 1/3\n"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace gmdlab
