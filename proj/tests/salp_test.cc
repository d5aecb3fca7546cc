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


#include "gmdlab/salp.h"

#include <gtest/gtest.h>

#include "gmdlab/errors.h"
#include "gmdlab/exact.h"
#include "test_util.h"

namespace gmdlab {
namespace {

using ::gmdlab::testing::RandomGmd;
using ::gmdlab::testing::ReadFixture;

Rational Q(const char* s) { return ParseRational(s); }

uint64_t Binomial(int n, int k) {
  uint64_t c = 1;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

// Product distribution with the given per-vertex marginals on every set.
SaSolution ProductSolution(const std::vector<std::vector<Rational>>& m, int rounds) {
  const int n = static_cast<int>(m.size());
  const int q = static_cast<int>(m[0].size());
  SaSolution sol{rounds, q, {}};
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> set;
    for (int v = 0; v < n; ++v) {
      if ((mask >> v) & 1) set.push_back(v);
    }
    if (static_cast<int>(set.size()) > rounds) continue;
    std::vector<Rational> table(NumAssignments(q, set.size()));
    for (uint64_t a = 0; a < table.size(); ++a) {
      auto labels = DecodeAssignment(a, q, set.size());
      Rational p = 1;
      for (size_t i = 0; i < set.size(); ++i) p *= m[set[i]][labels[i]];
      table[a] = p;
    }
    sol.tables[set] = table;
  }
  return sol;
}

TEST(SaLpTest, VariableCount) {
  GmdInstance e1 = ParseGmd(ReadFixture("e1.gmd"));
  EXPECT_EQ(SaLp(e1, 2).num_variables(), 8u);
  GmdInstance inst = RandomGmd(3, 5, 2, 0.5);
  for (int r : {2, 3}) {
    uint64_t expected = 0;
    for (int i = 1; i <= r; ++i) expected += Binomial(5, i) * NumAssignments(3, i);
    EXPECT_EQ(SaLp(inst, r).num_variables(), expected);
  }
}

TEST(SaLpTest, GmdObjectiveHasOneTermPerEdge) {
  GmdInstance inst = ParseGmd(ReadFixture("dag5.gmd"));
  SaLp lp(inst, 2);
  EXPECT_EQ(lp.objective().size(), static_cast<size_t>(inst.num_edges()));
  // Edge 4 -> 2 with label 1 lands on x_{2,4}(1, 0).
  const size_t index = lp.Index({2, 4}, EncodeAssignment({1, 0}, 3));
  bool found = false;
  for (const auto& [j, c] : lp.objective()) {
    if (j == index) {
      found = true;
      EXPECT_EQ(c, Q("1/8"));
    }
  }
  EXPECT_TRUE(found);
}

TEST(SaLpTest, GpObjectivePairs) {
  GpInstance inst = ParseGp(ReadFixture("edge.gp"));
  SaLp lp(inst, 2, {0, Q("1/2"), 1});
  // Pairs with 0 < p_i + p_j <= 1: (0,1/2),(1/2,0),(0,1),(1,0),(1/2,1/2).
  std::map<size_t, Rational> expected = {
      {lp.Index({0, 1}, EncodeAssignment({0, 1}, 3)), Q("1/2")},
      {lp.Index({0, 1}, EncodeAssignment({1, 0}, 3)), Q("1/2")},
      {lp.Index({0, 1}, EncodeAssignment({0, 2}, 3)), 1},
      {lp.Index({0, 1}, EncodeAssignment({2, 0}, 3)), 1},
      {lp.Index({0, 1}, EncodeAssignment({1, 1}, 3)), 1}};
  std::map<size_t, Rational> got(lp.objective().begin(), lp.objective().end());
  EXPECT_EQ(got, expected);
}

TEST(SaLpTest, BuildErrors) {
  GmdInstance e1 = ParseGmd(ReadFixture("e1.gmd"));
  EXPECT_THROW(SaLp(e1, 1), ValidationError);
  EXPECT_THROW(SaLp(ParseGp(ReadFixture("edge.gp")), 2, {}), ValidationError);
  EXPECT_THROW(SaLp(RandomGmd(1, 9, 1, 0.3), 2), CapExceeded);
  EXPECT_THROW(SaLp(e1, 4), CapExceeded);
  EXPECT_THROW(SaLp(GmdInstance(5, 2, {}), 2), CapExceeded);
}

TEST(SolveSaLpTest, SingleEdge) {
  SaLp lp(ParseGmd(ReadFixture("e1.gmd")), 2);
  SaLpResult r = SolveSaLp(lp);
  EXPECT_EQ(r.value, 1);
  EXPECT_TRUE(SatisfiesConstraints(lp, r.solution));
}

TEST(SolveSaLpTest, TriangleHalfVersusThird) {
  GmdInstance tri = ParseGmd(ReadFixture("tri.gmd"));
  SaLp lp(tri, 2);
  SaLpResult r = SolveSaLp(lp);
  EXPECT_EQ(r.value, Q("1/2"));
  EXPECT_EQ(OptGmd(tri).value, Q("1/3"));
  // The feasible point with uniform singletons and pair mass on (0,1),(1,0).
  SaSolution hand{2, 2, {}};
  for (int v = 0; v < 3; ++v) hand.tables[{v}] = {Q("1/2"), Q("1/2")};
  for (auto pair : {std::vector<int>{0, 1}, {1, 2}, {0, 2}}) {
    hand.tables[pair] = {0, Q("1/2"), Q("1/2"), 0};
  }
  EXPECT_TRUE(SatisfiesConstraints(lp, hand));
}

TEST(SolveSaLpTest, RelaxationOnFixtures) {
  for (const auto& name : testing::GmdFixtures()) {
    GmdInstance inst = ParseGmd(ReadFixture(name));
    SaLp lp(inst, 2);
    SaLpResult r = SolveSaLp(lp);
    EXPECT_GE(r.value, OptGmd(inst).value) << name;
    EXPECT_TRUE(SatisfiesConstraints(lp, r.solution)) << name;
    EXPECT_TRUE(CheckSaConsistency(r.solution).consistent) << name;
  }
}

TEST(SolveSaLpTest, MonotoneInRoundsAndTightAtFullRounds) {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const int T = 1 + static_cast<int>(seed % 2);
    GmdInstance inst = RandomGmd(100 + seed, n, T, 0.6);
    Rational r2 = SolveSaLp(SaLp(inst, 2)).value;
    Rational r3 = SolveSaLp(SaLp(inst, 3)).value;
    EXPECT_GE(r2, r3) << "seed " << seed;
    Rational full = n == 3 ? r3 : SolveSaLp(SaLp(inst, 4, SaCaps{8, 4, 5})).value;
    EXPECT_EQ(full, OptGmd(inst).value) << "seed " << seed;
  }
}

TEST(SolveSaLpTest, GpRelaxationAboveGridOptimum) {
  GpInstance inst = ParseGp(ReadFixture("path.gp"));
  auto grid = HalfIntegralPriceGrid(inst);
  SaLpResult r = SolveSaLp(SaLp(inst, 2, grid));
  std::vector<std::vector<Rational>> per_vertex(3, grid);
  EXPECT_GE(r.value, OptGpGrid(inst, per_vertex).value);
}

TEST(CheckSaConsistencyTest, ProductDistributionIsConsistent) {
  SaSolution sol = ProductSolution(
      {{Q("1/2"), Q("1/3"), Q("1/6")}, {Q("1/4"), Q("1/4"), Q("1/2")}, {1, 0, 0}}, 3);
  SaConsistencyReport report = CheckSaConsistency(sol);
  EXPECT_TRUE(report.consistent);
  EXPECT_GT(report.identities_checked, 0u);
}

TEST(CheckSaConsistencyTest, ReportsNormalizationAndMarginals) {
  SaSolution sol = ProductSolution({{Q("1/2"), Q("1/2")}, {Q("1/2"), Q("1/2")}}, 2);
  sol.tables[{0}] = {Q("9/20"), Q("9/20")};
  SaConsistencyReport report = CheckSaConsistency(sol);
  EXPECT_FALSE(report.consistent);
  bool normalization = false, marginal = false;
  for (const auto& v : report.violations) {
    normalization |= v.find("normalization {0}: 9/10") != std::string::npos;
    marginal |= v.find("marginal of {0,1} onto {0}") != std::string::npos;
  }
  EXPECT_TRUE(normalization);
  EXPECT_TRUE(marginal);
}

TEST(PriceGridTest, HalfIntegralAndGeometric) {
  GpInstance inst = ParseGp(ReadFixture("tri.gp"));
  EXPECT_EQ(HalfIntegralPriceGrid(inst).size(), 7u);
  auto geo = GeometricPriceGrid(inst, Q("1/2"));
  // b_min/2 = 1/2; powers of 3/2 in [1/2, 3]: (3/2)^-1 .. (3/2)^2.
  std::vector<Rational> expected = {0, Q("2/3"), 1, Q("3/2"), Q("9/4")};
  EXPECT_EQ(geo, expected);
}

}  // namespace
}  // namespace gmdlab
