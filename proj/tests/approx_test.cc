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


#include "gmdlab/approx.h"

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "gmdlab/errors.h"
#include "gmdlab/exact.h"
#include "test_util.h"

namespace gmdlab {
namespace {

using ::gmdlab::testing::RandomGmd;
using ::gmdlab::testing::RandomGp;
using ::gmdlab::testing::ReadFixture;

Rational Q(const char* s) { return ParseRational(s); }

std::vector<bool> MaskSet(uint32_t mask, int n) {
  std::vector<bool> s(n);
  for (int v = 0; v < n; ++v) s[v] = (mask >> v) & 1;
  return s;
}

// Exact expectation of the coin-flip algorithms: average over all 2^n zero sets.
Rational ExactGmdQuarterMean(const GmdInstance& inst) {
  const int n = inst.num_vertices();
  Rational sum = 0;
  for (uint32_t m = 0; m < (1u << n); ++m) {
    sum += ValGmd(inst, GreedyCompletion(inst, MaskSet(m, n)));
  }
  return sum / Rational(BigInt(1) << n);
}

Rational ExactGpQuarterMean(const GpInstance& inst) {
  const int n = inst.num_vertices();
  Rational sum = 0;
  for (uint32_t m = 0; m < (1u << n); ++m) sum += GpPriceAgainstZeroSet(inst, MaskSet(m, n)).value;
  return sum / Rational(BigInt(1) << n);
}

TEST(ApproxGpTest, SingleEdgeExpectationIsHalf) {
  GpInstance inst = ParseGp(ReadFixture("edge.gp"));
  EXPECT_EQ(ExactGpQuarterMean(inst), Q("1/2"));
  // One zero endpoint: the other is priced at the budget.
  EXPECT_EQ(GpPriceAgainstZeroSet(inst, {true, false}).pricing.values[1], 1);
}

TEST(ApproxGpTest, DegenerateCoins) {
  GpInstance inst = ParseGp(ReadFixture("path.gp"));
  EXPECT_EQ(GpPriceAgainstZeroSet(inst, {true, true, true}).value, 0);
  GpInstance isolated(3, {});
  EXPECT_EQ(ApproxGpQuarter(isolated, uint64_t{7}).value, 0);
}

TEST(ApproxGpTest, PicksRevenueMaximizingBudget) {
  // Vertex 0 faces budgets 1 (w=3) and 4 (w=1) from zero neighbors:
  // revenue at 1 is 4, at 4 is 4; tie goes to the smaller price.
  GpInstance inst(3, {{0, 1, Rational(1), Rational(3)}, {0, 2, Rational(4), Rational(1)}});
  EXPECT_EQ(GpPriceAgainstZeroSet(inst, {false, true, true}).pricing.values[0], 1);
}

TEST(ApproxGpTest, ExactExpectationAtLeastQuarterOpt) {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    GpInstance inst = RandomGp(seed, 5, 3, 0.6);
    Rational opt = OptGpGrid(inst, HalfIntegralGrid(inst)).value;
    EXPECT_GE(ExactGpQuarterMean(inst), opt / 4) << "seed " << seed;
  }
}

TEST(ApproxGmdTest, SingleEdgeAndTriangle) {
  EXPECT_EQ(ExactGmdQuarterMean(ParseGmd(ReadFixture("e1.gmd"))), Q("1/4"));
  EXPECT_EQ(ExactGmdQuarterMean(ParseGmd(ReadFixture("tri.gmd"))), Q("1/4"));
  GmdInstance e1 = ParseGmd(ReadFixture("e1.gmd"));
  EXPECT_EQ(ValGmd(e1, GreedyCompletion(e1, {true, true})), 0);
}

TEST(ApproxGmdTest, ExactExpectationAtLeastQuarterOpt) {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    GmdInstance inst = RandomGmd(seed, 6, 1 + static_cast<int>(seed % 3), 0.4);
    EXPECT_GE(ExactGmdQuarterMean(inst), OptGmd(inst).value / 4) << "seed " << seed;
  }
}

TEST(ApproxGmdTest, MonteCarloMatchesExactMean) {
  GmdInstance inst = ParseGmd(ReadFixture("dag5.gmd"));
  RandomizedRun run = RunTrials(42, 20000, [&](CounterRng& rng) {
    return ApproxGmdQuarter(inst, rng).value;
  });
  const double exact = ToDouble(ExactGmdQuarterMean(inst));
  EXPECT_NEAR(run.mean, exact, 4 * run.StandardError());
}

TEST(RunTrialsTest, ThreadCountIndependent) {
  GpInstance inst = ParseGp(ReadFixture("star.gp"));
  Trial trial = [&](CounterRng& rng) { return ApproxGpQuarter(inst, rng).value; };
  RandomizedRun serial = RunTrialsSerial(9, 500, trial);
  for (int threads : {1, 2, 7}) {
    omp_set_num_threads(threads);
    RandomizedRun parallel = RunTrials(9, 500, trial);
    EXPECT_EQ(parallel.values, serial.values);
    EXPECT_EQ(parallel.mean, serial.mean);
    EXPECT_EQ(parallel.stddev, serial.stddev);
  }
  EXPECT_THROW(RunTrials(1, 0, trial), ValidationError);
}

TEST(RunTrialsTest, SampleStddev) {
  int calls = 0;
  RandomizedRun run = RunTrialsSerial(0, 4, [&](CounterRng&) { return Rational(calls++ % 2); });
  EXPECT_DOUBLE_EQ(run.mean, 0.5);
  EXPECT_DOUBLE_EQ(run.stddev, std::sqrt(1.0 / 3.0));
}

TEST(LpRoundTest, ClosedFormExamples) {
  GmdInstance e1 = ParseGmd(ReadFixture("e1.gmd"));
  EXPECT_EQ(LpRoundExpectation(e1, {{1, 0}, {0, 1}}), Q("1/2"));
  // c = 1/2 is the equality case of c/4 + c^2/4.
  Rational half = Q("1/2");
  EXPECT_EQ(LpRoundExpectation(e1, {{half, half}, {half, half}}), Q("3/16"));
  EXPECT_EQ(half / 4 + half * half / 4, Q("3/16"));
}

TEST(LpRoundTest, RejectsNonDistributions) {
  GmdInstance e1 = ParseGmd(ReadFixture("e1.gmd"));
  EXPECT_THROW(LpRoundExpectation(e1, {{1, 0}, {Q("1/2"), 0}}), ValidationError);
  EXPECT_THROW(LpRoundExpectation(e1, {{2, -1}, {0, 1}}), ValidationError);
  EXPECT_THROW(LpRoundExpectation(e1, {{1, 0}}), ValidationError);
}

TEST(LpRoundTest, SamplingMatchesClosedForm) {
  GmdInstance inst = ParseGmd(ReadFixture("star3.gmd"));
  Marginals x = {{Q("2/3"), Q("1/6"), Q("1/6")},
                 {Q("1/5"), Q("3/5"), Q("1/5")},
                 {0, Q("1/2"), Q("1/2")},
                 {Q("1/3"), Q("1/3"), Q("1/3")}};
  RandomizedRun run = RunTrials(5, 40000, [&](CounterRng& rng) {
    return LpRoundGmd(inst, x, rng).value;
  });
  EXPECT_NEAR(run.mean, ToDouble(LpRoundExpectation(inst, x)), 3.5 * run.StandardError());
}

TEST(LpRoundTest, LabelFrequencies) {
  GmdInstance inst(2, 1, {});
  Marginals x = {{Q("1/4"), Q("1/2"), Q("1/4")}};
  std::vector<int> counts(3);
  for (uint64_t s = 0; s < 30000; ++s) ++counts[LpRoundGmd(inst, x, s).labeling[0]];
  // Probabilities 5/8, 1/4, 1/8.
  const double p[3] = {0.625, 0.25, 0.125};
  for (int i = 0; i < 3; ++i) {
    const double se = std::sqrt(p[i] * (1 - p[i]) / 30000);
    EXPECT_NEAR(counts[i] / 30000.0, p[i], 4 * se);
  }
}

}  // namespace
}  // namespace gmdlab
