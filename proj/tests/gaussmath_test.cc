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


#include "gmdlab/gaussmath.h"

#include <cmath>
#include <numbers>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/owens_t.hpp>
#include <gtest/gtest.h>

#include "gmdlab/errors.h"
#include "gmdlab/rng.h"

namespace gmdlab {
namespace {

// Pr[X > h, Y > k] through Owen's T function; h, k nonzero.
double OwenOrthant(double h, double k, double rho) {
  const double s = std::sqrt(1 - rho * rho);
  boost::math::normal nd;
  const double beta = (h * k > 0) ? 0.0 : 0.5;
  return 0.5 * (boost::math::cdf(boost::math::complement(nd, h)) +
                boost::math::cdf(boost::math::complement(nd, k))) -
         boost::math::owens_t(h, (k - rho * h) / (h * s)) -
         boost::math::owens_t(k, (h - rho * k) / (k * s)) - beta;
}

TEST(NormalTest, CdfValues) {
  EXPECT_DOUBLE_EQ(NormalCdf(0.0), 0.5);
  boost::math::normal nd;
  for (double x : {-6.0, -2.5, -0.3, 0.7, 1.0, 3.2, 8.0}) {
    EXPECT_NEAR(NormalCdf(x), boost::math::cdf(nd, x), 1e-12);
    EXPECT_NEAR(NormalTail(x), boost::math::cdf(boost::math::complement(nd, x)), 1e-12);
    EXPECT_NEAR(NormalPdf(x), boost::math::pdf(nd, x), 1e-12);
  }
  EXPECT_NEAR(NormalTail(1.0), 0.158655253931457, 1e-12);
}

TEST(NormalTest, TailBoundsAtOne) {
  EXPECT_NEAR(TailLowerBound(1.0), 0.120985362259572, 1e-12);
  EXPECT_NEAR(TailUpperBound(1.0), 0.241970724519143, 1e-12);
  EXPECT_GT(NormalTail(1.0), TailLowerBound(1.0));
  EXPECT_LT(NormalTail(1.0), TailUpperBound(1.0));
}

TEST(NormalTest, TailSandwichOnGrid) {
  for (int i = 1; i <= 100; ++i) {
    const double t = 0.1 * i;
    EXPECT_LT(TailLowerBound(t), NormalTail(t)) << t;
    EXPECT_LT(NormalTail(t), TailUpperBound(t)) << t;
  }
}

TEST(NormalTest, InverseRoundTrip) {
  EXPECT_NEAR(InverseNormalCdf(NormalCdf(1.3)), 1.3, 1e-9);
  EXPECT_NEAR(InverseNormalTail(NormalTail(-2.1)), -2.1, 1e-9);
  for (double p : {1e-10, 0.01, 0.3, 0.5, 0.9, 1 - 1e-9}) {
    EXPECT_NEAR(NormalCdf(InverseNormalCdf(p)), p, 1e-12 + 1e-9 * p);
  }
  EXPECT_THROW(InverseNormalCdf(0.0), ValidationError);
  EXPECT_THROW(InverseNormalCdf(1.0), ValidationError);
  EXPECT_THROW(InverseNormalTail(1.0), ValidationError);
}

TEST(GammaRhoTest, IndependentIsProduct) {
  for (double a = 0; a <= 1.0001; a += 0.125) {
    for (double b = 0; b <= 1.0001; b += 0.125) {
      EXPECT_NEAR(GammaRho(0.0, a, b), a * b, 1e-8);
    }
  }
}

TEST(GammaRhoTest, EdgeArguments) {
  EXPECT_DOUBLE_EQ(GammaRho(0.4, 1.0, 0.3), 0.3);
  EXPECT_DOUBLE_EQ(GammaRho(-0.4, 0.2, 1.0), 0.2);
  EXPECT_DOUBLE_EQ(GammaRho(0.4, 0.0, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(GammaRho(1.0, 0.2, 0.3), 0.2);
  EXPECT_NEAR(GammaRho(-1.0, 0.7, 0.6), 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(GammaRho(-1.0, 0.2, 0.3), 0.0);
  EXPECT_THROW(GammaRho(1.5, 0.2, 0.3), ValidationError);
  EXPECT_THROW(GammaRho(0.5, -0.1, 0.3), ValidationError);
}

TEST(GammaRhoTest, MedianOrthant) {
  for (double rho = -0.99; rho < 1.0; rho += 0.09) {
    EXPECT_NEAR(GammaRho(rho, 0.5, 0.5), 0.25 + std::asin(rho) / (2 * std::numbers::pi), 1e-6)
        << rho;
  }
  EXPECT_NEAR(GammaRho(0.999999, 0.5, 0.5), 0.25 + std::asin(0.999999) / (2 * std::numbers::pi),
              1e-6);
}

TEST(GammaRhoTest, MonteCarloMedianOrthant) {
  const double rho = 0.6;
  const int64_t trials = 1000000;
  int64_t hits = 0;
  CounterRng rng(17);
  for (int64_t t = 0; t < trials; ++t) {
    const double y = rng.Normal(), z = rng.Normal();
    const double x = rho * y + std::sqrt(1 - rho * rho) * z;
    hits += (x >= 0 && y >= 0);
  }
  const double p = static_cast<double>(hits) / trials;
  EXPECT_NEAR(GammaRho(rho, 0.5, 0.5), p, 3 * std::sqrt(p * (1 - p) / trials));
}

TEST(GammaRhoTest, MatchesOwenT) {
  for (double rho : {-0.95, -0.5, 0.2, 0.7, 0.97}) {
    for (double a : {0.01, 0.2, 0.45, 0.8, 0.99}) {
      for (double b : {0.003, 0.3, 0.6, 0.95}) {
        const double h = InverseNormalTail(a), k = InverseNormalTail(b);
        EXPECT_NEAR(GammaRho(rho, a, b), OwenOrthant(h, k, rho), 1e-8)
            << rho << " " << a << " " << b;
      }
    }
  }
}

TEST(GammaRhoTest, SymmetricFrechetAndMonotone) {
  for (double a = 0.05; a < 1; a += 0.15) {
    for (double b = 0.05; b < 1; b += 0.15) {
      double prev = -1;
      for (double rho = -1; rho <= 1.0001; rho += 0.1) {
        const double r = std::min(rho, 1.0);
        const double g = GammaRho(r, a, b);
        EXPECT_NEAR(g, GammaRho(r, b, a), 1e-8);
        EXPECT_GE(g, std::max(0.0, a + b - 1) - 1e-8);
        EXPECT_LE(g, std::min(a, b) + 1e-8);
        EXPECT_GE(g, prev - 1e-8);
        prev = g;
      }
    }
  }
}

TEST(GammaPropertiesTest, IndependentRowIsLinear) {
  GammaGrid grid;
  grid.concavity_rhos = {0.0};
  grid.T_values = {};
  GammaReport rep = VerifyGammaProperties(grid);
  ASSERT_FALSE(rep.rows.empty());
  for (const GammaCheckRow& row : rep.rows) EXPECT_NEAR(row.value, 0.0, 1e-8);
  EXPECT_TRUE(rep.concavity_ok);
}

TEST(GammaPropertiesTest, DefaultGrid) {
  GammaReport rep = VerifyGammaProperties(GammaGrid{});
  EXPECT_TRUE(rep.concavity_ok);
  EXPECT_LE(rep.max_second_difference, 1e-6);
  bool saw256 = false;
  for (const ProductRowSummary& s : rep.product) {
    if (s.T == 256) {
      saw256 = true;
      EXPECT_EQ(s.violations, 0);
      EXPECT_GT(s.points, 0);
      EXPECT_DOUBLE_EQ(s.delta, 0.25);
    }
  }
  EXPECT_TRUE(saw256);
  ASSERT_TRUE(rep.product_threshold.has_value());
  EXPECT_LE(*rep.product_threshold, 256);
}

TEST(MaxGapTest, TwoVariables) {
  MaxGapStats st = ComputeMaxGapStats(2, 1000000, 5, {0.2});
  EXPECT_NEAR(st.mean_gap, 2 / std::sqrt(std::numbers::pi), 3 * st.se_gap);
  // E[max of two] = 1/sqrt(pi).
  EXPECT_NEAR(st.mean_max, 1 / std::sqrt(std::numbers::pi), 3 * st.se_max);
  ASSERT_EQ(st.checks.size(), 1u);
  EXPECT_NEAR(st.checks[0].x2, 0.0659, 1e-4);
  EXPECT_TRUE(st.checks[0].gap_ok);
  EXPECT_TRUE(st.checks[0].max_ok);
}

TEST(MaxGapTest, SixteenVariables) {
  MaxGapStats st = ComputeMaxGapStats(16, 200000, 6, {0.1, 0.05});
  EXPECT_NEAR(st.checks[0].x1, std::sqrt(2 * std::log(160.0)), 1e-12);
  for (const MaxGapCheck& c : st.checks) {
    EXPECT_TRUE(c.max_ok);
    EXPECT_TRUE(c.gap_ok);
  }
}

TEST(MaxGapTest, ParallelMatchesSerial) {
  MaxGapStats a = ComputeMaxGapStats(5, 30000, 8, {0.1});
  MaxGapStats b = ComputeMaxGapStatsSerial(5, 30000, 8, {0.1});
  EXPECT_EQ(a.mean_max, b.mean_max);
  EXPECT_EQ(a.mean_gap, b.mean_gap);
  EXPECT_EQ(a.checks[0].p_gap_above, b.checks[0].p_gap_above);
}

TEST(MaxGapTest, RejectsBadArguments) {
  EXPECT_THROW(ComputeMaxGapStats(1, 10, 1, {}), ValidationError);
  EXPECT_THROW(ComputeMaxGapStats(3, 10, 1, {0.0}), ValidationError);
}

}  // namespace
}  // namespace gmdlab
