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


#include "gmdlab/simplex.h"

#include <gtest/gtest.h>

#include "gmdlab/errors.h"
#include "gmdlab/rng.h"

namespace gmdlab {
namespace {

// Oracle: enumerate every basis of a full-row-rank m x n system with m = 2.
Rational BestVertex(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                    const std::vector<Rational>& c, bool& feasible) {
  const size_t n = c.size();
  Rational best;
  feasible = false;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      Rational det = a[0][i] * a[1][j] - a[0][j] * a[1][i];
      if (det == 0) continue;
      Rational xi = (b[0] * a[1][j] - a[0][j] * b[1]) / det;
      Rational xj = (a[0][i] * b[1] - b[0] * a[1][i]) / det;
      if (xi < 0 || xj < 0) continue;
      Rational v = c[i] * xi + c[j] * xj;
      if (!feasible || v > best) best = v;
      feasible = true;
    }
  }
  return best;
}

TEST(SimplexTest, SmallKnownLp) {
  // max x + y  s.t. x + 2y + s = 4, 3x + y + t = 6.
  LpProblem lp;
  lp.num_variables = 4;
  lp.rows = {{{0, 1}, {1, 2}, {2, 1}}, {{0, 3}, {1, 1}, {3, 1}}};
  lp.rhs = {4, 6};
  lp.objective = {{0, 1}, {1, 1}};
  LpResult r = SolveLpExact(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, Rational(14, 5));
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
}

TEST(SimplexTest, InfeasibleAndUnbounded) {
  LpProblem infeasible;
  infeasible.num_variables = 1;
  infeasible.rows = {{{0, 1}}, {{0, 1}}};
  infeasible.rhs = {1, 2};
  EXPECT_EQ(SolveLpExact(infeasible).status, LpStatus::kInfeasible);

  LpProblem unbounded;
  unbounded.num_variables = 2;
  unbounded.rows = {{{0, 1}, {1, -1}}};
  unbounded.rhs = {1};
  unbounded.objective = {{0, 1}};
  EXPECT_EQ(SolveLpExact(unbounded).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, RedundantRowsDropped) {
  LpProblem lp;
  lp.num_variables = 2;
  lp.rows = {{{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}, {{0, -1}, {1, -1}}};
  lp.rhs = {1, 2, -1};
  lp.objective = {{1, 3}};
  LpResult r = SolveLpExact(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_EQ(r.value, 3);
  EXPECT_EQ(r.dropped_rows, 2u);
}

TEST(SimplexTest, MatchesBasisEnumeration) {
  CounterRng rng(17);
  int feasible_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 5;
    std::vector<std::vector<Rational>> a(2, std::vector<Rational>(n));
    std::vector<Rational> b(2), c(n);
    for (auto& row : a) {
      for (auto& v : row) v = static_cast<long>(rng.UniformInt(7)) - 2;
    }
    for (auto& v : b) v = static_cast<long>(rng.UniformInt(6));
    // Nonpositive objective keeps the LP bounded.
    for (auto& v : c) v = -static_cast<long>(rng.UniformInt(4));
    LpProblem lp;
    lp.num_variables = n;
    for (int i = 0; i < 2; ++i) {
      SparseRow row;
      for (size_t j = 0; j < n; ++j) {
        if (a[i][j] != 0) row.emplace_back(j, a[i][j]);
      }
      lp.rows.push_back(row);
    }
    lp.rhs = b;
    for (size_t j = 0; j < n; ++j) lp.objective.emplace_back(j, c[j]);
    LpResult r = SolveLpExact(lp);
    bool feasible;
    Rational oracle = BestVertex(a, b, c, feasible);
    // The oracle only sees nondegenerate 2-column bases, so skip rank-deficient draws.
    bool full_rank = false;
    for (size_t i = 0; i < n && !full_rank; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (a[0][i] * a[1][j] - a[0][j] * a[1][i] != 0) full_rank = true;
      }
    }
    if (!full_rank) continue;
    if (feasible) {
      ++feasible_count;
      ASSERT_EQ(r.status, LpStatus::kOptimal) << "trial " << trial;
      EXPECT_EQ(r.value, oracle) << "trial " << trial;
      for (int i = 0; i < 2; ++i) {
        Rational lhs = 0;
        for (size_t j = 0; j < n; ++j) lhs += a[i][j] * r.x[j];
        EXPECT_EQ(lhs, b[i]);
      }
    } else {
      EXPECT_EQ(r.status, LpStatus::kInfeasible) << "trial " << trial;
    }
  }
  EXPECT_GT(feasible_count, 50);
}

TEST(SimplexTest, CellCap) {
  LpProblem lp;
  lp.num_variables = 100;
  lp.rows.assign(100, SparseRow{{0, 1}});
  lp.rhs.assign(100, Rational(0));
  EXPECT_THROW(SolveLpExact(lp, 1000), CapExceeded);
}

}  // namespace
}  // namespace gmdlab
