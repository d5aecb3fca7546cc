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

#include <string>

#include "gmdlab/errors.h"

namespace gmdlab {
namespace {

class Tableau {
 public:
  // Columns: structural variables, then one artificial per row, then rhs.
  Tableau(const LpProblem& lp)
      : m_(lp.rows.size()), n_(lp.num_variables), cols_(n_ + m_), a_(m_), basis_(m_) {
    for (size_t i = 0; i < m_; ++i) {
      a_[i].assign(cols_ + 1, Rational(0));
      const bool flip = lp.rhs[i] < 0;
      for (const auto& [j, c] : lp.rows[i]) {
        if (j >= n_) throw ValidationError("LP row references unknown variable");
        a_[i][j] += flip ? Rational(-c) : c;
      }
      a_[i][n_ + i] = 1;
      a_[i][cols_] = flip ? Rational(-lp.rhs[i]) : lp.rhs[i];
      basis_[i] = n_ + i;
    }
  }

  size_t rows() const { return m_; }
  size_t basis(size_t i) const { return basis_[i]; }
  const Rational& rhs(size_t i) const { return a_[i][cols_]; }
  const Rational& at(size_t i, size_t j) const { return a_[i][j]; }
  bool IsArtificial(size_t j) const { return j >= n_ && j < cols_; }

  // Reduced costs z_j - c_j style row for maximizing `cost` over columns.
  std::vector<Rational> ReducedCosts(const std::vector<Rational>& cost) const {
    std::vector<Rational> d(cols_ + 1);
    for (size_t j = 0; j <= cols_; ++j) d[j] = j < cols_ ? Rational(-cost[j]) : Rational(0);
    for (size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (size_t j = 0; j <= cols_; ++j) {
        if (a_[i][j] != 0) d[j] += cb * a_[i][j];
      }
    }
    return d;
  }

  void Pivot(size_t r, size_t c, std::vector<Rational>& d) {
    const Rational inv = 1 / a_[r][c];
    std::vector<size_t> nz;
    for (size_t j = 0; j <= cols_; ++j) {
      if (a_[r][j] != 0) {
        a_[r][j] *= inv;
        nz.push_back(j);
      }
    }
    for (size_t i = 0; i < m_; ++i) {
      if (i == r || a_[i][c] == 0) continue;
      const Rational f = a_[i][c];
      for (size_t j : nz) a_[i][j] -= f * a_[r][j];
    }
    if (d[c] != 0) {
      const Rational f = d[c];
      for (size_t j : nz) d[j] -= f * a_[r][j];
    }
    basis_[r] = c;
  }

  // Runs Bland's rule on columns allowed by `allowed`. Returns false when
  // unbounded.
  template <class Allowed>
  bool Optimize(std::vector<Rational>& d, Allowed allowed, uint64_t& pivots) {
    while (true) {
      size_t enter = cols_;
      for (size_t j = 0; j < cols_; ++j) {
        if (d[j] < 0 && allowed(j)) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      size_t leave = m_;
      Rational best_ratio;
      for (size_t i = 0; i < m_; ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = a_[i][cols_] / a_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      Pivot(leave, enter, d);
      ++pivots;
    }
  }

  void DropRow(size_t r) {
    a_.erase(a_.begin() + r);
    basis_.erase(basis_.begin() + r);
    --m_;
  }

  size_t cols() const { return cols_; }

 private:
  size_t m_, n_, cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<size_t> basis_;
};

}  // namespace

LpResult SolveLpExact(const LpProblem& lp, uint64_t max_cells) {
  if (lp.rows.size() != lp.rhs.size()) throw ValidationError("LP rows and rhs differ in length");
  const uint64_t cells =
      static_cast<uint64_t>(lp.rows.size()) * (lp.num_variables + lp.rows.size() + 1);
  if (cells > max_cells) {
    throw CapExceeded("LP tableau of " + std::to_string(cells) + " cells exceeds cap " +
                      std::to_string(max_cells));
  }
  Tableau tab(lp);
  const size_t n = lp.num_variables;
  LpResult result;

  // Phase one: maximize -(sum of artificials).
  std::vector<Rational> cost1(tab.cols(), Rational(0));
  for (size_t j = n; j < tab.cols(); ++j) cost1[j] = -1;
  std::vector<Rational> d = tab.ReducedCosts(cost1);
  tab.Optimize(d, [](size_t) { return true; }, result.pivots);
  if (d[tab.cols()] != 0) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  // Drive artificials out of the basis; rows where that is impossible are
  // redundant.
  for (size_t i = 0; i < tab.rows();) {
    if (!tab.IsArtificial(tab.basis(i))) {
      ++i;
      continue;
    }
    size_t col = n;
    for (size_t j = 0; j < n; ++j) {
      if (tab.at(i, j) != 0) {
        col = j;
        break;
      }
    }
    if (col == n) {
      tab.DropRow(i);
      ++result.dropped_rows;
      continue;
    }
    tab.Pivot(i, col, d);
    ++result.pivots;
    ++i;
  }

  // Phase two on structural columns only.
  std::vector<Rational> cost2(tab.cols(), Rational(0));
  for (const auto& [j, c] : lp.objective) {
    if (j >= n) throw ValidationError("LP objective references unknown variable");
    cost2[j] += c;
  }
  d = tab.ReducedCosts(cost2);
  if (!tab.Optimize(d, [n](size_t j) { return j < n; }, result.pivots)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.x.assign(n, Rational(0));
  for (size_t i = 0; i < tab.rows(); ++i) {
    if (tab.basis(i) < n) result.x[tab.basis(i)] = tab.rhs(i);
  }
  result.value = 0;
  for (const auto& [j, c] : lp.objective) result.value += c * result.x[j];
  return result;
}

}  // namespace gmdlab
