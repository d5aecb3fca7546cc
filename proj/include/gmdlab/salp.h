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

#ifndef GMDLAB_SALP_H_
#define GMDLAB_SALP_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmdlab/approx.h"
#include "gmdlab/core.h"
#include "gmdlab/simplex.h"

namespace gmdlab {

struct SaCaps {
  int max_vertices = 8;
  int max_rounds = 3;
  int max_domain = 5;
  uint64_t max_tableau_cells = kDefaultTableauCap;
};

// Sherali-Adams variables x_S(alpha) for every nonempty S with |S| <= r.
// Assignments are indexed in mixed radix q with the smallest vertex of S most
// significant.
class SaLp {
 public:
  // GMD: domain {0..T}, objective sum_e w * x_{u,v}(0, label).
  SaLp(const GmdInstance& inst, int rounds, const SaCaps& caps = {});
  // GP: domain is the shared price grid; objective sum_e w * (p_i + p_j) *
  // x_{u,v}(i, j) over pairs with 0 < p_i + p_j <= budget.
  SaLp(const GpInstance& inst, int rounds, std::vector<Rational> price_grid,
       const SaCaps& caps = {});

  int rounds() const { return rounds_; }
  int domain() const { return q_; }
  int num_vertices() const { return n_; }
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  const std::vector<Rational>& price_grid() const { return grid_; }
  size_t num_variables() const { return num_variables_; }
  // Nonnegativity bounds plus equality rows.
  size_t num_constraints() const { return num_variables_ + problem_.rows.size(); }
  size_t num_normalization_rows() const { return sets_.size(); }
  size_t num_marginalization_rows() const { return problem_.rows.size() - sets_.size(); }
  const LpProblem& problem() const { return problem_; }
  const SparseRow& objective() const { return problem_.objective; }
  const SaCaps& caps() const { return caps_; }

  // Variable index of x_S(alpha); S must be sorted and present.
  size_t Index(const std::vector<int>& set, uint64_t alpha) const;
  size_t SetIndex(const std::vector<int>& set) const;

 private:
  void Build(int n, int rounds, int q);
  void AddObjective(const std::vector<int>& set, uint64_t alpha, const Rational& coeff);

  int n_ = 0, rounds_ = 0, q_ = 0;
  SaCaps caps_;
  std::vector<Rational> grid_;
  std::vector<std::vector<int>> sets_;
  std::map<std::vector<int>, size_t> set_index_;
  std::vector<size_t> offset_;
  size_t num_variables_ = 0;
  LpProblem problem_;
};

struct SaSolution {
  int rounds = 0;
  int domain = 0;
  // Sorted vertex set -> probabilities indexed like SaLp assignments.
  std::map<std::vector<int>, std::vector<Rational>> tables;

  const Rational& Value(const std::vector<int>& set, uint64_t alpha) const;
};

struct SaLpResult {
  Rational value;
  SaSolution solution;
  uint64_t pivots = 0;
};

SaLpResult SolveSaLp(const SaLp& lp);

// Substitutes a solution into every constraint of `lp`; true iff all hold
// exactly.
bool SatisfiesConstraints(const SaLp& lp, const SaSolution& sol);

struct SaConsistencyReport {
  bool consistent = true;
  size_t identities_checked = 0;
  std::vector<std::string> violations;  // each lists both sides
};

// Nonnegativity, normalization, and marginalization between every pair of
// stored sets S strictly inside S'.
SaConsistencyReport CheckSaConsistency(const SaSolution& sol);

// Singleton tables of a GMD solution as per-vertex label distributions.
Marginals SingletonMarginals(const SaSolution& sol, int num_vertices);

// {0, 1/2, 1, ..., B} for the largest budget B; budgets must be integers.
std::vector<Rational> HalfIntegralPriceGrid(const GpInstance& inst);
// {0} plus every power (1+eps)^k in [b_min/2, b_max].
std::vector<Rational> GeometricPriceGrid(const GpInstance& inst, const Rational& eps);

// Mixed-radix helpers shared with the table builders.
uint64_t NumAssignments(int q, size_t set_size);
std::vector<int> DecodeAssignment(uint64_t alpha, int q, size_t set_size);
uint64_t EncodeAssignment(const std::vector<int>& labels, int q);

}  // namespace gmdlab

#endif  // GMDLAB_SALP_H_
