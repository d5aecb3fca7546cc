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

#ifndef GMDLAB_SIMPLEX_H_
#define GMDLAB_SIMPLEX_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "gmdlab/rational.h"

namespace gmdlab {

using SparseRow = std::vector<std::pair<size_t, Rational>>;

// maximize objective . x  subject to  rows[i] . x = rhs[i],  x >= 0.
struct LpProblem {
  size_t num_variables = 0;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  SparseRow objective;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::vector<Rational> x;
  uint64_t pivots = 0;
  size_t dropped_rows = 0;  // redundant equalities removed after phase one
};

inline constexpr uint64_t kDefaultTableauCap = uint64_t{1} << 23;

// Two-phase dense tableau simplex in exact rationals with Bland's rule.
// Throws CapExceeded when the tableau would exceed `max_cells` entries.
LpResult SolveLpExact(const LpProblem& lp, uint64_t max_cells = kDefaultTableauCap);

}  // namespace gmdlab

#endif  // GMDLAB_SIMPLEX_H_
