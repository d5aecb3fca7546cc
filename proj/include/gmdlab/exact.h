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

#ifndef GMDLAB_EXACT_H_
#define GMDLAB_EXACT_H_

#include <cstdint>
#include <vector>

#include "gmdlab/core.h"

namespace gmdlab {

struct GmdOptResult {
  Rational value;
  Labeling witness;
  uint64_t explored = 0;  // zero sets, labelings, or table entries visited
};

struct GpOptResult {
  Rational value;
  Pricing witness;
  uint64_t explored = 0;  // complete grid pricings evaluated
};

inline constexpr int kDefaultZeroSetCap = 24;
inline constexpr int kDefaultBruteForceCap = 8;
inline constexpr uint64_t kDefaultGridCap = uint64_t{1} << 24;
inline constexpr uint64_t kDefaultEliminationTableCap = uint64_t{1} << 24;

// Vertices in `zero_set` get 0; every other vertex v gets the label t in 1..T
// maximizing the weight of edges (u, v) with u in the zero set and label t.
// Ties and vertices without a zero in-neighbor get the smallest label.
Labeling GreedyCompletion(const GmdInstance& inst, const std::vector<bool>& zero_set);

// Exact optimum by enumerating all 2^n zero sets and completing each greedily.
// The witness is the completion of the smallest zero-set mask (bit v = vertex
// v) attaining the optimum, independent of the number of threads.
GmdOptResult OptGmd(const GmdInstance& inst, int max_vertices = kDefaultZeroSetCap);
// Single-threaded reference for OptGmd; identical results.
GmdOptResult OptGmdSerial(const GmdInstance& inst, int max_vertices = kDefaultZeroSetCap);

// Full (T+1)^n enumeration. Oracle for OptGmd on small instances.
GmdOptResult OptGmdBruteForce(const GmdInstance& inst, int max_vertices = kDefaultBruteForceCap);

// Exact optimum by max-sum variable elimination (greedy min-degree order) on
// the underlying graph. Cost is exponential only in the induced width, so it
// handles sparse instances with many vertices. Throws CapExceeded when an
// intermediate table would exceed `max_table_entries`.
GmdOptResult OptGmdElimination(const GmdInstance& inst,
                               uint64_t max_table_entries = kDefaultEliminationTableCap);

// Exact maximum of ValGp over the product grid candidates[0] x ... x
// candidates[n-1]. Ties resolve to the lexicographically smallest candidate
// index vector. Parallel over grid prefixes.
GpOptResult OptGpGrid(const GpInstance& inst, const std::vector<std::vector<Rational>>& candidates,
                      uint64_t max_grid = kDefaultGridCap);
GpOptResult OptGpGridSerial(const GpInstance& inst,
                            const std::vector<std::vector<Rational>>& candidates,
                            uint64_t max_grid = kDefaultGridCap);

// Per-vertex grid {0, 1/2, 1, ..., B_v} where B_v is the largest budget on an
// edge at v. Requires integer budgets.
std::vector<std::vector<Rational>> HalfIntegralGrid(const GpInstance& inst);

}  // namespace gmdlab

#endif  // GMDLAB_EXACT_H_
