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

#ifndef GMDLAB_GAPGEN_H_
#define GMDLAB_GAPGEN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmdlab/core.h"

namespace gmdlab {

enum class BaseKind { kWindowRandom, kCompleteDag, kCustomFile };

BaseKind ParseBaseKind(const std::string& name);

struct BaseParams {
  int window = 4;              // window-random: max |u - v|
  double include_prob = 0.5;   // window-random: probability of each pair
  std::string text;            // custom-file: GMD instance text, labels ignored
};

// Arcs always point from the larger to the smaller vertex id for the built-in
// kinds. Custom input is rejected if it has a directed cycle.
Digraph GenerateBaseDag(BaseKind kind, int n, const BaseParams& params, uint64_t seed);

struct PipelineConfig {
  int n = 0;
  int delta = 4;
  std::optional<double> p_keep;  // default delta / (max degree of the base)
  int T = 2;
  int l = 9;
  Rational mu = Rational(1, 2);
  int k_max = 3;
  uint64_t seed = 0;
  Rational eps = Rational(1, 10);
  std::optional<int> edge_floor;  // default ceil(delta * n / 4)
  int exact_vertex_cap = 24;      // zero-set enumeration up to here
  uint64_t elimination_table_cap = uint64_t{1} << 24;
};

void ValidateConfig(const PipelineConfig& cfg);

struct StructuralReport {
  bool is_acyclic = true;
  int max_degree = 0;
  bool degree_ok = true;
  std::optional<int> girth;  // empty when the graph is a forest
  bool girth_ok = true;
  int edge_count = 0;
  int edge_floor = 0;
  bool edge_floor_ok = true;
  bool empty = false;
  double noise_lhs = 0.0;  // (1 - mu)^{l/10}
  double noise_rhs = 0.0;  // mu / (5 k)
  bool noise_ok = false;
  std::optional<Rational> measured_opt;
  std::string opt_method;  // zero-sets, elimination, or none
  Rational dicut_target;   // (1 + eps) / (4T)
  std::optional<bool> dicut_bound_ok;
  int removed_by_degree = 0;
  int removed_by_girth = 0;

  // Acyclic, degree, and girth postconditions.
  bool StructureOk() const { return is_acyclic && degree_ok && girth_ok; }
};

struct PipelineResult {
  GmdInstance instance;
  StructuralReport report;
};

// Undirected girth of the skeleton; empty for forests.
std::optional<int> Girth(const Digraph& graph);

// Keep, label, degree cleanup, short-cycle removal, uniform weights.
PipelineResult SparsifyPipeline(const Digraph& base, const PipelineConfig& cfg);

StructuralReport CheckStructural(const GmdInstance& inst, const PipelineConfig& cfg);

enum class Decomposability { kVerified, kRefuted, kInconclusive };

struct DecomposabilityResult {
  Decomposability outcome = Decomposability::kInconclusive;
  // For kRefuted: vertices of a 2-connected subgraph with no qualifying path.
  std::vector<int> witness;
  int blocks_examined = 0;
};

// Treats arcs as undirected edges. Finds 2-connected blocks; each must contain
// a path of length l whose vertices all have degree 2 in the block. Such a
// path is deleted and the rest re-examined.
DecomposabilityResult CheckPathDecomposable(const Digraph& graph, int l, int max_steps = 10000);

const char* ToString(Decomposability d);

}  // namespace gmdlab

#endif  // GMDLAB_GAPGEN_H_
