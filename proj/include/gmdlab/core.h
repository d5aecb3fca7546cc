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

#ifndef GMDLAB_CORE_H_
#define GMDLAB_CORE_H_

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gmdlab/rational.h"

namespace gmdlab {

struct GmdEdge {
  int tail = 0;
  int head = 0;
  int label = 1;  // in 1..T
  Rational weight;

  friend bool operator==(const GmdEdge&, const GmdEdge&) = default;
};

// Generalized Max-Dicut(T) instance: a labeled, weighted digraph on vertices
// 0..n-1. Construction validates the edges, merges parallel edges that share
// (tail, head, label) by adding their weights, and sorts edges by
// (tail, head, label). Immutable afterwards.
class GmdInstance {
 public:
  GmdInstance() = default;
  GmdInstance(int T, int num_vertices, std::vector<GmdEdge> edges);

  int T() const { return T_; }
  int num_vertices() const { return num_vertices_; }
  const std::vector<GmdEdge>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Rational& total_weight() const { return total_weight_; }
  // True iff the edge weights sum to exactly 1.
  bool weights_normalized() const { return total_weight_ == 1; }

  // Copy with every weight divided by the total weight.
  GmdInstance Normalized() const;

  friend bool operator==(const GmdInstance& a, const GmdInstance& b) {
    return a.T_ == b.T_ && a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
  }

 private:
  int T_ = 1;
  int num_vertices_ = 0;
  std::vector<GmdEdge> edges_;
  Rational total_weight_;
};

struct GpEdge {
  int u = 0;
  int v = 0;
  Rational budget;
  Rational weight;

  friend bool operator==(const GpEdge&, const GpEdge&) = default;
};

// Graph Pricing instance: undirected multigraph with per-edge budget and
// weight. Edges are kept in canonical order (u, v, budget, weight); parallel
// edges are allowed and never merged.
class GpInstance {
 public:
  GpInstance() = default;
  GpInstance(int num_vertices, std::vector<GpEdge> edges);

  int num_vertices() const { return num_vertices_; }
  const std::vector<GpEdge>& edges() const { return edges_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  friend bool operator==(const GpInstance&, const GpInstance&) = default;

 private:
  int num_vertices_ = 0;
  std::vector<GpEdge> edges_;
};

// l_V : V -> {0..T}.
struct Labeling {
  std::vector<int> values;

  int operator[](int v) const { return values[v]; }
  int size() const { return static_cast<int>(values.size()); }
  friend bool operator==(const Labeling&, const Labeling&) = default;
};

// p : V -> Q>=0.
struct Pricing {
  std::vector<Rational> values;

  const Rational& operator[](int v) const { return values[v]; }
  int size() const { return static_cast<int>(values.size()); }
  friend bool operator==(const Pricing&, const Pricing&) = default;
};

// Unlabeled digraph on 0..n-1, used for base graphs and inner DAGs.
struct Digraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> arcs;
};

Digraph SkeletonOf(const GmdInstance& inst);

// Returns a directed cycle as a vertex sequence (first vertex not repeated),
// or an empty vector when the digraph is acyclic.
std::vector<int> FindDirectedCycle(const Digraph& graph);

using Instance = std::variant<GmdInstance, GpInstance>;

// Parses the line-oriented instance format:
//
//   gmd <T>                          gp
//   v <n>                            v <n>
//   [normalize]                      [M <integer>]
//   e <tail> <head> <label> <w>      e <u> <v> <budget> <w>
//
// Numbers are integers, p/q, or finite decimals; `#` starts a comment. In a
// gp file with an `M` line, a budget may be written as the token M^k.
// Errors throw ValidationError prefixed with "line N:".
Instance ParseInstance(std::string_view text);
GmdInstance ParseGmd(std::string_view text);
GpInstance ParseGp(std::string_view text);

std::string SerializeInstance(const GmdInstance& inst);
std::string SerializeInstance(const GpInstance& inst);

// Sum of w(u,v) over edges with l(u) = 0 and l(v) = l_A(u,v).
Rational ValGmd(const GmdInstance& inst, const Labeling& labeling);

// Sum of w(e) (p(u)+p(v)) over edges with p(u)+p(v) <= b(e).
Rational ValGp(const GpInstance& inst, const Pricing& pricing);

// [sum_u max_{(u,v)} w(u,v)]^{-1}; requires normalized weights and at least
// one edge.
Rational Ndeg(const GmdInstance& inst);

void ValidateLabeling(const GmdInstance& inst, const Labeling& labeling);
void ValidatePricing(int num_vertices, const Pricing& pricing);

}  // namespace gmdlab

#endif  // GMDLAB_CORE_H_
