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


#ifndef GMDLAB_DICTTEST_H_
#define GMDLAB_DICTTEST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmdlab/core.h"

namespace gmdlab {

// Label spaces Omega_1 = Omega_2 = {0..T}.
//   P(0) = delta, P(j) = (1 - delta)/T;
//   P' = P with (1 - delta)/T moved off 0, renormalized;
//   P^t: y ~ P; x = 0 if y = t, else x ~ P' independently.
struct CorrelatedSpace {
  int T = 1;
  Rational delta;
  // True when delta is a rational stand-in for an irrational T^{-1/4}.
  bool delta_approximate = false;
  std::vector<Rational> P;
  std::vector<Rational> Pprime;

  int domain() const { return T + 1; }
  // P^t(x, y), t in 1..T. Computed on demand; a dense table per t would be
  // T (T+1)^2 rationals.
  Rational Joint(int t, int x, int y) const;
  // Row-major (T+1) x (T+1) table of P^t.
  std::vector<Rational> JointTable(int t) const;
};

// delta defaults to T^{-1/4}, rounded to the nearest double when irrational.
// Throws ValidationError if P'(0) < 0, i.e. delta (T + 1) < 1.
CorrelatedSpace BuildCorrelatedSpace(int T, std::optional<Rational> delta = std::nullopt);

struct CorrelationResult {
  double closed_form = 0.0;  // (1 - delta) / sqrt(delta (T - 1 + delta))
  double singular = 0.0;     // second singular value of P^t(x,y)/sqrt(P(x)P(y))
  double bound = 0.0;        // sqrt(2 / (T delta))
  bool within_bound = false;
};

inline constexpr double kCorrelationTolerance = 1e-10;

// Both computations for every t; throws Error if they differ by more than
// kCorrelationTolerance.
CorrelationResult ExactCorrelation(const CorrelatedSpace& space);

// GMD instance on V_D x [T]^R. Vertex (u, x) has id u * (T+1)^R + index(x)
// with x_1 most significant.
struct TestInstance {
  GmdInstance instance;
  Digraph inner;
  int R = 1;
  int T = 1;

  uint64_t CubeSize() const;
  int VertexId(int u, uint64_t x) const;
};

inline constexpr uint64_t kDefaultDictEdgeCap = uint64_t{1} << 21;

// For every inner arc (u, v), label t, and support pair (x, y) of
// (P^t)^{(x)R}: edge ((u,x),(v,y)) with label t and weight
// prod_i P^t(x_i, y_i) / (|A| T).
TestInstance BuildTestInstance(const CorrelatedSpace& space, const Digraph& inner, int R,
                               uint64_t max_edges = kDefaultDictEdgeCap);

// One truth table per inner vertex, each of size (T+1)^R, values in 0..T.
using FunctionFamily = std::vector<std::vector<int>>;

void ValidateFamily(const FunctionFamily& family, int num_inner, int T, int R);

// Exact acceptance probability: sum of weights of edges with F_u(x) = 0 and
// F_v(y) = label.
Rational EvaluateAcceptance(const TestInstance& ti, const FunctionFamily& family);

// Same probability by direct enumeration over arcs, t, and (x, y), without
// building the instance.
Rational EvaluateAcceptanceDirect(const CorrelatedSpace& space, const Digraph& inner, int R,
                                  const FunctionFamily& family);

// Inf_i[F] = E[Var[F | x_j, j != i]] under P^{(x)R}, i in 0..R-1.
Rational Influence(const CorrelatedSpace& space, const std::vector<int>& indicator, int R, int i,
                   uint64_t max_cube = uint64_t{1} << 22);

FunctionFamily DictatorFamily(int num_inner, int T, int R, int coordinate);
FunctionFamily ConstantFamily(const std::vector<int>& value_per_vertex, int T, int R);

// 1/(4T) + 4/T^{5/4}.
double SoundnessLine(int T);
// (1 - delta)/T > SoundnessLine(T) with delta = T^{-1/4}; decided in integers
// (it is equivalent to 81 T > 160000).
bool DictatorBeatsSoundness(int T);
// Smallest T for which DictatorBeatsSoundness holds.
int DictatorThreshold();

struct LibraryEntry {
  std::string name;
  Rational acceptance;
  double max_influence = 0.0;  // over vertices, labels, coordinates
  bool above_soundness = false;
};

// Constants, dicut-style constants, dictators, label-permuted dictators,
// 2-coordinate juntas, plurality, and uniformly random tables. Evaluated in
// parallel over functions.
std::vector<LibraryEntry> EvaluateAdversarialLibrary(const CorrelatedSpace& space,
                                                     const Digraph& inner, int R, uint64_t seed);

// Text format:
//   dict <T> <R>
//   f <inner vertex> <(T+1)^R values>
FunctionFamily ParseFunctionFile(std::string_view text, int num_inner, int T, int R);
std::string SerializeFunctionFile(const FunctionFamily& family, int T, int R);

}  // namespace gmdlab

#endif  // GMDLAB_DICTTEST_H_
