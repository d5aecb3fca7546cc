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


#ifndef GMDLAB_SASOL_H_
#define GMDLAB_SASOL_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gmdlab/core.h"
#include "gmdlab/salp.h"

namespace gmdlab {

// Labels live in {0..T}, so every vertex has q = T + 1 label events.

// Label pairs (i, i') at u and v that weakly satisfy every edge of the unique
// shortest u-v path in the undirected skeleton (head - tail = label mod q).
// Throws ValidationError if the path is not unique or longer than max_dist.
std::vector<std::pair<int, int>> MatchPairs(const GmdInstance& inst, int u, int v, int max_dist);

// Pairwise label-event table rho(u(i), v(i')) for a noise rate mu and a
// cutoff distance L. Pairs within distance L are correlated through the
// label offset of their shortest path; farther pairs are independent.
class PairwiseTable {
 public:
  PairwiseTable(const GmdInstance& inst, const Rational& mu, int L);

  int T() const { return T_; }
  int domain() const { return T_ + 1; }
  int num_vertices() const { return n_; }
  const Rational& mu() const { return mu_; }
  int L() const { return L_; }

  // Undirected distance if at most L, otherwise empty.
  std::optional<int> Distance(int u, int v) const;
  // Label offset along the shortest path, valid when Distance is set.
  int Offset(int u, int v) const { return offset_[Slot(u, v)]; }
  bool Matches(int u, int i, int v, int j) const;
  Rational Rho(int u, int i, int v, int j) const;
  double RhoDouble(int u, int i, int v, int j) const;

 private:
  size_t Slot(int u, int v) const { return static_cast<size_t>(u) * n_ + v; }

  int T_ = 1, n_ = 0, L_ = 0;
  Rational mu_;
  std::vector<int> dist_;    // -1 when farther than L
  std::vector<int> offset_;
  std::vector<Rational> match_by_dist_, other_by_dist_;
  Rational far_;
};

// Joint label distribution of `vertices` (sorted, distinct) under the
// edge-deletion multicut of a forest: each edge is cut with probability mu,
// each piece gets a uniform label at one vertex and propagates it so every
// kept edge is weakly satisfied. Index like SaLp assignments, first vertex
// most significant. Throws ValidationError if the skeleton has a cycle.
std::vector<Rational> LocalDistributionExact(const GmdInstance& forest, const Rational& mu,
                                             const std::vector<int>& vertices);

struct SampledDistribution {
  int64_t trials = 0;
  std::vector<int64_t> counts;

  Rational Frequency(uint64_t alpha) const;
};

// Monte Carlo version of LocalDistributionExact. Trial t uses substream
// SubstreamSeed(seed, t).
SampledDistribution LocalDistributionSampled(const GmdInstance& forest, const Rational& mu,
                                             const std::vector<int>& vertices, int64_t trials,
                                             uint64_t seed);

// Label-event vectors, one row per (vertex position, label), row index
// position * q + label.
struct VectorSystem {
  std::vector<int> vertices;
  int domain = 0;
  int dim = 0;
  std::vector<double> gram;     // row-major, size N x N
  std::vector<double> vectors;  // row-major, size N x dim
  // Eigenvalue clamping of the Gram factorization.
  int clamped_eigenvalues = 0;
  double min_eigenvalue = 0.0;
  double max_factor_error = 0.0;

  int num_rows() const { return static_cast<int>(vertices.size()) * domain; }
  double Dot(int r1, int r2) const;
};

inline constexpr double kPsdTolerance = 1e-9;

// Gram diagonal mu + 1/q, off-diagonal mu/2 + rho. Eigenvalues in
// [-kPsdTolerance, 0) are clamped to zero and counted; anything more negative
// throws ValidationError. The factor reproduces the Gram within 1e-9.
VectorSystem EmbedVectors(const PairwiseTable& table, const std::vector<int>& vertices);

// Rows of `vs` for a subset of its vertices (sorted). Coordinates are kept,
// so rounding the restriction with a seed gives the same labels as rounding
// `vs` with that seed.
VectorSystem Restrict(const VectorSystem& vs, const std::vector<int>& vertices);

// Explicit vectors for one edge u -> v with label t from orthogonal parts
// a(i), b(i,j), c(i), c'(i), d:
//   u(i)     = a(i) + sum_j b(i,j) + c(i) + d
//   v(i + t) = a(i) + sum_j b(j,i) + c'(i + t) + d
// with squared lengths (1-mu)/q, mu/q^2, mu/2, mu/2, mu/2.
VectorSystem EdgeVectorSystem(int T, int label, double mu);

// Rounded labels, trials x |vertices|, trial-major. Each vertex gets the label
// whose vector has the largest inner product with a shared Gaussian g; ties go
// to the smallest label. Trial t draws g from substream SubstreamSeed(seed, t).
std::vector<uint8_t> SampleRoundedLabels(const VectorSystem& vs, int64_t trials, uint64_t seed);
std::vector<uint8_t> SampleRoundedLabelsSerial(const VectorSystem& vs, int64_t trials,
                                               uint64_t seed);

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

struct RoundingEstimate {
  int64_t trials = 0;
  // marginals[p][i]: frequency of label i at vertex position p.
  std::vector<std::vector<Estimate>> marginals;
  // One entry per requested edge: Pr[l(tail) = 0 and l(head) = label].
  std::vector<Estimate> edges;
};

struct EdgeQuery {
  int tail_pos = 0;  // positions within vs.vertices
  int head_pos = 1;
  int label = 1;
};

RoundingEstimate RoundAndEstimate(const VectorSystem& vs, const std::vector<EdgeQuery>& edges,
                                  int64_t trials, uint64_t seed);
RoundingEstimate RoundAndEstimateSerial(const VectorSystem& vs,
                                        const std::vector<EdgeQuery>& edges, int64_t trials,
                                        uint64_t seed);

// eps^2 / (256 q ln^2(q / eps)), the noise rate under which adjacent vertices
// keep a matched pair with probability at least (1 - 12 eps)/q.
double NoiseRateForEps(int T, double eps);

struct SaGapSolution {
  SaSolution solution;       // rounds = k, domain = T + 1
  Rational objective;        // sum_e w(e) * empirical Pr[l(u)=0, l(v)=label]
  double objective_stderr = 0.0;
  int64_t trials = 0;
  int clamped_eigenvalues = 0;
  double min_eigenvalue = 0.0;
};

struct SaGapCaps {
  int max_vertices = 64;
  int max_rounds = 4;
  uint64_t max_table_entries = uint64_t{1} << 24;
};

// Embeds every vertex at once and rounds with one Gaussian per trial, so each
// table x_S is the empirical law of the same sampled labelings restricted to
// S. Tables cover all nonempty S with |S| <= k.
SaGapSolution BuildSaSolution(const GmdInstance& inst, const Rational& mu, int L, int k,
                              int64_t trials, uint64_t seed, const SaGapCaps& caps = {});

}  // namespace gmdlab

#endif  // GMDLAB_SASOL_H_
