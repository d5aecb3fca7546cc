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


#include "gmdlab/sasol.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "gmdlab/errors.h"
#include "gmdlab/rng.h"

namespace gmdlab {
namespace {

struct Arc {
  int to;
  int shift;  // label offset when walking to `to`
};

std::vector<std::vector<Arc>> UndirectedArcs(const GmdInstance& inst) {
  std::vector<std::vector<Arc>> adj(inst.num_vertices());
  for (const GmdEdge& e : inst.edges()) {
    adj[e.tail].push_back({e.head, e.label});
    adj[e.head].push_back({e.tail, -e.label});
  }
  return adj;
}

int Mod(int x, int q) { return ((x % q) + q) % q; }

struct BfsResult {
  std::vector<int> dist;   // -1 if not reached
  std::vector<int> paths;  // number of shortest paths, saturated at 2
  std::vector<int> offset;
};

// Breadth-first search up to depth max_depth, counting shortest paths.
BfsResult Bfs(const std::vector<std::vector<Arc>>& adj, int source, int max_depth, int q) {
  const int n = static_cast<int>(adj.size());
  BfsResult r{std::vector<int>(n, -1), std::vector<int>(n, 0), std::vector<int>(n, 0)};
  std::vector<int> frontier{source};
  r.dist[source] = 0;
  r.paths[source] = 1;
  for (int depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    std::vector<int> next;
    for (int x : frontier) {
      for (const Arc& a : adj[x]) {
        if (r.dist[a.to] == -1) {
          r.dist[a.to] = depth + 1;
          r.offset[a.to] = Mod(r.offset[x] + a.shift, q);
          next.push_back(a.to);
        }
        if (r.dist[a.to] == depth + 1) {
          r.paths[a.to] = std::min(2, r.paths[a.to] + r.paths[x]);
        }
      }
    }
    frontier = std::move(next);
  }
  return r;
}

void CheckVertexList(const std::vector<int>& vertices, int n) {
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || vertices[i] >= n) {
      throw ValidationError("vertex " + std::to_string(vertices[i]) + " out of range");
    }
    if (i > 0 && vertices[i] <= vertices[i - 1]) {
      throw ValidationError("vertex list must be sorted and distinct");
    }
  }
}

void CheckMu(const Rational& mu) {
  if (mu < 0 || mu > 1) throw ValidationError("mu must lie in [0, 1], got " + ToString(mu));
}

// digits[p][alpha] = label of position p in assignment alpha.
std::vector<std::vector<int>> DigitTable(int q, size_t k) {
  const uint64_t count = NumAssignments(q, k);
  std::vector<std::vector<int>> digits(k, std::vector<int>(count));
  for (uint64_t alpha = 0; alpha < count; ++alpha) {
    std::vector<int> labels = DecodeAssignment(alpha, q, k);
    for (size_t p = 0; p < k; ++p) digits[p][alpha] = labels[p];
  }
  return digits;
}

void CheckForest(const GmdInstance& inst) {
  std::vector<int> parent(inst.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const GmdEdge& e : inst.edges()) {
    int a = find(e.tail), b = find(e.head);
    if (a == b) {
      throw ValidationError("skeleton is not a forest: edge " + std::to_string(e.tail) + "->" +
                            std::to_string(e.head) + " closes a cycle");
    }
    parent[a] = b;
  }
}

Estimate Bernoulli(int64_t hits, int64_t trials) {
  Estimate e;
  e.value = static_cast<double>(hits) / static_cast<double>(trials);
  if (trials > 1) {
    e.standard_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials - 1));
  }
  return e;
}

RoundingEstimate Summarize(const VectorSystem& vs, const std::vector<uint8_t>& labels,
                           const std::vector<EdgeQuery>& edges, int64_t trials) {
  const int k = static_cast<int>(vs.vertices.size());
  RoundingEstimate out;
  out.trials = trials;
  std::vector<std::vector<int64_t>> counts(k, std::vector<int64_t>(vs.domain, 0));
  std::vector<int64_t> hits(edges.size(), 0);
  for (int64_t t = 0; t < trials; ++t) {
    const uint8_t* row = &labels[static_cast<size_t>(t) * k];
    for (int p = 0; p < k; ++p) ++counts[p][row[p]];
    for (size_t e = 0; e < edges.size(); ++e) {
      if (row[edges[e].tail_pos] == 0 && row[edges[e].head_pos] == edges[e].label) ++hits[e];
    }
  }
  out.marginals.resize(k);
  for (int p = 0; p < k; ++p) {
    for (int i = 0; i < vs.domain; ++i) out.marginals[p].push_back(Bernoulli(counts[p][i], trials));
  }
  for (int64_t h : hits) out.edges.push_back(Bernoulli(h, trials));
  return out;
}

void CheckQueries(const VectorSystem& vs, const std::vector<EdgeQuery>& edges) {
  const int k = static_cast<int>(vs.vertices.size());
  for (const EdgeQuery& e : edges) {
    if (e.tail_pos < 0 || e.tail_pos >= k || e.head_pos < 0 || e.head_pos >= k ||
        e.label < 0 || e.label >= vs.domain) {
      throw ValidationError("edge query outside the vector system");
    }
  }
}

void RoundOne(const VectorSystem& vs, uint64_t seed, int64_t t, std::vector<double>& g,
              uint8_t* out) {
  CounterRng rng(SubstreamSeed(seed, static_cast<uint64_t>(t)));
  for (double& x : g) x = rng.Normal();
  const int k = static_cast<int>(vs.vertices.size());
  for (int p = 0; p < k; ++p) {
    int best = 0;
    double best_val = 0.0;
    for (int i = 0; i < vs.domain; ++i) {
      const double* row = &vs.vectors[static_cast<size_t>(p * vs.domain + i) * vs.dim];
      double s = 0.0;
      for (int c = 0; c < vs.dim; ++c) s += row[c] * g[c];
      if (i == 0 || s > best_val) {
        best = i;
        best_val = s;
      }
    }
    out[p] = static_cast<uint8_t>(best);
  }
}

void CheckRoundable(const VectorSystem& vs, int64_t trials) {
  if (vs.vertices.empty() || vs.domain == 0) throw ValidationError("empty vector system");
  if (vs.domain > 256) throw ValidationError("rounding supports at most 256 labels");
  if (trials < 1) throw ValidationError("trials must be at least 1");
}

}  // namespace

std::vector<std::pair<int, int>> MatchPairs(const GmdInstance& inst, int u, int v, int max_dist) {
  const int n = inst.num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n) throw ValidationError("vertex out of range");
  const int q = inst.T() + 1;
  BfsResult r = Bfs(UndirectedArcs(inst), u, max_dist, q);
  if (r.dist[v] == -1) {
    throw ValidationError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                          " are farther apart than " + std::to_string(max_dist));
  }
  if (r.paths[v] > 1) {
    throw ValidationError("shortest path between " + std::to_string(u) + " and " +
                          std::to_string(v) + " is not unique");
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < q; ++i) pairs.emplace_back(i, Mod(i + r.offset[v], q));
  return pairs;
}

PairwiseTable::PairwiseTable(const GmdInstance& inst, const Rational& mu, int L)
    : T_(inst.T()), n_(inst.num_vertices()), L_(L), mu_(mu) {
  CheckMu(mu);
  if (L < 0) throw ValidationError("L must be nonnegative");
  const int q = T_ + 1;
  const Rational q1(q), q2(q * q);
  for (int d = 0; d <= L; ++d) {
    Rational keep = Pow(Rational(1) - mu, d);
    match_by_dist_.push_back(keep / q1 + (1 - keep) / q2);
    other_by_dist_.push_back((1 - keep) / q2);
  }
  far_ = 1 / q2;
  dist_.assign(static_cast<size_t>(n_) * n_, -1);
  offset_.assign(static_cast<size_t>(n_) * n_, 0);
  auto adj = UndirectedArcs(inst);
  for (int u = 0; u < n_; ++u) {
    BfsResult r = Bfs(adj, u, L, q);
    for (int v = 0; v < n_; ++v) {
      if (r.dist[v] == -1) continue;
      if (r.paths[v] > 1) {
        throw ValidationError("shortest path between " + std::to_string(u) + " and " +
                              std::to_string(v) + " is not unique within distance " +
                              std::to_string(L));
      }
      dist_[Slot(u, v)] = r.dist[v];
      offset_[Slot(u, v)] = r.offset[v];
    }
  }
}

std::optional<int> PairwiseTable::Distance(int u, int v) const {
  int d = dist_[Slot(u, v)];
  if (d < 0) return std::nullopt;
  return d;
}

bool PairwiseTable::Matches(int u, int i, int v, int j) const {
  int d = dist_[Slot(u, v)];
  return d >= 0 && Mod(i + offset_[Slot(u, v)], T_ + 1) == j;
}

Rational PairwiseTable::Rho(int u, int i, int v, int j) const {
  int d = dist_[Slot(u, v)];
  if (d < 0) return far_;
  return Matches(u, i, v, j) ? match_by_dist_[d] : other_by_dist_[d];
}

double PairwiseTable::RhoDouble(int u, int i, int v, int j) const {
  return ToDouble(Rho(u, i, v, j));
}

Rational SampledDistribution::Frequency(uint64_t alpha) const {
  return Rational(counts.at(alpha)) / trials;
}

std::vector<Rational> LocalDistributionExact(const GmdInstance& forest, const Rational& mu,
                                             const std::vector<int>& vertices) {
  CheckMu(mu);
  const int n = forest.num_vertices();
  CheckVertexList(vertices, n);
  CheckForest(forest);
  const int q = forest.T() + 1;
  const size_t k = vertices.size();
  const uint64_t count = NumAssignments(q, k);
  const auto digits = DigitTable(q, k);
  std::vector<int> pos(n, -1);
  for (size_t p = 0; p < k; ++p) pos[vertices[p]] = static_cast<int>(p);

  auto adj = UndirectedArcs(forest);
  const Rational keep = 1 - mu;
  const Rational jump = mu / q;
  std::vector<Rational> result(count, Rational(1));
  std::vector<bool> seen(n, false);
  for (int root : vertices) {
    if (seen[root]) continue;
    // Root the component at `root`; order[] is a preorder.
    std::vector<int> order, parent(n, -1), shift(n, 0);
    std::vector<int> stack{root};
    seen[root] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (const Arc& a : adj[x]) {
        if (seen[a.to]) continue;
        seen[a.to] = true;
        parent[a.to] = x;
        shift[a.to] = a.shift;
        stack.push_back(a.to);
      }
    }
    // f[x][a * count + alpha]: probability of the S labels below x given
    // label a at x. Subtrees without S vertices contribute 1 and are skipped.
    std::vector<std::vector<Rational>> f(n);
    for (size_t idx = order.size(); idx-- > 0;) {
      const int x = order[idx];
      std::vector<Rational>& fx = f[x];
      if (pos[x] >= 0) {
        fx.assign(static_cast<size_t>(q) * count, Rational(0));
        for (int a = 0; a < q; ++a) {
          for (uint64_t alpha = 0; alpha < count; ++alpha) {
            if (digits[pos[x]][alpha] == a) fx[a * count + alpha] = 1;
          }
        }
      }
      for (const Arc& a : adj[x]) {
        const int c = a.to;
        if (parent[c] != x || f[c].empty()) continue;
        if (fx.empty()) fx.assign(static_cast<size_t>(q) * count, Rational(1));
        std::vector<Rational> total(count, Rational(0));
        for (int b = 0; b < q; ++b) {
          for (uint64_t alpha = 0; alpha < count; ++alpha) total[alpha] += f[c][b * count + alpha];
        }
        for (int la = 0; la < q; ++la) {
          const int lb = Mod(la + shift[c], q);
          for (uint64_t alpha = 0; alpha < count; ++alpha) {
            fx[la * count + alpha] *= keep * f[c][lb * count + alpha] + jump * total[alpha];
          }
        }
        f[c].clear();
      }
    }
    for (uint64_t alpha = 0; alpha < count; ++alpha) {
      Rational s = 0;
      for (int a = 0; a < q; ++a) s += f[root][a * count + alpha];
      result[alpha] *= s / q;
    }
  }
  return result;
}

SampledDistribution LocalDistributionSampled(const GmdInstance& forest, const Rational& mu,
                                             const std::vector<int>& vertices, int64_t trials,
                                             uint64_t seed) {
  CheckMu(mu);
  const int n = forest.num_vertices();
  CheckVertexList(vertices, n);
  CheckForest(forest);
  if (trials < 1) throw ValidationError("trials must be at least 1");
  const int q = forest.T() + 1;
  const size_t k = vertices.size();
  const uint64_t count = NumAssignments(q, k);
  const double cut_prob = ToDouble(mu);
  const auto& edges = forest.edges();

  SampledDistribution out;
  out.trials = trials;
  out.counts.assign(count, 0);
#pragma omp parallel
  {
    std::vector<int64_t> local(count, 0);
    std::vector<std::vector<Arc>> kept(n);
    std::vector<int> label(n), stack;
#pragma omp for schedule(static)
    for (int64_t t = 0; t < trials; ++t) {
      CounterRng rng(SubstreamSeed(seed, static_cast<uint64_t>(t)));
      for (auto& a : kept) a.clear();
      for (const GmdEdge& e : edges) {
        if (rng.Uniform01() < cut_prob) continue;
        kept[e.tail].push_back({e.head, e.label});
        kept[e.head].push_back({e.tail, -e.label});
      }
      std::fill(label.begin(), label.end(), -1);
      for (int r = 0; r < n; ++r) {
        if (label[r] >= 0) continue;
        label[r] = static_cast<int>(rng.UniformInt(q));
        stack.assign(1, r);
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (const Arc& a : kept[x]) {
            if (label[a.to] >= 0) continue;
            label[a.to] = Mod(label[x] + a.shift, q);
            stack.push_back(a.to);
          }
        }
      }
      uint64_t alpha = 0;
      for (int v : vertices) alpha = alpha * q + label[v];
      ++local[alpha];
    }
#pragma omp critical
    for (uint64_t a = 0; a < count; ++a) out.counts[a] += local[a];
  }
  return out;
}

double VectorSystem::Dot(int r1, int r2) const {
  double s = 0.0;
  for (int c = 0; c < dim; ++c) {
    s += vectors[static_cast<size_t>(r1) * dim + c] * vectors[static_cast<size_t>(r2) * dim + c];
  }
  return s;
}

VectorSystem EmbedVectors(const PairwiseTable& table, const std::vector<int>& vertices) {
  CheckVertexList(vertices, table.num_vertices());
  if (vertices.empty()) throw ValidationError("cannot embed an empty vertex set");
  const int q = table.domain();
  const int k = static_cast<int>(vertices.size());
  const int N = k * q;
  const double mu = ToDouble(table.mu());

  VectorSystem vs;
  vs.vertices = vertices;
  vs.domain = q;
  vs.dim = N;
  Eigen::MatrixXd gram(N, N);
  for (int p1 = 0; p1 < k; ++p1) {
    for (int i = 0; i < q; ++i) {
      for (int p2 = 0; p2 < k; ++p2) {
        for (int j = 0; j < q; ++j) {
          const int r = p1 * q + i, c = p2 * q + j;
          gram(r, c) = (r == c) ? mu + 1.0 / q
                                : mu / 2 + table.RhoDouble(vertices[p1], i, vertices[p2], j);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition failed");
  Eigen::VectorXd lambda = eig.eigenvalues();
  vs.min_eigenvalue = lambda.minCoeff();
  if (vs.min_eigenvalue < -kPsdTolerance) {
    throw ValidationError("Gram matrix is not PSD: min eigenvalue " +
                          std::to_string(vs.min_eigenvalue) + " < -" +
                          std::to_string(kPsdTolerance) + " (mu too small for this L?)");
  }
  for (int i = 0; i < N; ++i) {
    if (lambda(i) < 0) {
      lambda(i) = 0;
      ++vs.clamped_eigenvalues;
    }
  }
  Eigen::MatrixXd factor = eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
  vs.max_factor_error = (factor * factor.transpose() - gram).cwiseAbs().maxCoeff();
  if (vs.max_factor_error > 1e-9) {
    throw Error("Gram factor error " + std::to_string(vs.max_factor_error) + " exceeds 1e-9");
  }
  vs.gram.resize(static_cast<size_t>(N) * N);
  vs.vectors.resize(static_cast<size_t>(N) * N);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) {
      vs.gram[static_cast<size_t>(r) * N + c] = gram(r, c);
      vs.vectors[static_cast<size_t>(r) * N + c] = factor(r, c);
    }
  }
  return vs;
}

VectorSystem Restrict(const VectorSystem& vs, const std::vector<int>& vertices) {
  if (vertices.empty()) throw ValidationError("cannot restrict to an empty vertex set");
  std::vector<int> rows;
  for (size_t p = 0; p < vertices.size(); ++p) {
    if (p > 0 && vertices[p] <= vertices[p - 1]) {
      throw ValidationError("vertex list must be sorted and distinct");
    }
    auto it = std::lower_bound(vs.vertices.begin(), vs.vertices.end(), vertices[p]);
    if (it == vs.vertices.end() || *it != vertices[p]) {
      throw ValidationError("vertex " + std::to_string(vertices[p]) + " is not embedded");
    }
    const int src = static_cast<int>(it - vs.vertices.begin());
    for (int i = 0; i < vs.domain; ++i) rows.push_back(src * vs.domain + i);
  }
  VectorSystem out;
  out.vertices = vertices;
  out.domain = vs.domain;
  out.dim = vs.dim;
  out.clamped_eigenvalues = vs.clamped_eigenvalues;
  out.min_eigenvalue = vs.min_eigenvalue;
  out.max_factor_error = vs.max_factor_error;
  const size_t N = vs.vertices.size() * vs.domain;
  for (int r : rows) {
    for (int c : rows) out.gram.push_back(vs.gram[r * N + c]);
    out.vectors.insert(out.vectors.end(), vs.vectors.begin() + static_cast<size_t>(r) * vs.dim,
                       vs.vectors.begin() + static_cast<size_t>(r + 1) * vs.dim);
  }
  return out;
}

VectorSystem EdgeVectorSystem(int T, int label, double mu) {
  if (T < 1) throw ValidationError("T must be at least 1");
  if (label < 0 || label > T) throw ValidationError("edge label out of range");
  if (!(mu >= 0 && mu <= 1)) throw ValidationError("mu must lie in [0, 1]");
  const int q = T + 1;
  VectorSystem vs;
  vs.vertices = {0, 1};
  vs.domain = q;
  vs.dim = q + q * q + 2 * q + 1;
  const int a0 = 0, b0 = q, c0 = q + q * q, cp0 = c0 + q, d0 = cp0 + q;
  const double la = std::sqrt((1 - mu) / q), lb = std::sqrt(mu) / q, lc = std::sqrt(mu / 2);
  vs.vectors.assign(static_cast<size_t>(2 * q) * vs.dim, 0.0);
  auto at = [&](int row, int col) -> double& {
    return vs.vectors[static_cast<size_t>(row) * vs.dim + col];
  };
  for (int i = 0; i < q; ++i) {
    const int ur = i;
    at(ur, a0 + i) = la;
    for (int j = 0; j < q; ++j) at(ur, b0 + i * q + j) = lb;
    at(ur, c0 + i) = lc;
    at(ur, d0) = lc;
    const int vl = Mod(i + label, q);
    const int vr = q + vl;
    at(vr, a0 + i) = la;
    for (int j = 0; j < q; ++j) at(vr, b0 + j * q + i) = lb;
    at(vr, cp0 + vl) = lc;
    at(vr, d0) = lc;
  }
  const int N = 2 * q;
  vs.gram.resize(static_cast<size_t>(N) * N);
  Eigen::MatrixXd gram(N, N);
  for (int r = 0; r < N; ++r) {
    for (int c = 0; c < N; ++c) gram(r, c) = vs.gram[static_cast<size_t>(r) * N + c] = vs.Dot(r, c);
  }
  vs.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff();
  return vs;
}

std::vector<uint8_t> SampleRoundedLabels(const VectorSystem& vs, int64_t trials, uint64_t seed) {
  CheckRoundable(vs, trials);
  const size_t k = vs.vertices.size();
  std::vector<uint8_t> labels(static_cast<size_t>(trials) * k);
#pragma omp parallel
  {
    std::vector<double> g(vs.dim);
#pragma omp for schedule(static)
    for (int64_t t = 0; t < trials; ++t) RoundOne(vs, seed, t, g, &labels[t * k]);
  }
  return labels;
}

std::vector<uint8_t> SampleRoundedLabelsSerial(const VectorSystem& vs, int64_t trials,
                                               uint64_t seed) {
  CheckRoundable(vs, trials);
  const size_t k = vs.vertices.size();
  std::vector<uint8_t> labels(static_cast<size_t>(trials) * k);
  std::vector<double> g(vs.dim);
  for (int64_t t = 0; t < trials; ++t) RoundOne(vs, seed, t, g, &labels[t * k]);
  return labels;
}

RoundingEstimate RoundAndEstimate(const VectorSystem& vs, const std::vector<EdgeQuery>& edges,
                                  int64_t trials, uint64_t seed) {
  CheckQueries(vs, edges);
  return Summarize(vs, SampleRoundedLabels(vs, trials, seed), edges, trials);
}

RoundingEstimate RoundAndEstimateSerial(const VectorSystem& vs,
                                        const std::vector<EdgeQuery>& edges, int64_t trials,
                                        uint64_t seed) {
  CheckQueries(vs, edges);
  return Summarize(vs, SampleRoundedLabelsSerial(vs, trials, seed), edges, trials);
}

double NoiseRateForEps(int T, double eps) {
  if (T < 1) throw ValidationError("T must be at least 1");
  if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
  const double q = T + 1;
  const double lg = std::log(q / eps);
  return eps * eps / (256.0 * q * lg * lg);
}

SaGapSolution BuildSaSolution(const GmdInstance& inst, const Rational& mu, int L, int k,
                              int64_t trials, uint64_t seed, const SaGapCaps& caps) {
  const int n = inst.num_vertices();
  const int q = inst.T() + 1;
  if (k < 1) throw ValidationError("k must be at least 1");
  if (n < 1) throw ValidationError("instance has no vertices");
  if (n > caps.max_vertices) {
    throw CapExceeded("SA solution supports n <= " + std::to_string(caps.max_vertices));
  }
  if (k > caps.max_rounds) {
    throw CapExceeded("SA solution supports k <= " + std::to_string(caps.max_rounds));
  }
  k = std::min(k, n);
  std::vector<std::vector<int>> sets;
  uint64_t entries = 0;
  for (int size = 1; size <= k; ++size) {
    std::vector<int> c(size);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
      sets.push_back(c);
      entries += NumAssignments(q, size);
      int i = size - 1;
      while (i >= 0 && c[i] == n - size + i) --i;
      if (i < 0) break;
      ++c[i];
      for (int j = i + 1; j < size; ++j) c[j] = c[j - 1] + 1;
    }
  }
  if (entries > caps.max_table_entries) {
    throw CapExceeded("SA table would have " + std::to_string(entries) + " entries");
  }

  PairwiseTable table(inst, mu, L);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  VectorSystem vs = EmbedVectors(table, all);
  std::vector<uint8_t> labels = SampleRoundedLabels(vs, trials, seed);

  SaGapSolution out;
  out.trials = trials;
  out.clamped_eigenvalues = vs.clamped_eigenvalues;
  out.min_eigenvalue = vs.min_eigenvalue;
  out.solution.rounds = k;
  out.solution.domain = q;
  std::vector<std::vector<Rational>> tables(sets.size());
#pragma omp parallel for schedule(dynamic)
  for (size_t s = 0; s < sets.size(); ++s) {
    std::vector<int64_t> counts(NumAssignments(q, sets[s].size()), 0);
    for (int64_t t = 0; t < trials; ++t) {
      const uint8_t* row = &labels[static_cast<size_t>(t) * n];
      uint64_t alpha = 0;
      for (int v : sets[s]) alpha = alpha * q + row[v];
      ++counts[alpha];
    }
    tables[s].reserve(counts.size());
    for (int64_t c : counts) tables[s].push_back(Rational(c) / trials);
  }
  for (size_t s = 0; s < sets.size(); ++s) out.solution.tables[sets[s]] = std::move(tables[s]);

  std::vector<int64_t> hits(inst.num_edges(), 0);
  std::vector<double> weight;
  for (const GmdEdge& edge : inst.edges()) weight.push_back(ToDouble(edge.weight));
  double sum = 0.0, sum_sq = 0.0;
  for (int64_t t = 0; t < trials; ++t) {
    const uint8_t* row = &labels[static_cast<size_t>(t) * n];
    double y = 0.0;
    for (int e = 0; e < inst.num_edges(); ++e) {
      const GmdEdge& edge = inst.edges()[e];
      if (row[edge.tail] == 0 && row[edge.head] == edge.label) {
        ++hits[e];
        y += weight[e];
      }
    }
    sum += y;
    sum_sq += y * y;
  }
  out.objective = 0;
  for (int e = 0; e < inst.num_edges(); ++e) {
    out.objective += inst.edges()[e].weight * Rational(hits[e]) / trials;
  }
  if (trials > 1) {
    const double mean = sum / trials;
    const double var = std::max(0.0, (sum_sq - trials * mean * mean) / (trials - 1));
    out.objective_stderr = std::sqrt(var / trials);
  }
  return out;
}

}  // namespace gmdlab
