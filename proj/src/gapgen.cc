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


#include "gmdlab/gapgen.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "gmdlab/errors.h"
#include "gmdlab/exact.h"
#include "gmdlab/rng.h"

namespace gmdlab {
namespace {

using Edge = std::pair<int, int>;  // undirected, first < second

Edge Undirected(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

std::vector<std::set<int>> Adjacency(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::set<int>> adj(n);
  for (const auto& [a, b] : arcs) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  return adj;
}

int MaxDegree(const std::vector<std::set<int>>& adj) {
  int d = 0;
  for (const auto& s : adj) d = std::max(d, static_cast<int>(s.size()));
  return d;
}

// Lexicographically smallest cycle (as a vertex sequence starting at its
// minimum) with at most `max_len` vertices, searching start vertices >= from.
std::vector<int> SmallestShortCycle(const std::vector<std::set<int>>& adj, int max_len, int& from) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> dist(n), path;
  std::vector<bool> on_path(n, false);
  for (; from < n; ++from) {
    const int s = from;
    if (adj[s].size() < 2) continue;
    // Distances back to s inside the vertices >= s.
    std::fill(dist.begin(), dist.end(), std::numeric_limits<int>::max());
    dist[s] = 0;
    std::deque<int> queue = {s};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      if (dist[x] >= max_len) continue;
      for (int y : adj[x]) {
        if (y > s && dist[y] == std::numeric_limits<int>::max()) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    path = {s};
    on_path[s] = true;
    bool found = false;
    std::function<void(int)> extend = [&](int v) {
      const int k = static_cast<int>(path.size());
      if (k >= 3 && adj[v].count(s)) {
        found = true;
        return;
      }
      if (k == max_len) return;
      for (int w : adj[v]) {
        if (w <= s || on_path[w]) continue;
        // k edges after stepping to w, then at least dist[w] back to s.
        if (dist[w] == std::numeric_limits<int>::max() || k + dist[w] > max_len) continue;
        path.push_back(w);
        on_path[w] = true;
        extend(w);
        if (found) return;
        on_path[w] = false;
        path.pop_back();
      }
    };
    extend(s);
    for (int v : path) on_path[v] = false;
    if (found) return path;
  }
  return {};
}

int CeilDiv(int a, int b) { return (a + b - 1) / b; }

// Edge-partition of an undirected simple graph into biconnected blocks.
std::vector<std::vector<Edge>> Blocks(const std::vector<Edge>& edges) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  std::map<int, int> disc, low;
  std::vector<Edge> stack;
  std::vector<std::vector<Edge>> blocks;
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = ++timer;
    for (int w : adj[v]) {
      if (w == parent) continue;
      if (!disc.count(w)) {
        stack.push_back(Undirected(v, w));
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<Edge> block;
          const Edge stop = Undirected(v, w);
          while (true) {
            Edge e = stack.back();
            stack.pop_back();
            block.push_back(e);
            if (e == stop) break;
          }
          std::sort(block.begin(), block.end());
          blocks.push_back(std::move(block));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(Undirected(v, w));
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (const auto& [v, nb] : adj) {
    if (!disc.count(v)) dfs(v, -1);
  }
  return blocks;
}

}  // namespace

BaseKind ParseBaseKind(const std::string& name) {
  if (name == "window" || name == "window-random") return BaseKind::kWindowRandom;
  if (name == "complete" || name == "complete-dag") return BaseKind::kCompleteDag;
  if (name == "file" || name == "custom-file") return BaseKind::kCustomFile;
  throw ValidationError("unknown base kind '" + name + "'");
}

Digraph GenerateBaseDag(BaseKind kind, int n, const BaseParams& params, uint64_t seed) {
  Digraph g;
  g.num_vertices = n;
  switch (kind) {
    case BaseKind::kCompleteDag:
      if (n < 0) throw ValidationError("negative vertex count");
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < u; ++v) g.arcs.emplace_back(u, v);
      }
      break;
    case BaseKind::kWindowRandom: {
      if (n < 0) throw ValidationError("negative vertex count");
      if (params.window < 1) throw ValidationError("window must be at least 1");
      CounterRng rng(seed);
      for (int u = 0; u < n; ++u) {
        for (int v = std::max(0, u - params.window); v < u; ++v) {
          if (rng.Uniform01() < params.include_prob) g.arcs.emplace_back(u, v);
        }
      }
      break;
    }
    case BaseKind::kCustomFile: {
      GmdInstance inst = ParseGmd(params.text);
      g = SkeletonOf(inst);
      g.arcs.erase(std::unique(g.arcs.begin(), g.arcs.end()), g.arcs.end());
      if (!FindDirectedCycle(g).empty()) throw ValidationError("custom base graph has a cycle");
      break;
    }
  }
  return g;
}

void ValidateConfig(const PipelineConfig& cfg) {
  if (cfg.n < 0) throw ValidationError("n must be nonnegative");
  if (cfg.delta < 1) throw ValidationError("Delta must be at least 1");
  if (cfg.T < 1) throw ValidationError("T must be at least 1");
  if (cfg.l < 9) throw ValidationError("l must be at least 9");
  if (cfg.p_keep && (*cfg.p_keep < 0 || *cfg.p_keep > 1)) {
    throw ValidationError("p_keep must lie in [0, 1]");
  }
  if (cfg.mu <= 0 || cfg.mu > 1) throw ValidationError("mu must lie in (0, 1]");
  if (cfg.k_max < 1) throw ValidationError("k_max must be at least 1");
  if (cfg.eps <= 0) throw ValidationError("eps must be positive");
}

std::optional<int> Girth(const Digraph& graph) {
  const auto adj = Adjacency(graph.num_vertices, graph.arcs);
  const int n = graph.num_vertices;
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n), parent(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent[root] = -1;
    std::deque<int> queue = {root};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push_back(y);
        } else if (parent[x] != y) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

PipelineResult SparsifyPipeline(const Digraph& base, const PipelineConfig& cfg) {
  ValidateConfig(cfg);
  if (base.num_vertices != cfg.n) throw ValidationError("base graph size differs from n");
  if (!FindDirectedCycle(base).empty()) throw ValidationError("base graph has a cycle");
  const int base_degree = MaxDegree(Adjacency(base.num_vertices, base.arcs));
  const double p = cfg.p_keep ? *cfg.p_keep
                              : (base_degree == 0 ? 1.0
                                                  : std::min(1.0, static_cast<double>(cfg.delta) /
                                                                      base_degree));
  CounterRng rng(cfg.seed);
  std::vector<std::pair<int, int>> arcs = base.arcs;
  std::sort(arcs.begin(), arcs.end());
  std::map<Edge, std::pair<std::pair<int, int>, int>> kept;  // undirected -> (arc, label)
  for (const auto& arc : arcs) {
    if (rng.Uniform01() >= p) continue;
    const int label = 1 + static_cast<int>(rng.UniformInt(static_cast<uint64_t>(cfg.T)));
    kept[Undirected(arc.first, arc.second)] = {arc, label};
  }
  StructuralReport partial;
  // One pass: drop every edge at a vertex whose degree exceeds 2 Delta.
  std::vector<int> degree(cfg.n, 0);
  for (const auto& [e, unused] : kept) {
    ++degree[e.first];
    ++degree[e.second];
  }
  for (auto it = kept.begin(); it != kept.end();) {
    if (degree[it->first.first] > 2 * cfg.delta || degree[it->first.second] > 2 * cfg.delta) {
      it = kept.erase(it);
      ++partial.removed_by_degree;
    } else {
      ++it;
    }
  }
  // Remove one edge from each cycle with at most l vertices.
  std::vector<std::set<int>> adj(cfg.n);
  for (const auto& [e, unused] : kept) {
    adj[e.first].insert(e.second);
    adj[e.second].insert(e.first);
  }
  int from = 0;
  while (true) {
    std::vector<int> cycle = SmallestShortCycle(adj, cfg.l, from);
    if (cycle.empty()) break;
    Edge largest = Undirected(cycle.back(), cycle.front());
    for (size_t i = 0; i + 1 < cycle.size(); ++i) {
      largest = std::max(largest, Undirected(cycle[i], cycle[i + 1]));
    }
    kept.erase(largest);
    adj[largest.first].erase(largest.second);
    adj[largest.second].erase(largest.first);
    ++partial.removed_by_girth;
  }
  std::vector<GmdEdge> edges;
  for (const auto& [e, arc_label] : kept) {
    const auto& [arc, label] = arc_label;
    edges.push_back({arc.first, arc.second, label, Rational(1)});
  }
  GmdInstance inst(cfg.T, cfg.n, std::move(edges));
  if (inst.num_edges() > 0) inst = inst.Normalized();
  PipelineResult result{inst, CheckStructural(inst, cfg)};
  result.report.removed_by_degree = partial.removed_by_degree;
  result.report.removed_by_girth = partial.removed_by_girth;
  return result;
}

StructuralReport CheckStructural(const GmdInstance& inst, const PipelineConfig& cfg) {
  ValidateConfig(cfg);
  StructuralReport r;
  const Digraph skel = SkeletonOf(inst);
  r.is_acyclic = FindDirectedCycle(skel).empty();
  r.max_degree = MaxDegree(Adjacency(inst.num_vertices(), skel.arcs));
  r.degree_ok = r.max_degree <= 2 * cfg.delta;
  r.girth = Girth(skel);
  r.girth_ok = !r.girth || *r.girth > cfg.l;
  r.edge_count = inst.num_edges();
  r.edge_floor = cfg.edge_floor ? *cfg.edge_floor : CeilDiv(cfg.delta * inst.num_vertices(), 4);
  r.edge_floor_ok = r.edge_count >= r.edge_floor;
  r.empty = r.edge_count == 0;
  const double mu = ToDouble(cfg.mu);
  r.noise_lhs = std::pow(1.0 - mu, cfg.l / 10.0);
  r.noise_rhs = mu / (5.0 * cfg.k_max);
  r.noise_ok = r.noise_lhs <= r.noise_rhs;
  r.dicut_target = (1 + cfg.eps) / (4 * inst.T());
  r.opt_method = "none";
  if (!r.empty) {
    GmdInstance normalized = inst.weights_normalized() ? inst : inst.Normalized();
    try {
      if (inst.num_vertices() <= cfg.exact_vertex_cap) {
        r.measured_opt = OptGmd(normalized, cfg.exact_vertex_cap).value;
        r.opt_method = "zero-sets";
      } else {
        r.measured_opt = OptGmdElimination(normalized, cfg.elimination_table_cap).value;
        r.opt_method = "elimination";
      }
    } catch (const CapExceeded&) {
      r.measured_opt.reset();
    }
    if (r.measured_opt) r.dicut_bound_ok = *r.measured_opt <= r.dicut_target;
  }
  return r;
}

DecomposabilityResult CheckPathDecomposable(const Digraph& graph, int l, int max_steps) {
  DecomposabilityResult result;
  std::set<Edge> unique;
  for (const auto& [a, b] : graph.arcs) {
    if (a != b) unique.insert(Undirected(a, b));
  }
  std::deque<std::vector<Edge>> work = {std::vector<Edge>(unique.begin(), unique.end())};
  int steps = 0;
  while (!work.empty()) {
    std::vector<Edge> edges = std::move(work.front());
    work.pop_front();
    for (auto& block : Blocks(edges)) {
      if (block.size() < 3) continue;  // a bridge, not 2-connected
      if (++steps > max_steps) {
        result.outcome = Decomposability::kInconclusive;
        return result;
      }
      ++result.blocks_examined;
      std::map<int, std::vector<int>> adj;
      for (const auto& [a, b] : block) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      // Components of the degree-2 vertices are paths or the whole cycle.
      std::set<int> seen;
      std::vector<int> best_run;
      int best_len = -1;
      for (const auto& [v, nb] : adj) {
        if (nb.size() != 2 || seen.count(v)) continue;
        std::vector<int> run;
        std::deque<int> queue = {v};
        seen.insert(v);
        while (!queue.empty()) {
          const int x = queue.front();
          queue.pop_front();
          run.push_back(x);
          for (int y : adj[x]) {
            if (adj[y].size() == 2 && !seen.count(y)) {
              seen.insert(y);
              queue.push_back(y);
            }
          }
        }
        const int len = static_cast<int>(run.size()) - 1;  // edges on the longest path
        if (len > best_len) {
          best_len = len;
          best_run = run;
        }
      }
      if (best_len < l) {
        result.outcome = Decomposability::kRefuted;
        for (const auto& [v, nb] : adj) result.witness.push_back(v);
        return result;
      }
      std::set<int> removed(best_run.begin(), best_run.end());
      std::vector<Edge> rest;
      for (const auto& e : block) {
        if (!removed.count(e.first) && !removed.count(e.second)) rest.push_back(e);
      }
      if (!rest.empty()) work.push_back(std::move(rest));
    }
  }
  result.outcome = Decomposability::kVerified;
  return result;
}

const char* ToString(Decomposability d) {
  switch (d) {
    case Decomposability::kVerified:
      return "verified";
    case Decomposability::kRefuted:
      return "refuted";
    case Decomposability::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

}  // namespace gmdlab
