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


#include "gmdlab/exact.h"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "gmdlab/errors.h"
#include "scaled_weights.h"

namespace gmdlab {
namespace {

// In-edges grouped by head, shared by the enumeration kernels.
struct InEdge {
  int tail;
  int label;
  int index;  // into inst.edges()
};

std::vector<std::vector<InEdge>> InEdgesByHead(const GmdInstance& inst) {
  std::vector<std::vector<InEdge>> in(inst.num_vertices());
  for (int i = 0; i < inst.num_edges(); ++i) {
    const auto& e = inst.edges()[i];
    in[e.head].push_back({e.tail, e.label, i});
  }
  return in;
}

// Value of the greedy completion of `mask`, with weights of type W.
template <class W>
class ZeroSetEvaluator {
 public:
  ZeroSetEvaluator(const GmdInstance& inst, std::vector<W> weights)
      : T_(inst.T()), in_(InEdgesByHead(inst)), weights_(std::move(weights)), score_(T_ + 1) {}

  W Value(uint64_t mask) {
    W total = 0;
    for (size_t v = 0; v < in_.size(); ++v) {
      if ((mask >> v) & 1) continue;
      if (in_[v].empty()) continue;
      std::fill(score_.begin(), score_.end(), W(0));
      bool any = false;
      for (const auto& e : in_[v]) {
        if ((mask >> e.tail) & 1) {
          score_[e.label] += weights_[e.index];
          any = true;
        }
      }
      if (!any) continue;
      W best = score_[1];
      for (int t = 2; t <= T_; ++t) {
        if (score_[t] > best) best = score_[t];
      }
      total += best;
    }
    return total;
  }

 private:
  int T_;
  std::vector<std::vector<InEdge>> in_;
  std::vector<W> weights_;
  std::vector<W> score_;
};

void CheckZeroSetCap(const GmdInstance& inst, int max_vertices) {
  if (inst.num_vertices() > max_vertices || inst.num_vertices() > 62) {
    throw CapExceeded("zero-set enumeration needs n <= " + std::to_string(max_vertices) +
                      ", got n = " + std::to_string(inst.num_vertices()));
  }
}

std::vector<bool> MaskToSet(uint64_t mask, int n) {
  std::vector<bool> set(n);
  for (int v = 0; v < n; ++v) set[v] = (mask >> v) & 1;
  return set;
}

template <class W>
uint64_t BestMask(const GmdInstance& inst, std::vector<W> weights, bool parallel) {
  const uint64_t count = uint64_t{1} << inst.num_vertices();
  W global_value = -1;
  uint64_t global_mask = 0;
  if (!parallel) {
    ZeroSetEvaluator<W> eval(inst, std::move(weights));
    for (uint64_t mask = 0; mask < count; ++mask) {
      W value = eval.Value(mask);
      if (value > global_value) {
        global_value = value;
        global_mask = mask;
      }
    }
    return global_mask;
  }
#pragma omp parallel
  {
    ZeroSetEvaluator<W> eval(inst, weights);
    W local_value = -1;
    uint64_t local_mask = 0;
#pragma omp for schedule(static)
    for (uint64_t mask = 0; mask < count; ++mask) {
      W value = eval.Value(mask);
      if (value > local_value) {
        local_value = value;
        local_mask = mask;
      }
    }
#pragma omp critical
    {
      if (local_value > global_value ||
          (local_value == global_value && local_mask < global_mask)) {
        global_value = local_value;
        global_mask = local_mask;
      }
    }
  }
  return global_mask;
}

GmdOptResult OptGmdImpl(const GmdInstance& inst, int max_vertices, bool parallel) {
  CheckZeroSetCap(inst, max_vertices);
  const int n = inst.num_vertices();
  uint64_t mask;
  if (auto scaled = internal::ScaleWeights(inst)) {
    mask = BestMask<int64_t>(inst, scaled->weights, parallel);
  } else {
    std::vector<Rational> w;
    for (const auto& e : inst.edges()) w.push_back(e.weight);
    mask = BestMask<Rational>(inst, std::move(w), parallel);
  }
  GmdOptResult result;
  result.witness = GreedyCompletion(inst, MaskToSet(mask, n));
  result.value = ValGmd(inst, result.witness);
  result.explored = uint64_t{1} << n;
  return result;
}

// Max-sum factor over a sorted variable scope; index is mixed radix with the
// first scope variable most significant.
template <class W>
struct Factor {
  std::vector<int> scope;
  std::vector<W> table;
};

template <class W>
GmdOptResult EliminationImpl(const GmdInstance& inst, const std::vector<W>& weights,
                             uint64_t max_table) {
  const int n = inst.num_vertices();
  const int q = inst.T() + 1;
  // One factor per unordered vertex pair carrying all edges between them.
  std::map<std::pair<int, int>, std::vector<int>> pair_edges;
  for (int i = 0; i < inst.num_edges(); ++i) {
    const auto& e = inst.edges()[i];
    pair_edges[{std::min(e.tail, e.head), std::max(e.tail, e.head)}].push_back(i);
  }
  std::vector<Factor<W>> factors;
  for (const auto& [key, idx] : pair_edges) {
    Factor<W> f{{key.first, key.second}, std::vector<W>(q * q, W(0))};
    for (int i : idx) {
      const auto& e = inst.edges()[i];
      // Scope order is (min, max); tail label must be 0.
      const int a = e.tail == key.first ? 0 : e.label;
      const int b = e.tail == key.first ? e.label : 0;
      f.table[a * q + b] += weights[i];
    }
    factors.push_back(std::move(f));
  }
  std::vector<bool> alive(factors.size(), true);
  std::vector<bool> eliminated(n, false);
  struct Step {
    int var;
    std::vector<int> rest;         // scope of the produced factor
    std::vector<uint8_t> argmax;   // best label of var per rest assignment
  };
  std::vector<Step> steps;
  uint64_t explored = 0;

  for (int round = 0; round < n; ++round) {
    // Greedy min-degree, ties by smallest vertex id.
    int var = -1;
    size_t best_degree = std::numeric_limits<size_t>::max();
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::vector<int> nb;
      for (size_t f = 0; f < factors.size(); ++f) {
        if (!alive[f]) continue;
        const auto& s = factors[f].scope;
        if (!std::binary_search(s.begin(), s.end(), v)) continue;
        for (int u : s) {
          if (u != v) nb.push_back(u);
        }
      }
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
      if (nb.size() < best_degree) {
        best_degree = nb.size();
        var = v;
      }
    }
    eliminated[var] = true;
    std::vector<size_t> touching;
    std::vector<int> rest;
    for (size_t f = 0; f < factors.size(); ++f) {
      if (!alive[f]) continue;
      const auto& s = factors[f].scope;
      if (!std::binary_search(s.begin(), s.end(), var)) continue;
      touching.push_back(f);
      for (int u : s) {
        if (u != var) rest.push_back(u);
      }
    }
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    uint64_t size = 1;
    for (size_t i = 0; i < rest.size(); ++i) {
      if (size > max_table / q) {
        throw CapExceeded("elimination table exceeds " + std::to_string(max_table) + " entries");
      }
      size *= q;
    }
    Factor<W> out{rest, std::vector<W>(size, W(0))};
    Step step{var, rest, std::vector<uint8_t>(size, 0)};
    // Positions of each touching factor's scope variables inside rest (-1 = var).
    std::vector<std::vector<int>> pos;
    for (size_t f : touching) {
      std::vector<int> p;
      for (int u : factors[f].scope) {
        p.push_back(u == var ? -1
                             : static_cast<int>(std::lower_bound(rest.begin(), rest.end(), u) -
                                                rest.begin()));
      }
      pos.push_back(std::move(p));
    }
    std::vector<int> assign(rest.size(), 0);
    for (uint64_t idx = 0; idx < size; ++idx) {
      uint64_t r = idx;
      for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
        assign[i] = static_cast<int>(r % q);
        r /= q;
      }
      W best = 0;
      int best_label = 0;
      for (int x = 0; x < q; ++x) {
        W sum = 0;
        for (size_t k = 0; k < touching.size(); ++k) {
          const auto& f = factors[touching[k]];
          uint64_t fi = 0;
          for (int p : pos[k]) fi = fi * q + (p < 0 ? x : assign[p]);
          sum += f.table[fi];
        }
        if (x == 0 || sum > best) {
          best = sum;
          best_label = x;
        }
      }
      out.table[idx] = best;
      step.argmax[idx] = static_cast<uint8_t>(best_label);
      ++explored;
    }
    for (size_t f : touching) alive[f] = false;
    if (!rest.empty()) {
      factors.push_back(std::move(out));
      alive.push_back(true);
    }
    steps.push_back(std::move(step));
  }
  Labeling witness{std::vector<int>(n, 0)};
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    uint64_t idx = 0;
    for (int u : it->rest) idx = idx * q + witness.values[u];
    witness.values[it->var] = it->argmax[idx];
  }
  GmdOptResult result;
  result.value = ValGmd(inst, witness);
  result.witness = std::move(witness);
  result.explored = explored;
  return result;
}

// Per-edge payoff table over (candidate index of u, candidate index of v).
struct GridEdge {
  int lo;  // endpoint enumerated first
  int hi;  // endpoint whose choice completes the edge
  std::vector<Rational> payoff;  // |C_lo| x |C_hi|, row major
};

class GridSearch {
 public:
  GridSearch(const GpInstance& inst, const std::vector<std::vector<Rational>>& cand)
      : n_(inst.num_vertices()), cand_(cand), closing_(n_) {
    for (const auto& e : inst.edges()) {
      GridEdge g;
      g.lo = std::min(e.u, e.v);
      g.hi = std::max(e.u, e.v);
      const auto& cl = cand[g.lo];
      const auto& ch = cand[g.hi];
      g.payoff.resize(cl.size() * ch.size());
      for (size_t i = 0; i < cl.size(); ++i) {
        for (size_t j = 0; j < ch.size(); ++j) {
          Rational s = cl[i] + ch[j];
          g.payoff[i * ch.size() + j] = s <= e.budget ? Rational(e.weight * s) : Rational(0);
        }
      }
      closing_[g.hi].push_back(edges_.size());
      edges_.push_back(std::move(g));
    }
  }

  int num_vertices() const { return n_; }

  // Exhausts all completions of the fixed prefix choice[0..depth).
  void Search(std::vector<int>& choice, int depth, const Rational& partial, Rational& best_value,
              std::vector<int>& best_choice, bool& have_best, uint64_t& explored) const {
    if (depth == n_) {
      ++explored;
      if (!have_best || partial > best_value) {
        best_value = partial;
        best_choice = choice;
        have_best = true;
      }
      return;
    }
    for (size_t c = 0; c < cand_[depth].size(); ++c) {
      choice[depth] = static_cast<int>(c);
      Rational next = partial + Gain(choice, depth);
      Search(choice, depth + 1, next, best_value, best_choice, have_best, explored);
    }
  }

  Rational Gain(const std::vector<int>& choice, int v) const {
    Rational g = 0;
    for (size_t k : closing_[v]) {
      const auto& e = edges_[k];
      g += e.payoff[choice[e.lo] * cand_[e.hi].size() + choice[e.hi]];
    }
    return g;
  }

 private:
  int n_;
  const std::vector<std::vector<Rational>>& cand_;
  std::vector<GridEdge> edges_;
  std::vector<std::vector<size_t>> closing_;
};

void CheckGrid(const GpInstance& inst, const std::vector<std::vector<Rational>>& cand,
               uint64_t max_grid) {
  if (static_cast<int>(cand.size()) != inst.num_vertices()) {
    throw ValidationError("candidate lists must cover all " +
                          std::to_string(inst.num_vertices()) + " vertices");
  }
  uint64_t size = 1;
  for (size_t v = 0; v < cand.size(); ++v) {
    if (cand[v].empty()) {
      throw ValidationError("empty candidate list at vertex " + std::to_string(v));
    }
    for (const auto& p : cand[v]) {
      if (p < 0) throw ValidationError("negative candidate price at vertex " + std::to_string(v));
    }
    if (size > max_grid / cand[v].size()) {
      throw CapExceeded("price grid exceeds " + std::to_string(max_grid) + " points");
    }
    size *= cand[v].size();
  }
}

GpOptResult FinishGp(const GpInstance& inst, const std::vector<std::vector<Rational>>& cand,
                     const std::vector<int>& choice, uint64_t explored) {
  GpOptResult result;
  for (size_t v = 0; v < cand.size(); ++v) result.witness.values.push_back(cand[v][choice[v]]);
  result.value = ValGp(inst, result.witness);
  result.explored = explored;
  return result;
}

}  // namespace

Labeling GreedyCompletion(const GmdInstance& inst, const std::vector<bool>& zero_set) {
  const int n = inst.num_vertices();
  if (static_cast<int>(zero_set.size()) != n) {
    throw ValidationError("zero set must have one flag per vertex");
  }
  std::vector<std::vector<Rational>> score(n, std::vector<Rational>(inst.T() + 1));
  for (const auto& e : inst.edges()) {
    if (zero_set[e.tail] && !zero_set[e.head]) score[e.head][e.label] += e.weight;
  }
  Labeling l{std::vector<int>(n, 0)};
  for (int v = 0; v < n; ++v) {
    if (zero_set[v]) continue;
    int best = 1;
    for (int t = 2; t <= inst.T(); ++t) {
      if (score[v][t] > score[v][best]) best = t;
    }
    l.values[v] = best;
  }
  return l;
}

GmdOptResult OptGmd(const GmdInstance& inst, int max_vertices) {
  return OptGmdImpl(inst, max_vertices, /*parallel=*/true);
}

GmdOptResult OptGmdSerial(const GmdInstance& inst, int max_vertices) {
  return OptGmdImpl(inst, max_vertices, /*parallel=*/false);
}

GmdOptResult OptGmdBruteForce(const GmdInstance& inst, int max_vertices) {
  const int n = inst.num_vertices();
  if (n > max_vertices) {
    throw CapExceeded("brute force needs n <= " + std::to_string(max_vertices));
  }
  const int q = inst.T() + 1;
  Labeling l{std::vector<int>(n, 0)};
  GmdOptResult result;
  result.value = -1;
  while (true) {
    ++result.explored;
    Rational v = ValGmd(inst, l);
    if (v > result.value) {
      result.value = v;
      result.witness = l;
    }
    int i = n - 1;
    while (i >= 0 && l.values[i] == q - 1) l.values[i--] = 0;
    if (i < 0) break;
    ++l.values[i];
  }
  return result;
}

GmdOptResult OptGmdElimination(const GmdInstance& inst, uint64_t max_table_entries) {
  if (inst.T() > 255) throw CapExceeded("elimination supports T <= 255");
  if (auto scaled = internal::ScaleWeights(inst)) {
    return EliminationImpl<int64_t>(inst, scaled->weights, max_table_entries);
  }
  std::vector<Rational> w;
  for (const auto& e : inst.edges()) w.push_back(e.weight);
  return EliminationImpl<Rational>(inst, w, max_table_entries);
}

GpOptResult OptGpGridSerial(const GpInstance& inst,
                            const std::vector<std::vector<Rational>>& candidates,
                            uint64_t max_grid) {
  CheckGrid(inst, candidates, max_grid);
  GridSearch search(inst, candidates);
  std::vector<int> choice(inst.num_vertices(), 0), best_choice = choice;
  Rational best_value;
  bool have_best = false;
  uint64_t explored = 0;
  search.Search(choice, 0, Rational(0), best_value, best_choice, have_best, explored);
  return FinishGp(inst, candidates, best_choice, explored);
}

GpOptResult OptGpGrid(const GpInstance& inst, const std::vector<std::vector<Rational>>& candidates,
                      uint64_t max_grid) {
  CheckGrid(inst, candidates, max_grid);
  const int n = inst.num_vertices();
  // Fix a prefix of vertices so that there are enough independent subtrees.
  int depth = 0;
  uint64_t prefixes = 1;
  const uint64_t target = 64 * static_cast<uint64_t>(std::max(1, omp_get_max_threads()));
  while (depth < n && prefixes < target) prefixes *= candidates[depth++].size();
  if (depth == n || prefixes == 1) return OptGpGridSerial(inst, candidates, max_grid);

  GridSearch search(inst, candidates);
  std::vector<Rational> values(prefixes);
  std::vector<std::vector<int>> choices(prefixes);
  std::vector<uint64_t> counts(prefixes, 0);
#pragma omp parallel for schedule(dynamic)
  for (uint64_t p = 0; p < prefixes; ++p) {
    std::vector<int> choice(n, 0);
    uint64_t r = p;
    for (int v = depth - 1; v >= 0; --v) {
      choice[v] = static_cast<int>(r % candidates[v].size());
      r /= candidates[v].size();
    }
    Rational partial = 0;
    for (int v = 0; v < depth; ++v) partial += search.Gain(choice, v);
    bool have = false;
    search.Search(choice, depth, partial, values[p], choices[p], have, counts[p]);
  }
  uint64_t best = 0;
  for (uint64_t p = 1; p < prefixes; ++p) {
    if (values[p] > values[best]) best = p;
  }
  return FinishGp(inst, candidates, choices[best],
                  std::accumulate(counts.begin(), counts.end(), uint64_t{0}));
}

std::vector<std::vector<Rational>> HalfIntegralGrid(const GpInstance& inst) {
  std::vector<BigInt> top(inst.num_vertices(), 0);
  for (const auto& e : inst.edges()) {
    if (e.budget.get_den() != 1) {
      throw ValidationError("half-integral grid requires integer budgets");
    }
    top[e.u] = std::max(top[e.u], e.budget.get_num());
    top[e.v] = std::max(top[e.v], e.budget.get_num());
  }
  std::vector<std::vector<Rational>> grid(inst.num_vertices());
  for (int v = 0; v < inst.num_vertices(); ++v) {
    if (top[v] > 1 << 20) throw CapExceeded("half-integral grid too large at a vertex");
    const long steps = 2 * top[v].get_si();
    for (long k = 0; k <= steps; ++k) grid[v].push_back(Rational(k) / 2);
  }
  return grid;
}

}  // namespace gmdlab
