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


#include "gmdlab/approx.h"

#include <cmath>
#include <string>

#include "gmdlab/errors.h"
#include "gmdlab/exact.h"

namespace gmdlab {
namespace {

void Summarize(RandomizedRun& run) {
  const int64_t n = run.trials;
  if (n == 0) return;
  // Ordered double accumulation keeps the summary bit-identical across runs.
  double sum = 0.0;
  for (const auto& v : run.values) sum += ToDouble(v);
  run.mean = sum / static_cast<double>(n);
  if (n < 2) return;
  double ss = 0.0;
  for (const auto& v : run.values) {
    const double d = ToDouble(v) - run.mean;
    ss += d * d;
  }
  run.stddev = std::sqrt(ss / static_cast<double>(n - 1));
}

std::vector<bool> FlipCoins(int n, CounterRng& rng) {
  std::vector<bool> zero(n);
  for (int v = 0; v < n; ++v) zero[v] = rng.FairCoin();
  return zero;
}

// True with probability exactly p up to 53-bit resolution of the uniform.
bool Bernoulli(const Rational& p, uint64_t bits53) {
  // bits53 / 2^53 < p  <=>  bits53 * den < num * 2^53
  BigInt lhs = BigInt(static_cast<unsigned long>(bits53)) * p.get_den();
  BigInt rhs = p.get_num() << 53;
  return lhs < rhs;
}

}  // namespace

double RandomizedRun::StandardError() const {
  return trials > 0 ? stddev / std::sqrt(static_cast<double>(trials)) : 0.0;
}

RandomizedRun RunTrialsSerial(uint64_t seed, int64_t trials, const Trial& trial) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  RandomizedRun run{seed, trials, std::vector<Rational>(trials), 0.0, 0.0};
  for (int64_t i = 0; i < trials; ++i) {
    CounterRng rng(SubstreamSeed(seed, static_cast<uint64_t>(i)));
    run.values[i] = trial(rng);
  }
  Summarize(run);
  return run;
}

RandomizedRun RunTrials(uint64_t seed, int64_t trials, const Trial& trial) {
  if (trials < 1) throw ValidationError("trials must be at least 1");
  RandomizedRun run{seed, trials, std::vector<Rational>(trials), 0.0, 0.0};
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < trials; ++i) {
    CounterRng rng(SubstreamSeed(seed, static_cast<uint64_t>(i)));
    run.values[i] = trial(rng);
  }
  Summarize(run);
  return run;
}

GpRoundResult GpPriceAgainstZeroSet(const GpInstance& inst, const std::vector<bool>& zero_set) {
  const int n = inst.num_vertices();
  if (static_cast<int>(zero_set.size()) != n) {
    throw ValidationError("zero set must have one flag per vertex");
  }
  // Edges from each non-zero vertex to zero neighbors, as (budget, weight).
  std::vector<std::vector<std::pair<Rational, Rational>>> offers(n);
  for (const auto& e : inst.edges()) {
    if (zero_set[e.u] && !zero_set[e.v]) offers[e.v].emplace_back(e.budget, e.weight);
    if (zero_set[e.v] && !zero_set[e.u]) offers[e.u].emplace_back(e.budget, e.weight);
  }
  GpRoundResult result;
  result.pricing.values.assign(n, Rational(0));
  for (int v = 0; v < n; ++v) {
    if (zero_set[v] || offers[v].empty()) continue;
    Rational best_price = 0, best_revenue = 0;
    for (const auto& [price, unused] : offers[v]) {
      Rational revenue = 0;
      for (const auto& [budget, weight] : offers[v]) {
        if (price <= budget) revenue += weight * price;
      }
      if (revenue > best_revenue || (revenue == best_revenue && price < best_price)) {
        best_revenue = revenue;
        best_price = price;
      }
    }
    result.pricing.values[v] = best_price;
  }
  result.value = ValGp(inst, result.pricing);
  return result;
}

GpRoundResult ApproxGpQuarter(const GpInstance& inst, CounterRng& rng) {
  return GpPriceAgainstZeroSet(inst, FlipCoins(inst.num_vertices(), rng));
}

GpRoundResult ApproxGpQuarter(const GpInstance& inst, uint64_t seed) {
  CounterRng rng(seed);
  return ApproxGpQuarter(inst, rng);
}

GmdRoundResult ApproxGmdQuarter(const GmdInstance& inst, CounterRng& rng) {
  GmdRoundResult result;
  result.labeling = GreedyCompletion(inst, FlipCoins(inst.num_vertices(), rng));
  result.value = ValGmd(inst, result.labeling);
  return result;
}

GmdRoundResult ApproxGmdQuarter(const GmdInstance& inst, uint64_t seed) {
  CounterRng rng(seed);
  return ApproxGmdQuarter(inst, rng);
}

void ValidateMarginals(const GmdInstance& inst, const Marginals& marginals) {
  if (static_cast<int>(marginals.size()) != inst.num_vertices()) {
    throw ValidationError("marginals must cover every vertex");
  }
  for (int v = 0; v < inst.num_vertices(); ++v) {
    const auto& x = marginals[v];
    if (static_cast<int>(x.size()) != inst.T() + 1) {
      throw ValidationError("marginal of vertex " + std::to_string(v) + " must have T+1 entries");
    }
    Rational sum = 0;
    for (const auto& p : x) {
      if (p < 0) throw ValidationError("negative marginal at vertex " + std::to_string(v));
      sum += p;
    }
    if (sum != 1) {
      throw ValidationError("marginal of vertex " + std::to_string(v) + " sums to " +
                            ToString(sum));
    }
  }
}

Rational LpRoundEdgeProbability(const Rational& tail_zero, const Rational& head_label) {
  return (1 + tail_zero) / 2 * (head_label / 2);
}

Rational LpRoundExpectation(const GmdInstance& inst, const Marginals& marginals) {
  ValidateMarginals(inst, marginals);
  Rational total = 0;
  for (const auto& e : inst.edges()) {
    total += e.weight * LpRoundEdgeProbability(marginals[e.tail][0], marginals[e.head][e.label]);
  }
  return total;
}

LpRoundResult LpRoundGmd(const GmdInstance& inst, const Marginals& marginals, CounterRng& rng) {
  ValidateMarginals(inst, marginals);
  LpRoundResult result;
  result.labeling.values.assign(inst.num_vertices(), 0);
  for (int v = 0; v < inst.num_vertices(); ++v) {
    const uint64_t u = rng.NextU64() >> 11;
    // Walk the cumulative distribution (1+x0)/2, x1/2, ..., xT/2.
    Rational cumulative = (1 + marginals[v][0]) / 2;
    int label = 0;
    while (!Bernoulli(cumulative, u) && label < inst.T()) {
      ++label;
      cumulative += marginals[v][label] / 2;
    }
    result.labeling.values[v] = label;
  }
  result.value = ValGmd(inst, result.labeling);
  result.expectation = LpRoundExpectation(inst, marginals);
  return result;
}

LpRoundResult LpRoundGmd(const GmdInstance& inst, const Marginals& marginals, uint64_t seed) {
  CounterRng rng(seed);
  return LpRoundGmd(inst, marginals, rng);
}

}  // namespace gmdlab
