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

#ifndef GMDLAB_APPROX_H_
#define GMDLAB_APPROX_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "gmdlab/core.h"
#include "gmdlab/rng.h"

namespace gmdlab {

struct RandomizedRun {
  uint64_t seed = 0;
  int64_t trials = 0;
  std::vector<Rational> values;  // trial i used substream SubstreamSeed(seed, i)
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation

  double StandardError() const;
};

// One trial: gets a generator seeded from the trial substream, returns a value.
using Trial = std::function<Rational(CounterRng&)>;

// Runs `trials` independent trials in parallel. Output does not depend on the
// number of threads.
RandomizedRun RunTrials(uint64_t seed, int64_t trials, const Trial& trial);
RandomizedRun RunTrialsSerial(uint64_t seed, int64_t trials, const Trial& trial);

struct GpRoundResult {
  Pricing pricing;
  Rational value;
};

struct GmdRoundResult {
  Labeling labeling;
  Rational value;
};

// Prices zero-set vertices at 0 and every other vertex at the budget among
// edges to zero neighbors that maximizes its revenue from those edges (ties
// go to the smaller price; no zero neighbor means price 0).
GpRoundResult GpPriceAgainstZeroSet(const GpInstance& inst, const std::vector<bool>& zero_set);

// One fair coin per vertex, in vertex order, decides membership in the zero set.
GpRoundResult ApproxGpQuarter(const GpInstance& inst, CounterRng& rng);
GpRoundResult ApproxGpQuarter(const GpInstance& inst, uint64_t seed);
GmdRoundResult ApproxGmdQuarter(const GmdInstance& inst, CounterRng& rng);
GmdRoundResult ApproxGmdQuarter(const GmdInstance& inst, uint64_t seed);

// marginals[v][i] is the LP's probability that v gets label i, i in 0..T.
using Marginals = std::vector<std::vector<Rational>>;

void ValidateMarginals(const GmdInstance& inst, const Marginals& marginals);

struct LpRoundResult {
  Labeling labeling;
  Rational value;
  Rational expectation;
};

// Label 0 with probability (1 + x_v(0))/2 and label i >= 1 with probability
// x_v(i)/2, independently per vertex. Sampling compares 53-bit uniforms
// against the exact probabilities.
LpRoundResult LpRoundGmd(const GmdInstance& inst, const Marginals& marginals, CounterRng& rng);
LpRoundResult LpRoundGmd(const GmdInstance& inst, const Marginals& marginals, uint64_t seed);

// Sum over edges of w * (1 + x_u(0))/2 * x_v(label)/2.
Rational LpRoundExpectation(const GmdInstance& inst, const Marginals& marginals);
// Expected contribution of one edge before weighting.
Rational LpRoundEdgeProbability(const Rational& tail_zero, const Rational& head_label);

}  // namespace gmdlab

#endif  // GMDLAB_APPROX_H_
