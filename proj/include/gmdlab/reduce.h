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

#ifndef GMDLAB_REDUCE_H_
#define GMDLAB_REDUCE_H_

#include <string>
#include <vector>

#include "gmdlab/core.h"
#include "gmdlab/errors.h"

namespace gmdlab {

class CycleError : public ValidationError {
 public:
  explicit CycleError(std::vector<int> cycle);
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

// s(v) in 1..n with s(u) > s(v) for every edge u -> v. Built by repeatedly
// numbering the smallest-id vertex with no edge into the unnumbered part.
std::vector<int> TopoNumber(const GmdInstance& inst);

struct ReducedEdge {
  int tail;
  int head;
  int label;
  int exponent;  // budget is M^exponent
  Rational gmd_weight;
};

struct ReductionArtifact {
  GmdInstance source;
  BigInt M;
  std::vector<int> s;
  std::vector<ReducedEdge> edges;  // parallel to source.edges()
  GpInstance gp;                   // u = tail, v = head

  // Exponent of the canonical price of v under label t >= 1.
  int PriceExponent(int v, int t) const { return source.T() * s[v] + t - 1; }
};

// Budgets M^{T s(v) + l - 1}, weights w / budget. Requires an acyclic source
// with weights summing to 1 and M >= 2.
ReductionArtifact ReduceGmdToGp(const GmdInstance& inst, const BigInt& M);

// max(2, ceil(ndeg)).
BigInt DefaultM(const GmdInstance& inst);

Pricing CanonicalPricing(const ReductionArtifact& art, const Labeling& labeling);

struct DecodeResult {
  Labeling labeling;
  // Vertices where more than one label bracketed the price. Empty whenever
  // M >= 2, since the brackets of distinct labels are disjoint.
  std::vector<int> ambiguous;
};

// l(v) = t when M^{e-1} < p(v) <= M^e for e = T s(v) + t - 1 and v has an
// in-edge with label t; otherwise 0.
DecodeResult DecodePricing(const ReductionArtifact& art, const Pricing& pricing);

// Revenue the pricing collects from heads (principal) and tails of directed
// edges; the two add up to ValGp.
Rational PrincipalPart(const ReductionArtifact& art, const Pricing& pricing);
Rational NonPrincipalPart(const ReductionArtifact& art, const Pricing& pricing);
// 2 * sum_u max out-weight: upper bound on the non-principal part.
Rational NonPrincipalBound(const ReductionArtifact& art);

// Per vertex {0} plus the T canonical prices.
std::vector<std::vector<Rational>> CanonicalGrid(const ReductionArtifact& art);

// GP file with an `M <value>` line and `M^k` budget tokens, or plain
// integers when `expand` is set.
std::string SerializeReduced(const ReductionArtifact& art, bool expand);

}  // namespace gmdlab

#endif  // GMDLAB_REDUCE_H_
