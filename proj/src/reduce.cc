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


#include "gmdlab/reduce.h"

#include <set>
#include <sstream>

namespace gmdlab {
namespace {

std::string CycleMessage(const std::vector<int>& cycle) {
  std::string msg = "instance has a directed cycle:";
  for (int v : cycle) msg += " " + std::to_string(v);
  if (!cycle.empty()) msg += " " + std::to_string(cycle.front());
  return msg;
}

}  // namespace

CycleError::CycleError(std::vector<int> cycle)
    : ValidationError(CycleMessage(cycle)), cycle_(std::move(cycle)) {}

std::vector<int> TopoNumber(const GmdInstance& inst) {
  const int n = inst.num_vertices();
  std::vector<int> pending_out(n, 0);
  std::vector<std::vector<int>> in(n);
  for (const auto& e : inst.edges()) {
    ++pending_out[e.tail];
    in[e.head].push_back(e.tail);
  }
  std::vector<int> s(n, 0);
  // Candidate sinks kept ordered so the smallest id is numbered first.
  std::set<int> ready;
  for (int v = 0; v < n; ++v) {
    if (pending_out[v] == 0) ready.insert(v);
  }
  int next = 1;
  while (!ready.empty()) {
    const int v = *ready.begin();
    ready.erase(ready.begin());
    s[v] = next++;
    for (int u : in[v]) {
      if (--pending_out[u] == 0) ready.insert(u);
    }
  }
  if (next != n + 1) throw CycleError(FindDirectedCycle(SkeletonOf(inst)));
  return s;
}

ReductionArtifact ReduceGmdToGp(const GmdInstance& inst, const BigInt& M) {
  if (M < 2) throw ValidationError("reduction needs M >= 2, got " + M.get_str());
  if (!inst.weights_normalized()) throw ValidationError("reduction needs weights summing to 1");
  ReductionArtifact art;
  art.source = inst;
  art.M = M;
  art.s = TopoNumber(inst);
  std::vector<GpEdge> gp_edges;
  for (const auto& e : inst.edges()) {
    const int exponent = art.PriceExponent(e.head, e.label);
    art.edges.push_back({e.tail, e.head, e.label, exponent, e.weight});
    const Rational budget(Pow(M, static_cast<uint64_t>(exponent)));
    gp_edges.push_back({e.tail, e.head, budget, e.weight / budget});
  }
  art.gp = GpInstance(inst.num_vertices(), std::move(gp_edges));
  return art;
}

BigInt DefaultM(const GmdInstance& inst) {
  const Rational nd = Ndeg(inst);
  BigInt c = nd.get_num() / nd.get_den();
  if (c * nd.get_den() < nd.get_num()) ++c;
  return c < 2 ? BigInt(2) : c;
}

Pricing CanonicalPricing(const ReductionArtifact& art, const Labeling& labeling) {
  ValidateLabeling(art.source, labeling);
  Pricing p;
  for (int v = 0; v < labeling.size(); ++v) {
    const int l = labeling[v];
    p.values.push_back(l == 0 ? Rational(0)
                              : Rational(Pow(art.M, static_cast<uint64_t>(art.PriceExponent(v, l)))));
  }
  return p;
}

DecodeResult DecodePricing(const ReductionArtifact& art, const Pricing& pricing) {
  const int n = art.source.num_vertices();
  ValidatePricing(n, pricing);
  DecodeResult out{Labeling{std::vector<int>(n, 0)}, {}};
  std::vector<std::vector<bool>> has_label(n, std::vector<bool>(art.source.T() + 1, false));
  for (const auto& e : art.edges) has_label[e.head][e.label] = true;
  for (int v = 0; v < n; ++v) {
    const Rational& p = pricing[v];
    if (p == 0) continue;
    int found = 0;
    for (int t = 1; t <= art.source.T(); ++t) {
      if (!has_label[v][t]) continue;
      const int e = art.PriceExponent(v, t);
      const Rational hi(Pow(art.M, static_cast<uint64_t>(e)));
      const Rational lo = hi / art.M;
      if (lo < p && p <= hi) {
        if (found != 0) {
          out.ambiguous.push_back(v);
          continue;
        }
        found = t;
      }
    }
    out.labeling.values[v] = found;
  }
  return out;
}

Rational PrincipalPart(const ReductionArtifact& art, const Pricing& pricing) {
  ValidatePricing(art.source.num_vertices(), pricing);
  Rational total = 0;
  for (const auto& e : art.edges) {
    const Rational budget(Pow(art.M, static_cast<uint64_t>(e.exponent)));
    if (pricing[e.tail] + pricing[e.head] <= budget) {
      total += e.gmd_weight / budget * pricing[e.head];
    }
  }
  return total;
}

Rational NonPrincipalPart(const ReductionArtifact& art, const Pricing& pricing) {
  ValidatePricing(art.source.num_vertices(), pricing);
  Rational total = 0;
  for (const auto& e : art.edges) {
    const Rational budget(Pow(art.M, static_cast<uint64_t>(e.exponent)));
    if (pricing[e.tail] + pricing[e.head] <= budget) {
      total += e.gmd_weight / budget * pricing[e.tail];
    }
  }
  return total;
}

Rational NonPrincipalBound(const ReductionArtifact& art) {
  std::vector<Rational> max_out(art.source.num_vertices());
  for (const auto& e : art.edges) max_out[e.tail] = std::max(max_out[e.tail], e.gmd_weight);
  Rational sum = 0;
  for (const auto& w : max_out) sum += w;
  return 2 * sum;
}

std::vector<std::vector<Rational>> CanonicalGrid(const ReductionArtifact& art) {
  std::vector<std::vector<Rational>> grid(art.source.num_vertices());
  for (int v = 0; v < art.source.num_vertices(); ++v) {
    grid[v].push_back(0);
    for (int t = 1; t <= art.source.T(); ++t) {
      grid[v].push_back(Rational(Pow(art.M, static_cast<uint64_t>(art.PriceExponent(v, t)))));
    }
  }
  return grid;
}

std::string SerializeReduced(const ReductionArtifact& art, bool expand) {
  std::ostringstream out;
  out << "gp\n";
  if (!expand) out << "M " << art.M.get_str() << "\n";
  out << "v " << art.source.num_vertices() << "\n";
  for (const auto& e : art.edges) {
    const BigInt budget = Pow(art.M, static_cast<uint64_t>(e.exponent));
    out << "e " << e.tail << " " << e.head << " ";
    if (expand) {
      out << budget.get_str();
    } else {
      out << "M^" << e.exponent;
    }
    out << " " << ToString(e.gmd_weight / Rational(budget)) << "\n";
  }
  return out.str();
}

}  // namespace gmdlab
