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


#include "gmdlab/salp.h"

#include <algorithm>
#include <functional>

#include "gmdlab/errors.h"

namespace gmdlab {
namespace {

void CheckCaps(int n, int rounds, int q, const SaCaps& caps) {
  if (rounds < 2) throw ValidationError("Sherali-Adams needs at least 2 rounds");
  if (n > caps.max_vertices) {
    throw CapExceeded("SA LP supports n <= " + std::to_string(caps.max_vertices));
  }
  if (rounds > caps.max_rounds) {
    throw CapExceeded("SA LP supports r <= " + std::to_string(caps.max_rounds));
  }
  if (q > caps.max_domain) {
    throw CapExceeded("SA LP domain size " + std::to_string(q) + " exceeds " +
                      std::to_string(caps.max_domain));
  }
}

// All k-subsets of {0..n-1} in lexicographic order.
void Combinations(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> c(k);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == k) {
      out.push_back(c);
      return;
    }
    for (int v = start; v <= n - (k - pos); ++v) {
      c[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
}

std::vector<int> Pick(const std::vector<int>& items, uint32_t mask) {
  std::vector<int> out;
  for (size_t i = 0; i < items.size(); ++i) {
    if ((mask >> i) & 1) out.push_back(items[i]);
  }
  return out;
}

}  // namespace

uint64_t NumAssignments(int q, size_t set_size) {
  uint64_t c = 1;
  for (size_t i = 0; i < set_size; ++i) c *= static_cast<uint64_t>(q);
  return c;
}

std::vector<int> DecodeAssignment(uint64_t alpha, int q, size_t set_size) {
  std::vector<int> labels(set_size);
  for (size_t i = set_size; i-- > 0;) {
    labels[i] = static_cast<int>(alpha % q);
    alpha /= q;
  }
  return labels;
}

uint64_t EncodeAssignment(const std::vector<int>& labels, int q) {
  uint64_t alpha = 0;
  for (int l : labels) alpha = alpha * q + l;
  return alpha;
}

void SaLp::Build(int n, int rounds, int q) {
  n_ = n;
  rounds_ = rounds;
  q_ = q;
  for (int k = 1; k <= std::min(rounds, n); ++k) Combinations(n, k, sets_);
  for (size_t s = 0; s < sets_.size(); ++s) {
    set_index_[sets_[s]] = s;
    offset_.push_back(num_variables_);
    num_variables_ += NumAssignments(q, sets_[s].size());
  }
  problem_.num_variables = num_variables_;
  // Normalization: sum_alpha x_S(alpha) = 1.
  for (size_t s = 0; s < sets_.size(); ++s) {
    SparseRow row;
    for (uint64_t a = 0; a < NumAssignments(q, sets_[s].size()); ++a) {
      row.emplace_back(offset_[s] + a, Rational(1));
    }
    problem_.rows.push_back(std::move(row));
    problem_.rhs.push_back(1);
  }
  // Marginalization onto every nonempty proper subset.
  for (size_t s = 0; s < sets_.size(); ++s) {
    const auto& big = sets_[s];
    const size_t k = big.size();
    if (k < 2) continue;
    for (uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
      const std::vector<int> small = Pick(big, mask);
      const size_t small_index = SetIndex(small);
      std::vector<SparseRow> rows(NumAssignments(q, small.size()));
      for (uint64_t b = 0; b < rows.size(); ++b) {
        rows[b].emplace_back(offset_[small_index] + b, Rational(-1));
      }
      for (uint64_t a = 0; a < NumAssignments(q, k); ++a) {
        const auto labels = DecodeAssignment(a, q, k);
        std::vector<int> restricted;
        for (size_t i = 0; i < k; ++i) {
          if ((mask >> i) & 1) restricted.push_back(labels[i]);
        }
        rows[EncodeAssignment(restricted, q)].emplace_back(offset_[s] + a, Rational(1));
      }
      for (auto& row : rows) {
        problem_.rows.push_back(std::move(row));
        problem_.rhs.push_back(0);
      }
    }
  }
}

void SaLp::AddObjective(const std::vector<int>& set, uint64_t alpha, const Rational& coeff) {
  const size_t index = Index(set, alpha);
  for (auto& [j, c] : problem_.objective) {
    if (j == index) {
      c += coeff;
      return;
    }
  }
  problem_.objective.emplace_back(index, coeff);
}

SaLp::SaLp(const GmdInstance& inst, int rounds, const SaCaps& caps) : caps_(caps) {
  CheckCaps(inst.num_vertices(), rounds, inst.T() + 1, caps);
  Build(inst.num_vertices(), rounds, inst.T() + 1);
  for (const auto& e : inst.edges()) {
    const std::vector<int> set = {std::min(e.tail, e.head), std::max(e.tail, e.head)};
    const std::vector<int> labels =
        e.tail < e.head ? std::vector<int>{0, e.label} : std::vector<int>{e.label, 0};
    AddObjective(set, EncodeAssignment(labels, q_), e.weight);
  }
}

SaLp::SaLp(const GpInstance& inst, int rounds, std::vector<Rational> price_grid,
           const SaCaps& caps)
    : caps_(caps), grid_(std::move(price_grid)) {
  if (grid_.empty()) throw ValidationError("GP Sherali-Adams LP needs a price grid");
  for (const auto& p : grid_) {
    if (p < 0) throw ValidationError("negative grid price");
  }
  CheckCaps(inst.num_vertices(), rounds, static_cast<int>(grid_.size()), caps);
  Build(inst.num_vertices(), rounds, static_cast<int>(grid_.size()));
  for (const auto& e : inst.edges()) {
    const int a = std::min(e.u, e.v), b = std::max(e.u, e.v);
    for (int i = 0; i < q_; ++i) {
      for (int j = 0; j < q_; ++j) {
        const Rational sum = grid_[i] + grid_[j];
        if (sum == 0 || sum > e.budget || e.weight == 0) continue;
        AddObjective({a, b}, EncodeAssignment({i, j}, q_), e.weight * sum);
      }
    }
  }
}

size_t SaLp::SetIndex(const std::vector<int>& set) const {
  auto it = set_index_.find(set);
  if (it == set_index_.end()) throw ValidationError("vertex set not in the SA LP");
  return it->second;
}

size_t SaLp::Index(const std::vector<int>& set, uint64_t alpha) const {
  return offset_[SetIndex(set)] + alpha;
}

const Rational& SaSolution::Value(const std::vector<int>& set, uint64_t alpha) const {
  auto it = tables.find(set);
  if (it == tables.end()) throw ValidationError("vertex set not in the SA solution");
  return it->second.at(alpha);
}

SaLpResult SolveSaLp(const SaLp& lp) {
  LpResult lr = SolveLpExact(lp.problem(), lp.caps().max_tableau_cells);
  if (lr.status != LpStatus::kOptimal) {
    throw Error("SA LP solve did not reach an optimum");
  }
  SaLpResult out;
  out.value = lr.value;
  out.pivots = lr.pivots;
  out.solution.rounds = lp.rounds();
  out.solution.domain = lp.domain();
  for (const auto& set : lp.sets()) {
    const uint64_t count = NumAssignments(lp.domain(), set.size());
    std::vector<Rational> table(count);
    for (uint64_t a = 0; a < count; ++a) table[a] = lr.x[lp.Index(set, a)];
    out.solution.tables.emplace(set, std::move(table));
  }
  return out;
}

bool SatisfiesConstraints(const SaLp& lp, const SaSolution& sol) {
  std::vector<Rational> x(lp.num_variables());
  for (const auto& set : lp.sets()) {
    auto it = sol.tables.find(set);
    if (it == sol.tables.end()) return false;
    for (uint64_t a = 0; a < it->second.size(); ++a) x[lp.Index(set, a)] = it->second[a];
  }
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  const auto& p = lp.problem();
  for (size_t i = 0; i < p.rows.size(); ++i) {
    Rational lhs = 0;
    for (const auto& [j, c] : p.rows[i]) lhs += c * x[j];
    if (lhs != p.rhs[i]) return false;
  }
  return true;
}

SaConsistencyReport CheckSaConsistency(const SaSolution& sol) {
  SaConsistencyReport report;
  auto label = [](const std::vector<int>& set) {
    std::string s = "{";
    for (size_t i = 0; i < set.size(); ++i) s += (i ? "," : "") + std::to_string(set[i]);
    return s + "}";
  };
  const int q = sol.domain;
  for (const auto& [set, table] : sol.tables) {
    if (table.size() != NumAssignments(q, set.size())) {
      report.violations.push_back("table size mismatch at " + label(set));
      continue;
    }
    Rational total = 0;
    for (uint64_t a = 0; a < table.size(); ++a) {
      ++report.identities_checked;
      if (table[a] < 0) {
        report.violations.push_back("negative x" + label(set) + "[" + std::to_string(a) +
                                    "] = " + ToString(table[a]));
      }
      total += table[a];
    }
    ++report.identities_checked;
    if (total != 1) {
      report.violations.push_back("normalization " + label(set) + ": " + ToString(total) +
                                  " != 1");
    }
    const size_t k = set.size();
    for (uint32_t mask = 1; k >= 2 && mask + 1 < (1u << k); ++mask) {
      const std::vector<int> small = Pick(set, mask);
      auto it = sol.tables.find(small);
      if (it == sol.tables.end()) continue;
      std::vector<Rational> sums(it->second.size());
      for (uint64_t a = 0; a < table.size(); ++a) {
        const auto labels = DecodeAssignment(a, q, k);
        std::vector<int> restricted;
        for (size_t i = 0; i < k; ++i) {
          if ((mask >> i) & 1) restricted.push_back(labels[i]);
        }
        sums[EncodeAssignment(restricted, q)] += table[a];
      }
      for (uint64_t b = 0; b < sums.size(); ++b) {
        ++report.identities_checked;
        if (sums[b] != it->second[b]) {
          report.violations.push_back("marginal of " + label(set) + " onto " + label(small) +
                                      " at " + std::to_string(b) + ": " + ToString(sums[b]) +
                                      " != " + ToString(it->second[b]));
        }
      }
    }
  }
  report.consistent = report.violations.empty();
  return report;
}

Marginals SingletonMarginals(const SaSolution& sol, int num_vertices) {
  Marginals m(num_vertices);
  for (int v = 0; v < num_vertices; ++v) {
    auto it = sol.tables.find({v});
    if (it == sol.tables.end()) throw ValidationError("solution lacks singleton tables");
    m[v] = it->second;
  }
  return m;
}

std::vector<Rational> HalfIntegralPriceGrid(const GpInstance& inst) {
  BigInt top = 0;
  for (const auto& e : inst.edges()) {
    if (e.budget.get_den() != 1) {
      throw ValidationError("half-integral grid requires integer budgets");
    }
    top = std::max(top, e.budget.get_num());
  }
  if (top > 64) throw CapExceeded("half-integral grid limited to budgets <= 64");
  std::vector<Rational> grid;
  for (long k = 0; k <= 2 * top.get_si(); ++k) grid.push_back(Rational(k) / 2);
  return grid;
}

std::vector<Rational> GeometricPriceGrid(const GpInstance& inst, const Rational& eps) {
  if (eps <= 0) throw ValidationError("geometric grid needs eps > 0");
  if (inst.edges().empty()) return {Rational(0)};
  Rational lo = inst.edges()[0].budget, hi = lo;
  for (const auto& e : inst.edges()) {
    lo = std::min(lo, e.budget);
    hi = std::max(hi, e.budget);
  }
  lo /= 2;
  const Rational base = 1 + eps;
  // Smallest power of base that is >= lo.
  Rational p = 1;
  while (p > lo) p /= base;
  while (p < lo) p *= base;
  std::vector<Rational> grid = {Rational(0)};
  for (; p <= hi; p *= base) {
    grid.push_back(p);
    if (grid.size() > 4096) throw CapExceeded("geometric grid exceeds 4096 prices");
  }
  return grid;
}

}  // namespace gmdlab
