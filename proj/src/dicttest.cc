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


#include "gmdlab/dicttest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "gmdlab/errors.h"
#include "gmdlab/rng.h"

namespace gmdlab {
namespace {

uint64_t CubeOf(int q, int R, uint64_t cap) {
  uint64_t c = 1;
  for (int i = 0; i < R; ++i) {
    if (c > cap / static_cast<uint64_t>(q)) {
      throw CapExceeded("cube (T+1)^R exceeds " + std::to_string(cap));
    }
    c *= static_cast<uint64_t>(q);
  }
  return c;
}

// Digit i (0 = most significant) of cube index x.
int Coord(uint64_t x, int i, int q, int R) {
  for (int k = R - 1; k > i; --k) x /= q;
  return static_cast<int>(x % q);
}

void CheckInner(const Digraph& inner) {
  if (inner.num_vertices < 1) throw ValidationError("inner graph has no vertices");
  if (inner.arcs.empty()) throw ValidationError("inner graph has no arcs");
  for (auto [u, v] : inner.arcs) {
    if (u < 0 || v < 0 || u >= inner.num_vertices || v >= inner.num_vertices) {
      throw ValidationError("inner arc endpoint out of range");
    }
    if (u == v) throw ValidationError("inner graph has a self-loop at " + std::to_string(u));
  }
  if (!FindDirectedCycle(inner).empty()) throw ValidationError("inner graph has a directed cycle");
}

struct SupportPair {
  int x, y;
  Rational p;
};

std::vector<SupportPair> Support(const CorrelatedSpace& space, int t) {
  std::vector<SupportPair> out;
  const int q = space.domain();
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) {
      Rational p = space.Joint(t, x, y);
      if (p > 0) out.push_back({x, y, p});
    }
  }
  return out;
}

// Calls visit(x_index, y_index, probability) for every support combination of
// (P^t)^{(x)R}.
template <typename Visit>
void ForEachProduct(const std::vector<SupportPair>& support, int q, int R, Visit&& visit) {
  std::vector<size_t> idx(R, 0);
  while (true) {
    uint64_t x = 0, y = 0;
    Rational p = 1;
    for (int i = 0; i < R; ++i) {
      const SupportPair& s = support[idx[i]];
      x = x * q + s.x;
      y = y * q + s.y;
      p *= s.p;
    }
    visit(x, y, p);
    int i = R - 1;
    while (i >= 0 && ++idx[i] == support.size()) idx[i--] = 0;
    if (i < 0) return;
  }
}

double SecondSingularValue(const CorrelatedSpace& space, int t) {
  const int q = space.domain();
  std::vector<int> atoms;
  std::vector<double> p(q);
  for (int a = 0; a < q; ++a) {
    p[a] = ToDouble(space.P[a]);
    if (space.P[a] > 0) atoms.push_back(a);
  }
  const int m = static_cast<int>(atoms.size());
  if (m < 2) return 0.0;
  Eigen::MatrixXd M(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      M(i, j) = ToDouble(space.Joint(t, atoms[i], atoms[j])) / std::sqrt(p[atoms[i]] * p[atoms[j]]);
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues()(1);
}

}  // namespace

CorrelatedSpace BuildCorrelatedSpace(int T, std::optional<Rational> delta) {
  if (T < 1) throw ValidationError("T must be at least 1");
  CorrelatedSpace s;
  s.T = T;
  if (delta) {
    s.delta = *delta;
    s.delta.canonicalize();
  } else {
    s.delta = FromDouble(std::pow(static_cast<double>(T), -0.25));
    s.delta_approximate = Pow(s.delta, 4) * T != 1;
  }
  if (s.delta <= 0 || s.delta > 1) {
    throw ValidationError("delta must lie in (0, 1], got " + ToString(s.delta));
  }
  const Rational p = (1 - s.delta) / T;
  if (s.delta < p) {
    throw ValidationError("P'(0) < 0 for T = " + std::to_string(T) + ", delta = " +
                          ToString(s.delta) + " (needs delta (T + 1) >= 1)");
  }
  const int q = T + 1;
  s.P.assign(q, p);
  s.P[0] = s.delta;
  s.Pprime.assign(q, p / (1 - p));
  s.Pprime[0] = (s.delta - p) / (1 - p);
  return s;
}

Rational CorrelatedSpace::Joint(int t, int x, int y) const {
  if (y == t) return x == 0 ? P[y] : Rational(0);
  return P[y] * Pprime[x];
}

std::vector<Rational> CorrelatedSpace::JointTable(int t) const {
  const int q = domain();
  std::vector<Rational> table;
  table.reserve(static_cast<size_t>(q) * q);
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) table.push_back(Joint(t, x, y));
  }
  return table;
}

CorrelationResult ExactCorrelation(const CorrelatedSpace& space) {
  const double delta = ToDouble(space.delta);
  const int T = space.T;
  CorrelationResult r;
  r.closed_form = (1 - delta) / std::sqrt(delta * (T - 1 + delta));
  r.bound = std::sqrt(2.0 / (T * delta));
  // Relabeling the nonzero labels maps P^t to P^{t'}, so large T only
  // samples a few t.
  std::vector<int> ts;
  if (T <= 32) {
    ts.resize(T);
    std::iota(ts.begin(), ts.end(), 1);
  } else {
    ts = {1, (T + 1) / 2, T};
  }
  for (int t : ts) {
    const double s = SecondSingularValue(space, t);
    if (std::abs(s - r.closed_form) > kCorrelationTolerance) {
      throw Error("correlation mismatch at t = " + std::to_string(t) + ": closed form " +
                  std::to_string(r.closed_form) + " vs singular value " + std::to_string(s));
    }
    if (t == 1) r.singular = s;
  }
  r.within_bound = r.closed_form <= r.bound;
  return r;
}

uint64_t TestInstance::CubeSize() const {
  return CubeOf(T + 1, R, ~uint64_t{0});
}

int TestInstance::VertexId(int u, uint64_t x) const {
  return static_cast<int>(static_cast<uint64_t>(u) * CubeSize() + x);
}

TestInstance BuildTestInstance(const CorrelatedSpace& space, const Digraph& inner, int R,
                               uint64_t max_edges) {
  CheckInner(inner);
  if (R < 1) throw ValidationError("R must be at least 1");
  const int T = space.T, q = space.domain();
  const uint64_t cube = CubeOf(q, R, uint64_t{1} << 40);
  if (cube * inner.num_vertices > static_cast<uint64_t>(std::numeric_limits<int>::max())) {
    throw CapExceeded("test instance has too many vertices");
  }
  std::vector<std::vector<SupportPair>> support;
  uint64_t edges = 0;
  for (int t = 1; t <= T; ++t) {
    support.push_back(Support(space, t));
    uint64_t per = 1;
    for (int i = 0; i < R && per <= max_edges; ++i) per *= support.back().size();
    edges += per * inner.arcs.size();
    if (per > max_edges || edges > max_edges) {
      throw CapExceeded("test instance needs more than " + std::to_string(max_edges) + " edges");
    }
  }
  TestInstance ti;
  ti.inner = inner;
  ti.R = R;
  ti.T = T;
  const Rational scale = Rational(1) / (static_cast<long>(inner.arcs.size()) * T);
  std::vector<GmdEdge> out;
  out.reserve(edges);
  for (auto [u, v] : inner.arcs) {
    for (int t = 1; t <= T; ++t) {
      ForEachProduct(support[t - 1], q, R, [&](uint64_t x, uint64_t y, const Rational& p) {
        out.push_back({ti.VertexId(u, x), ti.VertexId(v, y), t, p * scale});
      });
    }
  }
  ti.instance = GmdInstance(T, static_cast<int>(cube * inner.num_vertices), std::move(out));
  return ti;
}

void ValidateFamily(const FunctionFamily& family, int num_inner, int T, int R) {
  const uint64_t cube = CubeOf(T + 1, R, uint64_t{1} << 40);
  if (static_cast<int>(family.size()) != num_inner) {
    throw ValidationError("partial function family: " + std::to_string(family.size()) +
                          " tables for " + std::to_string(num_inner) + " inner vertices");
  }
  for (size_t v = 0; v < family.size(); ++v) {
    if (family[v].size() != cube) {
      throw ValidationError("partial function at inner vertex " + std::to_string(v) + ": " +
                            std::to_string(family[v].size()) + " of " + std::to_string(cube) +
                            " values");
    }
    for (int value : family[v]) {
      if (value < 0 || value > T) {
        throw ValidationError("function value " + std::to_string(value) + " outside 0.." +
                              std::to_string(T));
      }
    }
  }
}

Rational EvaluateAcceptance(const TestInstance& ti, const FunctionFamily& family) {
  ValidateFamily(family, ti.inner.num_vertices, ti.T, ti.R);
  const uint64_t cube = ti.CubeSize();
  Rational total = 0;
  for (const GmdEdge& e : ti.instance.edges()) {
    const uint64_t u = e.tail / cube, x = e.tail % cube;
    const uint64_t v = e.head / cube, y = e.head % cube;
    if (family[u][x] == 0 && family[v][y] == e.label) total += e.weight;
  }
  return total;
}

Rational EvaluateAcceptanceDirect(const CorrelatedSpace& space, const Digraph& inner, int R,
                                  const FunctionFamily& family) {
  CheckInner(inner);
  ValidateFamily(family, inner.num_vertices, space.T, R);
  const int q = space.domain();
  Rational total = 0;
  for (int t = 1; t <= space.T; ++t) {
    const auto support = Support(space, t);
    for (auto [u, v] : inner.arcs) {
      ForEachProduct(support, q, R, [&](uint64_t x, uint64_t y, const Rational& p) {
        if (family[u][x] == 0 && family[v][y] == t) total += p;
      });
    }
  }
  return total / (static_cast<long>(inner.arcs.size()) * space.T);
}

Rational Influence(const CorrelatedSpace& space, const std::vector<int>& f, int R, int i,
                   uint64_t max_cube) {
  if (R < 1 || i < 0 || i >= R) throw ValidationError("coordinate out of range");
  const int q = space.domain();
  const uint64_t cube = CubeOf(q, R, max_cube);
  if (f.size() != cube) throw ValidationError("function table has the wrong size");
  uint64_t stride = 1;
  for (int k = R - 1; k > i; --k) stride *= q;
  Rational total = 0;
  for (uint64_t base = 0; base < cube; ++base) {
    if (Coord(base, i, q, R) != 0) continue;
    Rational w = 1;
    for (int k = 0; k < R; ++k) {
      if (k != i) w *= space.P[Coord(base, k, q, R)];
    }
    Rational mean = 0, second = 0;
    for (int a = 0; a < q; ++a) {
      const Rational val(f[base + a * stride]);
      mean += space.P[a] * val;
      second += space.P[a] * val * val;
    }
    total += w * (second - mean * mean);
  }
  return total;
}

FunctionFamily DictatorFamily(int num_inner, int T, int R, int coordinate) {
  if (coordinate < 0 || coordinate >= R) throw ValidationError("coordinate out of range");
  const int q = T + 1;
  const uint64_t cube = CubeOf(q, R, uint64_t{1} << 40);
  std::vector<int> table(cube);
  for (uint64_t x = 0; x < cube; ++x) table[x] = Coord(x, coordinate, q, R);
  return FunctionFamily(num_inner, table);
}

FunctionFamily ConstantFamily(const std::vector<int>& value_per_vertex, int T, int R) {
  const uint64_t cube = CubeOf(T + 1, R, uint64_t{1} << 40);
  FunctionFamily family;
  for (int value : value_per_vertex) family.emplace_back(cube, value);
  return family;
}

double SoundnessLine(int T) { return 1.0 / (4.0 * T) + 4.0 * std::pow(T, -1.25); }

bool DictatorBeatsSoundness(int T) { return 81LL * T > 160000LL; }

int DictatorThreshold() {
  int T = 1;
  while (!DictatorBeatsSoundness(T)) ++T;
  return T;
}

std::vector<LibraryEntry> EvaluateAdversarialLibrary(const CorrelatedSpace& space,
                                                     const Digraph& inner, int R, uint64_t seed) {
  CheckInner(inner);
  const int T = space.T, q = space.domain(), n = inner.num_vertices;
  const uint64_t cube = CubeOf(q, R, uint64_t{1} << 22);
  CounterRng rng(seed);

  std::vector<std::pair<std::string, FunctionFamily>> library;
  library.emplace_back("zero", ConstantFamily(std::vector<int>(n, 0), T, R));
  // Constant 0 on one side of the best dicut found, constant 1 elsewhere.
  {
    std::vector<int> side(n, 1);
    if (n <= 20) {
      size_t best = 0;
      uint32_t best_mask = 0;
      for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        size_t cut = 0;
        for (auto [u, v] : inner.arcs) cut += ((mask >> u) & 1) && !((mask >> v) & 1);
        if (cut > best) {
          best = cut;
          best_mask = mask;
        }
      }
      for (int v = 0; v < n; ++v) side[v] = ((best_mask >> v) & 1) ? 0 : 1;
    } else {
      for (int v = 0; v < n; ++v) side[v] = rng.FairCoin() ? 0 : 1;
    }
    library.emplace_back("dicut-constant", ConstantFamily(side, T, R));
  }
  for (int i = 0; i < R; ++i) {
    library.emplace_back("dictator-" + std::to_string(i), DictatorFamily(n, T, R, i));
  }
  {
    FunctionFamily fam(n, std::vector<int>(cube));
    for (int v = 0; v < n; ++v) {
      std::vector<int> perm(q);
      std::iota(perm.begin(), perm.end(), 0);
      for (int k = q - 1; k > 0; --k) std::swap(perm[k], perm[rng.UniformInt(k + 1)]);
      for (uint64_t x = 0; x < cube; ++x) fam[v][x] = perm[Coord(x, 0, q, R)];
    }
    library.emplace_back("permuted-dictator", std::move(fam));
  }
  if (R >= 2) {
    FunctionFamily fam(n, std::vector<int>(cube));
    for (int v = 0; v < n; ++v) {
      std::vector<int> table(q * q);
      for (int& t : table) t = static_cast<int>(rng.UniformInt(q));
      for (uint64_t x = 0; x < cube; ++x) {
        fam[v][x] = table[Coord(x, 0, q, R) * q + Coord(x, 1, q, R)];
      }
    }
    library.emplace_back("junta-2", std::move(fam));
  }
  {
    std::vector<int> table(cube);
    for (uint64_t x = 0; x < cube; ++x) {
      std::vector<int> count(q, 0);
      for (int i = 0; i < R; ++i) ++count[Coord(x, i, q, R)];
      table[x] = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
    }
    library.emplace_back("plurality", FunctionFamily(n, table));
  }
  {
    FunctionFamily fam(n, std::vector<int>(cube));
    for (auto& table : fam) {
      for (int& t : table) t = static_cast<int>(rng.UniformInt(q));
    }
    library.emplace_back("random", std::move(fam));
  }

  std::vector<LibraryEntry> out(library.size());
  const double line = SoundnessLine(T);
#pragma omp parallel for schedule(dynamic)
  for (size_t k = 0; k < library.size(); ++k) {
    const FunctionFamily& fam = library[k].second;
    LibraryEntry& e = out[k];
    e.name = library[k].first;
    e.acceptance = EvaluateAcceptanceDirect(space, inner, R, fam);
    e.above_soundness = ToDouble(e.acceptance) > line;
    for (int v = 0; v < n; ++v) {
      for (int t = 0; t < q; ++t) {
        std::vector<int> indicator(cube);
        for (uint64_t x = 0; x < cube; ++x) indicator[x] = fam[v][x] == t;
        for (int i = 0; i < R; ++i) {
          e.max_influence = std::max(e.max_influence, ToDouble(Influence(space, indicator, R, i)));
        }
      }
    }
  }
  return out;
}

FunctionFamily ParseFunctionFile(std::string_view text, int num_inner, int T, int R) {
  const uint64_t cube = CubeOf(T + 1, R, uint64_t{1} << 24);
  FunctionFamily family(num_inner);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "dict") {
      int t = 0, r = 0;
      if (!(ls >> t >> r)) fail("expected 'dict <T> <R>'");
      if (t != T || r != R) fail("header says T=" + std::to_string(t) + " R=" + std::to_string(r));
      header = true;
    } else if (tag == "f") {
      if (!header) fail("'f' before 'dict' header");
      int v = -1;
      if (!(ls >> v) || v < 0 || v >= num_inner) fail("bad inner vertex");
      if (!family[v].empty()) fail("duplicate table for vertex " + std::to_string(v));
      int value;
      while (ls >> value) family[v].push_back(value);
      if (!ls.eof()) fail("non-integer value");
      if (family[v].size() != cube) {
        fail("expected " + std::to_string(cube) + " values, got " +
             std::to_string(family[v].size()));
      }
    } else {
      fail("unknown directive '" + tag + "'");
    }
  }
  if (!header) throw ValidationError("missing 'dict' header");
  ValidateFamily(family, num_inner, T, R);
  return family;
}

std::string SerializeFunctionFile(const FunctionFamily& family, int T, int R) {
  std::ostringstream out;
  out << "dict " << T << " " << R << "\n";
  for (size_t v = 0; v < family.size(); ++v) {
    out << "f " << v;
    for (int value : family[v]) out << " " << value;
    out << "\n";
  }
  return out.str();
}

}  // namespace gmdlab
