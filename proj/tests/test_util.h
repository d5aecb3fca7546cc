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

#ifndef GMDLAB_TESTS_TEST_UTIL_H_
#define GMDLAB_TESTS_TEST_UTIL_H_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmdlab/core.h"
#include "gmdlab/rng.h"

namespace gmdlab::testing {

inline std::string FixturePath(const std::string& name) {
  return std::string(GMDLAB_FIXTURE_DIR) + "/" + name;
}

inline std::string ReadFixture(const std::string& name) {
  std::ifstream in(FixturePath(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const std::vector<std::string>& GmdFixtures() {
  static const std::vector<std::string> kNames = {
      "e1.gmd", "tri.gmd", "path2.gmd", "star3.gmd", "twolabel.gmd", "dag5.gmd", "square.gmd"};
  return kNames;
}

inline const std::vector<std::string>& GpFixtures() {
  static const std::vector<std::string> kNames = {"edge.gp", "path.gp", "tri.gp", "star.gp"};
  return kNames;
}

// Random GMD instance with small integer weights, normalized. When `dag` is
// set every edge goes from a higher to a lower vertex id.
inline GmdInstance RandomGmd(uint64_t seed, int n, int T, double density, bool dag = false) {
  CounterRng rng(seed);
  std::vector<GmdEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || (dag && u < v)) continue;
      if (rng.Uniform01() >= density) continue;
      const int label = 1 + static_cast<int>(rng.UniformInt(T));
      edges.push_back({u, v, label, Rational(1 + static_cast<long>(rng.UniformInt(4)))});
    }
  }
  if (edges.empty() && n >= 2) edges.push_back({1, 0, 1, Rational(1)});
  return GmdInstance(T, n, std::move(edges)).Normalized();
}

inline GpInstance RandomGp(uint64_t seed, int n, int max_budget, double density) {
  CounterRng rng(seed);
  std::vector<GpEdge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.Uniform01() >= density) continue;
      edges.push_back({u, v, Rational(1 + static_cast<long>(rng.UniformInt(max_budget))),
                       Rational(1 + static_cast<long>(rng.UniformInt(3)))});
    }
  }
  if (edges.empty() && n >= 2) edges.push_back({0, 1, Rational(1), Rational(1)});
  return GpInstance(n, std::move(edges));
}

// Every labeling in [T]^n, vertex n-1 varying fastest.
inline std::vector<Labeling> AllLabelings(int n, int T) {
  std::vector<Labeling> out;
  Labeling l{std::vector<int>(n, 0)};
  while (true) {
    out.push_back(l);
    int i = n - 1;
    while (i >= 0 && l.values[i] == T) l.values[i--] = 0;
    if (i < 0) break;
    ++l.values[i];
  }
  return out;
}

}  // namespace gmdlab::testing

#endif  // GMDLAB_TESTS_TEST_UTIL_H_
