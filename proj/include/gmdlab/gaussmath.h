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


#ifndef GMDLAB_GAUSSMATH_H_
#define GMDLAB_GAUSSMATH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gmdlab {

// Standard normal density, CDF, and upper tail 1 - CDF.
double NormalPdf(double x);
double NormalCdf(double x);
double NormalTail(double x);
// Inverses on (0, 1); ValidationError at or outside the endpoints.
double InverseNormalCdf(double p);
double InverseNormalTail(double p);

// Bounds on NormalTail(t) for t > 0:
//   t e^{-t^2/2} / (sqrt(2 pi)(t^2 + 1))  <  tail  <  e^{-t^2/2} / (sqrt(2 pi) t).
double TailLowerBound(double t);
double TailUpperBound(double t);

// Pr[X >= x and Y >= y] for standard normals with correlation rho, where
// x = InverseNormalTail(a) and y = InverseNormalTail(b). Computed as
// the integral over t >= y of pdf(t) * tail((x - rho t) / sqrt(1 - rho^2)),
// i.e. X = rho Y + sqrt(1 - rho^2) Z. For |rho| > 1/sqrt(2) the same
// decomposition is integrated over Z instead. rho = +-1 and a, b in {0, 1}
// are exact.
double GammaRho(double rho, double a, double b);

struct GammaGrid {
  std::vector<int> T_values = {2, 4, 16, 64, 256, 1024};
  std::vector<double> concavity_rhos = {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
  int a_steps = 10;    // a in {0, 1/a_steps, ..., 1}
  int b_steps = 20;    // grid resolution in b
  int rho_steps = 8;   // interior points of (0, rho_max) for the product bound
};

struct GammaCheckRow {
  std::string kind;  // "concavity" or "product"
  int T = 0;         // 0 for concavity rows
  double rho = 0.0;
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;  // concavity: second difference; product: gamma
  double bound = 0.0;  // concavity: 1e-6; product: ab + 2/T^{5/4} + 1e-6
  bool pass = true;
};

struct ProductRowSummary {
  int T = 0;
  double delta = 0.0;    // T^{-1/4}
  double rho_max = 0.0;  // min(1, sqrt(2 / (T delta)))
  int points = 0;
  int violations = 0;
  double max_excess = 0.0;  // max of gamma - (ab + 2/T^{5/4}), may be negative
};

struct GammaReport {
  std::vector<GammaCheckRow> rows;
  bool concavity_ok = true;
  double max_second_difference = 0.0;
  std::vector<ProductRowSummary> product;
  // Smallest grid T from which every larger grid T also passes.
  std::optional<int> product_threshold;
};

// Concavity of b -> GammaRho(rho, a, b) for rho >= 0 via second differences,
// and the bound GammaRho(rho, a, b) <= ab + 2/T^{5/4} for b <= 1/T and
// 0 < rho < sqrt(2/(T delta)), delta = T^{-1/4}. Grid points run in parallel.
GammaReport VerifyGammaProperties(const GammaGrid& grid);

struct MaxGapCheck {
  double eps = 0.0;
  // Pr[max <= x1] with x1 = sqrt(2 ln(n/eps)); target 1 - eps.
  double x1 = 0.0, p_max_below = 0.0, se_max_below = 0.0;
  bool max_ok = false;
  // Pr[max - secondmax >= x2] with x2 = eps / (2 sqrt(ln(n/eps))); target 1 - 2 eps.
  double x2 = 0.0, p_gap_above = 0.0, se_gap_above = 0.0;
  bool gap_ok = false;
};

struct MaxGapStats {
  int n = 0;
  int64_t trials = 0;
  uint64_t seed = 0;
  double mean_max = 0.0, se_max = 0.0;
  double mean_gap = 0.0, se_gap = 0.0;
  std::vector<MaxGapCheck> checks;  // "ok" means estimate + 3 se >= target
};

// Monte Carlo over n iid standard normals. Trial t uses substream
// SubstreamSeed(seed, t).
MaxGapStats ComputeMaxGapStats(int n, int64_t trials, uint64_t seed,
                               const std::vector<double>& eps_values);
MaxGapStats ComputeMaxGapStatsSerial(int n, int64_t trials, uint64_t seed,
                                     const std::vector<double>& eps_values);

}  // namespace gmdlab

#endif  // GMDLAB_GAUSSMATH_H_
