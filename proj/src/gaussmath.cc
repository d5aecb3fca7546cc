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


#include "gmdlab/gaussmath.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "gmdlab/errors.h"
#include "gmdlab/rng.h"

namespace gmdlab {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1 / sqrt(2 pi)
constexpr double kSecondDiffTol = 1e-6;
constexpr double kProductTol = 1e-6;

double Integrate(const auto& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-12);
}

struct MaxGapSample {
  double max = 0.0;
  double gap = 0.0;
};

MaxGapSample DrawMaxGap(int n, uint64_t seed, int64_t t) {
  CounterRng rng(SubstreamSeed(seed, static_cast<uint64_t>(t)));
  double first = -std::numeric_limits<double>::infinity(), second = first;
  for (int j = 0; j < n; ++j) {
    const double g = rng.Normal();
    if (g > first) {
      second = first;
      first = g;
    } else if (g > second) {
      second = g;
    }
  }
  return {first, first - second};
}

MaxGapStats Summarize(int n, int64_t trials, uint64_t seed, const std::vector<double>& eps_values,
                      const std::vector<MaxGapSample>& samples) {
  MaxGapStats out;
  out.n = n;
  out.trials = trials;
  out.seed = seed;
  auto mean_se = [&](auto get, double& mean, double& se) {
    double s = 0.0, s2 = 0.0;
    for (const MaxGapSample& x : samples) {
      const double v = get(x);
      s += v;
      s2 += v * v;
    }
    mean = s / trials;
    se = trials > 1 ? std::sqrt(std::max(0.0, (s2 - trials * mean * mean) / (trials - 1)) / trials)
                    : 0.0;
  };
  mean_se([](const MaxGapSample& x) { return x.max; }, out.mean_max, out.se_max);
  mean_se([](const MaxGapSample& x) { return x.gap; }, out.mean_gap, out.se_gap);
  for (double eps : eps_values) {
    MaxGapCheck c;
    c.eps = eps;
    const double lg = std::log(n / eps);
    c.x1 = std::sqrt(2 * lg);
    c.x2 = eps / (2 * std::sqrt(lg));
    int64_t below = 0, above = 0;
    for (const MaxGapSample& x : samples) {
      below += x.max <= c.x1;
      above += x.gap >= c.x2;
    }
    auto frac = [&](int64_t k, double& p, double& se) {
      p = static_cast<double>(k) / trials;
      se = trials > 1 ? std::sqrt(p * (1 - p) / (trials - 1)) : 0.0;
    };
    frac(below, c.p_max_below, c.se_max_below);
    frac(above, c.p_gap_above, c.se_gap_above);
    c.max_ok = c.p_max_below + 3 * c.se_max_below >= 1 - eps;
    c.gap_ok = c.p_gap_above + 3 * c.se_gap_above >= 1 - 2 * eps;
    out.checks.push_back(c);
  }
  return out;
}

void CheckMaxGapArgs(int n, int64_t trials, const std::vector<double>& eps_values) {
  if (n < 2) throw ValidationError("max gap statistics need n >= 2");
  if (trials < 1) throw ValidationError("trials must be at least 1");
  for (double eps : eps_values) {
    if (!(eps > 0 && eps < 1)) throw ValidationError("eps must lie in (0, 1)");
  }
}

}  // namespace

double NormalPdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double NormalCdf(double x) { return 0.5 * boost::math::erfc(-x / std::numbers::sqrt2); }

double NormalTail(double x) { return 0.5 * boost::math::erfc(x / std::numbers::sqrt2); }

double InverseNormalCdf(double p) {
  if (!(p > 0 && p < 1)) throw ValidationError("inverse normal CDF needs p in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2 * p);
}

double InverseNormalTail(double p) {
  if (!(p > 0 && p < 1)) throw ValidationError("inverse normal tail needs p in (0, 1)");
  return std::numbers::sqrt2 * boost::math::erfc_inv(2 * p);
}

double TailLowerBound(double t) {
  return t * kInvSqrt2Pi / (t * t + 1) * std::exp(-0.5 * t * t);
}

double TailUpperBound(double t) { return kInvSqrt2Pi / t * std::exp(-0.5 * t * t); }

double GammaRho(double rho, double a, double b) {
  if (!(rho >= -1 && rho <= 1)) throw ValidationError("rho must lie in [-1, 1]");
  if (!(a >= 0 && a <= 1 && b >= 0 && b <= 1)) throw ValidationError("a, b must lie in [0, 1]");
  if (a == 0 || b == 0) return 0.0;
  if (a == 1) return b;
  if (b == 1) return a;
  if (rho == 1) return std::min(a, b);
  if (rho == -1) return std::max(0.0, a + b - 1);
  const double x = InverseNormalTail(a);
  const double y = InverseNormalTail(b);
  const double s = std::sqrt(1 - rho * rho);
  if (std::abs(rho) <= std::numbers::sqrt2 / 2) {
    // Condition on Y; the integrand has slope at most 1 in t. Beyond 10
    // standard deviations the density is below 1e-22.
    auto f = [&](double t) { return NormalPdf(t) * NormalTail((x - rho * t) / s); };
    return Integrate(f, y, std::max(y, 0.0) + 10);
  }
  // Strong correlation: condition on Z instead. For fixed z the event is an
  // interval of Y with a kink where its endpoint crosses y.
  const double knee = std::clamp((x - rho * y) / s, -10.0, 10.0);
  auto f = [&](double z) {
    const double c = (x - s * z) / rho;
    const double p = rho > 0 ? NormalTail(std::max(y, c)) : std::max(0.0, b - NormalTail(c));
    return NormalPdf(z) * p;
  };
  return Integrate(f, -10.0, knee) + Integrate(f, knee, 10.0);
}

GammaReport VerifyGammaProperties(const GammaGrid& grid) {
  if (grid.a_steps < 1 || grid.b_steps < 2 || grid.rho_steps < 1) {
    throw ValidationError("grid steps too small");
  }
  GammaReport report;
  const int na = grid.a_steps, nb = grid.b_steps;

  // Concavity: Gamma over the full b grid, then second differences.
  struct Curve {
    double rho, a;
    std::vector<double> g;
  };
  std::vector<Curve> curves;
  report.max_second_difference = -std::numeric_limits<double>::infinity();
  for (double rho : grid.concavity_rhos) {
    if (!(rho >= 0 && rho <= 1)) throw ValidationError("concavity needs rho in [0, 1]");
    for (int i = 0; i <= na; ++i) curves.push_back({rho, static_cast<double>(i) / na, {}});
  }
#pragma omp parallel for schedule(dynamic)
  for (size_t c = 0; c < curves.size(); ++c) {
    curves[c].g.resize(nb + 1);
    for (int k = 0; k <= nb; ++k) {
      curves[c].g[k] = GammaRho(curves[c].rho, curves[c].a, static_cast<double>(k) / nb);
    }
  }
  for (const Curve& c : curves) {
    for (int k = 1; k < nb; ++k) {
      GammaCheckRow row;
      row.kind = "concavity";
      row.rho = c.rho;
      row.a = c.a;
      row.b = static_cast<double>(k) / nb;
      row.value = c.g[k - 1] - 2 * c.g[k] + c.g[k + 1];
      row.bound = kSecondDiffTol;
      row.pass = row.value <= row.bound;
      report.concavity_ok = report.concavity_ok && row.pass;
      report.max_second_difference = std::max(report.max_second_difference, row.value);
      report.rows.push_back(row);
    }
  }

  // Product bound, one block of rows per T.
  for (int T : grid.T_values) {
    if (T < 1) throw ValidationError("T must be positive");
    ProductRowSummary summary;
    summary.T = T;
    summary.delta = std::pow(static_cast<double>(T), -0.25);
    summary.rho_max = std::min(1.0, std::sqrt(2.0 / (T * summary.delta)));
    const double extra = 2.0 * std::pow(static_cast<double>(T), -1.25);
    std::vector<GammaCheckRow> rows;
    for (int j = 1; j <= grid.rho_steps; ++j) {
      for (int i = 0; i <= na; ++i) {
        for (int k = 0; k <= nb; ++k) {
          GammaCheckRow row;
          row.kind = "product";
          row.T = T;
          row.rho = summary.rho_max * j / (grid.rho_steps + 1);
          row.a = static_cast<double>(i) / na;
          row.b = static_cast<double>(k) / (static_cast<double>(nb) * T);
          rows.push_back(row);
        }
      }
    }
#pragma omp parallel for schedule(dynamic)
    for (size_t r = 0; r < rows.size(); ++r) {
      GammaCheckRow& row = rows[r];
      row.value = GammaRho(row.rho, row.a, row.b);
      row.bound = row.a * row.b + extra + kProductTol;
      row.pass = row.value <= row.bound;
    }
    summary.max_excess = -std::numeric_limits<double>::infinity();
    for (GammaCheckRow& row : rows) {
      ++summary.points;
      summary.violations += !row.pass;
      summary.max_excess = std::max(summary.max_excess, row.value - (row.a * row.b + extra));
      report.rows.push_back(row);
    }
    report.product.push_back(summary);
  }
  std::vector<ProductRowSummary> sorted = report.product;
  std::sort(sorted.begin(), sorted.end(),
            [](const ProductRowSummary& x, const ProductRowSummary& y) { return x.T < y.T; });
  for (size_t i = sorted.size(); i-- > 0;) {
    if (sorted[i].violations > 0) break;
    report.product_threshold = sorted[i].T;
  }
  return report;
}

MaxGapStats ComputeMaxGapStats(int n, int64_t trials, uint64_t seed,
                               const std::vector<double>& eps_values) {
  CheckMaxGapArgs(n, trials, eps_values);
  std::vector<MaxGapSample> samples(trials);
#pragma omp parallel for schedule(static)
  for (int64_t t = 0; t < trials; ++t) samples[t] = DrawMaxGap(n, seed, t);
  return Summarize(n, trials, seed, eps_values, samples);
}

MaxGapStats ComputeMaxGapStatsSerial(int n, int64_t trials, uint64_t seed,
                                     const std::vector<double>& eps_values) {
  CheckMaxGapArgs(n, trials, eps_values);
  std::vector<MaxGapSample> samples(trials);
  for (int64_t t = 0; t < trials; ++t) samples[t] = DrawMaxGap(n, seed, t);
  return Summarize(n, trials, seed, eps_values, samples);
}

}  // namespace gmdlab
