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

#ifndef GMDLAB_SRC_SCALED_WEIGHTS_H_
#define GMDLAB_SRC_SCALED_WEIGHTS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "gmdlab/core.h"

namespace gmdlab::internal {

// Edge weights multiplied by the lcm of their denominators. Present only when
// the total scaled weight fits comfortably in int64.
struct ScaledWeights {
  std::vector<int64_t> weights;
  BigInt scale;
};

inline std::optional<ScaledWeights> ScaleWeights(const GmdInstance& inst) {
  BigInt lcm = 1;
  for (const auto& e : inst.edges()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.weight.get_den().get_mpz_t());
  }
  ScaledWeights out{{}, lcm};
  BigInt total = 0;
  const BigInt limit = BigInt(1) << 61;
  for (const auto& e : inst.edges()) {
    BigInt w = e.weight.get_num() * (lcm / e.weight.get_den());
    total += w;
    if (total >= limit) return std::nullopt;
    out.weights.push_back(w.get_si());
  }
  return out;
}

inline Rational Unscale(int64_t value, const BigInt& scale) {
  Rational r(BigInt(static_cast<long>(value)), scale);
  r.canonicalize();
  return r;
}

}  // namespace gmdlab::internal

#endif  // GMDLAB_SRC_SCALED_WEIGHTS_H_
