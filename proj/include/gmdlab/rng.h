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

#ifndef GMDLAB_RNG_H_
#define GMDLAB_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gmdlab {

// SplitMix64 output function. Bijective on 64-bit words.
constexpr uint64_t Mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of the substream with the given index. Trial i of a batch always uses
// SubstreamSeed(master, i), so results do not depend on how trials are split
// across threads.
constexpr uint64_t SubstreamSeed(uint64_t master, uint64_t index) {
  return Mix64(Mix64(master) ^ Mix64(index + 0x632BE59BD9B4E019ULL));
}

// Counter-based generator: output k of a stream keyed by `key` is
// Mix64(key + k * 0x9E3779B97F4A7C15). Only integer arithmetic is involved,
// so the raw stream is identical on every platform. Normal variates use
// Box-Muller on top of it.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed) : key_(Mix64(seed)) {}

  uint64_t NextU64() {
    return Mix64(key_ + (counter_++) * 0x9E3779B97F4A7C15ULL);
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double UniformOpen0() {
    return static_cast<double>((NextU64() >> 11) + 1) * 0x1.0p-53;
  }

  bool FairCoin() { return (NextU64() >> 63) != 0; }

  // Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
  uint64_t UniformInt(uint64_t bound) {
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
    uint64_t x;
    do {
      x = NextU64();
    } while (x >= limit);
    return x % bound;
  }

  double Normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(UniformOpen0()));
    const double angle = 2.0 * std::numbers::pi * Uniform01();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gmdlab

#endif  // GMDLAB_RNG_H_
