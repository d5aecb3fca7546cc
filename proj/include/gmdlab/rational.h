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

#ifndef GMDLAB_RATIONAL_H_
#define GMDLAB_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace gmdlab {

// Arbitrary-precision exact rational. Always kept canonical.
using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p/q", signed integers, and finite decimals such as "0.125" or
// "-3.5". Decimals are converted exactly (0.1 -> 1/10).
Rational ParseRational(std::string_view text);

// Canonical rendering: "p" for integers, "p/q" otherwise.
std::string ToString(const Rational& value);

// base^exponent for any integer exponent; base must be nonzero when the
// exponent is negative.
Rational Pow(const Rational& base, int64_t exponent);
BigInt Pow(const BigInt& base, uint64_t exponent);

inline double ToDouble(const Rational& value) { return value.get_d(); }

// Exact rational equal to the binary double `value`.
Rational FromDouble(double value);

}  // namespace gmdlab

#endif  // GMDLAB_RATIONAL_H_
