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

#include "gmdlab/rational.h"

#include <cctype>
#include <cmath>

#include "gmdlab/errors.h"

namespace gmdlab {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool IsSignedInteger(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return AllDigits(s);
}

}  // namespace

Rational ParseRational(std::string_view text) {
  if (text.empty()) throw ValidationError("empty number");
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!IsSignedInteger(num) || !AllDigits(den)) {
      throw ValidationError("malformed rational '" + std::string(text) + "'");
    }
    BigInt d{std::string(den)};
    if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    Rational r(BigInt(n), d);
    r.canonicalize();
    return r;
  }
  const auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((!int_part.empty() && !AllDigits(int_part)) || !AllDigits(frac_part)) {
      throw ValidationError("malformed decimal '" + std::string(text) + "'");
    }
    BigInt whole = int_part.empty() ? BigInt(0) : BigInt(std::string(int_part));
    BigInt frac{std::string(frac_part)};
    BigInt scale = Pow(BigInt(10), frac_part.size());
    Rational r(whole * scale + frac, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  if (!IsSignedInteger(text)) {
    throw ValidationError("malformed number '" + std::string(text) + "'");
  }
  std::string n(text);
  if (n.front() == '+') n.erase(0, 1);
  return Rational(BigInt(n));
}

std::string ToString(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

BigInt Pow(const BigInt& base, uint64_t exponent) {
  BigInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Rational Pow(const Rational& base, int64_t exponent) {
  if (exponent >= 0) {
    Rational r(Pow(base.get_num(), static_cast<uint64_t>(exponent)),
               Pow(base.get_den(), static_cast<uint64_t>(exponent)));
    r.canonicalize();
    return r;
  }
  if (base == 0) throw ValidationError("zero raised to a negative power");
  const auto e = static_cast<uint64_t>(-exponent);
  Rational r(Pow(base.get_den(), e), Pow(base.get_num(), e));
  r.canonicalize();
  return r;
}

Rational FromDouble(double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

}  // namespace gmdlab
