// Copyright 2026 The nsdensity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NSDENSITY_DYADIC_HPP_
#define NSDENSITY_DYADIC_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace nsdensity {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact rational with a power-of-two denominator: numerator / 2^exponent.
// Kept normalized (odd numerator or exponent 0), so equal values compare
// equal member-wise.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long value) : num_(value) {}  // NOLINT(implicit)
  Dyadic(BigInt numerator, int exponent = 0);

  // 2^e for any integer e.
  static Dyadic pow2(int e);

  [[nodiscard]] const BigInt& numerator() const noexcept { return num_; }
  [[nodiscard]] int exponent() const noexcept { return exp_; }
  [[nodiscard]] BigInt denominator() const;
  [[nodiscard]] Rational to_rational() const;
  [[nodiscard]] double to_double() const;
  [[nodiscard]] int sign() const noexcept { return num_.sign(); }

  // "5/8", or "3" when integral.
  [[nodiscard]] std::string fraction() const;
  // Fixed-point rendering, round-half-even.
  [[nodiscard]] std::string decimal(int places = 5) const;

  Dyadic& operator+=(const Dyadic& rhs);
  Dyadic& operator-=(const Dyadic& rhs);
  Dyadic& operator*=(const Dyadic& rhs);
  friend Dyadic operator+(Dyadic lhs, const Dyadic& rhs) { return lhs += rhs; }
  friend Dyadic operator-(Dyadic lhs, const Dyadic& rhs) { return lhs -= rhs; }
  friend Dyadic operator*(Dyadic lhs, const Dyadic& rhs) { return lhs *= rhs; }
  friend Dyadic operator-(Dyadic v) {
    v.num_ = -v.num_;
    return v;
  }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  BigInt num_ = 0;
  int exp_ = 0;
};

std::strong_ordering compare(const Dyadic& a, const Rational& b);

// Round-half-even fixed-point rendering of an exact rational.
std::string format_decimal(const Rational& value, int places);
// Parses "0.48660" or "-1.5" exactly.
Rational parse_decimal(std::string_view text);
// 3^n / 4^n.
Dyadic three_quarters_pow(int n);

}  // namespace nsdensity

#endif  // NSDENSITY_DYADIC_HPP_
