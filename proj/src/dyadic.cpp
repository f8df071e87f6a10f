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

#include "nsdensity/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace nsdensity {

Dyadic::Dyadic(BigInt numerator, int exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ < 0) {
    num_ <<= -exp_;
    exp_ = 0;
    return;
  }
  const auto zeros = static_cast<int>(boost::multiprecision::lsb(abs(num_)));
  const int drop = std::min(zeros, exp_);
  num_ >>= drop;
  exp_ -= drop;
}

Dyadic Dyadic::pow2(int e) {
  if (e >= 0) return Dyadic(BigInt(1) << e, 0);
  return Dyadic(BigInt(1), -e);
}

BigInt Dyadic::denominator() const { return BigInt(1) << exp_; }

Rational Dyadic::to_rational() const { return Rational(num_, denominator()); }

double Dyadic::to_double() const {
  return num_.convert_to<double>() / std::ldexp(1.0, exp_);
}

std::string Dyadic::fraction() const {
  if (exp_ == 0) return num_.str();
  return num_.str() + "/" + denominator().str();
}

std::string Dyadic::decimal(int places) const {
  return format_decimal(to_rational(), places);
}

Dyadic& Dyadic::operator+=(const Dyadic& rhs) {
  if (exp_ >= rhs.exp_) {
    num_ += rhs.num_ << (exp_ - rhs.exp_);
  } else {
    num_ = (num_ << (rhs.exp_ - exp_)) + rhs.num_;
    exp_ = rhs.exp_;
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& rhs) { return *this += -rhs; }

Dyadic& Dyadic::operator*=(const Dyadic& rhs) {
  num_ *= rhs.num_;
  exp_ += rhs.exp_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int e = std::max(a.exp_, b.exp_);
  const BigInt lhs = a.num_ << (e - a.exp_);
  const BigInt rhs = b.num_ << (e - b.exp_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const Dyadic& a, const Rational& b) {
  const Rational lhs = a.to_rational();
  if (lhs < b) return std::strong_ordering::less;
  if (lhs > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string format_decimal(const Rational& value, int places) {
  if (places < 0) throw std::invalid_argument("negative decimal places");
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt num = numerator(magnitude) * scale;
  const BigInt den = denominator(magnitude);
  BigInt q = num / den;
  const BigInt twice_rem = (num % den) * 2;
  if (twice_rem > den || (twice_rem == den && (q & 1) != 0)) ++q;

  std::string digits = q.str();
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(),
                    '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (negative && q != 0) digits.insert(0, "-");
  return digits;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  BigInt num = 0;
  BigInt den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_point) den *= 10;
      seen_digit = true;
    } else {
      throw std::invalid_argument("malformed decimal '" + std::string(text) +
                                  "'");
    }
  }
  if (!seen_digit) {
    throw std::invalid_argument("malformed decimal '" + std::string(text) +
                                "'");
  }
  Rational out(num, den);
  return negative ? Rational(-out) : out;
}

Dyadic three_quarters_pow(int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  return Dyadic(boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n)),
                2 * n);
}

}  // namespace nsdensity
