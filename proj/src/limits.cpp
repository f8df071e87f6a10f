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

#include "nsdensity/limits.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nsdensity {
namespace {

Dyadic quarter_pow(int k) { return Dyadic::pow2(-2 * k); }

BigInt pow_int(int base, int exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

}  // namespace

GammaEstimate gamma(ConstantProvider& constants, const DSet& d, int depth) {
  const int t = d.max();
  if (depth < t) {
    throw std::invalid_argument("depth " + std::to_string(depth) +
                                " is below Max(D) = " + std::to_string(t));
  }
  GammaEstimate out;
  out.d = d;
  out.depth = depth;
  out.tail_bound = three_quarters_pow(depth);

  const std::uint64_t head = constants.a_const(d);
  out.constants_used.emplace_back(d, head);
  out.value = Dyadic(BigInt(head)) * quarter_pow(t);
  for (int k = t + 1; k <= depth; ++k) {
    const DSet dk = d.with(k);
    const std::uint64_t a = constants.a_const(dk);
    out.constants_used.emplace_back(dk, a);
    out.value -= Dyadic(BigInt(a)) * quarter_pow(k);
  }
  return out;
}

Rational positivity_constant(int l) {
  if (l < 0) throw std::invalid_argument("a_l needs l >= 0");
  const Rational first(BigInt(2), 3 * pow_int(4, l));
  const Rational second(3 * pow_int(2, l), pow_int(4, 2 * l + 1));
  return first - second;
}

std::optional<Rational> gamma_lower_bound(const DSet& d) {
  const int t = d.max();
  if (t < 1) return std::nullopt;
  return positivity_constant(t) / Rational(pow_int(2, t + 1));
}

GLimitEstimate g_l_limit(ConstantProvider& constants, int l, int depth) {
  if (l < 1) throw std::invalid_argument("G_l limit needs l >= 1");
  if (depth < 2 * l + 1) {
    throw std::invalid_argument("G_l limit needs depth >= 2l + 1");
  }
  GLimitEstimate out;
  out.l = l;
  out.depth = depth;
  out.value = Dyadic::pow2(-l);
  for (int k = 1; k <= l; ++k) {
    out.value -= Dyadic(BigInt(constants.c_const(l, k))) * Dyadic::pow2(-l - k);
  }
  for (int k = l + 1; k <= depth; ++k) {
    out.value -= Dyadic(BigInt(constants.c_const(l, k))) * quarter_pow(k);
  }
  out.tail_bound = Rational(pow_int(2, l), pow_int(3, 2 * l)) *
                   three_quarters_pow(depth).to_rational();
  return out;
}

AlphaEstimate alpha_limit(ConstantProvider& constants, int n, int depth) {
  if (n != -1 && n < 1) {
    throw std::invalid_argument("alpha limit needs n = -1 or n >= 1");
  }
  AlphaEstimate out;
  out.n = n;
  out.depth = depth;
  if (n == -1) {
    out.terms.push_back(gamma(constants, DSet{}, depth));
  } else {
    if (depth < n) throw std::invalid_argument("alpha limit needs depth >= n");
    if (n > 63) throw std::invalid_argument("alpha limit supports n <= 63");
    const std::uint64_t subsets = std::uint64_t{1} << (n - 1);
    for (std::uint64_t m = 0; m < subsets; ++m) {
      const DSet d = DSet::from_mask(m << 1).with(n);
      out.terms.push_back(gamma(constants, d, depth));
    }
  }
  for (const auto& term : out.terms) {
    out.value += term.value;
    out.tail_bound += term.tail_bound;
  }
  return out;
}

GammaTable gamma_table(ConstantProvider& constants, int max_t, int depth) {
  if (max_t < 0 || max_t > depth) {
    throw std::invalid_argument("gamma table needs 0 <= max_t <= depth");
  }
  if (max_t > 30) throw std::invalid_argument("gamma table supports max_t <= 30");
  GammaTable table;
  table.max_t = max_t;
  table.depth = depth;
  const std::uint64_t count = std::uint64_t{1} << max_t;
  table.rows.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) {
    table.rows.push_back(gamma(constants, DSet::from_mask(m << 1), depth));
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const GammaEstimate& a, const GammaEstimate& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.d < b.d;
            });
  // Rows are sorted by upper end; row j can only meet row i < j if its upper
  // end reaches row i's lower end.
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const Dyadic lo = table.rows[i].lower();
    for (std::size_t j = i + 1; j < table.rows.size(); ++j) {
      if (table.rows[j].upper() >= lo) {
        table.overlapping_pairs.emplace_back(table.rows[i].d, table.rows[j].d);
      } else {
        table.disjoint_pairs += table.rows.size() - j;
        break;
      }
    }
  }
  return table;
}

bool interval_meets(const Rational& lower, const Rational& upper,
                    const Rational& center, const Rational& radius) {
  return lower <= center + radius && upper >= center - radius;
}

std::span<const ReferenceGamma> reference_gammas() {
  static const std::vector<ReferenceGamma> rows = {
      {DSet{}, "0.48660"},         {DSet{1}, "0.09476"},
      {DSet{2}, "0.06079"},        {DSet{3}, "0.02538"},
      {DSet{1, 3}, "0.02035"},     {DSet{4}, "0.01793"},
      {DSet{1, 2}, "0.01683"},     {DSet{2, 3}, "0.01205"},
      {DSet{1, 4}, "0.01184"},     {DSet{5}, "0.01017"},
      {DSet{6}, "0.00700"},        {DSet{3, 4}, "0.00443"},
      {DSet{7}, "0.00435"},        {DSet{2, 5}, "0.00400"},
      {DSet{1, 3, 5}, "0.00332"},  {DSet{1, 2, 5}, "0.00280"},
      {DSet{8}, "0.00269"},        {DSet{1, 2, 4}, "0.00228"},
      {DSet{1, 5}, "0.00200"},     {DSet{2, 4}, "0.00191"},
      {DSet{1, 6}, "0.00186"},     {DSet{2, 6}, "0.00174"},
      {DSet{1, 2, 3}, "0.00152"},  {DSet{4, 5}, "0.00132"},
      {DSet{9}, "0.00131"},        {DSet{2, 3, 4}, "0.00106"},
      {DSet{1, 2, 6}, "0.00091"},  {DSet{1, 3, 4}, "0.00068"},
  };
  return rows;
}

}  // namespace nsdensity
