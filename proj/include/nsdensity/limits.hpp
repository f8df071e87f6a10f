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

#ifndef NSDENSITY_LIMITS_HPP_
#define NSDENSITY_LIMITS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "nsdensity/constants.hpp"
#include "nsdensity/core.hpp"
#include "nsdensity/dyadic.hpp"

namespace nsdensity {

inline constexpr int kDefaultLimitDepth = 15;

// Truncated series for the limit density of N(D, f):
//   value = A_D 4^-t - Σ_{k=t+1..depth} A_{D∪{k}} 4^-k.
// Every omitted term is nonnegative and their sum is at most (3/4)^depth,
// so the limit lies in [value - tail_bound, value].
struct GammaEstimate {
  DSet d;
  int depth = 0;
  Dyadic value;
  Dyadic tail_bound;
  // (D) followed by D ∪ {k} for k = t+1..depth, with their constants.
  std::vector<std::pair<DSet, std::uint64_t>> constants_used;

  [[nodiscard]] Dyadic lower() const { return value - tail_bound; }
  [[nodiscard]] const Dyadic& upper() const { return value; }
};

GammaEstimate gamma(ConstantProvider& constants, const DSet& d, int depth);

// a_l = (2/3) 4^-l - 3·2^l / 4^(2l+1).
Rational positivity_constant(int l);
// a_t / 2^(t+1) for t = Max(D) >= 1; nullopt for the empty set, where the
// formula gives a negative number and no bound is claimed.
std::optional<Rational> gamma_lower_bound(const DSet& d);

// Limit of |G_l(f)| / 2^(f-1), truncated at `depth` >= 2l + 1:
//   value = 2^-l - Σ_{k=1..l} C_{l,k} 2^(-l-k) - Σ_{k=l+1..depth} C_{l,k} 4^-k
// with tail bound 2^l 3^(-2l) (3/4)^depth.
struct GLimitEstimate {
  int l = 0;
  int depth = 0;
  Dyadic value;
  Rational tail_bound;

  [[nodiscard]] Rational lower() const { return value.to_rational() - tail_bound; }
  [[nodiscard]] const Dyadic& upper() const { return value; }
};

GLimitEstimate g_l_limit(ConstantProvider& constants, int l, int depth);

// Limit mass of semigroups with R(S) = n: γ_∅ for n = -1, else the sum of
// γ_{D ∪ {n}} over the 2^(n-1) subsets D of [1, n-1].
struct AlphaEstimate {
  int n = 0;
  int depth = 0;
  Dyadic value;
  Dyadic tail_bound;
  std::vector<GammaEstimate> terms;

  [[nodiscard]] Dyadic lower() const { return value - tail_bound; }
  [[nodiscard]] const Dyadic& upper() const { return value; }
};

AlphaEstimate alpha_limit(ConstantProvider& constants, int n, int depth);

// Every γ_D with Max(D) <= max_t, sorted by value descending (ties by D).
struct GammaTable {
  int max_t = 0;
  int depth = 0;
  std::vector<GammaEstimate> rows;
  // Pairs whose intervals overlap, so their distinctness is not settled.
  std::vector<std::pair<DSet, DSet>> overlapping_pairs;
  std::uint64_t disjoint_pairs = 0;
};

GammaTable gamma_table(ConstantProvider& constants, int max_t, int depth);

// [lower, upper] meets [center - radius, center + radius].
bool interval_meets(const Rational& lower, const Rational& upper,
                    const Rational& center, const Rational& radius);

// Published limit values with their stated uniform error.
struct ReferenceGamma {
  DSet d;
  std::string_view value;
};
std::span<const ReferenceGamma> reference_gammas();
inline constexpr std::string_view kReferenceGammaError = "0.00212";
// Independent estimate of γ_∅ and its stated error.
inline constexpr std::string_view kReferenceGammaEmpty = "0.484451";
inline constexpr std::string_view kReferenceGammaEmptyError = "0.005011";

}  // namespace nsdensity

#endif  // NSDENSITY_LIMITS_HPP_
