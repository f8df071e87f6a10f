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

#ifndef NSDENSITY_CORE_HPP_
#define NSDENSITY_CORE_HPP_

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nsdensity {

// Largest supported Frobenius number. Bits [0, f] must fit the fixed mask.
inline constexpr int kMaxFrobenius = 255;
// Largest Frobenius number served by the single-word fast path.
inline constexpr int kWordFrobenius = 63;

// A finite set of positive integers, kept sorted ascending without
// duplicates. Max of the empty set is 0.
class DSet {
 public:
  DSet() = default;
  // Canonicalizes (sorts, drops duplicates). Rejects non-positive elements.
  explicit DSet(std::vector<int> elements);
  DSet(std::initializer_list<int> elements)
      : DSet(std::vector<int>(elements)) {}

  // Accepts "" or "∅" for the empty set, else strictly ascending
  // comma-separated positive decimals ("1,3").
  static DSet parse(std::string_view text);
  // Bit l set means l is in D (bit 0 must be clear).
  static DSet from_mask(std::uint64_t mask);

  [[nodiscard]] int max() const noexcept {
    return elements_.empty() ? 0 : elements_.back();
  }
  [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] std::span<const int> elements() const noexcept {
    return elements_;
  }
  [[nodiscard]] bool contains(int l) const noexcept;
  [[nodiscard]] DSet with(int k) const;

  // Cache key: "∅" for the empty set, else "1,3".
  [[nodiscard]] std::string key() const;
  // Bit l set for l in D. Requires max() <= 63.
  [[nodiscard]] std::uint64_t mask() const;

  friend bool operator==(const DSet&, const DSet&) = default;
  friend auto operator<=>(const DSet&, const DSet&) = default;

 private:
  std::vector<int> elements_;
};

// A numerical set T with Frobenius number f: 0 is in T, f is not, and every
// integer above f is. Membership of [0, f] is stored as a bitmask with bit x
// set iff x is in T.
class NumericalSet {
 public:
  static constexpr int kWords = (kMaxFrobenius + 1) / 64;
  using Words = std::array<std::uint64_t, kWords>;

  // Members must lie in [1, f-1]; f must be in [1, kMaxFrobenius].
  static NumericalSet make(int f, std::span<const int> members);
  static NumericalSet make(int f, std::initializer_list<int> members) {
    return make(f, std::span<const int>(members.begin(), members.size()));
  }
  // Bits of `word` outside [0, f-1] must be clear; bit 0 is forced on.
  static NumericalSet from_word(int f, std::uint64_t word);
  // N_f = {0} ∪ (f, ∞).
  static NumericalSet minimal(int f);

  [[nodiscard]] int frobenius() const noexcept { return f_; }
  [[nodiscard]] bool contains(long long x) const noexcept;
  // T ∩ [1, f-1], ascending.
  [[nodiscard]] std::vector<int> small_members() const;
  [[nodiscard]] const Words& words() const noexcept { return words_; }
  [[nodiscard]] bool fits_word() const noexcept { return f_ <= kWordFrobenius; }
  // Bits [0, f] as one word. Requires fits_word().
  [[nodiscard]] std::uint64_t word() const;
  // "{0, 2, 3, 7->}".
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const NumericalSet&, const NumericalSet&) = default;
  friend auto operator<=>(const NumericalSet&, const NumericalSet&) = default;

 private:
  NumericalSet(int f, const Words& words) : f_(f), words_(words) {}

  int f_ = 1;
  Words words_{};

  friend NumericalSet associated_set(const NumericalSet&);
  friend NumericalSet associated_set_general(const NumericalSet&);
};

// A numerical set known to be closed under addition.
class Semigroup {
 public:
  static std::optional<Semigroup> from(const NumericalSet& set);
  // Throws std::invalid_argument if `set` is not closed under addition.
  static Semigroup checked(const NumericalSet& set);
  static Semigroup minimal(int f) { return Semigroup(NumericalSet::minimal(f)); }

  [[nodiscard]] const NumericalSet& set() const noexcept { return set_; }
  [[nodiscard]] int frobenius() const noexcept { return set_.frobenius(); }
  [[nodiscard]] bool contains(long long x) const noexcept {
    return set_.contains(x);
  }
  [[nodiscard]] std::string to_string() const { return set_.to_string(); }

  friend bool operator==(const Semigroup&, const Semigroup&) = default;
  friend auto operator<=>(const Semigroup&, const Semigroup&) = default;

 private:
  explicit Semigroup(NumericalSet set) : set_(std::move(set)) {}
  NumericalSet set_;

  friend Semigroup associated_semigroup(const NumericalSet&);
  friend Semigroup assume_semigroup(const NumericalSet&);
};

NumericalSet make_numerical_set(int f, std::span<const int> members);

// Wraps a set already known to be closed under addition, without checking.
// Internal use by sweeps that build semigroups from A(T) words.
Semigroup assume_semigroup(const NumericalSet& set);

// A(T) = {t : t + T ⊆ T}. Uses the word fast path when f <= 63.
Semigroup associated_semigroup(const NumericalSet& t);
// Same result via the multi-word path regardless of f.
NumericalSet associated_set_general(const NumericalSet& t);
NumericalSet associated_set(const NumericalSet& t);

bool is_semigroup(const NumericalSet& t);

// N(D, f). `certified_semigroup` is f > 2·Max(D); below that the result is a
// numerical set that may or may not be closed under addition.
struct FamilyMember {
  NumericalSet set;
  bool certified_semigroup;
};
// Throws std::invalid_argument unless f > Max(D).
FamilyMember n_of(const DSet& d, int f);
DSet d_of(const Semigroup& s);

int multiplicity(const Semigroup& s);
int r_value(const Semigroup& s);

// Block layout for the fold map: keep T ∩ [1, prefix] in place, translate
// T ∩ [f - suffix, f - 1] down to [f_target - suffix, f_target - 1].
struct FoldBlocks {
  int prefix;
  int suffix;
};
// Throws std::invalid_argument if f(T) < f_target or the blocks overlap in
// the target (prefix + suffix >= f_target).
NumericalSet fold(const NumericalSet& t, FoldBlocks blocks, int f_target);
// Symmetric fold: prefix = suffix = window.
NumericalSet fold(const NumericalSet& t, int window, int f_target);

// Single-word kernels used by the sweeps. A word holds bits [0, f] of a
// numerical set with bit 0 set and bit f clear, f <= 63.
namespace word {

constexpr std::uint64_t span_mask(int lo, int hi) noexcept {
  // Bits [lo, hi]; empty when hi < lo.
  if (hi < lo) return 0;
  const std::uint64_t upper =
      hi >= 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (hi + 1)) - 1);
  return upper & ~((std::uint64_t{1} << lo) - 1);
}

// Bits of A(T) in [0, f].
inline std::uint64_t associated(std::uint64_t t, int f) noexcept {
  const std::uint64_t gaps = ~t & span_mask(0, f);
  std::uint64_t bad = 0;
  for (std::uint64_t rest = t; rest != 0; rest &= rest - 1) {
    bad |= gaps >> std::countr_zero(rest);
  }
  return ~bad & span_mask(0, f);
}

// Least positive element; f + 1 when [1, f] holds none.
inline int multiplicity(std::uint64_t s_word, int f) noexcept {
  const std::uint64_t small = s_word & span_mask(1, f);
  return small == 0 ? f + 1 : std::countr_zero(small);
}

}  // namespace word

}  // namespace nsdensity

#endif  // NSDENSITY_CORE_HPP_
