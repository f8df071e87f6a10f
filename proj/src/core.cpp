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

#include "nsdensity/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace nsdensity {
namespace {

using Words = NumericalSet::Words;
constexpr int kWords = NumericalSet::kWords;

bool test_bit(const Words& w, int x) {
  return ((w[x / 64] >> (x % 64)) & 1U) != 0;
}

void set_bit(Words& w, int x) { w[x / 64] |= std::uint64_t{1} << (x % 64); }

Words shift_right(const Words& w, int n) {
  Words out{};
  const int word_shift = n / 64;
  const int bit_shift = n % 64;
  for (int i = 0; i + word_shift < kWords; ++i) {
    out[i] = w[i + word_shift] >> bit_shift;
    if (bit_shift != 0 && i + word_shift + 1 < kWords) {
      out[i] |= w[i + word_shift + 1] << (64 - bit_shift);
    }
  }
  return out;
}

// Bits [0, f].
Words low_mask(int f) {
  Words out{};
  for (int i = 0; i < kWords; ++i) {
    const int lo = i * 64;
    if (f >= lo + 63) {
      out[i] = ~std::uint64_t{0};
    } else if (f >= lo) {
      out[i] = (std::uint64_t{1} << (f - lo + 1)) - 1;
    }
  }
  return out;
}

void check_frobenius(int f) {
  if (f < 1 || f > kMaxFrobenius) {
    throw std::invalid_argument("Frobenius number " + std::to_string(f) +
                                " outside [1, " +
                                std::to_string(kMaxFrobenius) + "]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DSet

DSet::DSet(std::vector<int> elements) : elements_(std::move(elements)) {
  for (int l : elements_) {
    if (l <= 0) {
      throw std::invalid_argument("D must contain positive integers, got " +
                                  std::to_string(l));
    }
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
}

DSet DSet::parse(std::string_view text) {
  if (text.empty() || text == "∅") return DSet{};
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    int value = 0;
    const auto [end, ec] =
        std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size() ||
        value <= 0) {
      throw std::invalid_argument("malformed D element '" + std::string(item) +
                                  "'");
    }
    if (!out.empty() && value <= out.back()) {
      throw std::invalid_argument("D must be strictly ascending: '" +
                                  std::string(text) + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return DSet(std::move(out));
}

DSet DSet::from_mask(std::uint64_t mask) {
  if ((mask & 1U) != 0) {
    throw std::invalid_argument("D mask must not contain bit 0");
  }
  std::vector<int> out;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return DSet(std::move(out));
}

bool DSet::contains(int l) const noexcept {
  return std::binary_search(elements_.begin(), elements_.end(), l);
}

DSet DSet::with(int k) const {
  std::vector<int> out = elements_;
  out.push_back(k);
  return DSet(std::move(out));
}

std::string DSet::key() const {
  if (elements_.empty()) return "∅";
  std::string out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(elements_[i]);
  }
  return out;
}

std::uint64_t DSet::mask() const {
  if (max() > 63) throw std::invalid_argument("D too large for a word mask");
  std::uint64_t out = 0;
  for (int l : elements_) out |= std::uint64_t{1} << l;
  return out;
}

// ---------------------------------------------------------------------------
// NumericalSet

NumericalSet NumericalSet::make(int f, std::span<const int> members) {
  check_frobenius(f);
  Words w{};
  set_bit(w, 0);
  for (int x : members) {
    if (x < 1 || x > f - 1) {
      throw std::invalid_argument("member " + std::to_string(x) +
                                  " outside [1, " + std::to_string(f - 1) +
                                  "]");
    }
    set_bit(w, x);
  }
  return NumericalSet(f, w);
}

NumericalSet NumericalSet::from_word(int f, std::uint64_t word) {
  if (f < 1 || f > kWordFrobenius) {
    throw std::invalid_argument("from_word needs f in [1, 63]");
  }
  if ((word & ~word::span_mask(0, f - 1)) != 0) {
    throw std::invalid_argument("word has members outside [0, f-1]");
  }
  Words w{};
  w[0] = word | 1U;
  return NumericalSet(f, w);
}

NumericalSet NumericalSet::minimal(int f) {
  check_frobenius(f);
  Words w{};
  set_bit(w, 0);
  return NumericalSet(f, w);
}

bool NumericalSet::contains(long long x) const noexcept {
  if (x < 0) return false;
  if (x > f_) return true;
  return test_bit(words_, static_cast<int>(x));
}

std::vector<int> NumericalSet::small_members() const {
  std::vector<int> out;
  for (int x = 1; x < f_; ++x) {
    if (test_bit(words_, x)) out.push_back(x);
  }
  return out;
}

std::uint64_t NumericalSet::word() const {
  if (!fits_word()) throw std::invalid_argument("set too large for a word");
  return words_[0];
}

std::string NumericalSet::to_string() const {
  std::ostringstream os;
  os << "{0";
  for (int x : small_members()) os << ", " << x;
  os << ", " << f_ + 1 << "->}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Semigroup

std::optional<Semigroup> Semigroup::from(const NumericalSet& set) {
  if (!is_semigroup(set)) return std::nullopt;
  return Semigroup(set);
}

Semigroup Semigroup::checked(const NumericalSet& set) {
  auto s = from(set);
  if (!s) {
    throw std::invalid_argument(set.to_string() +
                                " is not closed under addition");
  }
  return *std::move(s);
}

Semigroup assume_semigroup(const NumericalSet& set) { return Semigroup(set); }

NumericalSet make_numerical_set(int f, std::span<const int> members) {
  return NumericalSet::make(f, members);
}

// ---------------------------------------------------------------------------
// Associated semigroup

// t is missing from A(T) iff t = g - x for some gap g <= f and some x in T.
// So the gaps of A(T) are the union of the gap mask shifted down by each x.
NumericalSet associated_set_general(const NumericalSet& t) {
  const int f = t.f_;
  const Words range = low_mask(f);
  Words gaps{};
  for (int i = 0; i < kWords; ++i) gaps[i] = ~t.words_[i] & range[i];
  Words bad{};
  for (int x = 0; x < f; ++x) {
    if (!test_bit(t.words_, x)) continue;
    const Words shifted = shift_right(gaps, x);
    for (int i = 0; i < kWords; ++i) bad[i] |= shifted[i];
  }
  Words out{};
  for (int i = 0; i < kWords; ++i) out[i] = ~bad[i] & range[i];
  return NumericalSet(f, out);
}

NumericalSet associated_set(const NumericalSet& t) {
  if (!t.fits_word()) return associated_set_general(t);
  Words out{};
  out[0] = word::associated(t.words_[0], t.f_);
  return NumericalSet(t.f_, out);
}

Semigroup associated_semigroup(const NumericalSet& t) {
  return Semigroup(associated_set(t));
}

bool is_semigroup(const NumericalSet& t) {
  // Closed under addition iff A(T) = T.
  return associated_set(t) == t;
}

// ---------------------------------------------------------------------------
// Structural maps

FamilyMember n_of(const DSet& d, int f) {
  if (f <= d.max()) {
    throw std::invalid_argument("N(D, f) needs f > Max(D) = " +
                                std::to_string(d.max()));
  }
  std::vector<int> members;
  members.reserve(d.size());
  for (int l : d.elements()) members.push_back(f - l);
  return {NumericalSet::make(f, members), f > 2 * d.max()};
}

DSet d_of(const Semigroup& s) {
  const int f = s.frobenius();
  std::vector<int> out;
  for (int x : s.set().small_members()) out.push_back(f - x);
  return DSet(std::move(out));
}

int multiplicity(const Semigroup& s) {
  const auto small = s.set().small_members();
  return small.empty() ? s.frobenius() + 1 : small.front();
}

int r_value(const Semigroup& s) { return s.frobenius() - multiplicity(s); }

NumericalSet fold(const NumericalSet& t, FoldBlocks blocks, int f_target) {
  const int f = t.frobenius();
  if (blocks.prefix < 0 || blocks.suffix < 0) {
    throw std::invalid_argument("fold blocks must be non-negative");
  }
  if (f_target < 1 || f < f_target) {
    throw std::invalid_argument("fold needs 1 <= f_target <= f(T)");
  }
  if (blocks.prefix + blocks.suffix >= f_target) {
    throw std::invalid_argument(
        "fold blocks overlap: prefix + suffix must be < f_target");
  }
  std::vector<int> members;
  for (int x = 1; x <= blocks.prefix; ++x) {
    if (t.contains(x)) members.push_back(x);
  }
  for (int j = 1; j <= blocks.suffix; ++j) {
    if (t.contains(f - j)) members.push_back(f_target - j);
  }
  return NumericalSet::make(f_target, members);
}

NumericalSet fold(const NumericalSet& t, int window, int f_target) {
  return fold(t, FoldBlocks{window, window}, f_target);
}

}  // namespace nsdensity
