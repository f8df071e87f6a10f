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

#ifndef NSDENSITY_CONSTANTS_HPP_
#define NSDENSITY_CONSTANTS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsdensity/core.hpp"
#include "nsdensity/enumeration.hpp"

namespace nsdensity {

// Largest t for which A_D (Max(D) = t) is computed without an override.
inline constexpr int kDefaultDepthBudget = 15;
// Hard ceiling: the window sweep visits 4^t sets and counts must fit 64 bits.
inline constexpr int kMaxDepth = 31;

// Suffix-window histogram at f = 2t + 1 over the sets with T ∩ [1, l] = ∅.
//
// Entry w counts the sets T whose window {l : f - l ∈ A(T), 1 <= l <= t},
// encoded with bit l - 1 for l, equals w. With l = 0 the entries sum to 4^t
// and entry D (Max(D) = t) is A_D.
//
// At f = 2t + 1 a set splits into its prefix p = T ∩ [1, t] and its suffix
// s = {x : f - x ∈ T, 1 <= x <= t}. f - x lies in A(T) iff x ∈ s and
// x - y ∈ s for every y ∈ p with y <= x (reading 0 ∉ s, since f ∉ T). The
// excluded positions are therefore the union over y ∈ p of the complement
// of s shifted up by y, which is built incrementally one prefix bit at a time.
std::vector<std::uint64_t> window_histogram(int t, int l = 0,
                                            const SweepOptions& options = {});

// One sweep at f = 2t + 1; A_D for every D with Max(D) = t. Pure (no cache).
std::map<DSet, std::uint64_t> compute_a_batch(int t,
                                              const SweepOptions& options = {});

// C_{l,k} from its definition by enumeration, for any l >= 1, k >= 1.
std::uint64_t compute_c_const(int l, int k, const SweepOptions& options = {});

// 3^(t-1), the cap on A_D for Max(D) = t >= 1.
std::uint64_t a_const_cap(int t);
// 2^l · 3^(k-2l-1), the cap on C_{l,k} for k >= 2l + 2.
std::uint64_t c_const_cap(int l, int k);

// Exact constants keyed by canonical D and by (l, k).
class ConstantCache {
 public:
  [[nodiscard]] std::optional<std::uint64_t> find_a(const DSet& d) const;
  [[nodiscard]] std::optional<std::uint64_t> find_c(int l, int k) const;
  // A different value for an existing key throws CacheError.
  void insert_a(const DSet& d, std::uint64_t value);
  void insert_c(int l, int k, std::uint64_t value);
  // Union; conflicting values throw CacheError and leave *this unchanged.
  void merge(const ConstantCache& other);

  [[nodiscard]] const std::map<DSet, std::uint64_t>& a_entries() const {
    return a_;
  }
  [[nodiscard]] const std::map<std::pair<int, int>, std::uint64_t>& c_entries()
      const {
    return c_;
  }
  [[nodiscard]] bool empty() const { return a_.empty() && c_.empty(); }
  // Number of cached D with Max(D) = t.
  [[nodiscard]] std::size_t a_count_at(int t) const;
  // True when every D with Max(D) = t is cached.
  [[nodiscard]] bool depth_complete(int t) const;
  // Largest N with depths 0..N complete; -1 if A_∅ is missing.
  [[nodiscard]] int complete_depth() const;

  // Sorted records "A|<key>|<value>" / "C|<l>,<k>|<value>", LF-terminated,
  // preceded by a '#' provenance line.
  [[nodiscard]] std::string serialize() const;
  static ConstantCache parse(std::string_view text);

  friend bool operator==(const ConstantCache&, const ConstantCache&) = default;

 private:
  std::map<DSet, std::uint64_t> a_;
  std::map<std::pair<int, int>, std::uint64_t> c_;
};

ConstantCache cache_load(const std::filesystem::path& path);
void cache_store(const ConstantCache& cache, const std::filesystem::path& path);

// Serves constants from a cache and fills gaps by enumeration. Safe to share
// between threads: the cache is guarded by a mutex, sweeps run outside it,
// and a batch is published only after its sweep completes.
class ConstantProvider {
 public:
  explicit ConstantProvider(ConstantCache cache = {}, SweepOptions options = {},
                            int depth_budget = kDefaultDepthBudget);

  std::uint64_t a_const(const DSet& d);
  // A_D for all D with Max(D) = t. A fresh sweep is cross-checked against
  // every cached constant of smaller depth before it is published.
  std::map<DSet, std::uint64_t> a_consts_batch(int t);
  std::uint64_t c_const(int l, int k);
  // Makes depths 0..t available.
  void ensure_depth(int t);

  [[nodiscard]] ConstantCache snapshot() const;
  // True once anything has been computed that was not loaded.
  [[nodiscard]] bool dirty() const;
  [[nodiscard]] int depth_budget() const noexcept { return depth_budget_; }
  [[nodiscard]] const SweepOptions& options() const noexcept {
    return options_;
  }

 private:
  void check_depth(int t) const;

  mutable std::mutex mutex_;
  ConstantCache cache_;
  SweepOptions options_;
  int depth_budget_;
  bool dirty_ = false;
};

}  // namespace nsdensity

#endif  // NSDENSITY_CONSTANTS_HPP_
