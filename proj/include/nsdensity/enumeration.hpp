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

#ifndef NSDENSITY_ENUMERATION_HPP_
#define NSDENSITY_ENUMERATION_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "nsdensity/core.hpp"
#include "nsdensity/dyadic.hpp"
#include "nsdensity/errors.hpp"

namespace nsdensity {

inline constexpr int kDefaultEnumerationBudget = 30;

struct SweepOptions {
  // 0 means std::thread::hardware_concurrency().
  int workers = 0;
  // Largest Frobenius number an exhaustive sweep may visit.
  int budget = kDefaultEnumerationBudget;
};

int resolve_workers(const SweepOptions& options);
// Throws BudgetExceeded when f exceeds the budget (or the word fast path),
// std::invalid_argument when f < 1.
void check_budget(int f, const SweepOptions& options);

// Runs a data-parallel reduction over all 2^(n_bits) indices. The index
// space is split into a fixed number of partitions that depends only on
// n_bits, each partition folds into its own accumulator, and the
// accumulators are merged in partition order. The aggregate is therefore
// identical for every worker count. `visit(acc, index)` must only touch acc.
template <class Acc, class Visit, class Merge>
Acc parallel_reduce_bits(int n_bits, int workers, Visit&& visit,
                         Merge&& merge, int max_split_bits = 8) {
  const int split_bits = std::min(n_bits, max_split_bits);
  const std::uint64_t partitions = std::uint64_t{1} << split_bits;
  const std::uint64_t chunk = std::uint64_t{1} << (n_bits - split_bits);
  std::vector<Acc> parts(partitions);

  auto run_partition = [&](std::uint64_t p) {
    Acc& acc = parts[p];
    const std::uint64_t begin = p * chunk;
    const std::uint64_t end = begin + chunk;
    for (std::uint64_t i = begin; i < end; ++i) visit(acc, i);
  };

  const auto threads = static_cast<std::uint64_t>(std::max(1, workers));
  if (threads == 1 || partitions == 1) {
    for (std::uint64_t p = 0; p < partitions; ++p) run_partition(p);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < std::min(threads, partitions); ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t p; (p = next.fetch_add(1)) < partitions;) {
          run_partition(p);
        }
      });
    }
  }

  Acc total = std::move(parts[0]);
  for (std::uint64_t p = 1; p < partitions; ++p) {
    merge(total, std::move(parts[p]));
  }
  return total;
}

// Sweeps every numerical set with Frobenius number f as a word (bits [0, f],
// bit 0 set, bit f clear). `visit(acc, t_word)`.
template <class Acc, class Visit, class Merge>
Acc sweep_numerical_sets(int f, const SweepOptions& options, Visit&& visit,
                         Merge&& merge) {
  check_budget(f, options);
  return parallel_reduce_bits<Acc>(
      f - 1, resolve_workers(options),
      [&](Acc& acc, std::uint64_t i) { visit(acc, (i << 1) | 1U); },
      std::forward<Merge>(merge));
}

// Counts numerical sets with Frobenius number f satisfying
// `pred(t_word, a_word)`, where a_word holds A(T).
template <class Pred>
std::uint64_t count_sets_if(int f, const SweepOptions& options, Pred&& pred) {
  return sweep_numerical_sets<std::uint64_t>(
      f, options,
      [&](std::uint64_t& acc, std::uint64_t t) {
        if (pred(t, word::associated(t, f))) ++acc;
      },
      [](std::uint64_t& a, std::uint64_t b) { a += b; });
}

// Visits each of the 2^(f-1) numerical sets with Frobenius number f exactly
// once, possibly from several threads concurrently.
void for_each_numerical_set(
    int f, const std::function<void(const NumericalSet&)>& visitor,
    const SweepOptions& options = {});

// Exact P(S) for every semigroup S with Frobenius number f.
class DensityTable {
 public:
  DensityTable(int f, std::map<Semigroup, std::uint64_t> entries);

  [[nodiscard]] int frobenius() const noexcept { return f_; }
  [[nodiscard]] const std::map<Semigroup, std::uint64_t>& entries() const {
    return entries_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  // Zero for a set with a different f or that is not a semigroup.
  [[nodiscard]] std::uint64_t count(const Semigroup& s) const;
  [[nodiscard]] std::uint64_t count(const DSet& d) const;
  // P(S) / 2^(f-1).
  [[nodiscard]] Dyadic mu(const Semigroup& s) const;
  [[nodiscard]] Dyadic mu(const DSet& d) const;
  [[nodiscard]] BigInt total() const;

 private:
  int f_;
  std::map<Semigroup, std::uint64_t> entries_;
};

DensityTable density_table(int f, const SweepOptions& options = {});

// |B(D, f)|: sets whose A(T) meets [f - Max(D), f - 1] in exactly
// {f - l : l ∈ D}. Requires f > 2·Max(D).
std::uint64_t count_B(const DSet& d, int f, const SweepOptions& options = {});

// |B_l(k, f)| = |{T ∈ B({k}, f) : T ∩ [1, l] = ∅}|.
// Requires f >= 2k + 1, or k < l and f >= l + k + 1.
std::uint64_t count_B_l(int l, int k, int f, const SweepOptions& options = {});

// |G_l(f)| = |{T : A(T) = N_f, T ∩ [1, l] = ∅}|. Requires f > 2l, l >= 0.
std::uint64_t count_G_l(int l, int f, const SweepOptions& options = {});

// |S(D, f)|: members of B(D, f) with 2·m(A(T)) <= f.
std::uint64_t count_S(const DSet& d, int f, const SweepOptions& options = {});

// Members of B(D, f) outside {T : A(T) = N(D, f)} whose largest element of
// A(T) ∩ [1, f - Max(D) - 1] is at most f/2, i.e. the union of B(D ∪ {k}, f)
// over k >= ceil(f/2). Together with the B(D ∪ {k}, f) for
// Max(D) < k <= floor((f-1)/2) these partition the complement exactly,
// whereas S(D, f) also meets some of those lower-k sets.
std::uint64_t count_high_complement(const DSet& d, int f,
                                    const SweepOptions& options = {});

// #{T : m(A(T)) <= bound}. Requires 1 <= bound <= f.
std::uint64_t count_small_multiplicity(int f, int bound,
                                       const SweepOptions& options = {});

// Entry m holds #{T : m(A(T)) = m} for m in [0, f + 1]; entry 0 is unused.
std::vector<std::uint64_t> multiplicity_histogram(
    int f, const SweepOptions& options = {});

// Entry n + 1 holds #{T : R(A(T)) = n} for n in [-1, f - 1].
std::vector<std::uint64_t> r_histogram(int f, const SweepOptions& options = {});

// α_n(f) = #{T : R(A(T)) = n} / 2^(f-1). Requires n >= -1.
Dyadic alpha_empirical(int f, int n, const SweepOptions& options = {});

// Tagged counting request, dispatched by evaluate().
struct CountB {
  DSet d;
  int f;
};
struct CountBl {
  int l;
  int k;
  int f;
};
struct CountGl {
  int l;
  int f;
};
struct CountS {
  DSet d;
  int f;
};
struct CountSmallMultiplicity {
  int f;
  int bound;
};
using CountQuery =
    std::variant<CountB, CountBl, CountGl, CountS, CountSmallMultiplicity>;

std::uint64_t evaluate(const CountQuery& query,
                       const SweepOptions& options = {});

}  // namespace nsdensity

#endif  // NSDENSITY_ENUMERATION_HPP_
