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

#include "nsdensity/enumeration.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace nsdensity {
namespace {

using word::span_mask;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Predicate "A(T) ∩ [f - t, f - 1] = {f - l : l ∈ D}" on A(T) words.
struct WindowMatch {
  WindowMatch(const DSet& d, int f) : low(f - d.max()) {
    const int t = d.max();
    for (int l : d.elements()) target |= std::uint64_t{1} << (t - l);
    width = span_mask(0, t - 1);
  }
  bool operator()(std::uint64_t a) const {
    return ((a >> low) & width) == target;
  }
  int low;
  std::uint64_t width = 0;
  std::uint64_t target = 0;
};

void add_histograms(std::vector<std::uint64_t>& a,
                    std::vector<std::uint64_t>&& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

}  // namespace

int resolve_workers(const SweepOptions& options) {
  if (options.workers > 0) return options.workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void check_budget(int f, const SweepOptions& options) {
  require(f >= 1, "Frobenius number must be positive");
  const int limit = std::min(options.budget, kWordFrobenius);
  if (f > limit) {
    throw BudgetExceeded("exhaustive sweep at f = " + std::to_string(f) +
                         " exceeds the enumeration budget f <= " +
                         std::to_string(limit));
  }
}

void for_each_numerical_set(
    int f, const std::function<void(const NumericalSet&)>& visitor,
    const SweepOptions& options) {
  struct Empty {};
  sweep_numerical_sets<Empty>(
      f, options,
      [&](Empty&, std::uint64_t t) {
        visitor(NumericalSet::from_word(f, t));
      },
      [](Empty&, Empty&&) {});
}

// ---------------------------------------------------------------------------
// DensityTable

DensityTable::DensityTable(int f, std::map<Semigroup, std::uint64_t> entries)
    : f_(f), entries_(std::move(entries)) {}

std::uint64_t DensityTable::count(const Semigroup& s) const {
  const auto it = entries_.find(s);
  return it == entries_.end() ? 0 : it->second;
}

std::uint64_t DensityTable::count(const DSet& d) const {
  if (f_ <= d.max()) return 0;
  const auto s = Semigroup::from(n_of(d, f_).set);
  return s ? count(*s) : 0;
}

Dyadic DensityTable::mu(const Semigroup& s) const {
  return Dyadic(BigInt(count(s)), f_ - 1);
}

Dyadic DensityTable::mu(const DSet& d) const {
  return Dyadic(BigInt(count(d)), f_ - 1);
}

BigInt DensityTable::total() const {
  BigInt sum = 0;
  for (const auto& [s, p] : entries_) sum += p;
  return sum;
}

DensityTable density_table(int f, const SweepOptions& options) {
  using Counts = std::unordered_map<std::uint64_t, std::uint64_t>;
  Counts counts = sweep_numerical_sets<Counts>(
      f, options,
      [f](Counts& acc, std::uint64_t t) { ++acc[word::associated(t, f)]; },
      [](Counts& a, Counts&& b) {
        for (const auto& [key, p] : b) a[key] += p;
      });
  std::map<Semigroup, std::uint64_t> entries;
  for (const auto& [a, p] : counts) {
    entries.emplace(assume_semigroup(NumericalSet::from_word(f, a)), p);
  }
  return DensityTable(f, std::move(entries));
}

// ---------------------------------------------------------------------------
// Counters

std::uint64_t count_B(const DSet& d, int f, const SweepOptions& options) {
  require(f > 2 * d.max(), "B(D, f) needs f > 2·Max(D)");
  check_budget(f, options);
  const WindowMatch match(d, f);
  return count_sets_if(f, options,
                       [&](std::uint64_t, std::uint64_t a) { return match(a); });
}

std::uint64_t count_B_l(int l, int k, int f, const SweepOptions& options) {
  require(l >= 0 && k >= 1, "B_l(k, f) needs l >= 0 and k >= 1");
  require(f >= 2 * k + 1 || (k < l && f >= l + k + 1),
          "B_l(k, f) needs f >= 2k+1, or k < l and f >= l+k+1");
  check_budget(f, options);
  const WindowMatch match(DSet{k}, f);
  const std::uint64_t prefix = span_mask(1, std::min(l, f - 1));
  return count_sets_if(f, options, [&](std::uint64_t t, std::uint64_t a) {
    return (t & prefix) == 0 && match(a);
  });
}

std::uint64_t count_G_l(int l, int f, const SweepOptions& options) {
  require(l >= 0, "G_l(f) needs l >= 0");
  require(f > 2 * l, "G_l(f) needs f > 2l");
  check_budget(f, options);
  const std::uint64_t prefix = span_mask(1, l);
  const std::uint64_t minimal = 1;
  return count_sets_if(f, options, [&](std::uint64_t t, std::uint64_t a) {
    return a == minimal && (t & prefix) == 0;
  });
}

std::uint64_t count_S(const DSet& d, int f, const SweepOptions& options) {
  require(f > 2 * d.max(), "S(D, f) needs f > 2·Max(D)");
  check_budget(f, options);
  const WindowMatch match(d, f);
  return count_sets_if(f, options, [&](std::uint64_t, std::uint64_t a) {
    return 2 * word::multiplicity(a, f) <= f && match(a);
  });
}

std::uint64_t count_high_complement(const DSet& d, int f,
                                    const SweepOptions& options) {
  require(f > 2 * d.max(), "B(D, f) needs f > 2·Max(D)");
  check_budget(f, options);
  const WindowMatch match(d, f);
  const std::uint64_t middle = span_mask(1, f - d.max() - 1);
  return count_sets_if(f, options, [&](std::uint64_t, std::uint64_t a) {
    const std::uint64_t inner = a & middle;
    if (inner == 0 || !match(a)) return false;
    return 2 * (63 - std::countl_zero(inner)) <= f;
  });
}

std::uint64_t count_small_multiplicity(int f, int bound,
                                       const SweepOptions& options) {
  require(bound >= 1 && bound <= f, "bound must lie in [1, f]");
  check_budget(f, options);
  return count_sets_if(f, options, [&](std::uint64_t, std::uint64_t a) {
    return word::multiplicity(a, f) <= bound;
  });
}

std::vector<std::uint64_t> multiplicity_histogram(int f,
                                                  const SweepOptions& options) {
  using Hist = std::vector<std::uint64_t>;
  const auto size = static_cast<std::size_t>(f) + 2;
  Hist out = sweep_numerical_sets<Hist>(
      f, options,
      [&](Hist& acc, std::uint64_t t) {
        if (acc.empty()) acc.resize(size);
        ++acc[static_cast<std::size_t>(
            word::multiplicity(word::associated(t, f), f))];
      },
      add_histograms);
  out.resize(size);
  return out;
}

std::vector<std::uint64_t> r_histogram(int f, const SweepOptions& options) {
  const auto by_m = multiplicity_histogram(f, options);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(f) + 1);
  for (int m = 1; m <= f + 1; ++m) {
    out[static_cast<std::size_t>(f - m + 1)] += by_m[static_cast<std::size_t>(m)];
  }
  return out;
}

Dyadic alpha_empirical(int f, int n, const SweepOptions& options) {
  require(n >= -1, "alpha_n(f) needs n >= -1");
  check_budget(f, options);
  if (n > f - 1) return Dyadic(0);
  const auto hist = r_histogram(f, options);
  return Dyadic(BigInt(hist[static_cast<std::size_t>(n + 1)]), f - 1);
}

std::uint64_t evaluate(const CountQuery& query, const SweepOptions& options) {
  struct Dispatch {
    const SweepOptions& options;
    std::uint64_t operator()(const CountB& q) const {
      return count_B(q.d, q.f, options);
    }
    std::uint64_t operator()(const CountBl& q) const {
      return count_B_l(q.l, q.k, q.f, options);
    }
    std::uint64_t operator()(const CountGl& q) const {
      return count_G_l(q.l, q.f, options);
    }
    std::uint64_t operator()(const CountS& q) const {
      return count_S(q.d, q.f, options);
    }
    std::uint64_t operator()(const CountSmallMultiplicity& q) const {
      return count_small_multiplicity(q.f, q.bound, options);
    }
  };
  return std::visit(Dispatch{options}, query);
}

}  // namespace nsdensity
