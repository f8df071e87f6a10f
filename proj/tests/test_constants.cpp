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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include <algorithm>
#include <sstream>

#include "nsdensity/constants.hpp"
#include "nsdensity/errors.hpp"
#include "oracle.hpp"

namespace nsdensity {
namespace {

std::vector<int> elems(const DSet& d) {
  return {d.elements().begin(), d.elements().end()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("nsdensity_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(WindowHistogram, PartitionsAllSets) {
  EXPECT_EQ(window_histogram(0), std::vector<std::uint64_t>{1});
  for (int t = 1; t <= 10; ++t) {
    const auto hist = window_histogram(t);
    ASSERT_EQ(hist.size(), std::size_t{1} << t);
    BigInt sum = 0;
    for (auto c : hist) sum += c;
    EXPECT_EQ(sum, BigInt(1) << (2 * t)) << "t = " << t;
  }
}

TEST(WindowHistogram, BatchMatchesOracle) {
  for (int t = 0; t <= 5; ++t) {
    for (const auto& [d, a] : compute_a_batch(t)) {
      ASSERT_EQ(d.max(), t);
      ASSERT_EQ(a, oracle::count_b(elems(d), 2 * t + 1)) << d.key();
    }
  }
  EXPECT_EQ(compute_a_batch(1).at(DSet{1}), 1U);
  EXPECT_EQ(compute_a_batch(2).at(DSet{2}), 2U);
  EXPECT_EQ(compute_a_batch(2).at(DSet{1, 2}), 1U);
}

TEST(WindowHistogram, IndependentOfWorkerCount) {
  EXPECT_EQ(window_histogram(11, 0, SweepOptions{1}),
            window_histogram(11, 0, SweepOptions{7}));
  EXPECT_EQ(window_histogram(9, 2, SweepOptions{1}),
            window_histogram(9, 2, SweepOptions{3}));
}

TEST(Caps, Values) {
  EXPECT_EQ(a_const_cap(1), 1U);
  EXPECT_EQ(a_const_cap(5), 81U);
  EXPECT_EQ(c_const_cap(1, 4), 6U);
  EXPECT_EQ(c_const_cap(2, 8), 108U);
}

TEST(CConstants, MatchDefinition) {
  auto oracle_c = [](int l, int k) {
    const int f = k >= l ? 2 * k + 1 : l + k + 1;
    std::uint64_t n = 0;
    oracle::for_each_set(f, [&](const oracle::Set& t) {
      for (int x = 1; x <= l; ++x) {
        if (t.has(x)) return;
      }
      if (oracle::window_matches(oracle::associated(t), {k})) ++n;
    });
    return n;
  };
  for (int l = 1; l <= 3; ++l) {
    for (int k = 1; k <= 6; ++k) {
      ASSERT_EQ(compute_c_const(l, k), oracle_c(l, k))
          << "l = " << l << " k = " << k;
    }
  }
  EXPECT_LE(compute_c_const(1, 4), 6U);
}

TEST(Cache, InsertFindConflict) {
  ConstantCache cache;
  EXPECT_TRUE(cache.empty());
  cache.insert_a(DSet{1, 3}, 3);
  cache.insert_a(DSet{1, 3}, 3);
  cache.insert_c(1, 4, 6);
  EXPECT_EQ(cache.find_a(DSet{1, 3}), 3U);
  EXPECT_FALSE(cache.find_a(DSet{3}).has_value());
  EXPECT_EQ(cache.find_c(1, 4), 6U);
  EXPECT_THROW(cache.insert_a(DSet{1, 3}, 4), CacheError);
  EXPECT_THROW(cache.insert_c(1, 4, 5), CacheError);
}

TEST(Cache, MergeIsAtomic) {
  ConstantCache a;
  a.insert_a(DSet{1}, 1);
  ConstantCache b;
  b.insert_a(DSet{2}, 2);
  b.insert_a(DSet{1}, 9);
  const ConstantCache before = a;
  EXPECT_THROW(a.merge(b), CacheError);
  EXPECT_EQ(a, before);

  ConstantCache c;
  c.insert_a(DSet{2}, 2);
  a.merge(c);
  EXPECT_EQ(a.find_a(DSet{2}), 2U);
}

TEST(Cache, SerializeIsSortedAndRoundTrips) {
  ConstantCache cache;
  cache.insert_a(DSet{2}, 2);
  cache.insert_a(DSet{}, 1);
  cache.insert_a(DSet{1, 2}, 1);
  cache.insert_a(DSet{1}, 1);
  cache.insert_c(2, 10, 17);
  cache.insert_c(1, 4, 5);
  const std::string text = cache.serialize();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  ASSERT_EQ(text.back(), '\n');

  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.front() != '#') lines.push_back(line);
  }
  EXPECT_TRUE(std::is_sorted(lines.begin(), lines.end()));
  EXPECT_NE(std::find(lines.begin(), lines.end(), "A|∅|1"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), "A|1,2|1"), lines.end());
  EXPECT_NE(std::find(lines.begin(), lines.end(), "C|2,10|17"), lines.end());
  EXPECT_EQ(cache.complete_depth(), 2);
  EXPECT_EQ(ConstantCache::parse(text), cache);
}

TEST(Cache, ParseRejectsMalformedInput) {
  EXPECT_TRUE(ConstantCache::parse("").empty());
  EXPECT_TRUE(ConstantCache::parse("# comment only\n\n").empty());
  EXPECT_THROW(ConstantCache::parse("A|3,1|2\n"), CacheError);
  EXPECT_THROW(ConstantCache::parse("A||1\n"), CacheError);
  EXPECT_THROW(ConstantCache::parse("B|1|1\n"), CacheError);
  EXPECT_THROW(ConstantCache::parse("A|1\n"), CacheError);
  EXPECT_THROW(ConstantCache::parse("A|1|x\n"), CacheError);
  EXPECT_THROW(ConstantCache::parse("A|1|1|1\n"), CacheError);
  EXPECT_THROW(ConstantCache::parse("C|4|1\n"), CacheError);
  EXPECT_THROW(ConstantCache::parse("A|1|1\nA|1|2\n"), CacheError);
}

TEST(Cache, FileRoundTrip) {
  const auto path = temp_path("roundtrip.cache");
  ConstantCache cache;
  cache.insert_a(DSet{1, 3}, 3);
  cache.insert_c(1, 4, 5);
  cache_store(cache, path);
  EXPECT_EQ(cache_load(path), cache);
  std::filesystem::remove(path);
  EXPECT_THROW(cache_load(path), CacheError);

  std::ofstream(path) << "";
  EXPECT_TRUE(cache_load(path).empty());
  std::filesystem::remove(path);
}

TEST(Provider, ComputesAndCaches) {
  ConstantProvider provider;
  EXPECT_FALSE(provider.dirty());
  EXPECT_EQ(provider.a_const(DSet{}), 1U);
  EXPECT_EQ(provider.a_const(DSet{1, 3}), oracle::count_b({1, 3}, 7));
  EXPECT_TRUE(provider.dirty());
  EXPECT_EQ(provider.snapshot().a_count_at(3), 4U);
  EXPECT_EQ(provider.c_const(2, 5), 1U);
  EXPECT_EQ(provider.c_const(1, 4), compute_c_const(1, 4));
}

TEST(Provider, ServesFromCacheWithoutSweeping) {
  ConstantProvider first;
  first.ensure_depth(6);
  ConstantProvider second(first.snapshot());
  EXPECT_EQ(second.a_consts_batch(6), first.a_consts_batch(6));
  EXPECT_FALSE(second.dirty());
}

TEST(Provider, DepthBudget) {
  ConstantProvider provider({}, {}, 4);
  EXPECT_NO_THROW(provider.a_const(DSet{4}));
  EXPECT_THROW(provider.a_const(DSet{5}), BudgetExceeded);
  EXPECT_THROW(provider.c_const(1, 5), BudgetExceeded);
}

TEST(Provider, DetectsCorruptedSmallerConstants) {
  ConstantCache poisoned;
  poisoned.insert_a(DSet{1, 2}, 2);
  ConstantProvider provider(poisoned);
  EXPECT_THROW(provider.a_consts_batch(4), ConsistencyError);

  ConstantCache bad_empty;
  bad_empty.insert_a(DSet{}, 2);
  EXPECT_THROW(ConstantProvider{bad_empty}, CacheError);
}

TEST(Provider, ConcurrentCallersAgree) {
  ConstantProvider provider;
  std::vector<std::uint64_t> got(6);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < got.size(); ++i) {
      pool.emplace_back([&, i] { got[i] = provider.a_const(DSet{1, 9}); });
    }
  }
  for (auto v : got) EXPECT_EQ(v, got[0]);
  EXPECT_EQ(got[0], compute_a_batch(9).at(DSet{1, 9}));
}

}  // namespace
}  // namespace nsdensity
