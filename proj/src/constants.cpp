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

#include "nsdensity/constants.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nsdensity {
namespace {

using word::span_mask;

struct WindowAcc {
  std::vector<std::uint64_t> hist;
  std::vector<std::uint64_t> bad;
};

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > ~std::uint64_t{0} / base) {
      throw std::overflow_error("constant cap exceeds 64 bits");
    }
    out *= base;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view text, std::string_view line) {
  std::uint64_t value = 0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
    throw CacheError("malformed cache value in line '" + std::string(line) +
                     "'");
  }
  return value;
}

std::string c_key(int l, int k) {
  return std::to_string(l) + "," + std::to_string(k);
}

}  // namespace

std::vector<std::uint64_t> window_histogram(int t, int l,
                                            const SweepOptions& options) {
  if (t < 0 || t > kMaxDepth) {
    throw BudgetExceeded("window depth " + std::to_string(t) +
                         " outside [0, " + std::to_string(kMaxDepth) + "]");
  }
  if (l < 0 || l > t) {
    throw std::invalid_argument("prefix restriction l must lie in [0, t]");
  }
  const std::size_t buckets = std::size_t{1} << t;
  if (t == 0) return {1};

  const int free_bits = t - l;
  const std::size_t prefixes = std::size_t{1} << free_bits;
  const std::uint64_t window = span_mask(1, t);

  auto visit = [&](WindowAcc& acc, std::uint64_t s_index) {
    if (acc.hist.empty()) {
      acc.hist.assign(buckets, 0);
      acc.bad.assign(prefixes, 0);
    }
    const std::uint64_t s = s_index << 1;
    const std::uint64_t not_s = ~s & span_mask(0, t);
    std::uint64_t* bad = acc.bad.data();
    std::uint64_t* hist = acc.hist.data();
    bad[0] = 0;
    ++hist[s >> 1];
    for (std::size_t j = 1; j < prefixes; ++j) {
      const int y = std::countr_zero(j) + l + 1;
      const std::uint64_t b = bad[j & (j - 1)] | (not_s << y);
      bad[j] = b;
      ++hist[(s & ~b & window) >> 1];
    }
  };
  auto merge = [](WindowAcc& a, WindowAcc&& b) {
    if (b.hist.empty()) return;
    if (a.hist.empty()) {
      a = std::move(b);
      return;
    }
    for (std::size_t i = 0; i < a.hist.size(); ++i) a.hist[i] += b.hist[i];
  };
  WindowAcc total = parallel_reduce_bits<WindowAcc>(
      t, resolve_workers(options), visit, merge, 4);
  return std::move(total.hist);
}

std::map<DSet, std::uint64_t> compute_a_batch(int t,
                                              const SweepOptions& options) {
  const auto hist = window_histogram(t, 0, options);
  std::map<DSet, std::uint64_t> out;
  if (t == 0) {
    out.emplace(DSet{}, hist[0]);
    return out;
  }
  const std::size_t top = std::size_t{1} << (t - 1);
  for (std::size_t w = top; w < hist.size(); ++w) {
    out.emplace(DSet::from_mask(static_cast<std::uint64_t>(w) << 1), hist[w]);
  }
  return out;
}

std::uint64_t compute_c_const(int l, int k, const SweepOptions& options) {
  if (l < 1 || k < 1) throw std::invalid_argument("C_{l,k} needs l, k >= 1");
  if (k >= l) {
    // |B_l(k, 2k + 1)|: the window must be exactly {k}.
    const auto hist = window_histogram(k, l, options);
    return hist[std::size_t{1} << (k - 1)];
  }
  return count_B_l(l, k, l + k + 1, options);
}

std::uint64_t a_const_cap(int t) {
  if (t < 1) throw std::invalid_argument("cap needs t >= 1");
  return checked_pow(3, t - 1);
}

std::uint64_t c_const_cap(int l, int k) {
  if (k < 2 * l + 2) throw std::invalid_argument("cap needs k >= 2l + 2");
  return checked_pow(2, l) * checked_pow(3, k - 2 * l - 1);
}

// ---------------------------------------------------------------------------
// ConstantCache

std::optional<std::uint64_t> ConstantCache::find_a(const DSet& d) const {
  const auto it = a_.find(d);
  if (it == a_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint64_t> ConstantCache::find_c(int l, int k) const {
  const auto it = c_.find({l, k});
  if (it == c_.end()) return std::nullopt;
  return it->second;
}

void ConstantCache::insert_a(const DSet& d, std::uint64_t value) {
  const auto [it, inserted] = a_.emplace(d, value);
  if (!inserted && it->second != value) {
    throw CacheError("conflicting values for A[" + d.key() + "]: " +
                     std::to_string(it->second) + " vs " +
                     std::to_string(value));
  }
}

void ConstantCache::insert_c(int l, int k, std::uint64_t value) {
  const auto [it, inserted] = c_.emplace(std::pair{l, k}, value);
  if (!inserted && it->second != value) {
    throw CacheError("conflicting values for C[" + c_key(l, k) + "]: " +
                     std::to_string(it->second) + " vs " +
                     std::to_string(value));
  }
}

void ConstantCache::merge(const ConstantCache& other) {
  ConstantCache merged = *this;
  for (const auto& [d, v] : other.a_) merged.insert_a(d, v);
  for (const auto& [lk, v] : other.c_) merged.insert_c(lk.first, lk.second, v);
  *this = std::move(merged);
}

std::size_t ConstantCache::a_count_at(int t) const {
  std::size_t n = 0;
  for (const auto& [d, v] : a_) {
    if (d.max() == t) ++n;
  }
  return n;
}

bool ConstantCache::depth_complete(int t) const {
  if (t < 0) return false;
  const std::size_t expected = t == 0 ? 1 : std::size_t{1} << (t - 1);
  return a_count_at(t) == expected;
}

int ConstantCache::complete_depth() const {
  int t = -1;
  while (t < kMaxDepth && depth_complete(t + 1)) ++t;
  return t;
}

std::string ConstantCache::serialize() const {
  std::vector<std::string> lines;
  lines.reserve(a_.size() + c_.size() + 1);
  lines.push_back("# nsdensity constant cache v1; complete depth " +
                  std::to_string(complete_depth()));
  for (const auto& [d, v] : a_) {
    lines.push_back("A|" + d.key() + "|" + std::to_string(v));
  }
  for (const auto& [lk, v] : c_) {
    lines.push_back("C|" + c_key(lk.first, lk.second) + "|" +
                    std::to_string(v));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

ConstantCache ConstantCache::parse(std::string_view text) {
  ConstantCache cache;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;

    const std::size_t bar1 = line.find('|');
    const std::size_t bar2 =
        bar1 == std::string_view::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos ||
        line.find('|', bar2 + 1) != std::string_view::npos) {
      throw CacheError("malformed cache line '" + std::string(line) + "'");
    }
    const std::string_view kind = line.substr(0, bar1);
    const std::string_view key = line.substr(bar1 + 1, bar2 - bar1 - 1);
    const std::uint64_t value = parse_u64(line.substr(bar2 + 1), line);

    if (kind == "A") {
      DSet d;
      try {
        d = DSet::parse(key);
      } catch (const std::invalid_argument&) {
        throw CacheError("malformed D key in line '" + std::string(line) +
                         "'");
      }
      if (d.key() != key) {
        throw CacheError("non-canonical D key in line '" + std::string(line) +
                         "'");
      }
      cache.insert_a(d, value);
    } else if (kind == "C") {
      const std::size_t comma = key.find(',');
      if (comma == std::string_view::npos) {
        throw CacheError("malformed (l,k) key in line '" + std::string(line) +
                         "'");
      }
      const auto l = parse_u64(key.substr(0, comma), line);
      const auto k = parse_u64(key.substr(comma + 1), line);
      if (l < 1 || k < 1 || l > 1000 || k > 1000) {
        throw CacheError("(l,k) out of range in line '" + std::string(line) +
                         "'");
      }
      cache.insert_c(static_cast<int>(l), static_cast<int>(k), value);
    } else {
      throw CacheError("unknown record kind in line '" + std::string(line) +
                       "'");
    }
  }
  return cache;
}

ConstantCache cache_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read cache file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ConstantCache::parse(buf.str());
}

void cache_store(const ConstantCache& cache,
                 const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write cache file " + tmp.string());
    out << cache.serialize();
    if (!out.flush()) throw CacheError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// ConstantProvider

ConstantProvider::ConstantProvider(ConstantCache cache, SweepOptions options,
                                   int depth_budget)
    : cache_(std::move(cache)),
      options_(options),
      depth_budget_(std::min(depth_budget, kMaxDepth)) {
  if (!cache_.find_a(DSet{})) cache_.insert_a(DSet{}, 1);
  if (cache_.find_a(DSet{}) != 1U) {
    throw CacheError("cached A for the empty set must be 1");
  }
}

void ConstantProvider::check_depth(int t) const {
  if (t > depth_budget_) {
    throw BudgetExceeded("A_D with Max(D) = " + std::to_string(t) +
                         " exceeds the depth budget " +
                         std::to_string(depth_budget_));
  }
}

std::uint64_t ConstantProvider::a_const(const DSet& d) {
  {
    std::lock_guard lock(mutex_);
    if (auto v = cache_.find_a(d)) return *v;
  }
  return a_consts_batch(d.max()).at(d);
}

std::map<DSet, std::uint64_t> ConstantProvider::a_consts_batch(int t) {
  if (t < 0) throw std::invalid_argument("depth must be non-negative");
  {
    std::lock_guard lock(mutex_);
    if (cache_.depth_complete(t)) {
      std::map<DSet, std::uint64_t> out;
      for (const auto& [d, v] : cache_.a_entries()) {
        if (d.max() == t) out.emplace(d, v);
      }
      return out;
    }
  }
  check_depth(t);

  const auto hist = window_histogram(t, 0, options_);
  BigInt total = 0;
  for (auto c : hist) total += c;
  if (total != BigInt(1) << (2 * t)) {
    throw ConsistencyError("window histogram at depth " + std::to_string(t) +
                           " does not sum to 4^t");
  }

  std::map<DSet, std::uint64_t> batch;
  if (t == 0) {
    batch.emplace(DSet{}, hist[0]);
  } else {
    for (std::size_t w = std::size_t{1} << (t - 1); w < hist.size(); ++w) {
      const DSet d = DSet::from_mask(static_cast<std::uint64_t>(w) << 1);
      if (hist[w] > a_const_cap(t)) {
        throw ConsistencyError("A[" + d.key() + "] = " +
                               std::to_string(hist[w]) + " exceeds 3^(t-1)");
      }
      batch.emplace(d, hist[w]);
    }
  }

  std::lock_guard lock(mutex_);
  // Windows whose maximum is below t fold down to smaller constants:
  // summing the width-t buckets that agree with D' on [1, t'] must give
  // A_{D'} · 4^(t - t').
  for (int tp = 1; tp < t; ++tp) {
    std::vector<std::uint64_t> prefix_sums(std::size_t{1} << tp, 0);
    const std::size_t low = (std::size_t{1} << tp) - 1;
    for (std::size_t w = 0; w < hist.size(); ++w) prefix_sums[w & low] += hist[w];
    for (std::size_t w = std::size_t{1} << (tp - 1); w <= low; ++w) {
      const DSet d = DSet::from_mask(static_cast<std::uint64_t>(w) << 1);
      if (auto cached = cache_.find_a(d)) {
        if (BigInt(prefix_sums[w]) != BigInt(*cached) << (2 * (t - tp))) {
          throw ConsistencyError("depth-" + std::to_string(t) +
                                 " sweep contradicts cached A[" + d.key() +
                                 "]");
        }
      }
    }
  }
  for (const auto& [d, v] : batch) {
    if (auto cached = cache_.find_a(d); cached && *cached != v) {
      throw ConsistencyError("depth-" + std::to_string(t) +
                             " sweep contradicts cached A[" + d.key() + "]");
    }
  }
  for (const auto& [d, v] : batch) cache_.insert_a(d, v);
  dirty_ = true;
  return batch;
}

std::uint64_t ConstantProvider::c_const(int l, int k) {
  if (l < 1 || k < 1) throw std::invalid_argument("C_{l,k} needs l, k >= 1");
  if (k <= 2 * l + 1) return 1;
  {
    std::lock_guard lock(mutex_);
    if (auto v = cache_.find_c(l, k)) return *v;
  }
  check_depth(k);
  const std::uint64_t value = compute_c_const(l, k, options_);
  if (value > c_const_cap(l, k)) {
    throw ConsistencyError("C[" + c_key(l, k) + "] = " + std::to_string(value) +
                           " exceeds 2^l·3^(k-2l-1)");
  }
  std::lock_guard lock(mutex_);
  cache_.insert_c(l, k, value);
  dirty_ = true;
  return value;
}

void ConstantProvider::ensure_depth(int t) {
  for (int i = 0; i <= t; ++i) a_consts_batch(i);
}

ConstantCache ConstantProvider::snapshot() const {
  std::lock_guard lock(mutex_);
  return cache_;
}

bool ConstantProvider::dirty() const {
  std::lock_guard lock(mutex_);
  return dirty_;
}

}  // namespace nsdensity
