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

#include "nsdensity/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "nsdensity/enumeration.hpp"
#include "nsdensity/limits.hpp"

namespace nsdensity {
namespace {

using word::span_mask;

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  void add(std::string name, std::string anchor, bool passed,
           std::string detail) {
    results_.push_back({suite_, std::move(name), std::move(anchor), passed,
                        std::move(detail)});
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::vector<CheckResult> results_;
};

std::string at_f(int f) { return "f = " + std::to_string(f); }

// Scan of every t in [1, f] against every x in T ∩ [0, f].
NumericalSet definitional_associated(const NumericalSet& t) {
  const int f = t.frobenius();
  std::vector<int> members;
  for (int s = 1; s < f; ++s) {
    bool inside = true;
    for (int x = 0; x <= f && inside; ++x) {
      if (t.contains(x) && !t.contains(s + x)) inside = false;
    }
    if (inside) members.push_back(s);
  }
  return NumericalSet::make(f, members);
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> core_suite(const VerifyOptions& opt,
                                    const SweepOptions& sweep) {
  Recorder rec("core");
  const int exhaustive_f = std::min(opt.max_f, 14);

  {
    std::string detail = "all sets with f <= " + std::to_string(exhaustive_f);
    bool ok = true;
    for (int f = 1; f <= exhaustive_f && ok; ++f) {
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << (f - 1)) && ok; ++i) {
        const auto t = NumericalSet::from_word(f, (i << 1) | 1U);
        const auto fast = associated_set(t);
        if (fast != definitional_associated(t) ||
            fast != associated_set_general(t)) {
          ok = false;
          detail = "mismatch at " + t.to_string();
        }
      }
    }
    rec.add("shifted-mask A(T) equals the definitional scan",
            "A(T) = {t : t + T ⊆ T}", ok, detail);
  }

  {
    std::string detail = "all sets with f <= " + std::to_string(exhaustive_f);
    bool ok = true;
    for (int f = 1; f <= exhaustive_f && ok; ++f) {
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << (f - 1)) && ok; ++i) {
        const std::uint64_t t = (i << 1) | 1U;
        const std::uint64_t a = word::associated(t, f);
        const bool subset = (a & ~t) == 0;
        const bool closed = word::associated(a, f) == a;
        if (!subset || !closed) {
          ok = false;
          detail = "failure at " + NumericalSet::from_word(f, t).to_string();
        }
      }
    }
    rec.add("A(T) is a semigroup inside T with the same Frobenius number",
            "A(T) ⊆ T, A(A(T)) = A(T)", ok, detail);
  }

  {
    const int top = std::min(opt.max_f, 16);
    bool ok = true;
    std::string detail = "all sets with 2 <= f <= " + std::to_string(top);
    for (int f = 2; f <= top && ok; ++f) {
      const std::uint64_t bad = count_sets_if(
          f, sweep, [f](std::uint64_t t, std::uint64_t a) {
            const bool lhs = ((a >> (f - 1)) & 1U) != 0;
            const bool rhs = ((t >> (f - 1)) & 1U) != 0 && (t & 2U) == 0;
            return lhs != rhs;
          });
      if (bad != 0) {
        ok = false;
        detail = std::to_string(bad) + " counterexamples at " + at_f(f);
      }
    }
    rec.add("f-1 in A(T) iff f-1 in T and 1 not in T",
            "top-of-window membership rule", ok, detail);
  }

  {
    bool ok = true;
    std::size_t checked = 0;
    std::string detail;
    for (int f = 1; f <= opt.max_f && ok; ++f) {
      const DensityTable table = density_table(f, sweep);
      for (const auto& [s, p] : table.entries()) {
        ++checked;
        const DSet d = d_of(s);
        const auto back = n_of(d, f);
        if (back.set != s.set() || r_value(s) != d.max() - (d.empty() ? 1 : 0) ||
            (d.empty() ? multiplicity(s) != f + 1
                       : multiplicity(s) != f - d.max())) {
          ok = false;
          detail = "mismatch at " + s.to_string();
          break;
        }
      }
    }
    if (ok) detail = std::to_string(checked) + " semigroups";
    rec.add("N(D(S), f(S)) = S and R(S) = Max(D(S))",
            "S = N(D(S), f), m(S) = f - Max(D)", ok, detail);
  }

  {
    const int top = std::min(opt.max_f, 12);
    bool ok = true;
    std::string detail = "all sets with f <= " + std::to_string(top);
    for (int f = 3; f <= top && ok; ++f) {
      for (int t = 1; 2 * t + 1 <= f && ok; ++t) {
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << (f - 1)) && ok;
             ++i) {
          const auto set = NumericalSet::from_word(f, (i << 1) | 1U);
          const auto folded = fold(set, t, 2 * t + 1);
          const auto a = associated_set(set).word();
          const auto b = associated_set(folded).word();
          const std::uint64_t wa = (a >> (f - t)) & span_mask(0, t - 1);
          const std::uint64_t wb = (b >> (t + 1)) & span_mask(0, t - 1);
          if (wa != wb) {
            ok = false;
            detail = "window mismatch at " + set.to_string() +
                     " t = " + std::to_string(t);
          }
        }
      }
    }
    rec.add("fold to 2t+1 preserves the width-t window of A(T)",
            "suffix window depends only on the end blocks", ok, detail);
  }
  return rec.take();
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> counting_suite(const VerifyOptions& opt,
                                        ConstantProvider& constants) {
  Recorder rec("counting");
  const SweepOptions& sweep = constants.options();

  {
    bool ok = true;
    std::string detail = "1 <= f <= " + std::to_string(opt.max_f);
    for (int f = 1; f <= opt.max_f && ok; ++f) {
      const auto table = density_table(f, sweep);
      const std::uint64_t semigroups = count_sets_if(
          f, sweep, [](std::uint64_t t, std::uint64_t a) { return t == a; });
      if (table.total() != BigInt(1) << (f - 1) || table.size() != semigroups) {
        ok = false;
        detail = "failure at " + at_f(f);
      }
    }
    rec.add("density table totals 2^(f-1), one key per semigroup",
            "Σ_S P(S) = 2^(f-1)", ok, detail);
  }

  {
    const int top = std::min(opt.max_f, 24);
    bool ok = true;
    std::size_t checked = 0;
    std::string detail;
    for (std::uint64_t m = 0; m < 16 && ok; ++m) {
      const DSet d = DSet::from_mask(m << 1);
      const int t = d.max();
      const std::uint64_t a = constants.a_const(d);
      for (int f = 2 * t + 1; f <= top; ++f) {
        ++checked;
        if (BigInt(count_B(d, f, sweep)) != BigInt(a) << (f - 2 * t - 1)) {
          ok = false;
          detail = "failure at D = " + d.key() + ", " + at_f(f);
          break;
        }
      }
    }
    if (ok) detail = std::to_string(checked) + " (D, f) pairs, Max(D) <= 4";
    rec.add("|B(D,f)| factors through the fold", "|B(D,f)| = A_D·2^(f-2t-1)",
            ok, detail);
  }

  {
    const int top = std::min(opt.max_f, 22);
    bool ok = true;
    std::size_t checked = 0;
    std::string detail;
    for (int f = 1; f <= top && ok; ++f) {
      const auto table = density_table(f, sweep);
      for (std::uint64_t m = 0; m < 8 && ok; ++m) {
        const DSet d = DSet::from_mask(m << 1);
        const int t = d.max();
        if (f <= 2 * t) continue;
        BigInt rhs = BigInt(constants.a_const(d)) << (f - 2 * t - 1);
        for (int k = t + 1; k <= (f - 1) / 2; ++k) {
          rhs -= BigInt(constants.a_const(d.with(k))) << (f - 2 * k - 1);
        }
        rhs -= count_high_complement(d, f, sweep);
        ++checked;
        if (BigInt(table.count(d)) != rhs) {
          ok = false;
          detail = "failure at D = " + d.key() + ", " + at_f(f);
        }
      }
    }
    if (ok) detail = std::to_string(checked) + " (D, f) pairs, Max(D) <= 3";
    rec.add("finite-f density identity with the high-k remainder",
            "P(N(D,f)) = A_D 2^(f-2t-1) - Σ_k A_{D∪k} 2^(f-2k-1) - remainder",
            ok, detail);
  }

  {
    bool ok = true;
    std::string detail = "2 <= f <= " + std::to_string(opt.max_f);
    for (int f = 2; f <= opt.max_f && ok; ++f) {
      const BigInt n = count_small_multiplicity(f, f / 2, constants.options());
      // n <= f·3^(f/2)  <=>  n^2 <= f^2·3^f.
      if (n * n > BigInt(f) * f * boost::multiprecision::pow(BigInt(3), f)) {
        ok = false;
        detail = "failure at " + at_f(f);
      }
    }
    rec.add("few sets have m(A(T)) <= f/2", "#{m(A(T)) <= f/2} <= f·3^(f/2)",
            ok, detail);
  }

  {
    const int top = std::min(opt.max_f, 16);
    bool ok = true;
    std::string detail = "2 <= f <= " + std::to_string(top);
    for (int f = 2; f <= top && ok; ++f) {
      const auto hist = multiplicity_histogram(f, sweep);
      for (int m = 2; m < f; ++m) {
        if (f % m == 0) continue;
        const int q = f / m;
        const int r = f % m;
        const BigInt cap =
            boost::multiprecision::pow(BigInt(q + 2), r - 1) *
            boost::multiprecision::pow(BigInt(q + 1), m - r);
        if (BigInt(hist[m]) > cap) {
          ok = false;
          detail = "failure at " + at_f(f) + ", m = " + std::to_string(m);
          break;
        }
      }
    }
    rec.add("per-multiplicity residue-class bound",
            "#{m(A(T)) = m} <= (q+2)^(r-1) (q+1)^(m-r)", ok, detail);
  }

  {
    bool ok = true;
    std::string detail = "1 <= f <= " + std::to_string(opt.max_f);
    for (int f = 1; f <= opt.max_f && ok; ++f) {
      const auto hist = r_histogram(f, sweep);
      Dyadic sum = 0;
      for (auto c : hist) sum += Dyadic(BigInt(c), f - 1);
      const auto table_min = density_table(f, sweep).count(DSet{});
      if (sum != Dyadic(1) || hist[0] != table_min ||
          (f >= 2 && hist[1] != 0)) {
        ok = false;
        detail = "failure at " + at_f(f);
      }
    }
    rec.add("α_n(f) sum to one, α_-1(f) = μ(N_f), α_0(f) = 0",
            "Σ_n α_n(f) = 1", ok, detail);
  }

  {
    const int top = std::min(opt.max_f, 16);
    bool ok = true;
    std::string detail = "0 <= l <= 3, f <= " + std::to_string(top);
    for (int l = 0; l <= 3 && ok; ++l) {
      for (int f = 2 * l + 1; f <= top && ok; ++f) {
        BigInt rhs = BigInt(1) << (f - 1 - l);
        for (int k = 1; k <= (f - 1) / 2; ++k) rhs -= count_B_l(l, k, f, sweep);
        if (BigInt(count_G_l(l, f, sweep)) != rhs) {
          ok = false;
          detail = "failure at l = " + std::to_string(l) + ", " + at_f(f);
        }
      }
    }
    rec.add("G_l(f) complement splits into B_l(k,f)",
            "|G_l(f)| = 2^(f-1-l) - Σ_k |B_l(k,f)|", ok, detail);
  }

  {
    const int top = std::min(opt.max_f, 18);
    bool ok = true;
    std::string detail = "1 <= l <= 3, f <= " + std::to_string(top);
    for (int l = 1; l <= 3 && ok; ++l) {
      for (int k = 1; k <= 2 * l + 3 && ok; ++k) {
        const int base = k >= l ? 2 * k + 1 : l + k + 1;
        const std::uint64_t c = constants.c_const(l, k);
        for (int f = base; f <= top; ++f) {
          if (BigInt(count_B_l(l, k, f, sweep)) != BigInt(c) << (f - base)) {
            ok = false;
            detail = "failure at l = " + std::to_string(l) +
                     ", k = " + std::to_string(k) + ", " + at_f(f);
            break;
          }
        }
      }
    }
    rec.add("|B_l(k,f)| factors through the fold",
            "|B_l(k,f)| = C_{l,k}·2^(f-f0)", ok, detail);
  }
  return rec.take();
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> constants_suite(const VerifyOptions& opt,
                                         ConstantProvider& constants) {
  Recorder rec("constants");
  const SweepOptions& sweep = constants.options();

  {
    bool ok = constants.a_const(DSet{}) == 1;
    std::string detail = "1 <= t <= " + std::to_string(opt.depth);
    for (int t = 1; t <= opt.depth && ok; ++t) {
      for (const auto& [d, a] : constants.a_consts_batch(t)) {
        if (a > a_const_cap(t)) {
          ok = false;
          detail = "A[" + d.key() + "] = " + std::to_string(a);
          break;
        }
      }
    }
    rec.add("A_D is at most 3^(t-1)", "A_D <= 3^(t-1)", ok, detail);
  }

  {
    const int top = std::min(opt.depth, 12);
    bool ok = true;
    std::string detail = "0 <= t <= " + std::to_string(top);
    for (int t = 0; t <= top && ok; ++t) {
      BigInt sum = 0;
      for (auto c : window_histogram(t, 0, sweep)) sum += c;
      if (sum != BigInt(1) << (2 * t)) {
        ok = false;
        detail = "failure at t = " + std::to_string(t);
      }
    }
    rec.add("window buckets partition all sets at f = 2t+1",
            "Σ_w bucket(w) = 4^t", ok, detail);
  }

  {
    const int top = std::min(opt.depth, 6);
    bool ok = true;
    std::string detail = "Max(D) <= " + std::to_string(top);
    for (int t = 0; t <= top && ok; ++t) {
      for (const auto& [d, a] : constants.a_consts_batch(t)) {
        if (count_B(d, 2 * t + 1, sweep) != a) {
          ok = false;
          detail = "failure at D = " + d.key();
          break;
        }
      }
    }
    rec.add("window sweep agrees with the direct B(D, 2t+1) count",
            "A_D = |B(D, 2Max(D)+1)|", ok, detail);
  }

  {
    bool ok = true;
    std::string detail = "l <= 5, k <= 2l+1";
    for (int l = 1; l <= 5 && ok; ++l) {
      for (int k = 1; k <= 2 * l + 1; ++k) {
        if (compute_c_const(l, k, sweep) != 1) {
          ok = false;
          detail = "failure at l = " + std::to_string(l) +
                   ", k = " + std::to_string(k);
          break;
        }
      }
    }
    rec.add("C_{l,k} = 1 for k <= 2l+1 by enumeration", "C_{l,k} = 1", ok,
            detail);
  }

  {
    bool ok = true;
    std::string detail = "l <= 3, 2l+2 <= k <= 2l+6";
    for (int l = 1; l <= 3 && ok; ++l) {
      for (int k = 2 * l + 2; k <= 2 * l + 6; ++k) {
        if (k > constants.depth_budget()) continue;
        if (constants.c_const(l, k) > c_const_cap(l, k)) {
          ok = false;
          detail = "failure at l = " + std::to_string(l) +
                   ", k = " + std::to_string(k);
          break;
        }
      }
    }
    rec.add("C_{l,k} is at most 2^l 3^(k-2l-1)", "C_{l,k} <= 2^l 3^(k-2l-1)",
            ok, detail);
  }
  return rec.take();
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> limits_suite(const VerifyOptions& opt,
                                      ConstantProvider& constants) {
  Recorder rec("limits");
  const int depth = opt.depth;
  const Rational tolerance = parse_decimal(kReferenceGammaError);

  {
    bool ok = true;
    std::string detail = "all D with 1 <= Max(D) <= " +
                         std::to_string(std::min(depth, 9));
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << std::min(depth, 9)); ++m) {
      const DSet d = DSet::from_mask(m << 1);
      const auto g = gamma(constants, d, depth);
      if (g.upper().to_rational() < *gamma_lower_bound(d)) {
        ok = false;
        detail = "failure at D = " + d.key();
        break;
      }
    }
    rec.add("upper end respects the positivity bound",
            "γ_D >= a_t / 2^(t+1)", ok, detail);
  }

  {
    bool ok = true;
    std::size_t checked = 0;
    std::string detail;
    for (const auto& ref : reference_gammas()) {
      if (ref.d.max() > depth) continue;
      ++checked;
      const auto g = gamma(constants, ref.d, depth);
      if (!interval_meets(g.lower().to_rational(), g.upper().to_rational(),
                          parse_decimal(ref.value), tolerance)) {
        ok = false;
        detail = "miss at D = " + ref.d.key();
        break;
      }
    }
    if (ok) detail = std::to_string(checked) + " reference rows";
    rec.add("reference limit values lie in the certified intervals",
            "interval meets p ± 0.00212", ok, detail);
  }

  {
    const auto g = gamma(constants, DSet{}, depth);
    const bool ok = interval_meets(
        g.lower().to_rational(), g.upper().to_rational(),
        parse_decimal(kReferenceGammaEmpty),
        parse_decimal(kReferenceGammaEmptyError));
    rec.add("γ_∅ agrees with the independent estimate",
            "interval meets 0.484451 ± 0.005011", ok,
            "[" + g.lower().decimal(5) + ", " + g.upper().decimal(5) + "]");
  }

  {
    bool ok = true;
    std::string detail = "Max(D) <= 3";
    for (std::uint64_t m = 0; m < 8 && ok; ++m) {
      const DSet d = DSet::from_mask(m << 1);
      for (int n = d.max(); n < depth; ++n) {
        const auto a = gamma(constants, d, n);
        const auto b = gamma(constants, d, n + 1);
        if (b.value > a.value || b.lower() < a.lower()) {
          ok = false;
          detail = "failure at D = " + d.key() + ", depth " + std::to_string(n);
          break;
        }
      }
    }
    rec.add("truncations decrease and intervals nest",
            "value(N+1) <= value(N)", ok, detail);
  }

  {
    const int top = std::min(depth, 9);
    Dyadic sum = 0;
    Dyadic lower = 0;
    for (int n = -1; n <= top; ++n) {
      if (n == 0) continue;
      const auto a = alpha_limit(constants, n, depth);
      sum += a.value;
      lower += a.lower();
    }
    const bool ok = sum <= Dyadic(1) && lower <= Dyadic(1);
    rec.add("partial sums of α_n stay below one",
            "Σ_{n<=" + std::to_string(top) + "} α_n <= 1", ok,
            "value " + sum.decimal(5));
  }

  {
    bool ok = true;
    std::string detail = "1 <= l <= 3";
    for (int l = 1; l <= 3 && ok; ++l) {
      const auto base = g_l_limit(constants, l, 2 * l + 1);
      const Rational closed =
          Rational(2, 3) / Rational(boost::multiprecision::pow(BigInt(4), l)) +
          Rational(1, 3) /
              Rational(boost::multiprecision::pow(BigInt(4), 2 * l + 1));
      if (base.value.to_rational() != closed) {
        ok = false;
        detail = "closed form mismatch at l = " + std::to_string(l);
        break;
      }
      const int n = std::max(2 * l + 1, std::min(depth, 2 * l + 6));
      if (g_l_limit(constants, l, n).lower() < positivity_constant(l)) {
        ok = false;
        detail = "lower end below a_l at l = " + std::to_string(l);
      }
    }
    rec.add("G_l limit truncation matches closed form and exceeds a_l",
            "lim |G_l(f)|/2^(f-1) >= a_l", ok, detail);
  }
  return rec.take();
}

}  // namespace

std::vector<std::string> verify_suites() {
  return {"core", "counting", "constants", "limits"};
}

std::vector<CheckResult> run_verify(std::string_view suite,
                                    const VerifyOptions& options,
                                    ConstantProvider& constants) {
  if (options.max_f < 1) throw std::invalid_argument("max_f must be >= 1");
  if (options.depth < 0) throw std::invalid_argument("depth must be >= 0");
  check_budget(options.max_f, constants.options());
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> part) {
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  };
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "core") {
    known = true;
    append(core_suite(options, constants.options()));
  }
  if (all || suite == "counting") {
    known = true;
    append(counting_suite(options, constants));
  }
  if (all || suite == "constants") {
    known = true;
    append(constants_suite(options, constants));
  }
  if (all || suite == "limits") {
    known = true;
    append(limits_suite(options, constants));
  }
  if (!known) {
    throw std::invalid_argument("unknown verify suite '" + std::string(suite) +
                                "'");
  }
  return out;
}

}  // namespace nsdensity
