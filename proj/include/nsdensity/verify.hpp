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

#ifndef NSDENSITY_VERIFY_HPP_
#define NSDENSITY_VERIFY_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "nsdensity/constants.hpp"

namespace nsdensity {

// Outcome of one invariant check. `anchor` names the identity or bound
// being checked.
struct CheckResult {
  std::string suite;
  std::string name;
  std::string anchor;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  // Largest Frobenius number swept by the counting and core suites.
  int max_f = 20;
  // Truncation depth for the constants and limits suites.
  int depth = 15;
};

// "core", "counting", "constants", "limits".
std::vector<std::string> verify_suites();

// Runs one suite, or every suite for "all". Throws std::invalid_argument for
// an unknown name.
std::vector<CheckResult> run_verify(std::string_view suite,
                                    const VerifyOptions& options,
                                    ConstantProvider& constants);

}  // namespace nsdensity

#endif  // NSDENSITY_VERIFY_HPP_
