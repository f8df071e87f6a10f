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

#ifndef NSDENSITY_ERRORS_HPP_
#define NSDENSITY_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nsdensity {

// Precondition violations on public operations throw std::invalid_argument.

// A sweep or constant computation would exceed the configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A computed value disagrees with an exact identity it must satisfy. Every
// quantity in this library is an exact integer, so this is always a bug.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Malformed or conflicting constant-cache content.
class CacheError : public std::runtime_error {
 public:
  explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nsdensity

#endif  // NSDENSITY_ERRORS_HPP_
