// Copyright 2026 The nboson-contextuality Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NBC_CHECKS_HPP
#define NBC_CHECKS_HPP

#include <string>
#include <vector>

namespace nbc {

struct CheckOptions {
  int max_n = 4;
  double tolerance = 1e-12;
  /// Mutation hook: negate the collective path J_y before the SU(2) checks.
  bool flip_collective_jy = false;
};

struct CheckResult {
  std::string group;
  std::string name;
  double deviation = 0.0;
  /// Integer-valued identity: passes only on deviation == 0, whatever the tolerance.
  bool exact = false;
  /// Reported for context only; never fails the suite.
  bool informational = false;
  bool passed = false;
};

/// Runs the operator-algebra, spin, CHSH and optical-circuit invariant groups.
/// A floating-point check passes when its deviation is <= tolerance.
std::vector<CheckResult> run_invariant_suite(const CheckOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace nbc

#endif  // NBC_CHECKS_HPP
