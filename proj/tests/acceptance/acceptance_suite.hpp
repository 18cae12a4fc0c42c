/* Copyright (C) 2026 tnc contributors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tnc::acceptance {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;  // set on failure
};

/// Runs every criterion whose name contains the filter substring (all of
/// them for an empty filter). Randomized criteria derive their instances
/// from the seed; identical seed means identical instances and output.
std::vector<CriterionResult> run_all(std::uint64_t seed, double ot_tolerance,
                                     const std::string& filter);

/// Prints one pass/fail line per criterion; returns true iff all passed.
bool print_report(const std::vector<CriterionResult>& results);

}  // namespace tnc::acceptance
