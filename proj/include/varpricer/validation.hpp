/*
   Copyright 2026 The varpricer Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Registered property checks run against a single model. Each check reports
// a measured quantity and the tolerance it was held to.

#include <cstdint>
#include <string>
#include <vector>

#include "varpricer/levy_models.hpp"

namespace varpricer {

enum class Suite { Transforms, Prices, Limits, All };

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::string model;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Single-line JSON object.
  std::string to_json() const;
};

/// Runs the checks of `suite`. Monte Carlo cross-checks use `paths` draws
/// and are skipped when paths == 0.
ValidationReport run_validation(const LevyModel& model, Suite suite, long paths,
                                std::uint64_t seed);

}  // namespace varpricer
