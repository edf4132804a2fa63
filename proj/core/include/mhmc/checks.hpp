// Copyright 2026 The mhmc Authors
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

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mhmc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  // Headline measured value and the bound it is compared against; details
  // carries every other number the criterion looked at.
  double measured = 0.0;
  double threshold = 0.0;
  double seconds = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

// Suite names: exactness, reversibility, gradients, distributions,
// diagnostics, efficiency, determinism, all.
const std::vector<std::string>& suite_names();

// Criterion ids belonging to a suite; throws std::invalid_argument for an
// unknown name.
std::vector<int> suite_criteria(const std::string& suite);

// Runs one criterion with its pinned seeds and tolerances.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_suite(const std::string& suite);

nlohmann::json to_json(const CriterionResult& result);

// One human-readable line, "PASS [3] naive-bias: measured=... threshold=...".
std::string format_line(const CriterionResult& result);

}  // namespace mhmc
