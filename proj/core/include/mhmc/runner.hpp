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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mhmc/chain.hpp"
#include "mhmc/config.hpp"

namespace mhmc {

// Failure to read or write a run artifact.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stream used for reference draws from a model's exact sampler; disjoint from
// the chain streams 0..chains-1.
inline constexpr std::uint64_t kReferenceStream = std::uint64_t{1} << 63;

// Command-line values that take precedence over the config file.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> chains;
  std::optional<std::size_t> threads;
};

void apply_overrides(RunConfig& config, const RunOverrides& overrides);

// x_j uniform over its values, q ~ N(0, I).
MixedPoint random_initial_point(const Model& model, Rng& rng);

struct RunResult {
  std::vector<ChainOutput> chains;
  nlohmann::json summary;
};

// Runs every chain and builds the summary. No files are touched.
RunResult execute(const RunConfig& config);

// Header chain,iter,accept,x_0..,q_0..; values with 17 significant digits.
void write_samples_csv(std::ostream& out, const std::vector<ChainOutput>& chains);

// Executes the run and writes the samples CSV, the summary JSON and (for
// generated BLR data) the dataset CSV. Relative output paths resolve against
// out_dir, which is created when missing.
RunResult run(const RunConfig& config, const std::string& out_dir);

}  // namespace mhmc
