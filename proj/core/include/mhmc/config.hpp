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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mhmc/chain.hpp"
#include "mhmc/model.hpp"

namespace mhmc {

// Invalid run configuration; what() starts with the offending field path,
// e.g. "kernel.epsilon: must be positive".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ModelSection {
  std::string type;          // gmm1d | gmm24 | blr | binary
  nlohmann::json overrides;  // the whole "model" object
};

struct KernelSection {
  std::string type;  // laplace | general | naive | gibbs
  double epsilon = 0.0;
  double T = 0.0;
  std::size_t L = 0;
  std::size_t n_D = 1;
  double beta = 1.0;
  double tau = 1.0;
  double integrator_eps = 0.1;
  bool resample_aux = true;
  bool use_k = true;
  double rw_scale = 0.0;
  std::size_t sweeps_per_step = 1;
  std::vector<double> mass;
  std::string proposal = "informed";  // informed | uniform
};

struct RunSection {
  std::size_t chains = 1;
  std::size_t burn_in = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

struct OutputSection {
  std::string samples_path = "samples.csv";
  std::string summary_path = "summary.json";
  std::string data_path;  // BLR only: where to write the generated dataset
};

struct RunConfig {
  ModelSection model;
  KernelSection kernel;
  RunSection run;
  OutputSection output;
  nlohmann::json raw;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// Kernel parameters echoed into the run summary.
nlohmann::json kernel_params_json(const KernelSection& kernel);

// A model built from its config section, plus whatever the summary should
// report about it (ground truth for synthetic data, exact marginals).
struct BuiltModel {
  std::unique_ptr<Model> model;
  nlohmann::json info;
  // Exact per-site marginals P(x_i = 1) when available (binary models).
  std::vector<double> exact_marginals;
  // BLR only: true inclusion pattern.
  std::vector<int> true_gamma;
};

BuiltModel build_model(const ModelSection& section);

// Throws ConfigError when the kernel cannot run on `model`.
SamplerFactory make_sampler_factory(const KernelSection& kernel, const Model& model);

}  // namespace mhmc
