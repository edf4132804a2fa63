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
#include <functional>
#include <memory>
#include <vector>

#include "mhmc/model.hpp"
#include "mhmc/rng.hpp"

namespace mhmc {

struct StepStats {
  bool accepted = false;
  double energy_error = 0.0;  // E - E0 of the trajectory end point
  std::size_t n_discrete_accepts = 0;
  std::size_t n_grad_evals = 0;
  bool divergent = false;
};

// Recorded draws of one chain. Row i holds x_0..x_{N_D-1} followed by
// q_0..q_{N_C-1}; discrete values are stored as doubles.
struct ChainOutput {
  std::size_t n_discrete = 0;
  std::size_t n_continuous = 0;
  std::vector<std::vector<double>> samples;
  std::vector<bool> accept_trace;
  double wall_time = 0.0;  // seconds
  std::size_t divergence_count = 0;

  std::size_t n_samples() const { return samples.size(); }
  std::size_t n_columns() const { return n_discrete + n_continuous; }
  std::vector<double> column(std::size_t c) const;
  double acceptance_rate() const;

  bool operator==(const ChainOutput&) const = default;
};

// One MCMC transition. Instances may carry per-chain state and are used by a
// single thread.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual StepStats step(MixedPoint& point, Rng& rng) = 0;
};

// Runs n_burn discarded transitions followed by n_samples recorded ones.
// Divergent transitions are counted, never thrown.
ChainOutput run_chain(Sampler& sampler, MixedPoint init, std::size_t n_burn,
                      std::size_t n_samples, Rng& rng);

using SamplerFactory = std::function<std::unique_ptr<Sampler>(std::size_t chain)>;
using InitFactory = std::function<MixedPoint(std::size_t chain, Rng& rng)>;

struct MultiChainConfig {
  std::size_t chains = 1;
  std::size_t burn_in = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  // 0 = hardware concurrency; always capped at the chain count.
  std::size_t threads = 0;
};

// Chain c draws from Rng(seed, c); the initial point is produced from that
// stream before the first transition. Results are independent of `threads`.
std::vector<ChainOutput> run_chains(const SamplerFactory& make_sampler, const InitFactory& init,
                                    const MultiChainConfig& config);

}  // namespace mhmc
