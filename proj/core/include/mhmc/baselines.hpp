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
#include <vector>

#include "mhmc/chain.hpp"
#include "mhmc/model.hpp"
#include "mhmc/rng.hpp"

namespace mhmc {

// Metropolis updates of a single discrete site inside an HMC trajectory.
// use_k = true tracks the discrete kinetic energy (a fixed-schedule M-HMC);
// use_k = false accepts each discrete move against a fresh Exponential(1)
// draw, which does not leave the target invariant.
struct NaiveParams {
  double epsilon = 0.1;
  std::size_t L = 1;
  bool use_k = true;
};

void validate(const NaiveParams& params);

struct NaiveResult {
  int z = 0;
  std::vector<double> q;
  bool accepted = false;
};

// L rounds of one leapfrog step followed by one uniform single-site proposal,
// then an MH test on U + k + |p|^2 / 2. Requires a model with exactly one
// discrete site (the mixture label).
NaiveResult naive_mixed_hmc_step(int z, std::vector<double> q, const NaiveParams& params,
                                 const Model& model, Rng& rng);

class NaiveSampler final : public Sampler {
 public:
  NaiveSampler(const Model& model, NaiveParams params);
  StepStats step(MixedPoint& point, Rng& rng) override;

 private:
  const Model& model_;
  NaiveParams params_;
};

// Systematic scan of single-site MH updates with the locally-informed
// proposal, then one Gaussian random-walk MH move on the whole continuous
// block. Returns true when the random-walk move was accepted.
bool gibbs_mh_sweep(MixedPoint& point, const Model& model, double rw_scale, Rng& rng);

class GibbsMhSampler final : public Sampler {
 public:
  // Each step() performs `sweeps_per_step` sweeps (thinning).
  GibbsMhSampler(const Model& model, double rw_scale, std::size_t sweeps_per_step = 1);
  StepStats step(MixedPoint& point, Rng& rng) override;

 private:
  const Model& model_;
  double rw_scale_;
  std::size_t sweeps_per_step_;
};

}  // namespace mhmc
