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
#include <memory>
#include <vector>

#include "mhmc/chain.hpp"
#include "mhmc/integrator.hpp"
#include "mhmc/model.hpp"
#include "mhmc/proposal.hpp"
#include "mhmc/rng.hpp"

namespace mhmc {

// Mixed HMC with Laplace momentum on the discrete sites. Discrete updates are
// interleaved with the leapfrog trajectory on a randomized schedule; only the
// kinetic energy of each site is tracked.
struct LaplaceKernelParams {
  double epsilon = 0.1;   // maximum leapfrog step size
  double T = 1.0;         // total travel time
  std::size_t L = 1;      // number of discrete-update rounds
  std::size_t n_D = 1;    // sites updated per round
  DiagonalMass mass;      // continuous momenta; identity by default
};

// Throws std::invalid_argument when params are unusable for a model with
// n_discrete sites.
void validate(const LaplaceKernelParams& params, std::size_t n_discrete);

// Per-round leapfrog step sizes and step counts, sum_t eta[t] * M[t] == T.
struct StepSchedule {
  std::vector<double> eta;
  std::vector<std::size_t> M;
};

// Draws Phi ~ Dirichlet_{N_D+1}(1), folds the last part into the first, sums
// n_D consecutive parts (cyclically over the first N_D) per round, removes the
// fold from round 0, rescales to total T and splits each round into
// ceil(eta/epsilon) equal steps. With N_D == 0 every round gets T / L.
StepSchedule get_step_sizes_n_steps(const LaplaceKernelParams& params, std::size_t n_discrete,
                                    Rng& rng);

// One discrete update inside a trajectory, as seen by the kinetic bookkeeping.
struct DiscreteUpdateRecord {
  std::size_t round = 0;
  std::size_t site = 0;
  int from = 0;
  int to = 0;
  double delta_energy = 0.0;
  double delta_potential = 0.0;
  double kinetic_before = 0.0;
  double kinetic_after = 0.0;
  bool accepted = false;
};

struct LaplaceTrace {
  StepSchedule schedule;
  std::vector<std::size_t> site_order;
  std::vector<double> initial_kinetic;
  std::vector<DiscreteUpdateRecord> updates;
};

// |E - E0| above this marks the transition divergent (and rejected).
inline constexpr double kDivergenceThreshold = 1e4;

// One full iteration on `point` (updated in place). A rejected or divergent
// transition leaves `point` unchanged. `trace`, when given, receives the
// schedule and every discrete update of the trajectory.
StepStats laplace_step(MixedPoint& point, const LaplaceKernelParams& params, const Model& model,
                       Proposal& proposal, Rng& rng, LaplaceTrace* trace = nullptr);

// Same, with the locally-informed proposal.
StepStats laplace_step(MixedPoint& point, const LaplaceKernelParams& params, const Model& model,
                       Rng& rng);

class LaplaceSampler final : public Sampler {
 public:
  LaplaceSampler(const Model& model, LaplaceKernelParams params,
                 std::unique_ptr<Proposal> proposal = nullptr);
  StepStats step(MixedPoint& point, Rng& rng) override;

 private:
  const Model& model_;
  LaplaceKernelParams params_;
  std::unique_ptr<Proposal> proposal_;
};

// Iterates laplace_step with the locally-informed proposal.
ChainOutput run_chain(MixedPoint init, const LaplaceKernelParams& params, const Model& model,
                      std::size_t n_burn, std::size_t n_samples, Rng& rng);

}  // namespace mhmc
