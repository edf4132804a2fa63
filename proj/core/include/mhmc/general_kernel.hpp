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
#include <optional>
#include <vector>

#include "mhmc/chain.hpp"
#include "mhmc/integrator.hpp"
#include "mhmc/kinetic.hpp"
#include "mhmc/model.hpp"
#include "mhmc/proposal.hpp"
#include "mhmc/rng.hpp"

namespace mhmc {

// Auxiliary location/momentum of each discrete site. q^D lives on [0, tau]
// with the endpoints identified; hitting an endpoint triggers a discrete
// proposal at that site.
struct AuxiliaryState {
  std::vector<double> qD;
  std::vector<double> pD;
  double tau = 1.0;

  bool operator==(const AuxiliaryState&) const = default;
};

// Time until q^D reaches tau (positive velocity) or 0 (negative velocity) at
// velocity kprime(pD). Throws std::invalid_argument for pD == 0.
double initial_hit_time(double qD, double pD, double tau, const PowerKinetic& kinetic);

// sign(pD) * kinv(k(pD) - deltaE). Requires k(pD) > deltaE; throws
// std::domain_error otherwise (the caller should reflect).
double refract(double pD, double deltaE, const PowerKinetic& kinetic);

// One boundary event of a trajectory.
struct BoundaryEvent {
  double time = 0.0;  // from trajectory start
  std::size_t site = 0;
  int from = 0;
  int proposed = 0;
  double delta_energy = 0.0;
  bool refracted = false;
};

struct TrajectoryStats {
  std::size_t n_events = 0;
  std::size_t n_discrete_accepts = 0;
  std::size_t n_grad_evals = 0;
  bool finite = true;
};

// Deterministic (given the proposal draws) evolution of the full state for
// time T: exact flat-torus dynamics for (q^D, p^D), leapfrog for (q, p^C)
// between events with each segment split into ceil(len / integrator_eps)
// equal steps. Simultaneous events resolve to the lowest site index. No
// acceptance test and no momentum negation.
TrajectoryStats integrate_trajectory(MixedPoint& point, AuxiliaryState& aux,
                                     std::vector<double>& pC, double T, const Model& model,
                                     const PowerKinetic& kinetic, double integrator_eps,
                                     Proposal& proposal, Rng& rng,
                                     const DiagonalMass& mass = {},
                                     std::vector<BoundaryEvent>* events = nullptr);

// U(x, q) + sum_i k(pD_i) + K^C(pC)
double total_energy(const MixedPoint& point, const AuxiliaryState& aux,
                    std::span<const double> pC, const Model& model, const PowerKinetic& kinetic,
                    const DiagonalMass& mass = {});

// Full event-driven transition: trajectory, then the total-energy MH test.
// Accept negates pD and pC; reject (or divergence) restores every input.
StepStats general_step(MixedPoint& point, AuxiliaryState& aux, std::vector<double>& pC,
                       double T, const Model& model, const PowerKinetic& kinetic,
                       double integrator_eps, Rng& rng, Proposal& proposal,
                       const DiagonalMass& mass = {},
                       std::vector<BoundaryEvent>* events = nullptr);

StepStats general_step(MixedPoint& point, AuxiliaryState& aux, std::vector<double>& pC,
                       double T, const Model& model, const PowerKinetic& kinetic,
                       double integrator_eps, Rng& rng);

struct GeneralKernelParams {
  double T = 1.0;
  double tau = 1.0;
  double integrator_eps = 0.1;
  double beta = 1.0;
  // false: q^D is drawn once and carried across iterations (p^D and p^C are
  // always redrawn).
  bool resample_aux = true;
  DiagonalMass mass;
};

void validate(const GeneralKernelParams& params);

// Draws q^D ~ Uniform[0, tau] and p^D ~ nu (never exactly zero).
AuxiliaryState sample_auxiliary(std::size_t n_discrete, double tau, const PowerKinetic& kinetic,
                                Rng& rng);

class GeneralSampler final : public Sampler {
 public:
  GeneralSampler(const Model& model, GeneralKernelParams params,
                 std::unique_ptr<Proposal> proposal = nullptr);
  StepStats step(MixedPoint& point, Rng& rng) override;

  const std::optional<AuxiliaryState>& auxiliary() const { return aux_; }

 private:
  const Model& model_;
  GeneralKernelParams params_;
  PowerKinetic kinetic_;
  std::unique_ptr<Proposal> proposal_;
  std::optional<AuxiliaryState> aux_;
};

}  // namespace mhmc
