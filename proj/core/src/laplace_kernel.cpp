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

#include "mhmc/laplace_kernel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mhmc {

void validate(const LaplaceKernelParams& params, std::size_t n_discrete) {
  if (!(params.epsilon > 0.0) || !std::isfinite(params.epsilon)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (!(params.T > 0.0) || !std::isfinite(params.T)) {
    throw std::invalid_argument("T must be positive");
  }
  if (params.L < 1) throw std::invalid_argument("L must be at least 1");
  if (n_discrete > 0 && (params.n_D < 1 || params.n_D > n_discrete)) {
    throw std::invalid_argument("n_D must lie in [1, " + std::to_string(n_discrete) + "]");
  }
}

StepSchedule get_step_sizes_n_steps(const LaplaceKernelParams& params, std::size_t n_discrete,
                                    Rng& rng) {
  const std::size_t L = params.L;
  StepSchedule schedule;
  schedule.eta.assign(L, 0.0);
  schedule.M.assign(L, 1);

  if (n_discrete == 0) {
    std::fill(schedule.eta.begin(), schedule.eta.end(), params.T / static_cast<double>(L));
  } else {
    const std::size_t n_d = params.n_D;
    std::vector<double> phi = rng.dirichlet_ones(n_discrete + 1);
    const double tail = phi[n_discrete];
    phi[0] += tail;
    for (std::size_t t = 0; t < L; ++t) {
      double sum = 0.0;
      for (std::size_t s = 0; s < n_d; ++s) sum += phi[(t * n_d + s) % n_discrete];
      schedule.eta[t] = sum;
    }
    schedule.eta[0] -= tail;
    const double total = std::accumulate(schedule.eta.begin(), schedule.eta.end(), 0.0);
    for (auto& eta : schedule.eta) eta = params.T * eta / total;
  }

  for (std::size_t t = 0; t < L; ++t) {
    const double steps = std::ceil(schedule.eta[t] / params.epsilon);
    std::size_t m = steps < 1.0 ? 1 : static_cast<std::size_t>(steps);
    // eta / ceil(eta / eps) can round to one ulp above eps.
    while (schedule.eta[t] / static_cast<double>(m) > params.epsilon) ++m;
    schedule.M[t] = m;
    schedule.eta[t] /= static_cast<double>(m);
  }
  return schedule;
}

StepStats laplace_step(MixedPoint& point, const LaplaceKernelParams& params, const Model& model,
                       Proposal& proposal, Rng& rng, LaplaceTrace* trace) {
  const std::size_t n_d = model.n_discrete();
  const std::size_t n_c = model.n_continuous();
  StepStats stats;

  std::vector<double> kinetic(n_d);
  for (auto& k : kinetic) k = rng.exponential();
  std::vector<double> p(n_c);
  params.mass.sample(rng, p);

  const auto order = rng.permutation(n_d);
  const StepSchedule schedule = get_step_sizes_n_steps(params, n_d, rng);
  if (trace != nullptr) {
    trace->schedule = schedule;
    trace->site_order = order;
    trace->initial_kinetic = kinetic;
    trace->updates.clear();
  }

  const double sum_k0 = std::accumulate(kinetic.begin(), kinetic.end(), 0.0);
  const double energy0 = model.potential(point) + sum_k0 + params.mass.kinetic(p);

  MixedPoint current = point;
  auto diverge = [&stats] {
    stats.divergent = true;
    stats.accepted = false;
    return stats;
  };

  for (std::size_t t = 0; t < params.L; ++t) {
    const auto lf = leapfrog(model, current.x, current.q, p, schedule.eta[t], schedule.M[t],
                             params.mass);
    stats.n_grad_evals += lf.grad_evals;
    if (!lf.finite) return diverge();
    if (n_d == 0) continue;
    for (std::size_t s = 0; s < params.n_D; ++s) {
      const std::size_t j = order[(t * params.n_D + s) % n_d];
      const ProposedMove move = proposal.propose(j, current, model, rng);
      const double delta = move.delta_energy();
      if (std::isnan(delta)) return diverge();
      DiscreteUpdateRecord record{t, j, current.x[j], move.value, delta, move.delta_potential,
                                  kinetic[j], kinetic[j], false};
      if (kinetic[j] > delta) {
        current.x[j] = move.value;
        kinetic[j] -= delta;
        ++stats.n_discrete_accepts;
        record.accepted = true;
        record.kinetic_after = kinetic[j];
      }
      if (trace != nullptr) trace->updates.push_back(record);
    }
  }

  const double sum_k = std::accumulate(kinetic.begin(), kinetic.end(), 0.0);
  const double energy = model.potential(current) + sum_k + params.mass.kinetic(p);
  stats.energy_error = energy - energy0;
  if (!std::isfinite(stats.energy_error) || std::abs(stats.energy_error) > kDivergenceThreshold) {
    return diverge();
  }
  if (rng.uniform() >= std::exp(-stats.energy_error)) return stats;
  stats.accepted = true;
  point = std::move(current);
  return stats;
}

StepStats laplace_step(MixedPoint& point, const LaplaceKernelParams& params, const Model& model,
                       Rng& rng) {
  LocallyInformedProposal proposal;
  return laplace_step(point, params, model, proposal, rng);
}

LaplaceSampler::LaplaceSampler(const Model& model, LaplaceKernelParams params,
                               std::unique_ptr<Proposal> proposal)
    : model_(model), params_(std::move(params)), proposal_(std::move(proposal)) {
  validate(params_, model_.n_discrete());
  if (!proposal_) proposal_ = std::make_unique<LocallyInformedProposal>();
}

StepStats LaplaceSampler::step(MixedPoint& point, Rng& rng) {
  return laplace_step(point, params_, model_, *proposal_, rng);
}

ChainOutput run_chain(MixedPoint init, const LaplaceKernelParams& params, const Model& model,
                      std::size_t n_burn, std::size_t n_samples, Rng& rng) {
  validate_point(init, model);
  LaplaceSampler sampler(model, params);
  return run_chain(sampler, std::move(init), n_burn, n_samples, rng);
}

}  // namespace mhmc
