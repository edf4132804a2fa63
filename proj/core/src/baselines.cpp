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

#include "mhmc/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "mhmc/integrator.hpp"
#include "mhmc/proposal.hpp"

namespace mhmc {

void validate(const NaiveParams& params) {
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (params.L < 1) throw std::invalid_argument("L must be at least 1");
}

NaiveResult naive_mixed_hmc_step(int z0, std::vector<double> q0, const NaiveParams& params,
                                 const Model& model, Rng& rng) {
  if (model.n_discrete() != 1) {
    throw std::invalid_argument("naive mixed HMC needs a model with one discrete site");
  }
  const std::vector<double> p0 = [&] {
    std::vector<double> p(q0.size());
    for (auto& v : p) v = rng.normal();
    return p;
  }();
  const double k0 = rng.exponential();

  std::vector<int> z{z0};
  std::vector<double> q = q0;
  std::vector<double> p = p0;
  double k = k0;
  UniformProposal proposal;
  bool finite = true;
  for (std::size_t l = 0; l < params.L && finite; ++l) {
    finite = leapfrog(model, z, q, p, params.epsilon, 1).finite;
    if (!finite) break;
    const ProposedMove move = proposal.propose(0, MixedPoint{z, q}, model, rng);
    const double delta = move.delta_potential;
    if (params.use_k) {
      if (k > delta) {
        k -= delta;
        z[0] = move.value;
      }
    } else if (rng.exponential() > delta) {
      z[0] = move.value;
    }
  }

  double current = model.potential(std::vector<int>{z0}, q0) + k0;
  double proposed = model.potential(z, q) + k;
  for (double v : p0) current += 0.5 * v * v;
  for (double v : p) proposed += 0.5 * v * v;
  const bool accept = finite && rng.uniform() < std::exp(current - proposed);
  if (!accept) return NaiveResult{z0, std::move(q0), false};
  return NaiveResult{z[0], std::move(q), true};
}

NaiveSampler::NaiveSampler(const Model& model, NaiveParams params)
    : model_(model), params_(params) {
  validate(params_);
  if (model_.n_discrete() != 1) {
    throw std::invalid_argument("naive mixed HMC needs a model with one discrete site");
  }
}

StepStats NaiveSampler::step(MixedPoint& point, Rng& rng) {
  auto result = naive_mixed_hmc_step(point.x[0], point.q, params_, model_, rng);
  point.x[0] = result.z;
  point.q = std::move(result.q);
  StepStats stats;
  stats.accepted = result.accepted;
  return stats;
}

bool gibbs_mh_sweep(MixedPoint& point, const Model& model, double rw_scale, Rng& rng) {
  if (!(rw_scale > 0.0)) throw std::invalid_argument("rw_scale must be positive");
  for (std::size_t j = 0; j < model.n_discrete(); ++j) {
    if (model.site_cardinality(j) < 2) continue;
    const ProposedMove move = default_proposal_sample(j, point, model, rng);
    if (rng.uniform() < std::exp(-move.delta_energy())) point.x[j] = move.value;
  }
  if (point.q.empty()) return true;
  std::vector<double> q_new = point.q;
  for (auto& v : q_new) v += rw_scale * rng.normal();
  const double log_ratio = model.potential(point.x, point.q) - model.potential(point.x, q_new);
  if (rng.uniform() < std::exp(log_ratio)) {
    point.q = std::move(q_new);
    return true;
  }
  return false;
}

GibbsMhSampler::GibbsMhSampler(const Model& model, double rw_scale, std::size_t sweeps_per_step)
    : model_(model), rw_scale_(rw_scale), sweeps_per_step_(sweeps_per_step) {
  if (!(rw_scale > 0.0)) throw std::invalid_argument("rw_scale must be positive");
  if (sweeps_per_step < 1) throw std::invalid_argument("sweeps_per_step must be at least 1");
}

StepStats GibbsMhSampler::step(MixedPoint& point, Rng& rng) {
  StepStats stats;
  for (std::size_t s = 0; s < sweeps_per_step_; ++s) {
    stats.accepted = gibbs_mh_sweep(point, model_, rw_scale_, rng);
  }
  return stats;
}

}  // namespace mhmc
