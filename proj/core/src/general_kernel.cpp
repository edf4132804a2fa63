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

#include "mhmc/general_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mhmc/laplace_kernel.hpp"

namespace mhmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Guards against runaway event loops (e.g. near-zero momenta with beta < 1).
constexpr std::size_t kMaxEvents = 50'000'000;

double hit_time_from_velocity(double qD, double v, double tau) {
  const double sign = v > 0.0 ? 1.0 : -1.0;
  return (tau * (sign + 1.0) - 2.0 * qD) / (2.0 * v);
}

}  // namespace

double initial_hit_time(double qD, double pD, double tau, const PowerKinetic& kinetic) {
  if (pD == 0.0) throw std::invalid_argument("zero momentum");
  const double v = kinetic.kprime(pD);
  return std::max(0.0, hit_time_from_velocity(qD, v, tau));
}

double refract(double pD, double deltaE, const PowerKinetic& kinetic) {
  const double k = kinetic.k(pD);
  if (!(k > deltaE)) {
    throw std::domain_error("refract: kinetic energy does not exceed delta E");
  }
  const double magnitude = kinetic.kinv(k - deltaE);
  return pD < 0.0 ? -magnitude : magnitude;
}

double total_energy(const MixedPoint& point, const AuxiliaryState& aux,
                    std::span<const double> pC, const Model& model, const PowerKinetic& kinetic,
                    const DiagonalMass& mass) {
  double kd = 0.0;
  for (double p : aux.pD) kd += kinetic.k(p);
  return model.potential(point) + kd + mass.kinetic(pC);
}

TrajectoryStats integrate_trajectory(MixedPoint& point, AuxiliaryState& aux,
                                     std::vector<double>& pC, double T, const Model& model,
                                     const PowerKinetic& kinetic, double integrator_eps,
                                     Proposal& proposal, Rng& rng, const DiagonalMass& mass,
                                     std::vector<BoundaryEvent>* events) {
  const std::size_t n_d = model.n_discrete();
  const double tau = aux.tau;
  TrajectoryStats stats;

  std::vector<double> v(n_d);
  std::vector<double> hit(n_d);
  for (std::size_t i = 0; i < n_d; ++i) {
    v[i] = kinetic.kprime(aux.pD[i]);
    hit[i] = initial_hit_time(aux.qD[i], aux.pD[i], tau, kinetic);
  }

  double remaining = T;
  double elapsed = 0.0;
  while (remaining > 0.0) {
    std::size_t j = 0;
    double t_j = kInf;
    for (std::size_t i = 0; i < n_d; ++i) {
      if (hit[i] < t_j) {
        t_j = hit[i];
        j = i;
      }
    }
    const bool event = t_j <= remaining;
    const double seg = event ? t_j : remaining;

    for (std::size_t i = 0; i < n_d; ++i) {
      aux.qD[i] = std::clamp(aux.qD[i] + seg * v[i], 0.0, tau);
    }
    if (seg > 0.0 && !point.q.empty()) {
      const auto n_steps = static_cast<std::size_t>(std::max(1.0, std::ceil(seg / integrator_eps)));
      const auto lf = leapfrog(model, point.x, point.q, pC, seg / static_cast<double>(n_steps),
                               n_steps, mass);
      stats.n_grad_evals += lf.grad_evals;
      if (!lf.finite) {
        stats.finite = false;
        return stats;
      }
    }
    remaining -= seg;
    elapsed += seg;
    if (!event) break;

    if (++stats.n_events > kMaxEvents) {
      stats.finite = false;
      return stats;
    }
    for (std::size_t i = 0; i < n_d; ++i) {
      if (i != j) hit[i] = std::max(0.0, hit[i] - t_j);
    }
    aux.qD[j] = v[j] > 0.0 ? tau : 0.0;

    const ProposedMove move = proposal.propose(j, point, model, rng);
    const double delta = move.delta_energy();
    if (std::isnan(delta)) {
      stats.finite = false;
      return stats;
    }
    BoundaryEvent record{elapsed, j, point.x[j], move.value, delta, false};
    bool refracted = false;
    if (kinetic.k(aux.pD[j]) > delta) {
      const double p_new = refract(aux.pD[j], delta, kinetic);
      // Exhausting the kinetic energy exactly would leave the site frozen;
      // resolve the tie as a reflection.
      if (p_new != 0.0) {
        point.x[j] = move.value;
        aux.qD[j] = tau - aux.qD[j];
        aux.pD[j] = p_new;
        v[j] = kinetic.kprime(p_new);
        refracted = true;
        ++stats.n_discrete_accepts;
      }
    }
    if (!refracted) {
      aux.pD[j] = -aux.pD[j];
      v[j] = -v[j];
    }
    record.refracted = refracted;
    if (events != nullptr) events->push_back(record);
    hit[j] = hit_time_from_velocity(aux.qD[j], v[j], tau);
  }
  return stats;
}

StepStats general_step(MixedPoint& point, AuxiliaryState& aux, std::vector<double>& pC,
                       double T, const Model& model, const PowerKinetic& kinetic,
                       double integrator_eps, Rng& rng, Proposal& proposal,
                       const DiagonalMass& mass, std::vector<BoundaryEvent>* events) {
  if (aux.qD.size() != model.n_discrete() || aux.pD.size() != model.n_discrete()) {
    throw std::invalid_argument("auxiliary state does not match the model's discrete sites");
  }
  if (pC.size() != model.n_continuous()) {
    throw std::invalid_argument("continuous momentum does not match the model");
  }
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (!(integrator_eps > 0.0)) throw std::invalid_argument("integrator_eps must be positive");

  StepStats stats;
  const double energy0 = total_energy(point, aux, pC, model, kinetic, mass);
  MixedPoint x = point;
  AuxiliaryState a = aux;
  std::vector<double> p = pC;
  const auto traj = integrate_trajectory(x, a, p, T, model, kinetic, integrator_eps, proposal,
                                         rng, mass, events);
  stats.n_grad_evals = traj.n_grad_evals;
  stats.n_discrete_accepts = traj.n_discrete_accepts;
  if (!traj.finite) {
    stats.divergent = true;
    return stats;
  }
  stats.energy_error = total_energy(x, a, p, model, kinetic, mass) - energy0;
  if (!std::isfinite(stats.energy_error) || std::abs(stats.energy_error) > kDivergenceThreshold) {
    stats.divergent = true;
    return stats;
  }
  if (rng.uniform() < std::exp(-stats.energy_error)) {
    for (auto& v : a.pD) v = -v;
    for (auto& v : p) v = -v;
    point = std::move(x);
    aux = std::move(a);
    pC = std::move(p);
    stats.accepted = true;
  }
  return stats;
}

StepStats general_step(MixedPoint& point, AuxiliaryState& aux, std::vector<double>& pC,
                       double T, const Model& model, const PowerKinetic& kinetic,
                       double integrator_eps, Rng& rng) {
  LocallyInformedProposal proposal;
  return general_step(point, aux, pC, T, model, kinetic, integrator_eps, rng, proposal);
}

void validate(const GeneralKernelParams& params) {
  if (!(params.T > 0.0) || !std::isfinite(params.T)) throw std::invalid_argument("T must be positive");
  if (!(params.tau > 0.0) || !std::isfinite(params.tau)) {
    throw std::invalid_argument("tau must be positive");
  }
  if (!(params.integrator_eps > 0.0)) throw std::invalid_argument("integrator_eps must be positive");
  PowerKinetic check(params.beta);
  (void)check;
}

AuxiliaryState sample_auxiliary(std::size_t n_discrete, double tau, const PowerKinetic& kinetic,
                                Rng& rng) {
  AuxiliaryState aux;
  aux.tau = tau;
  aux.qD.resize(n_discrete);
  aux.pD.resize(n_discrete);
  for (std::size_t i = 0; i < n_discrete; ++i) {
    aux.qD[i] = tau * rng.uniform();
    double p = 0.0;
    while (p == 0.0) p = kinetic.sample(rng);
    aux.pD[i] = p;
  }
  return aux;
}

GeneralSampler::GeneralSampler(const Model& model, GeneralKernelParams params,
                               std::unique_ptr<Proposal> proposal)
    : model_(model),
      params_(std::move(params)),
      kinetic_(params_.beta),
      proposal_(std::move(proposal)) {
  validate(params_);
  if (!proposal_) proposal_ = std::make_unique<LocallyInformedProposal>();
}

StepStats GeneralSampler::step(MixedPoint& point, Rng& rng) {
  const std::size_t n_d = model_.n_discrete();
  if (params_.resample_aux || !aux_) {
    aux_ = sample_auxiliary(n_d, params_.tau, kinetic_, rng);
  } else {
    for (auto& p : aux_->pD) {
      p = 0.0;
      while (p == 0.0) p = kinetic_.sample(rng);
    }
  }
  std::vector<double> pC(model_.n_continuous());
  params_.mass.sample(rng, pC);
  return general_step(point, *aux_, pC, params_.T, model_, kinetic_, params_.integrator_eps, rng,
                      *proposal_, params_.mass);
}

}  // namespace mhmc
