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

#include "mhmc/models/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mhmc::models {

void GmmSpec::validate() const {
  if (K < 1) throw std::invalid_argument("gmm: K must be at least 1");
  if (weights.size() != K || means.size() != K || variances.size() != K) {
    throw std::invalid_argument("gmm: weights, means and variances need K entries");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("gmm: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("gmm: weights must sum to 1");
  for (std::size_t k = 0; k < K; ++k) {
    if (means[k].size() != D || variances[k].size() != D) {
      throw std::invalid_argument("gmm: each component needs D means and variances");
    }
    for (double v : variances[k]) {
      if (!(v > 0.0)) throw std::invalid_argument("gmm: variances must be positive");
    }
  }
}

GmmSpec gmm1d_preset() {
  GmmSpec spec;
  spec.K = 4;
  spec.D = 1;
  spec.weights = {0.15, 0.3, 0.3, 0.25};
  spec.means = {{-2.0}, {0.0}, {2.0}, {4.0}};
  spec.variances.assign(4, std::vector<double>{0.1});
  return spec;
}

GmmSpec gmm24_preset() {
  GmmSpec spec;
  spec.K = 4;
  spec.D = 24;
  spec.weights = {0.15, 0.3, 0.3, 0.25};
  spec.means.assign(4, std::vector<double>(24));
  spec.variances.assign(4, std::vector<double>(24, 3.0));
  std::vector<double> perm{-2.0, 0.0, 2.0, 4.0};
  for (std::size_t d = 0; d < 24; ++d) {
    for (std::size_t k = 0; k < 4; ++k) spec.means[k][d] = perm[k];
    std::next_permutation(perm.begin(), perm.end());
  }
  return spec;
}

double gmm_potential(std::size_t z, std::span<const double> q, const GmmSpec& spec) {
  double u = -std::log(spec.weights.at(z));
  for (std::size_t d = 0; d < spec.D; ++d) {
    const double var = spec.variances[z][d];
    const double r = q[d] - spec.means[z][d];
    u += 0.5 * std::log(2.0 * std::numbers::pi * var) + 0.5 * r * r / var;
  }
  return u;
}

GmmModel::GmmModel(GmmSpec spec, std::string name) : spec_(std::move(spec)), name_(std::move(name)) {
  spec_.validate();
  offset_.resize(spec_.K);
  inv_var_.resize(spec_.K);
  for (std::size_t k = 0; k < spec_.K; ++k) {
    double off = -std::log(spec_.weights[k]);
    inv_var_[k].resize(spec_.D);
    for (std::size_t d = 0; d < spec_.D; ++d) {
      off += 0.5 * std::log(2.0 * std::numbers::pi * spec_.variances[k][d]);
      inv_var_[k][d] = 1.0 / spec_.variances[k][d];
    }
    offset_[k] = off;
  }
}

double GmmModel::component_potential(std::size_t z, std::span<const double> q) const {
  const auto& mu = spec_.means[z];
  const auto& iv = inv_var_[z];
  double quad = 0.0;
  for (std::size_t d = 0; d < spec_.D; ++d) {
    const double r = q[d] - mu[d];
    quad += r * r * iv[d];
  }
  return offset_[z] + 0.5 * quad;
}

double GmmModel::potential(std::span<const int> x, std::span<const double> q) const {
  return component_potential(static_cast<std::size_t>(x[0]), q);
}

void GmmModel::grad_q(std::span<const int> x, std::span<const double> q,
                      std::span<double> out) const {
  const auto z = static_cast<std::size_t>(x[0]);
  const auto& mu = spec_.means[z];
  const auto& iv = inv_var_[z];
  for (std::size_t d = 0; d < spec_.D; ++d) out[d] = (q[d] - mu[d]) * iv[d];
}

std::vector<double> GmmModel::site_cond_neglogp(std::size_t, std::span<const int>,
                                                std::span<const double> q) const {
  std::vector<double> out(spec_.K);
  for (std::size_t k = 0; k < spec_.K; ++k) out[k] = component_potential(k, q);
  return out;
}

MixedPoint GmmModel::sample_exact(Rng& rng) const {
  MixedPoint p;
  const auto z = rng.categorical(spec_.weights);
  p.x = {static_cast<int>(z)};
  p.q.resize(spec_.D);
  for (std::size_t d = 0; d < spec_.D; ++d) {
    p.q[d] = spec_.means[z][d] + std::sqrt(spec_.variances[z][d]) * rng.normal();
  }
  return p;
}

}  // namespace mhmc::models
