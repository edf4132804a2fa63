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

#include "mhmc/integrator.hpp"

#include <cmath>
#include <stdexcept>

namespace mhmc {

DiagonalMass::DiagonalMass(std::vector<double> masses) : masses_(std::move(masses)) {
  inv_mass_.reserve(masses_.size());
  for (double m : masses_) {
    if (!(m > 0.0) || !std::isfinite(m)) throw std::invalid_argument("masses must be positive");
    inv_mass_.push_back(1.0 / m);
  }
}

double DiagonalMass::kinetic(std::span<const double> p) const {
  double k = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) k += p[i] * p[i] * inverse(i);
  return 0.5 * k;
}

void DiagonalMass::sample(Rng& rng, std::span<double> p) const {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double z = rng.normal();
    p[i] = masses_.empty() ? z : z * std::sqrt(masses_[i]);
  }
}

namespace {

bool all_finite(std::span<const double> v) {
  for (double a : v) {
    if (!std::isfinite(a)) return false;
  }
  return true;
}

}  // namespace

LeapfrogResult leapfrog(const Model& model, std::span<const int> x, std::span<double> q,
                        std::span<double> p, double eta, std::size_t n_steps,
                        const DiagonalMass& mass) {
  LeapfrogResult result;
  if (n_steps == 0 || q.empty()) return result;
  const std::size_t n = q.size();
  std::vector<double> grad(n);
  model.grad_q(x, q, grad);
  ++result.grad_evals;
  if (!all_finite(grad)) {
    result.finite = false;
    return result;
  }
  const double half = 0.5 * eta;
  for (std::size_t s = 0; s < n_steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) p[i] -= half * grad[i];
    for (std::size_t i = 0; i < n; ++i) q[i] += eta * p[i] * mass.inverse(i);
    model.grad_q(x, q, grad);
    ++result.grad_evals;
    for (std::size_t i = 0; i < n; ++i) p[i] -= half * grad[i];
    if (!all_finite(q) || !all_finite(p)) {
      result.finite = false;
      return result;
    }
  }
  return result;
}

}  // namespace mhmc
