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

#include "mhmc/kinetic.hpp"

#include <cmath>
#include <stdexcept>

namespace mhmc {

PowerKinetic::PowerKinetic(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("kinetic energy exponent beta must be positive and finite");
  }
}

double PowerKinetic::k(double p) const {
  const double a = std::abs(p);
  if (beta_ == 1.0) return a;
  if (beta_ == 2.0) return a * a;
  return std::pow(a, beta_);
}

double PowerKinetic::kprime(double p) const {
  const double s = p > 0.0 ? 1.0 : (p < 0.0 ? -1.0 : 0.0);
  if (beta_ == 1.0) return s;
  if (beta_ == 2.0) return 2.0 * p;
  return s * beta_ * std::pow(std::abs(p), beta_ - 1.0);
}

double PowerKinetic::kinv(double e) const {
  if (e < 0.0) throw std::domain_error("PowerKinetic::kinv: negative energy");
  if (beta_ == 1.0) return e;
  if (beta_ == 2.0) return std::sqrt(e);
  return std::pow(e, 1.0 / beta_);
}

double PowerKinetic::sample(Rng& rng) const {
  const double energy = beta_ == 1.0 ? rng.exponential() : rng.gamma(1.0 / beta_);
  const double magnitude = kinv(energy);
  return rng.uniform() < 0.5 ? -magnitude : magnitude;
}

}  // namespace mhmc
