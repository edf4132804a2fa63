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

#include "mhmc/rng.hpp"

namespace mhmc {

// Power-family kinetic energy k(p) = |p|^beta for the auxiliary momenta of
// discrete sites. beta = 1 is Laplace momentum (unit speed on the torus).
class PowerKinetic {
 public:
  explicit PowerKinetic(double beta = 1.0);

  double beta() const { return beta_; }

  double k(double p) const;
  // Velocity dk/dp = sign(p) * beta * |p|^(beta - 1).
  double kprime(double p) const;
  // Magnitude |p| with k(p) == e, for e >= 0.
  double kinv(double e) const;
  // p ~ nu(p) proportional to exp(-|p|^beta). |p|^beta is Gamma(1/beta, 1).
  double sample(Rng& rng) const;

 private:
  double beta_;
};

}  // namespace mhmc
