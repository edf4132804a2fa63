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
#include <span>
#include <vector>

#include "mhmc/model.hpp"
#include "mhmc/rng.hpp"

namespace mhmc {

// Diagonal mass matrix for the continuous momenta; K(p) = sum p_i^2 / (2 m_i).
// An empty mass vector means the identity.
class DiagonalMass {
 public:
  DiagonalMass() = default;
  explicit DiagonalMass(std::vector<double> masses);

  bool is_identity() const { return inv_mass_.empty(); }
  double kinetic(std::span<const double> p) const;
  // p_i ~ N(0, m_i)
  void sample(Rng& rng, std::span<double> p) const;
  double inverse(std::size_t i) const { return inv_mass_.empty() ? 1.0 : inv_mass_[i]; }
  const std::vector<double>& masses() const { return masses_; }

 private:
  std::vector<double> masses_;
  std::vector<double> inv_mass_;
};

struct LeapfrogResult {
  std::size_t grad_evals = 0;
  bool finite = true;
};

// n_steps leapfrog steps (half kick, drift, half kick) of size eta with the
// discrete state held at x. The gradient is reused between consecutive steps,
// so a call costs n_steps + 1 gradient evaluations. Stops early and reports
// finite == false when q, p or the gradient become non-finite.
LeapfrogResult leapfrog(const Model& model, std::span<const int> x, std::span<double> q,
                        std::span<double> p, double eta, std::size_t n_steps,
                        const DiagonalMass& mass = {});

}  // namespace mhmc
