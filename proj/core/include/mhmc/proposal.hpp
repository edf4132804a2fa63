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

#include "mhmc/model.hpp"
#include "mhmc/rng.hpp"

namespace mhmc {

// A single-site move x -> x~ (x~ differs from x only at `site`).
struct ProposedMove {
  std::size_t site = 0;
  int value = 0;              // proposed value of x_site
  double log_fwd = 0.0;       // log Q_j(x~ | x)
  double log_bwd = 0.0;       // log Q_j(x | x~)
  double delta_potential = 0.0;  // U(x~, q) - U(x, q)

  // log [pi(x, q) Q_j(x~|x) / (pi(x~, q) Q_j(x|x~))]
  double delta_energy() const { return delta_potential + log_fwd - log_bwd; }
};

// Single-site proposal family Q_j. Never proposes the current value.
class Proposal {
 public:
  virtual ~Proposal() = default;
  virtual ProposedMove propose(std::size_t j, const MixedPoint& point, const Model& model,
                               Rng& rng) = 0;
  // The move from `point` to `point` with x_j := to, with all bookkeeping
  // filled in but no randomness.
  virtual ProposedMove evaluate(std::size_t j, const MixedPoint& point, int to,
                                const Model& model) const = 0;
};

// Q_j(x~|x) proportional to pi(x~, q) over the values of site j other than the
// current one.
class LocallyInformedProposal final : public Proposal {
 public:
  ProposedMove propose(std::size_t j, const MixedPoint& point, const Model& model,
                       Rng& rng) override;
  ProposedMove evaluate(std::size_t j, const MixedPoint& point, int to,
                        const Model& model) const override;
};

// Uniform over the values of site j other than the current one.
class UniformProposal final : public Proposal {
 public:
  ProposedMove propose(std::size_t j, const MixedPoint& point, const Model& model,
                       Rng& rng) override;
  ProposedMove evaluate(std::size_t j, const MixedPoint& point, int to,
                        const Model& model) const override;
};

// Locally-informed draw at site j. Throws std::invalid_argument ("degenerate
// site") when site j has a single value.
ProposedMove default_proposal_sample(std::size_t j, const MixedPoint& point, const Model& model,
                                     Rng& rng);

// U(x~, q) - U(x, q) + log_fwd - log_bwd with both potentials evaluated
// directly.
double delta_E(std::span<const int> x, std::span<const int> x_new, std::span<const double> q,
               double log_fwd, double log_bwd, const Model& model);

}  // namespace mhmc
