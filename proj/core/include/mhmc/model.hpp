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
#include <string>
#include <vector>

#include "mhmc/rng.hpp"

namespace mhmc {

// A point of the mixed state space: one integer per discrete site, each in
// [0, cardinality_j), and a real vector of continuous coordinates.
struct MixedPoint {
  std::vector<int> x;
  std::vector<double> q;

  bool operator==(const MixedPoint&) const = default;
};

// Target distribution pi(x, q) proportional to exp(-U(x, q)).
//
// Implementations are immutable after construction and may be shared across
// threads.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual std::size_t n_discrete() const = 0;
  virtual std::size_t n_continuous() const = 0;
  virtual std::size_t site_cardinality(std::size_t j) const = 0;

  virtual double potential(std::span<const int> x, std::span<const double> q) const = 0;
  // Writes dU/dq into out (size n_continuous()).
  virtual void grad_q(std::span<const int> x, std::span<const double> q,
                      std::span<double> out) const = 0;

  // Unnormalized negative log conditional weight of every value of site j,
  // all other coordinates held fixed. Differences between entries equal
  // differences of the potential. The default evaluates the potential once per
  // value; models override it when structure allows something cheaper.
  virtual std::vector<double> site_cond_neglogp(std::size_t j, std::span<const int> x,
                                                std::span<const double> q) const;

  // Deterministic chain start: all sites at 0 and q at the origin unless a
  // model overrides it.
  virtual MixedPoint initial_point() const;

  virtual bool has_exact_sampler() const { return false; }
  // Independent draw from pi. Throws std::logic_error when unsupported.
  virtual MixedPoint sample_exact(Rng& rng) const;

  double potential(const MixedPoint& p) const { return potential(p.x, p.q); }
  std::vector<double> grad_q(const MixedPoint& p) const;
};

// Throws std::invalid_argument describing the first violated invariant.
void validate_point(const MixedPoint& point, const Model& model);

}  // namespace mhmc
