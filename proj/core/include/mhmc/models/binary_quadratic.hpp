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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mhmc/model.hpp"

namespace mhmc::models {

// pi(s) proportional to exp(-U(s)) over spins s in {-1, +1}^N with
//   U(s) = -b.s - 0.5 s^T W s.
// Site value 0 encodes s = -1 and 1 encodes s = +1. No continuous part.
struct BinaryQuadraticSpec {
  std::size_t N = 0;
  std::vector<double> W;  // N x N, symmetric, zero diagonal
  std::vector<double> b;

  double w(std::size_t i, std::size_t j) const { return W[i * N + j]; }
  void validate() const;
};

// W_ij = W_ji ~ N(0, coupling_scale^2) for i < j, b_i ~ N(0, field_scale^2).
BinaryQuadraticSpec random_binary_quadratic(std::size_t N, std::uint64_t seed,
                                            double coupling_scale = 0.5,
                                            double field_scale = 0.5);

inline constexpr std::size_t kMaxEnumerationSites = 20;

struct BinaryEnumeration {
  std::vector<double> marginals;  // P(s_i = +1)
  double log_partition = 0.0;
};

// Exact marginals by summing over all 2^N states with log-sum-exp. Throws
// std::invalid_argument for N > 20.
BinaryEnumeration binary_quadratic_enumerate(const BinaryQuadraticSpec& spec);

class BinaryQuadraticModel final : public Model {
 public:
  using Model::grad_q;
  using Model::potential;
  explicit BinaryQuadraticModel(BinaryQuadraticSpec spec);

  std::string name() const override { return "binary"; }
  std::size_t n_discrete() const override { return spec_.N; }
  std::size_t n_continuous() const override { return 0; }
  std::size_t site_cardinality(std::size_t) const override { return 2; }
  double potential(std::span<const int> x, std::span<const double> q) const override;
  void grad_q(std::span<const int>, std::span<const double>, std::span<double>) const override {}
  std::vector<double> site_cond_neglogp(std::size_t j, std::span<const int> x,
                                        std::span<const double> q) const override;

  const BinaryQuadraticSpec& spec() const { return spec_; }

 private:
  BinaryQuadraticSpec spec_;
};

}  // namespace mhmc::models
