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

#include "mhmc/model.hpp"

namespace mhmc::models {

// Mixture of K diagonal Gaussians in D dimensions with the component label as
// a single discrete site: p(z, q) = weights[z] N(q | means[z], diag(variances[z])).
struct GmmSpec {
  std::size_t K = 0;
  std::size_t D = 0;
  std::vector<double> weights;
  std::vector<std::vector<double>> means;      // K x D
  std::vector<std::vector<double>> variances;  // K x D

  void validate() const;
};

// K = 4, D = 1, weights (0.15, 0.3, 0.3, 0.25), means (-2, 0, 2, 4), variance
// 0.1 for every component.
GmmSpec gmm1d_preset();

// K = 4, D = 24, same weights, variance 3 everywhere. Dimension d uses the
// d-th lexicographic permutation of (-2, 0, 2, 4) for the component means.
GmmSpec gmm24_preset();

// -log w_z + sum_d [0.5 log(2 pi var_zd) + 0.5 (q_d - mu_zd)^2 / var_zd]
double gmm_potential(std::size_t z, std::span<const double> q, const GmmSpec& spec);

class GmmModel final : public Model {
 public:
  using Model::grad_q;
  using Model::potential;
  explicit GmmModel(GmmSpec spec, std::string name = "gmm");

  std::string name() const override { return name_; }
  std::size_t n_discrete() const override { return 1; }
  std::size_t n_continuous() const override { return spec_.D; }
  std::size_t site_cardinality(std::size_t) const override { return spec_.K; }
  double potential(std::span<const int> x, std::span<const double> q) const override;
  void grad_q(std::span<const int> x, std::span<const double> q,
              std::span<double> out) const override;
  std::vector<double> site_cond_neglogp(std::size_t j, std::span<const int> x,
                                        std::span<const double> q) const override;

  bool has_exact_sampler() const override { return true; }
  // Ancestral draw: z ~ weights, q ~ N(means[z], variances[z]).
  MixedPoint sample_exact(Rng& rng) const override;

  const GmmSpec& spec() const { return spec_; }

 private:
  double component_potential(std::size_t z, std::span<const double> q) const;

  GmmSpec spec_;
  std::string name_;
  std::vector<double> offset_;  // -log w_z + 0.5 sum_d log(2 pi var_zd)
  std::vector<std::vector<double>> inv_var_;
};

}  // namespace mhmc::models
