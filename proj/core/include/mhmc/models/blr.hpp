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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mhmc/model.hpp"

namespace mhmc::models {

// Logistic regression with per-coefficient inclusion indicators:
//   y_i ~ Bernoulli(sigmoid(sum_j X_ij beta_j gamma_j)),  beta ~ N(0, prior_var I).
// The discrete sites are gamma (binary), the continuous coordinates beta.
struct BlrVarselSpec {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> X;  // row-major n x d
  std::vector<int> y;     // 0/1
  double prior_var = 25.0;

  double x(std::size_t i, std::size_t j) const { return X[i * d + j]; }
  void validate() const;
};

struct BlrDataset {
  BlrVarselSpec spec;
  std::vector<double> true_beta;
  std::vector<std::size_t> support;  // sorted indices of the nonzero entries of true_beta
};

// Rows of X ~ N(0, S) with S_jj = 3 and S_jk = 0.3, five random coefficients
// at 0.5 (min(5, d) in general), y_i ~ Bernoulli(sigmoid(X_i . beta)).
BlrDataset blr_generate(std::uint64_t seed, std::size_t n = 100, std::size_t d = 20);

// CSV with header y,x_1..x_d and one row per observation.
void write_blr_csv(std::ostream& out, const BlrVarselSpec& spec);
BlrVarselSpec read_blr_csv(std::istream& in, double prior_var = 25.0);

// log(1 + exp(t)) without overflow.
double softplus(double t);

class BlrModel final : public Model {
 public:
  using Model::grad_q;
  using Model::potential;
  explicit BlrModel(BlrVarselSpec spec);

  std::string name() const override { return "blr"; }
  std::size_t n_discrete() const override { return spec_.d; }
  std::size_t n_continuous() const override { return spec_.d; }
  std::size_t site_cardinality(std::size_t) const override { return 2; }

  // x = gamma, q = beta
  double potential(std::span<const int> x, std::span<const double> q) const override;
  void grad_q(std::span<const int> x, std::span<const double> q,
              std::span<double> out) const override;
  // Both values of gamma_j from one pass over the linear predictor, changing
  // only column j's contribution.
  std::vector<double> site_cond_neglogp(std::size_t j, std::span<const int> x,
                                        std::span<const double> q) const override;

  const BlrVarselSpec& spec() const { return spec_; }

 private:
  std::vector<double> linear_predictor(std::span<const int> gamma,
                                       std::span<const double> beta) const;
  double prior_term(std::span<const double> beta) const;

  BlrVarselSpec spec_;
  double log_norm_;  // (d / 2) log(2 pi prior_var)
};

}  // namespace mhmc::models
