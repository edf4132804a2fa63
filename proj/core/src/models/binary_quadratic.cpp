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

#include "mhmc/models/binary_quadratic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mhmc/rng.hpp"

namespace mhmc::models {

namespace {

double spin(int v) { return v != 0 ? 1.0 : -1.0; }

double energy_of(const BinaryQuadraticSpec& spec, std::span<const double> s) {
  double u = 0.0;
  for (std::size_t i = 0; i < spec.N; ++i) {
    double field = 0.0;
    for (std::size_t k = 0; k < spec.N; ++k) field += spec.w(i, k) * s[k];
    u -= s[i] * (spec.b[i] + 0.5 * field);
  }
  return u;
}

}  // namespace

void BinaryQuadraticSpec::validate() const {
  if (W.size() != N * N || b.size() != N) {
    throw std::invalid_argument("binary: W must be N x N and b of size N");
  }
  for (std::size_t i = 0; i < N; ++i) {
    if (W[i * N + i] != 0.0) throw std::invalid_argument("binary: W must have zero diagonal");
    for (std::size_t j = i + 1; j < N; ++j) {
      if (W[i * N + j] != W[j * N + i]) throw std::invalid_argument("binary: W must be symmetric");
    }
  }
}

BinaryQuadraticSpec random_binary_quadratic(std::size_t N, std::uint64_t seed,
                                            double coupling_scale, double field_scale) {
  Rng rng(seed, 0);
  BinaryQuadraticSpec spec;
  spec.N = N;
  spec.W.assign(N * N, 0.0);
  spec.b.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = i + 1; j < N; ++j) {
      const double w = coupling_scale * rng.normal();
      spec.W[i * N + j] = w;
      spec.W[j * N + i] = w;
    }
  }
  for (auto& v : spec.b) v = field_scale * rng.normal();
  return spec;
}

BinaryEnumeration binary_quadratic_enumerate(const BinaryQuadraticSpec& spec) {
  spec.validate();
  if (spec.N > kMaxEnumerationSites) {
    throw std::invalid_argument("binary: enumeration refused for N > " +
                                std::to_string(kMaxEnumerationSites));
  }
  const std::size_t N = spec.N;
  const std::size_t n_states = std::size_t{1} << N;
  std::vector<double> log_w(n_states);
  std::vector<double> s(N);
  double max_lw = -std::numeric_limits<double>::infinity();
  for (std::size_t state = 0; state < n_states; ++state) {
    for (std::size_t i = 0; i < N; ++i) s[i] = ((state >> i) & 1U) != 0 ? 1.0 : -1.0;
    log_w[state] = -energy_of(spec, s);
    max_lw = std::max(max_lw, log_w[state]);
  }
  double total = 0.0;
  std::vector<double> on(N, 0.0);
  for (std::size_t state = 0; state < n_states; ++state) {
    const double w = std::exp(log_w[state] - max_lw);
    total += w;
    for (std::size_t i = 0; i < N; ++i) {
      if (((state >> i) & 1U) != 0) on[i] += w;
    }
  }
  BinaryEnumeration result;
  result.log_partition = max_lw + std::log(total);
  result.marginals.resize(N);
  for (std::size_t i = 0; i < N; ++i) result.marginals[i] = on[i] / total;
  return result;
}

BinaryQuadraticModel::BinaryQuadraticModel(BinaryQuadraticSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

double BinaryQuadraticModel::potential(std::span<const int> x, std::span<const double>) const {
  std::vector<double> s(spec_.N);
  for (std::size_t i = 0; i < spec_.N; ++i) s[i] = spin(x[i]);
  return energy_of(spec_, s);
}

std::vector<double> BinaryQuadraticModel::site_cond_neglogp(std::size_t j, std::span<const int> x,
                                                            std::span<const double>) const {
  // Only terms touching s_j change: U = -s_j (b_j + sum_k W_jk s_k) + const.
  double field = spec_.b[j];
  for (std::size_t k = 0; k < spec_.N; ++k) {
    if (k != j) field += spec_.w(j, k) * spin(x[k]);
  }
  return {field, -field};
}

}  // namespace mhmc::models
