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
#include <random>
#include <span>
#include <vector>

namespace mhmc {

// Seeded random stream. A (seed, stream) pair fully determines the sequence of
// draws; chain c of a multi-chain run uses stream c with the shared seed.
// Not thread-safe: one instance per chain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  double normal();
  // Exponential(1) by inversion.
  double exponential();
  double gamma(double shape);
  // Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  // Draw an index with probability proportional to weights[i] (weights >= 0,
  // not all zero).
  std::size_t categorical(std::span<const double> weights);
  // Draw an index with probability proportional to exp(log_weights[i]).
  // Entries equal to -inf are never selected.
  std::size_t categorical_log(std::span<const double> log_weights);

  // Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);
  // Dirichlet(1, ..., 1) on n parts as normalized Exponential(1) draws.
  std::vector<double> dirichlet_ones(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mhmc
