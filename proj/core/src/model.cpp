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

#include "mhmc/model.hpp"

#include <cmath>
#include <stdexcept>

namespace mhmc {

std::vector<double> Model::site_cond_neglogp(std::size_t j, std::span<const int> x,
                                             std::span<const double> q) const {
  const std::size_t card = site_cardinality(j);
  std::vector<int> scratch(x.begin(), x.end());
  std::vector<double> out(card);
  for (std::size_t v = 0; v < card; ++v) {
    scratch[j] = static_cast<int>(v);
    out[v] = potential(scratch, q);
  }
  return out;
}

MixedPoint Model::initial_point() const {
  return MixedPoint{std::vector<int>(n_discrete(), 0), std::vector<double>(n_continuous(), 0.0)};
}

MixedPoint Model::sample_exact(Rng&) const {
  throw std::logic_error(name() + ": no exact sampler");
}

std::vector<double> Model::grad_q(const MixedPoint& p) const {
  std::vector<double> g(n_continuous());
  grad_q(p.x, p.q, g);
  return g;
}

void validate_point(const MixedPoint& point, const Model& model) {
  if (point.x.size() != model.n_discrete()) {
    throw std::invalid_argument("point has " + std::to_string(point.x.size()) +
                                " discrete sites, model expects " +
                                std::to_string(model.n_discrete()));
  }
  if (point.q.size() != model.n_continuous()) {
    throw std::invalid_argument("point has " + std::to_string(point.q.size()) +
                                " continuous coordinates, model expects " +
                                std::to_string(model.n_continuous()));
  }
  for (std::size_t j = 0; j < point.x.size(); ++j) {
    const auto card = static_cast<long long>(model.site_cardinality(j));
    if (point.x[j] < 0 || point.x[j] >= card) {
      throw std::invalid_argument("site " + std::to_string(j) + " value " +
                                  std::to_string(point.x[j]) + " outside [0, " +
                                  std::to_string(card) + ")");
    }
  }
  for (std::size_t i = 0; i < point.q.size(); ++i) {
    if (!std::isfinite(point.q[i])) {
      throw std::invalid_argument("continuous coordinate " + std::to_string(i) +
                                  " is not finite");
    }
  }
}

}  // namespace mhmc
