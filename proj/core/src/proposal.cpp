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

#include "mhmc/proposal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mhmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_nondegenerate(std::size_t j, const Model& model) {
  if (j >= model.n_discrete()) throw std::out_of_range("site index out of range");
  if (model.site_cardinality(j) < 2) {
    throw std::invalid_argument("degenerate site " + std::to_string(j));
  }
}

// log sum_{v != excluded} exp(-neglogp[v])
double masked_log_normalizer(const std::vector<double>& neglogp, std::size_t excluded) {
  double max_l = kNegInf;
  for (std::size_t v = 0; v < neglogp.size(); ++v) {
    if (v != excluded) max_l = std::max(max_l, -neglogp[v]);
  }
  double sum = 0.0;
  for (std::size_t v = 0; v < neglogp.size(); ++v) {
    if (v != excluded) sum += std::exp(-neglogp[v] - max_l);
  }
  return max_l + std::log(sum);
}

ProposedMove informed_move(std::size_t j, int from, int to, const std::vector<double>& neglogp) {
  const auto cur = static_cast<std::size_t>(from);
  const auto nxt = static_cast<std::size_t>(to);
  ProposedMove move;
  move.site = j;
  move.value = to;
  move.log_fwd = -neglogp[nxt] - masked_log_normalizer(neglogp, cur);
  move.log_bwd = -neglogp[cur] - masked_log_normalizer(neglogp, nxt);
  move.delta_potential = neglogp[nxt] - neglogp[cur];
  return move;
}

double potential_with(std::size_t j, int value, const MixedPoint& point, const Model& model) {
  std::vector<int> x = point.x;
  x[j] = value;
  return model.potential(x, point.q);
}

}  // namespace

ProposedMove LocallyInformedProposal::propose(std::size_t j, const MixedPoint& point,
                                              const Model& model, Rng& rng) {
  return default_proposal_sample(j, point, model, rng);
}

ProposedMove LocallyInformedProposal::evaluate(std::size_t j, const MixedPoint& point, int to,
                                               const Model& model) const {
  require_nondegenerate(j, model);
  if (to == point.x[j]) throw std::invalid_argument("proposal must change the site value");
  const auto neglogp = model.site_cond_neglogp(j, point.x, point.q);
  return informed_move(j, point.x[j], to, neglogp);
}

ProposedMove default_proposal_sample(std::size_t j, const MixedPoint& point, const Model& model,
                                     Rng& rng) {
  require_nondegenerate(j, model);
  const auto neglogp = model.site_cond_neglogp(j, point.x, point.q);
  const int cur = point.x[j];
  std::vector<double> logits(neglogp.size());
  for (std::size_t v = 0; v < neglogp.size(); ++v) {
    logits[v] = static_cast<int>(v) == cur ? kNegInf : -neglogp[v];
  }
  const auto to = static_cast<int>(rng.categorical_log(logits));
  return informed_move(j, cur, to, neglogp);
}

ProposedMove UniformProposal::propose(std::size_t j, const MixedPoint& point, const Model& model,
                                      Rng& rng) {
  require_nondegenerate(j, model);
  const auto card = model.site_cardinality(j);
  auto draw = static_cast<int>(rng.index(card - 1));
  if (draw >= point.x[j]) ++draw;
  return evaluate(j, point, draw, model);
}

ProposedMove UniformProposal::evaluate(std::size_t j, const MixedPoint& point, int to,
                                       const Model& model) const {
  require_nondegenerate(j, model);
  if (to == point.x[j]) throw std::invalid_argument("proposal must change the site value");
  const double log_q = -std::log(static_cast<double>(model.site_cardinality(j) - 1));
  ProposedMove move;
  move.site = j;
  move.value = to;
  move.log_fwd = log_q;
  move.log_bwd = log_q;
  move.delta_potential = potential_with(j, to, point, model) - model.potential(point.x, point.q);
  return move;
}

double delta_E(std::span<const int> x, std::span<const int> x_new, std::span<const double> q,
               double log_fwd, double log_bwd, const Model& model) {
  return (-model.potential(x, q) + log_fwd) - (-model.potential(x_new, q) + log_bwd);
}

}  // namespace mhmc
