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

#include "mhmc/models/blr.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mhmc/rng.hpp"

namespace mhmc::models {

void BlrVarselSpec::validate() const {
  if (d == 0) throw std::invalid_argument("blr: d must be positive");
  if (X.size() != n * d) throw std::invalid_argument("blr: X must be n x d");
  if (y.size() != n) throw std::invalid_argument("blr: y must have n entries");
  for (int v : y) {
    if (v != 0 && v != 1) throw std::invalid_argument("blr: y entries must be 0 or 1");
  }
  for (double v : X) {
    if (!std::isfinite(v)) throw std::invalid_argument("blr: X must be finite");
  }
  if (!(prior_var > 0.0)) throw std::invalid_argument("blr: prior_var must be positive");
}

double softplus(double t) { return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

namespace {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

BlrDataset blr_generate(std::uint64_t seed, std::size_t n, std::size_t d) {
  Rng rng(seed, 0);
  BlrDataset data;
  auto& spec = data.spec;
  spec.n = n;
  spec.d = d;
  spec.X.resize(n * d);
  // S = 2.7 I + 0.3 11^T, so x = sqrt(2.7) z + sqrt(0.3) w 1 with z, w standard normal.
  const double a = std::sqrt(2.7);
  const double b = std::sqrt(0.3);
  for (std::size_t i = 0; i < n; ++i) {
    const double shared = b * rng.normal();
    for (std::size_t j = 0; j < d; ++j) spec.X[i * d + j] = a * rng.normal() + shared;
  }

  const std::size_t n_active = std::min<std::size_t>(5, d);
  auto perm = rng.permutation(d);
  data.support.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_active));
  std::sort(data.support.begin(), data.support.end());
  data.true_beta.assign(d, 0.0);
  for (auto j : data.support) data.true_beta[j] = 0.5;

  spec.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double eta = 0.0;
    for (std::size_t j = 0; j < d; ++j) eta += spec.X[i * d + j] * data.true_beta[j];
    spec.y[i] = rng.uniform() < sigmoid(eta) ? 1 : 0;
  }
  return data;
}

void write_blr_csv(std::ostream& out, const BlrVarselSpec& spec) {
  out << "y";
  for (std::size_t j = 0; j < spec.d; ++j) out << ",x_" << (j + 1);
  out << '\n';
  std::ostringstream cell;
  cell.precision(17);
  for (std::size_t i = 0; i < spec.n; ++i) {
    out << spec.y[i];
    for (std::size_t j = 0; j < spec.d; ++j) {
      cell.str("");
      cell << spec.x(i, j);
      out << ',' << cell.str();
    }
    out << '\n';
  }
}

BlrVarselSpec read_blr_csv(std::istream& in, double prior_var) {
  BlrVarselSpec spec;
  spec.prior_var = prior_var;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("blr csv: missing header");
  {
    std::istringstream header(line);
    std::string field;
    std::getline(header, field, ',');
    if (field != "y") throw std::runtime_error("blr csv: first column must be y");
    while (std::getline(header, field, ',')) ++spec.d;
  }
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    std::istringstream cells(line);
    std::string field;
    std::size_t col = 0;
    while (std::getline(cells, field, ',')) {
      try {
        if (col == 0) {
          spec.y.push_back(std::stoi(field));
        } else {
          spec.X.push_back(std::stod(field));
        }
      } catch (const std::exception&) {
        throw std::runtime_error("blr csv: bad value on row " + std::to_string(row));
      }
      ++col;
    }
    if (col != spec.d + 1) {
      throw std::runtime_error("blr csv: row " + std::to_string(row) + " has " +
                               std::to_string(col) + " columns");
    }
  }
  spec.n = row;
  spec.validate();
  return spec;
}

BlrModel::BlrModel(BlrVarselSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  log_norm_ = 0.5 * static_cast<double>(spec_.d) *
              std::log(2.0 * std::numbers::pi * spec_.prior_var);
}

std::vector<double> BlrModel::linear_predictor(std::span<const int> gamma,
                                               std::span<const double> beta) const {
  const std::size_t n = spec_.n;
  const std::size_t d = spec_.d;
  std::vector<double> eta(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = spec_.X.data() + i * d;
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (gamma[j] != 0) s += row[j] * beta[j];
    }
    eta[i] = s;
  }
  return eta;
}

double BlrModel::prior_term(std::span<const double> beta) const {
  double ss = 0.0;
  for (double b : beta) ss += b * b;
  return 0.5 * ss / spec_.prior_var + log_norm_;
}

double BlrModel::potential(std::span<const int> x, std::span<const double> q) const {
  const auto eta = linear_predictor(x, q);
  double nll = 0.0;
  for (std::size_t i = 0; i < spec_.n; ++i) nll += softplus(eta[i]) - spec_.y[i] * eta[i];
  return prior_term(q) + nll;
}

void BlrModel::grad_q(std::span<const int> x, std::span<const double> q,
                      std::span<double> out) const {
  const std::size_t d = spec_.d;
  const auto eta = linear_predictor(x, q);
  for (std::size_t j = 0; j < d; ++j) out[j] = q[j] / spec_.prior_var;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    const double resid = sigmoid(eta[i]) - spec_.y[i];
    const double* row = spec_.X.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) {
      if (x[j] != 0) out[j] += row[j] * resid;
    }
  }
}

std::vector<double> BlrModel::site_cond_neglogp(std::size_t j, std::span<const int> x,
                                                std::span<const double> q) const {
  const auto eta = linear_predictor(x, q);
  const double included = x[j] != 0 ? 1.0 : 0.0;
  double nll_off = 0.0;
  double nll_on = 0.0;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    const double contrib = spec_.x(i, j) * q[j];
    const double eta_off = eta[i] - included * contrib;
    const double eta_on = eta_off + contrib;
    nll_off += softplus(eta_off) - spec_.y[i] * eta_off;
    nll_on += softplus(eta_on) - spec_.y[i] * eta_on;
  }
  const double prior = prior_term(q);
  return {prior + nll_off, prior + nll_on};
}

}  // namespace mhmc::models
