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

#include "mhmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace mhmc {

namespace {

std::vector<std::vector<double>> rank_normalized(const std::vector<std::vector<double>>& chains) {
  std::vector<double> flat;
  for (const auto& chain : chains) flat.insert(flat.end(), chain.begin(), chain.end());
  std::vector<std::size_t> order(flat.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return flat[a] < flat[b]; });

  const double s = static_cast<double>(flat.size());
  const boost::math::normal_distribution<double> normal;
  std::vector<double> score(flat.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && flat[order[j + 1]] == flat[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
    const double z = boost::math::quantile(normal, (avg_rank - 0.375) / (s + 0.25));
    for (std::size_t k = i; k <= j; ++k) score[order[k]] = z;
    i = j + 1;
  }

  std::vector<std::vector<double>> out(chains.size());
  std::size_t pos = 0;
  for (std::size_t c = 0; c < chains.size(); ++c) {
    out[c].assign(score.begin() + static_cast<std::ptrdiff_t>(pos),
                  score.begin() + static_cast<std::ptrdiff_t>(pos + chains[c].size()));
    pos += chains[c].size();
  }
  return out;
}

}  // namespace

EssResult ess(const std::vector<std::vector<double>>& input, const EssOptions& options) {
  if (input.empty()) throw std::invalid_argument("ess: need at least one chain");
  std::size_t n = std::numeric_limits<std::size_t>::max();
  for (const auto& c : input) n = std::min(n, c.size());
  if (n < 8) throw std::invalid_argument("ess: chains need at least 8 draws");

  std::vector<std::vector<double>> normalized;
  if (options.rank_normalize) normalized = rank_normalized(input);
  const auto& source = options.rank_normalize ? normalized : input;

  // Split each chain into two halves of equal length (dropping the middle
  // draw of odd-length chains).
  const std::size_t half = n / 2;
  std::vector<std::span<const double>> chains;
  for (const auto& c : source) {
    chains.emplace_back(c.data(), half);
    chains.emplace_back(c.data() + (n - half), half);
  }
  const std::size_t m = chains.size();
  const std::size_t len = half;
  const double total = static_cast<double>(m * len);

  std::vector<double> mean(m);
  std::vector<double> var(m);
  for (std::size_t c = 0; c < m; ++c) {
    mean[c] = std::accumulate(chains[c].begin(), chains[c].end(), 0.0) / static_cast<double>(len);
    double ss = 0.0;
    for (double v : chains[c]) ss += (v - mean[c]) * (v - mean[c]);
    var[c] = ss / static_cast<double>(len - 1);
  }
  const double mean_var = std::accumulate(var.begin(), var.end(), 0.0) / static_cast<double>(m);
  const double grand = std::accumulate(mean.begin(), mean.end(), 0.0) / static_cast<double>(m);
  double between = 0.0;
  for (double mu : mean) between += (mu - grand) * (mu - grand);
  between /= static_cast<double>(m - 1);
  const double var_plus = mean_var * static_cast<double>(len - 1) / static_cast<double>(len) + between;

  if (!(var_plus > 0.0)) return EssResult{total, true};

  // Mean over chains of the biased lag-t autocovariance.
  auto acov = [&](std::size_t t) {
    double acc = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      const auto& x = chains[c];
      double s = 0.0;
      for (std::size_t i = 0; i + t < len; ++i) s += (x[i] - mean[c]) * (x[i + t] - mean[c]);
      acc += s / static_cast<double>(len);
    }
    return acc / static_cast<double>(m);
  };
  auto rho = [&](std::size_t t) { return 1.0 - (mean_var - acov(t)) / var_plus; };

  std::vector<double> rho_hat(len, 0.0);
  double rho_even = 1.0;
  double rho_odd = rho(1);
  rho_hat[0] = rho_even;
  rho_hat[1] = rho_odd;
  std::size_t s = 1;
  while (s + 4 < len && rho_even + rho_odd > 0.0) {
    rho_even = rho(s + 1);
    rho_odd = rho(s + 2);
    if (rho_even + rho_odd >= 0.0) {
      rho_hat[s + 1] = rho_even;
      rho_hat[s + 2] = rho_odd;
    }
    s += 2;
  }
  const std::size_t max_s = s;
  if (rho_even > 0.0 && max_s + 1 < len) rho_hat[max_s + 1] = rho_even;

  // Initial monotone sequence.
  for (std::size_t t = 1; t + 3 <= max_s; t += 2) {
    if (rho_hat[t + 1] + rho_hat[t + 2] > rho_hat[t - 1] + rho_hat[t]) {
      rho_hat[t + 1] = 0.5 * (rho_hat[t - 1] + rho_hat[t]);
      rho_hat[t + 2] = rho_hat[t + 1];
    }
  }

  double tau = -1.0;
  for (std::size_t t = 0; t < max_s; ++t) tau += 2.0 * rho_hat[t];
  if (max_s + 1 < len) tau += rho_hat[max_s + 1];
  tau = std::max(tau, 1.0 / std::log10(total));
  return EssResult{total / tau, false};
}

std::vector<EssResult> ess_per_column(const std::vector<ChainOutput>& chains,
                                      std::span<const std::size_t> columns,
                                      const EssOptions& options) {
  std::vector<EssResult> out;
  out.reserve(columns.size());
  for (std::size_t col : columns) {
    std::vector<std::vector<double>> draws;
    draws.reserve(chains.size());
    for (const auto& c : chains) draws.push_back(c.column(col));
    out.push_back(ess(draws, options));
  }
  return out;
}

double mress(const std::vector<ChainOutput>& chains, std::span<const std::size_t> columns,
             const EssOptions& options) {
  if (chains.size() < 2) throw std::invalid_argument("mress: need at least two chains");
  if (columns.empty()) throw std::invalid_argument("mress: no columns selected");
  std::size_t total = 0;
  for (const auto& c : chains) total += c.n_samples();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : ess_per_column(chains, columns, options)) {
    best = std::min(best, r.ess / static_cast<double>(total));
  }
  return best;
}

std::vector<std::size_t> continuous_columns(const ChainOutput& chain) {
  std::vector<std::size_t> cols(chain.n_continuous);
  std::iota(cols.begin(), cols.end(), chain.n_discrete);
  return cols;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

double ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_one_sample_pvalue(double statistic, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * statistic);
}

double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m) {
  const double en = std::sqrt(static_cast<double>(n) * static_cast<double>(m) /
                              static_cast<double>(n + m));
  return kolmogorov_q((en + 0.12 + 0.11 / en) * statistic);
}

}  // namespace mhmc
