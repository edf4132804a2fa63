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
#include <functional>
#include <span>
#include <vector>

#include "mhmc/chain.hpp"

namespace mhmc {

struct EssResult {
  double ess = 0.0;
  // All draws identical; ess is then reported as the total draw count.
  bool degenerate = false;
};

struct EssOptions {
  // Replace draws by normal scores of their pooled ranks before estimating.
  bool rank_normalize = false;
};

// Multi-chain effective sample size of one scalar quantity: every chain is
// split in half, autocorrelations combine within- and between-chain variance,
// and the sum of autocorrelations is truncated with Geyer's initial monotone
// positive sequence. Result lies in (0, S log10 S] for S total draws.
// Requires at least one chain and at least 8 draws per chain; chains longer
// than the shortest one are truncated to its length.
EssResult ess(const std::vector<std::vector<double>>& chains, const EssOptions& options = {});

// ess / total draws for each selected column of the chain outputs.
std::vector<EssResult> ess_per_column(const std::vector<ChainOutput>& chains,
                                      std::span<const std::size_t> columns,
                                      const EssOptions& options = {});

// Minimum over the selected columns of ess / total draws. Requires >= 2 chains.
// Not capped at 1: antithetic chains can exceed it.
double mress(const std::vector<ChainOutput>& chains, std::span<const std::size_t> columns,
             const EssOptions& options = {});

// Columns of the continuous coordinates (n_discrete .. n_discrete + n_continuous).
std::vector<std::size_t> continuous_columns(const ChainOutput& chain);

// sup_t |F_a(t) - F_b(t)| of the two empirical CDFs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

// sup_t |F_n(t) - F(t)| for a continuous reference CDF.
double ks_one_sample(std::span<const double> sample, const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov tail probability Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

// Asymptotic p-values of the K-S statistics (with the usual small-sample
// correction of the scaled argument).
double ks_one_sample_pvalue(double statistic, std::size_t n);
double ks_two_sample_pvalue(double statistic, std::size_t n, std::size_t m);

}  // namespace mhmc
