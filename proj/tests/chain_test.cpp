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

#include "mhmc/chain.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "mhmc/diagnostics.hpp"
#include "mhmc/laplace_kernel.hpp"
#include "mhmc/models/gmm.hpp"

namespace mhmc {
namespace {

struct GmmRun {
  models::GmmModel model;
  LaplaceKernelParams params;
  SamplerFactory factory() const {
    return [this](std::size_t) { return std::make_unique<LaplaceSampler>(model, params); };
  }
  InitFactory init() const {
    return [this](std::size_t, Rng& rng) { return model.sample_exact(rng); };
  }
};

GmmRun gmm1d() { return GmmRun{models::GmmModel(models::gmm1d_preset()), {0.2, 5.0, 25, 1, {}}}; }

TEST(RunChain, ZeroSamplesGivesEmptyOutput) {
  const GmmRun s = gmm1d();
  const auto out = run_chains(s.factory(), s.init(), MultiChainConfig{3, 5, 0, 1, 1});
  ASSERT_EQ(out.size(), 3u);
  for (const auto& c : out) {
    EXPECT_EQ(c.n_samples(), 0u);
    EXPECT_TRUE(c.accept_trace.empty());
    EXPECT_EQ(c.acceptance_rate(), 0.0);
  }
}

TEST(RunChain, LayoutOfRecordedRows) {
  const GmmRun s = gmm1d();
  LaplaceSampler sampler(s.model, s.params);
  Rng rng(2);
  const auto out = run_chain(sampler, MixedPoint{{2}, {1.0}}, 10, 50, rng);
  EXPECT_EQ(out.n_discrete, 1u);
  EXPECT_EQ(out.n_continuous, 1u);
  ASSERT_EQ(out.n_samples(), 50u);
  EXPECT_EQ(out.accept_trace.size(), 50u);
  for (const auto& row : out.samples) {
    ASSERT_EQ(row.size(), 2u);
    EXPECT_EQ(row[0], static_cast<double>(static_cast<int>(row[0])));
  }
  EXPECT_EQ(out.column(1).size(), 50u);
}

TEST(RunChains, SameSeedSameOutput) {
  const GmmRun s = gmm1d();
  const MultiChainConfig cfg{4, 20, 200, 7, 1};
  auto a = run_chains(s.factory(), s.init(), cfg);
  auto b = run_chains(s.factory(), s.init(), cfg);
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_EQ(a[c].samples, b[c].samples);
    EXPECT_EQ(a[c].accept_trace, b[c].accept_trace);
  }
  MultiChainConfig other = cfg;
  other.seed = 8;
  EXPECT_NE(run_chains(s.factory(), s.init(), other)[0].samples, a[0].samples);
}

TEST(RunChains, ThreadCountDoesNotChangeResults) {
  const GmmRun s = gmm1d();
  const auto serial = run_chains(s.factory(), s.init(), MultiChainConfig{5, 10, 200, 3, 1});
  for (std::size_t threads : {2u, 3u, 8u, 0u}) {
    const auto parallel = run_chains(s.factory(), s.init(), MultiChainConfig{5, 10, 200, 3, threads});
    for (std::size_t c = 0; c < 5; ++c) {
      ASSERT_EQ(parallel[c].samples, serial[c].samples) << "threads " << threads;
      ASSERT_EQ(parallel[c].accept_trace, serial[c].accept_trace);
    }
  }
}

TEST(RunChains, ChainUsesItsOwnStream) {
  const GmmRun s = gmm1d();
  const auto four = run_chains(s.factory(), s.init(), MultiChainConfig{4, 0, 100, 5, 2});
  const auto one = run_chains(s.factory(), s.init(), MultiChainConfig{1, 0, 100, 5, 1});
  EXPECT_EQ(one[0].samples, four[0].samples);
  EXPECT_NE(four[1].samples, four[0].samples);
}

TEST(RunChains, WorkerExceptionsPropagate) {
  const GmmRun s = gmm1d();
  const SamplerFactory bad = [](std::size_t c) -> std::unique_ptr<Sampler> {
    if (c == 2) throw std::runtime_error("boom");
    return nullptr;
  };
  const InitFactory init = [](std::size_t, Rng&) { return MixedPoint{{0}, {0.0}}; };
  EXPECT_THROW(run_chains(bad, init, MultiChainConfig{3, 0, 0, 1, 1}), std::runtime_error);
  EXPECT_THROW(run_chains(bad, init, MultiChainConfig{3, 0, 0, 1, 3}), std::runtime_error);
}

TEST(RunChains, HighDimensionalMixtureHasPositiveMress) {
  const models::GmmModel model(models::gmm24_preset());
  const LaplaceKernelParams params{1.7, 136.0, 80, 1, {}};
  const SamplerFactory factory = [&](std::size_t) { return std::make_unique<LaplaceSampler>(model, params); };
  const InitFactory init = [&](std::size_t, Rng& rng) { return model.sample_exact(rng); };
  const auto out = run_chains(factory, init, MultiChainConfig{4, 20, 100, 1, 0});
  const auto cols = continuous_columns(out[0]);
  EXPECT_EQ(cols.size(), 24u);
  EXPECT_GT(mress(out, cols), 0.0);
}

}  // namespace
}  // namespace mhmc
