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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace mhmc {

std::vector<double> ChainOutput::column(std::size_t c) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& row : samples) out.push_back(row.at(c));
  return out;
}

double ChainOutput::acceptance_rate() const {
  if (accept_trace.empty()) return 0.0;
  const auto n = std::count(accept_trace.begin(), accept_trace.end(), true);
  return static_cast<double>(n) / static_cast<double>(accept_trace.size());
}

ChainOutput run_chain(Sampler& sampler, MixedPoint init, std::size_t n_burn,
                      std::size_t n_samples, Rng& rng) {
  const auto start = std::chrono::steady_clock::now();
  ChainOutput out;
  out.n_discrete = init.x.size();
  out.n_continuous = init.q.size();
  out.samples.reserve(n_samples);
  out.accept_trace.reserve(n_samples);

  MixedPoint point = std::move(init);
  for (std::size_t i = 0; i < n_burn + n_samples; ++i) {
    const StepStats stats = sampler.step(point, rng);
    if (stats.divergent) ++out.divergence_count;
    if (i < n_burn) continue;
    std::vector<double> row;
    row.reserve(out.n_columns());
    for (int v : point.x) row.push_back(static_cast<double>(v));
    row.insert(row.end(), point.q.begin(), point.q.end());
    out.samples.push_back(std::move(row));
    out.accept_trace.push_back(stats.accepted);
  }
  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<ChainOutput> run_chains(const SamplerFactory& make_sampler, const InitFactory& init,
                                    const MultiChainConfig& config) {
  std::vector<ChainOutput> outputs(config.chains);
  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(config.chains, 1));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t c = next++; c < config.chains; c = next++) {
      try {
        Rng rng(config.seed, c);
        MixedPoint start = init(c, rng);
        auto sampler = make_sampler(c);
        outputs[c] = run_chain(*sampler, std::move(start), config.burn_in, config.samples, rng);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return outputs;
}

}  // namespace mhmc
