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

#include "mhmc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "mhmc/diagnostics.hpp"
#include "mhmc/models/blr.hpp"

namespace mhmc {

using nlohmann::json;

namespace {

std::vector<std::string> column_names(const Model& model) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < model.n_discrete(); ++j) names.push_back("x_" + std::to_string(j));
  for (std::size_t i = 0; i < model.n_continuous(); ++i) names.push_back("q_" + std::to_string(i));
  return names;
}

std::vector<ChainOutput> sample_chains(const RunConfig& config, const Model& model) {
  const SamplerFactory factory = make_sampler_factory(config.kernel, model);
  const InitFactory init = [&model](std::size_t, Rng& rng) { return random_initial_point(model, rng); };
  MultiChainConfig mc{config.run.chains, config.run.burn_in, config.run.samples, config.run.seed,
                      config.run.threads};
  return run_chains(factory, init, mc);
}

json summarize(const RunConfig& config, const BuiltModel& built, const std::vector<ChainOutput>& chains,
               double wall_time) {
  const Model& model = *built.model;
  json s;
  s["model"] = model.name();
  s["model_info"] = built.info;
  s["kernel"] = config.kernel.type;
  s["params"] = kernel_params_json(config.kernel);
  s["chains"] = config.run.chains;
  s["samples"] = config.run.samples;
  s["burn_in"] = config.run.burn_in;
  s["seed"] = config.run.seed;
  s["columns"] = column_names(model);

  std::size_t accepted = 0;
  std::size_t total = 0;
  std::size_t divergences = 0;
  json per_chain = json::array();
  for (const auto& c : chains) {
    total += c.n_samples() + config.run.burn_in;
    accepted += static_cast<std::size_t>(std::count(c.accept_trace.begin(), c.accept_trace.end(), true));
    divergences += c.divergence_count;
    per_chain.push_back(c.acceptance_rate());
  }
  const std::size_t recorded = chains.size() * config.run.samples;
  s["acceptance_rate"] = recorded == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(recorded);
  s["acceptance_rate_per_chain"] = per_chain;
  s["divergences"] = divergences;
  const double divergence_rate = total == 0 ? 0.0 : static_cast<double>(divergences) / static_cast<double>(total);
  s["divergence_rate"] = divergence_rate;

  const std::size_t n_cols = model.n_discrete() + model.n_continuous();
  json ess_json = json::array();
  json degenerate = json::array();
  std::vector<std::size_t> all(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) all[c] = c;
  if (config.run.samples >= 8) {
    for (const auto& r : ess_per_column(chains, all)) {
      ess_json.push_back(r.ess);
      degenerate.push_back(r.degenerate);
    }
  } else {
    for (std::size_t c = 0; c < n_cols; ++c) ess_json.push_back(nullptr);
  }
  s["ess"] = ess_json;
  s["ess_degenerate"] = degenerate;
  std::vector<std::size_t> mress_cols = model.n_continuous() > 0 ? continuous_columns(chains.front()) : all;
  if (chains.size() >= 2 && config.run.samples >= 8) {
    s["mress"] = mress(chains, mress_cols);
  } else {
    s["mress"] = nullptr;
  }

  // Per-site value frequencies over all recorded draws.
  json freq = json::array();
  for (std::size_t j = 0; j < model.n_discrete(); ++j) {
    std::vector<double> f(model.site_cardinality(j), 0.0);
    for (const auto& c : chains) {
      for (const auto& row : c.samples) f[static_cast<std::size_t>(row[j])] += 1.0;
    }
    for (auto& v : f) v /= static_cast<double>(std::max<std::size_t>(recorded, 1));
    freq.push_back(f);
  }
  s["discrete_frequencies"] = freq;

  if (model.has_exact_sampler() && recorded > 0) {
    Rng ref_rng(config.run.seed, kReferenceStream);
    std::vector<std::vector<double>> ref(n_cols, std::vector<double>(recorded));
    for (std::size_t i = 0; i < recorded; ++i) {
      const MixedPoint p = model.sample_exact(ref_rng);
      for (std::size_t j = 0; j < model.n_discrete(); ++j) ref[j][i] = p.x[j];
      for (std::size_t k = 0; k < model.n_continuous(); ++k) ref[model.n_discrete() + k][i] = p.q[k];
    }
    json ks = json::array();
    for (std::size_t col = 0; col < n_cols; ++col) {
      std::vector<double> draws;
      draws.reserve(recorded);
      for (const auto& c : chains) {
        for (const auto& row : c.samples) draws.push_back(row[col]);
      }
      ks.push_back(ks_two_sample(draws, ref[col]));
    }
    s["ks"] = ks;
  }

  if (!built.exact_marginals.empty() && recorded > 0) {
    s["exact_marginals"] = built.exact_marginals;
    double max_err = 0.0;
    for (std::size_t j = 0; j < built.exact_marginals.size(); ++j) {
      max_err = std::max(max_err, std::abs(freq[j][1].get<double>() - built.exact_marginals[j]));
    }
    s["max_marginal_error"] = max_err;
  }

  if (!built.true_gamma.empty() && recorded > 0) {
    json inclusion = json::array();
    std::size_t hamming = 0;
    for (std::size_t j = 0; j < built.true_gamma.size(); ++j) {
      const double pi = freq[j][1].get<double>();
      inclusion.push_back(pi);
      if ((pi > 0.5 ? 1 : 0) != built.true_gamma[j]) ++hamming;
    }
    s["posterior_inclusion"] = inclusion;
    s["hamming_distance"] = hamming;
  }

  json warnings = json::array();
  if (divergence_rate > 0.5) {
    warnings.push_back("divergence rate " + std::to_string(divergence_rate) + " exceeds 50%");
  }
  s["warnings"] = warnings;
  s["wall_time"] = wall_time;
  return s;
}

RunResult execute_built(const RunConfig& config, const BuiltModel& built) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.chains = sample_chains(config, *built.model);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.summary = summarize(config, built, result.chains, wall);
  return result;
}

std::filesystem::path resolve(const std::filesystem::path& dir, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : dir / p;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

void apply_overrides(RunConfig& config, const RunOverrides& o) {
  if (o.seed) config.run.seed = *o.seed;
  if (o.chains) {
    if (*o.chains == 0) throw ConfigError("--chains", "must be positive");
    config.run.chains = *o.chains;
  }
  if (o.threads) config.run.threads = *o.threads;
}

MixedPoint random_initial_point(const Model& model, Rng& rng) {
  MixedPoint p;
  p.x.resize(model.n_discrete());
  for (std::size_t j = 0; j < p.x.size(); ++j) {
    p.x[j] = static_cast<int>(rng.index(model.site_cardinality(j)));
  }
  p.q.resize(model.n_continuous());
  for (auto& v : p.q) v = rng.normal();
  return p;
}

RunResult execute(const RunConfig& config) {
  const BuiltModel built = build_model(config.model);
  return execute_built(config, built);
}

void write_samples_csv(std::ostream& out, const std::vector<ChainOutput>& chains) {
  if (chains.empty()) return;
  out << "chain,iter,accept";
  for (std::size_t j = 0; j < chains.front().n_discrete; ++j) out << ",x_" << j;
  for (std::size_t i = 0; i < chains.front().n_continuous; ++i) out << ",q_" << i;
  out << '\n';
  char buf[32];
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& chain = chains[c];
    for (std::size_t it = 0; it < chain.n_samples(); ++it) {
      out << c << ',' << it << ',' << (chain.accept_trace[it] ? 1 : 0);
      const auto& row = chain.samples[it];
      for (std::size_t j = 0; j < chain.n_discrete; ++j) out << ',' << static_cast<long long>(row[j]);
      for (std::size_t i = chain.n_discrete; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", row[i]);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
}

RunResult run(const RunConfig& config, const std::string& out_dir) {
  const BuiltModel built = build_model(config.model);
  const std::filesystem::path dir(out_dir.empty() ? "." : out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

  const auto* blr = dynamic_cast<const models::BlrModel*>(built.model.get());
  if (!config.output.data_path.empty() && blr == nullptr) {
    throw ConfigError("output.data_path", "only supported for the blr model");
  }

  RunResult result = execute_built(config, built);

  const auto samples_path = resolve(dir, config.output.samples_path);
  auto samples = open_output(samples_path);
  write_samples_csv(samples, result.chains);
  finish(samples, samples_path);

  if (!config.output.data_path.empty()) {
    const auto data_path = resolve(dir, config.output.data_path);
    auto data = open_output(data_path);
    models::write_blr_csv(data, blr->spec());
    finish(data, data_path);
  }

  const auto summary_path = resolve(dir, config.output.summary_path);
  auto summary = open_output(summary_path);
  summary << result.summary.dump(2) << '\n';
  finish(summary, summary_path);
  return result;
}

}  // namespace mhmc
