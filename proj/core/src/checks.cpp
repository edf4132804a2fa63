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

#include "mhmc/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mhmc/baselines.hpp"
#include "mhmc/config.hpp"
#include "mhmc/diagnostics.hpp"
#include "mhmc/general_kernel.hpp"
#include "mhmc/integrator.hpp"
#include "mhmc/kinetic.hpp"
#include "mhmc/laplace_kernel.hpp"
#include "mhmc/models/binary_quadratic.hpp"
#include "mhmc/models/blr.hpp"
#include "mhmc/models/gmm.hpp"
#include "mhmc/runner.hpp"

namespace mhmc {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::unique_ptr<Model>> continuous_models() {
  std::vector<std::unique_ptr<Model>> out;
  out.push_back(std::make_unique<models::GmmModel>(models::gmm1d_preset(), "gmm1d"));
  out.push_back(std::make_unique<models::GmmModel>(models::gmm24_preset(), "gmm24"));
  out.push_back(std::make_unique<models::BlrModel>(models::blr_generate(0).spec));
  return out;
}

std::vector<double> pooled_column(const std::vector<ChainOutput>& chains, std::size_t col) {
  std::vector<double> out;
  for (const auto& c : chains) {
    for (const auto& row : c.samples) out.push_back(row[col]);
  }
  return out;
}

std::vector<double> reference_column(const Model& model, std::size_t n, std::uint64_t seed,
                                     std::size_t col) {
  Rng rng(seed, kReferenceStream);
  std::vector<double> out(n);
  for (auto& v : out) {
    const MixedPoint p = model.sample_exact(rng);
    v = col < model.n_discrete() ? p.x[col] : p.q[col - model.n_discrete()];
  }
  return out;
}

InitFactory random_init(const Model& model) {
  return [&model](std::size_t, Rng& rng) { return random_initial_point(model, rng); };
}

// ---- 1: exactness on an enumerable binary model

CriterionResult binary_exactness() {
  const auto start = Clock::now();
  const auto spec = models::random_binary_quadratic(6, 2024);
  const auto exact = models::binary_quadratic_enumerate(spec);
  const models::BinaryQuadraticModel model(spec);
  GeneralKernelParams params;
  params.T = 2.5;
  params.tau = 1.0;
  params.beta = 1.0;
  const auto chains = run_chains(
      [&](std::size_t) { return std::make_unique<GeneralSampler>(model, params); }, random_init(model),
      MultiChainConfig{1, 1000, 100000, 1, 1});
  double max_err = 0.0;
  json marginals = json::array();
  for (std::size_t j = 0; j < spec.N; ++j) {
    const auto col = pooled_column(chains, j);
    const double m = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
    marginals.push_back(m);
    max_err = std::max(max_err, std::abs(m - exact.marginals[j]));
  }
  CriterionResult r;
  r.measured = max_err;
  r.threshold = 0.01;
  r.seconds = seconds_since(start);
  r.passed = max_err < r.threshold && r.seconds < 30.0;
  r.details = {{"empirical", marginals},
               {"exact", exact.marginals},
               {"acceptance_rate", chains.front().acceptance_rate()},
               {"runtime_limit_s", 30.0}};
  return r;
}

// ---- 2 and 3: 1D mixture, Laplace kernel against the naive update

constexpr std::uint64_t kGmmSeed = 1;
const MultiChainConfig kGmmRun{16, 1000, 12500, kGmmSeed, 0};
const LaplaceKernelParams kGmmLaplace{0.2, 20.0, 100, 1, {}};

struct GmmRun {
  std::vector<double> frequencies;
  double ks = 0.0;
  double acceptance = 0.0;
  double seconds = 0.0;
};

GmmRun gmm1d_run(const SamplerFactory& factory) {
  const auto start = Clock::now();
  const models::GmmModel model(models::gmm1d_preset(), "gmm1d");
  const auto chains = run_chains(factory, random_init(model), kGmmRun);
  GmmRun out;
  out.seconds = seconds_since(start);
  const auto z = pooled_column(chains, 0);
  out.frequencies.assign(model.spec().K, 0.0);
  std::vector<std::size_t> counts(model.spec().K, 0);
  for (double v : z) ++counts[static_cast<std::size_t>(v)];
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out.frequencies[k] = static_cast<double>(counts[k]) / static_cast<double>(z.size());
  }
  const auto q = pooled_column(chains, 1);
  out.ks = ks_two_sample(q, reference_column(model, q.size(), kGmmSeed, 1));
  double acc = 0.0;
  for (const auto& c : chains) acc += c.acceptance_rate() / static_cast<double>(chains.size());
  out.acceptance = acc;
  return out;
}

const GmmRun& laplace_gmm1d() {
  static std::optional<GmmRun> cached;
  if (!cached) {
    auto shared = std::make_shared<models::GmmModel>(models::gmm1d_preset(), "gmm1d");
    cached = gmm1d_run([shared](std::size_t) {
      return std::make_unique<LaplaceSampler>(*shared, kGmmLaplace);
    });
  }
  return *cached;
}

CriterionResult gmm1d_correctness() {
  const GmmRun& run = laplace_gmm1d();
  const models::GmmSpec spec = models::gmm1d_preset();
  double max_freq_err = 0.0;
  for (std::size_t k = 0; k < spec.K; ++k) {
    max_freq_err = std::max(max_freq_err, std::abs(run.frequencies[k] - spec.weights[k]));
  }
  CriterionResult r;
  r.measured = run.ks;
  r.threshold = 0.02;
  r.seconds = run.seconds;
  r.passed = max_freq_err <= 0.02 && run.ks < 0.02 && run.seconds < 60.0;
  r.details = {{"frequencies", run.frequencies},
               {"max_frequency_error", max_freq_err},
               {"frequency_tolerance", 0.02},
               {"ks", run.ks},
               {"acceptance_rate", run.acceptance},
               {"epsilon", kGmmLaplace.epsilon},
               {"T", kGmmLaplace.T},
               {"L", kGmmLaplace.L},
               {"seed", kGmmSeed},
               {"runtime_limit_s", 60.0}};
  return r;
}

CriterionResult naive_bias() {
  const auto start = Clock::now();
  const GmmRun& laplace = laplace_gmm1d();
  auto model = std::make_shared<models::GmmModel>(models::gmm1d_preset(), "gmm1d");
  // Same leapfrog budget: L rounds of one step of size T / L.
  const NaiveParams params{kGmmLaplace.T / static_cast<double>(kGmmLaplace.L), kGmmLaplace.L, false};
  const GmmRun naive = gmm1d_run([model, params](std::size_t) {
    return std::make_unique<NaiveSampler>(*model, params);
  });
  CriterionResult r;
  r.measured = naive.ks / laplace.ks;
  r.threshold = 2.0;
  r.seconds = seconds_since(start);
  r.passed = r.measured >= r.threshold;
  r.details = {{"ks_naive", naive.ks},
               {"ks_laplace", laplace.ks},
               {"naive_frequencies", naive.frequencies},
               {"naive_acceptance_rate", naive.acceptance}};
  return r;
}

// ---- 4: leapfrog reversibility

CriterionResult leapfrog_reversibility() {
  const auto start = Clock::now();
  const auto models = continuous_models();
  double worst = 0.0;
  json per_model = json::object();
  for (std::size_t m = 0; m < models.size(); ++m) {
    const Model& model = *models[m];
    Rng rng(4, m);
    double model_worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const MixedPoint start_point = random_initial_point(model, rng);
      std::vector<double> q = start_point.q;
      std::vector<double> p(q.size());
      for (auto& v : p) v = rng.normal();
      const std::vector<double> p0 = p;
      const double eta = 0.01 + 0.03 * rng.uniform();
      const std::size_t steps = 1 + rng.index(50);
      leapfrog(model, start_point.x, q, p, eta, steps);
      for (auto& v : p) v = -v;
      leapfrog(model, start_point.x, q, p, eta, steps);
      for (auto& v : p) v = -v;
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double eq = std::abs(q[i] - start_point.q[i]) / std::max(1.0, std::abs(start_point.q[i]));
        const double ep = std::abs(p[i] - p0[i]) / std::max(1.0, std::abs(p0[i]));
        const double e = std::isfinite(eq) && std::isfinite(ep) ? std::max(eq, ep) : std::numeric_limits<double>::infinity();
        model_worst = std::max(model_worst, e);
      }
    }
    per_model[model.name()] = model_worst;
    worst = std::max(worst, model_worst);
  }
  CriterionResult r;
  r.measured = worst;
  r.threshold = 1e-8;
  r.seconds = seconds_since(start);
  r.passed = worst <= r.threshold;
  r.details = {{"max_relative_error", per_model}, {"trials_per_model", 100}};
  return r;
}

// ---- 5: analytic gradients against central differences

CriterionResult gradient_oracle() {
  const auto start = Clock::now();
  const auto models = continuous_models();
  double worst = 0.0;
  json per_model = json::object();
  for (std::size_t m = 0; m < models.size(); ++m) {
    const Model& model = *models[m];
    Rng rng(5, m);
    double model_worst = 0.0;
    for (int point_index = 0; point_index < 20; ++point_index) {
      MixedPoint point = random_initial_point(model, rng);
      for (auto& v : point.q) v *= 1.5;
      std::vector<double> g(point.q.size());
      model.grad_q(point.x, point.q, g);
      for (std::size_t i = 0; i < point.q.size(); ++i) {
        const double h = 1e-5 * std::max(1.0, std::abs(point.q[i]));
        MixedPoint plus = point;
        MixedPoint minus = point;
        plus.q[i] += h;
        minus.q[i] -= h;
        const double fd = (model.potential(plus) - model.potential(minus)) / (plus.q[i] - minus.q[i]);
        model_worst = std::max(model_worst, std::abs(g[i] - fd) / std::max(1.0, std::abs(g[i])));
      }
    }
    per_model[model.name()] = model_worst;
    worst = std::max(worst, model_worst);
  }
  CriterionResult r;
  r.measured = worst;
  r.threshold = 1e-5;
  r.seconds = seconds_since(start);
  r.passed = worst <= r.threshold;
  r.details = {{"max_relative_error", per_model}, {"points_per_model", 20}};
  return r;
}

// ---- 6: step schedule contract

CriterionResult schedule_contract() {
  const auto start = Clock::now();
  Rng rng(6, 0);
  double worst_sum = 0.0;
  double worst_ratio = 0.0;
  std::size_t violations = 0;
  for (int draw = 0; draw < 10000; ++draw) {
    LaplaceKernelParams params;
    const std::size_t n_discrete = rng.index(31);
    params.n_D = 1 + rng.index(std::max<std::size_t>(n_discrete, 1));
    params.L = 1 + rng.index(300);
    params.epsilon = std::exp(std::log(1e-3) + rng.uniform() * std::log(2e3));
    params.T = std::exp(std::log(1e-2) + rng.uniform() * std::log(5e4));
    const StepSchedule s = get_step_sizes_n_steps(params, n_discrete, rng);
    double total = 0.0;
    for (std::size_t t = 0; t < params.L; ++t) {
      total += s.eta[t] * static_cast<double>(s.M[t]);
      if (s.eta[t] > params.epsilon) ++violations;
      worst_ratio = std::max(worst_ratio, s.eta[t] / params.epsilon);
    }
    worst_sum = std::max(worst_sum, std::abs(total - params.T) / params.T);
  }
  CriterionResult r;
  r.measured = worst_sum;
  r.threshold = 1e-9;
  r.seconds = seconds_since(start);
  r.passed = worst_sum <= r.threshold && violations == 0;
  r.details = {{"max_eta_over_epsilon", worst_ratio}, {"step_size_violations", violations}, {"draws", 10000}};
  return r;
}

// ---- 7: initial hit times and kinetic energies

CriterionResult auxiliary_distributions() {
  const auto start = Clock::now();
  const PowerKinetic kinetic(1.0);
  Rng rng(7, 0);
  const std::size_t n = 100000;
  std::vector<double> hit(n);
  std::vector<double> energy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AuxiliaryState aux = sample_auxiliary(1, 1.0, kinetic, rng);
    hit[i] = initial_hit_time(aux.qD[0], aux.pD[0], aux.tau, kinetic);
    energy[i] = kinetic.k(aux.pD[0]);
  }
  const double d_hit = ks_one_sample(hit, [](double t) { return std::clamp(t, 0.0, 1.0); });
  const double d_energy =
      ks_one_sample(energy, [](double k) { return k <= 0.0 ? 0.0 : -std::expm1(-k); });
  const double p_hit = ks_one_sample_pvalue(d_hit, n);
  const double p_energy = ks_one_sample_pvalue(d_energy, n);
  CriterionResult r;
  r.measured = std::min(p_hit, p_energy);
  r.threshold = 0.01;
  r.seconds = seconds_since(start);
  r.passed = p_hit >= r.threshold && p_energy >= r.threshold;
  r.details = {{"ks_hit_time", d_hit},
               {"pvalue_hit_time", p_hit},
               {"ks_kinetic", d_energy},
               {"pvalue_kinetic", p_energy},
               {"n", n}};
  return r;
}

// ---- 8: refraction preserves energy

CriterionResult refraction_identity() {
  const auto start = Clock::now();
  double worst = 0.0;
  json per_beta = json::object();
  Rng rng(8, 0);
  for (double beta : {2.0 / 3.0, 1.0, 2.0}) {
    const PowerKinetic kinetic(beta);
    double beta_worst = 0.0;
    for (int trial = 0; trial < 1000000; ++trial) {
      double p = 0.0;
      while (p == 0.0) p = kinetic.sample(rng);
      const double k = kinetic.k(p);
      const double delta = k * (1.0 - 2.0 * rng.uniform());
      if (!(k > delta)) continue;
      const double refracted = refract(p, delta, kinetic);
      beta_worst = std::max(beta_worst, std::abs(kinetic.k(refracted) - (k - delta)));
    }
    char key[16];
    std::snprintf(key, sizeof key, "%.4g", beta);
    per_beta[key] = beta_worst;
    worst = std::max(worst, beta_worst);
  }
  CriterionResult r;
  r.measured = worst;
  r.threshold = 1e-12;
  r.seconds = seconds_since(start);
  r.passed = worst <= r.threshold;
  r.details = {{"max_abs_error", per_beta}, {"trials_per_beta", 1000000}};
  return r;
}

// ---- 9: efficiency on the 24D mixture at matched wall-clock

CriterionResult efficiency_ordering() {
  const auto start = Clock::now();
  const models::GmmModel model(models::gmm24_preset(), "gmm24");
  const LaplaceKernelParams params{1.7, 136.0, 80, 1, {}};
  const MultiChainConfig run{48, 1000, 2000, 9, 0};
  const std::size_t steps_per_chain = run.burn_in + run.samples;

  auto t0 = Clock::now();
  const auto mhmc_chains =
      run_chains([&](std::size_t) { return std::make_unique<LaplaceSampler>(model, params); },
                 random_init(model), run);
  const double mhmc_seconds = seconds_since(t0);

  // Random-walk scale 2.38 / sqrt(d) times the component standard deviation.
  const double rw_scale = 2.38 * std::sqrt(3.0) / std::sqrt(24.0);
  MultiChainConfig pilot{4, 0, 500, 90, 0};
  t0 = Clock::now();
  run_chains([&](std::size_t) { return std::make_unique<GibbsMhSampler>(model, rw_scale, 1); },
             random_init(model), pilot);
  const double sweep_seconds = seconds_since(t0) / static_cast<double>(pilot.chains * pilot.samples);
  const double mhmc_step_seconds = mhmc_seconds / static_cast<double>(run.chains * steps_per_chain);
  const auto sweeps =
      static_cast<std::size_t>(std::max(1.0, std::round(mhmc_step_seconds / sweep_seconds)));

  t0 = Clock::now();
  const auto gibbs_chains = run_chains(
      [&](std::size_t) { return std::make_unique<GibbsMhSampler>(model, rw_scale, sweeps); },
      random_init(model), run);
  const double gibbs_seconds = seconds_since(t0);

  const auto cols = continuous_columns(mhmc_chains.front());
  const double mress_mhmc = mress(mhmc_chains, cols);
  const double mress_gibbs = mress(gibbs_chains, cols);
  double acc = 0.0;
  for (const auto& c : mhmc_chains) acc += c.acceptance_rate() / static_cast<double>(mhmc_chains.size());

  CriterionResult r;
  r.measured = mress_mhmc / mress_gibbs;
  r.threshold = 2.0;
  r.seconds = seconds_since(start);
  r.passed = r.measured >= r.threshold && r.seconds < 600.0;
  r.details = {{"mress_mhmc", mress_mhmc},
               {"mress_gibbs", mress_gibbs},
               {"mhmc_seconds", mhmc_seconds},
               {"gibbs_seconds", gibbs_seconds},
               {"gibbs_sweeps_per_sample", sweeps},
               {"rw_scale", rw_scale},
               {"mhmc_acceptance_rate", acc},
               {"runtime_limit_s", 600.0}};
  return r;
}

// ---- 10: ESS on chains with known autocorrelation

CriterionResult ess_validity() {
  const auto start = Clock::now();
  Rng rng(10, 0);
  const double rho = 0.9;
  const double target = (1.0 - rho) / (1.0 + rho);
  std::vector<std::vector<double>> ar(4, std::vector<double>(20000));
  const double innovation = std::sqrt(1.0 - rho * rho);
  for (auto& chain : ar) {
    double x = rng.normal();
    for (auto& v : chain) {
      x = rho * x + innovation * rng.normal();
      v = x;
    }
  }
  const double ar_ratio = ess(ar).ess / (4.0 * 20000.0);
  const double ar_dev = std::abs(ar_ratio / target - 1.0);

  std::vector<std::vector<double>> iid(4, std::vector<double>(5000));
  for (auto& chain : iid) {
    for (auto& v : chain) v = rng.normal();
  }
  const double iid_ratio = ess(iid).ess / (4.0 * 5000.0);

  CriterionResult r;
  r.measured = ar_dev;
  r.threshold = 0.3;
  r.seconds = seconds_since(start);
  r.passed = ar_dev <= 0.3 && iid_ratio >= 0.8 && iid_ratio <= 1.2;
  r.details = {{"ar1_ess_ratio", ar_ratio},
               {"ar1_target", target},
               {"iid_ess_ratio", iid_ratio},
               {"iid_bounds", {0.8, 1.2}}};
  return r;
}

// ---- 11: byte-identical samples for repeated runs

std::vector<json> determinism_configs() {
  return {
      json::parse(R"({"model":{"type":"gmm1d"},
        "kernel":{"type":"laplace","epsilon":0.2,"T":20,"L":100},
        "run":{"chains":4,"samples":1000,"burn_in":100,"seed":11}})"),
      json::parse(R"({"model":{"type":"gmm24"},
        "kernel":{"type":"general","T":4,"integrator_eps":0.2,"tau":1},
        "run":{"chains":2,"samples":50,"seed":11}})"),
      json::parse(R"({"model":{"type":"blr","seed":3},
        "kernel":{"type":"laplace","epsilon":0.05,"T":1,"L":20,"n_D":2},
        "run":{"chains":2,"samples":50,"seed":11}})"),
      json::parse(R"({"model":{"type":"binary","N":6,"seed":2},
        "kernel":{"type":"general","T":2.5,"beta":0.6666666666666666},
        "run":{"chains":2,"samples":200,"seed":11}})"),
      json::parse(R"({"model":{"type":"gmm1d"},
        "kernel":{"type":"naive","epsilon":0.2,"L":100,"use_k":false},
        "run":{"chains":2,"samples":200,"seed":11}})"),
      json::parse(R"({"model":{"type":"gmm24"},
        "kernel":{"type":"gibbs","rw_scale":0.84,"sweeps_per_step":2},
        "run":{"chains":2,"samples":200,"seed":11}})"),
  };
}

CriterionResult determinism() {
  const auto start = Clock::now();
  std::size_t identical = 0;
  json per_config = json::array();
  const auto configs = determinism_configs();
  for (const auto& doc : configs) {
    RunConfig cfg = parse_config(doc);
    std::string csv[2];
    for (int rep = 0; rep < 2; ++rep) {
      cfg.run.threads = rep == 0 ? 1 : 2;
      std::ostringstream out;
      write_samples_csv(out, execute(cfg).chains);
      csv[rep] = out.str();
    }
    const bool same = csv[0] == csv[1];
    identical += same ? 1 : 0;
    per_config.push_back({{"model", cfg.model.type}, {"kernel", cfg.kernel.type},
                          {"identical", same}, {"bytes", csv[0].size()}});
  }
  CriterionResult r;
  r.measured = static_cast<double>(identical);
  r.threshold = static_cast<double>(configs.size());
  r.seconds = seconds_since(start);
  r.passed = identical == configs.size();
  r.details = {{"configs", per_config}};
  return r;
}

struct CriterionInfo {
  const char* name;
  CriterionResult (*run)();
};

const std::map<int, CriterionInfo>& registry() {
  static const std::map<int, CriterionInfo> table{
      {1, {"binary-exactness", binary_exactness}},
      {2, {"gmm1d-correctness", gmm1d_correctness}},
      {3, {"naive-update-bias", naive_bias}},
      {4, {"leapfrog-reversibility", leapfrog_reversibility}},
      {5, {"gradient-oracle", gradient_oracle}},
      {6, {"step-schedule-contract", schedule_contract}},
      {7, {"auxiliary-distributions", auxiliary_distributions}},
      {8, {"refraction-energy", refraction_identity}},
      {9, {"efficiency-ordering", efficiency_ordering}},
      {10, {"ess-validity", ess_validity}},
      {11, {"determinism", determinism}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"exactness",   "reversibility", "gradients",
                                              "distributions", "diagnostics", "efficiency",
                                              "determinism", "all"};
  return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> suites{
      {"exactness", {1, 2, 3}},      {"reversibility", {4}}, {"gradients", {5}},
      {"distributions", {6, 7, 8}},  {"diagnostics", {10}},  {"efficiency", {9}},
      {"determinism", {11}},         {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}},
  };
  const auto it = suites.find(suite);
  if (it == suites.end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  return it->second;
}

CriterionResult run_criterion(int id) {
  const auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown criterion " + std::to_string(id));
  CriterionResult r = it->second.run();
  r.id = id;
  r.name = it->second.name;
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) out.push_back(run_criterion(id));
  return out;
}

json to_json(const CriterionResult& r) {
  return {{"id", r.id},          {"name", r.name},         {"passed", r.passed},
          {"measured", r.measured}, {"threshold", r.threshold}, {"seconds", r.seconds},
          {"details", r.details}};
}

std::string format_line(const CriterionResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s [%d] %s: measured=%.6g threshold=%.6g (%.1fs)",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured, r.threshold, r.seconds);
  return buf;
}

}  // namespace mhmc
