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

#include "mhmc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "mhmc/baselines.hpp"
#include "mhmc/general_kernel.hpp"
#include "mhmc/laplace_kernel.hpp"
#include "mhmc/models/binary_quadratic.hpp"
#include "mhmc/models/blr.hpp"
#include "mhmc/models/gmm.hpp"

namespace mhmc {

using nlohmann::json;

namespace {

const json& section(const json& doc, const std::string& key, bool required) {
  static const json empty = json::object();
  if (!doc.contains(key)) {
    if (required) throw ConfigError(key, "missing section");
    return empty;
  }
  const json& s = doc.at(key);
  if (!s.is_object()) throw ConfigError(key, "must be an object");
  return s;
}

double number(const json& obj, const std::string& path, const std::string& key,
              std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key, "required");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path + "." + key, "must be finite");
  return d;
}

double positive(const json& obj, const std::string& path, const std::string& key,
                std::optional<double> fallback = std::nullopt) {
  const double d = number(obj, path, key, fallback);
  if (!(d > 0.0)) throw ConfigError(path + "." + key, "must be positive");
  return d;
}

std::uint64_t count(const json& obj, const std::string& path, const std::string& key,
                    std::optional<std::uint64_t> fallback = std::nullopt, bool allow_zero = false) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key, "required");
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
    throw ConfigError(path + "." + key, "must be a non-negative integer");
  }
  const auto n = v.get<std::uint64_t>();
  if (!allow_zero && n == 0) throw ConfigError(path + "." + key, "must be positive");
  return n;
}

bool boolean(const json& obj, const std::string& path, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError(path + "." + key, "must be a boolean");
  return obj.at(key).get<bool>();
}

std::string text(const json& obj, const std::string& path, const std::string& key,
                 std::optional<std::string> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(path + "." + key, "required");
  }
  if (!obj.at(key).is_string()) throw ConfigError(path + "." + key, "must be a string");
  return obj.at(key).get<std::string>();
}

std::vector<double> number_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]", "must be a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.contains(key)) throw ConfigError(path + "." + key, "unknown field");
  }
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("$", "config must be a JSON object");
  reject_unknown(doc, "$", {"model", "kernel", "run", "output"});
  RunConfig cfg;
  cfg.raw = doc;

  const json& model = section(doc, "model", true);
  cfg.model.type = text(model, "model", "type");
  static const std::set<std::string> model_types{"gmm1d", "gmm24", "blr", "binary"};
  if (!model_types.contains(cfg.model.type)) {
    throw ConfigError("model.type", "unknown model '" + cfg.model.type + "'");
  }
  cfg.model.overrides = model;

  const json& kernel = section(doc, "kernel", true);
  auto& k = cfg.kernel;
  k.type = text(kernel, "kernel", "type");
  if (k.type == "laplace") {
    reject_unknown(kernel, "kernel", {"type", "epsilon", "T", "L", "n_D", "mass", "proposal"});
    k.epsilon = positive(kernel, "kernel", "epsilon");
    k.T = positive(kernel, "kernel", "T");
    k.L = count(kernel, "kernel", "L");
    k.n_D = count(kernel, "kernel", "n_D", 1);
  } else if (k.type == "general") {
    reject_unknown(kernel, "kernel",
                   {"type", "T", "tau", "beta", "integrator_eps", "resample_aux", "mass", "proposal"});
    k.T = positive(kernel, "kernel", "T");
    k.tau = positive(kernel, "kernel", "tau", 1.0);
    k.beta = positive(kernel, "kernel", "beta", 1.0);
    k.integrator_eps = positive(kernel, "kernel", "integrator_eps", 0.1);
    k.resample_aux = boolean(kernel, "kernel", "resample_aux", true);
  } else if (k.type == "naive") {
    reject_unknown(kernel, "kernel", {"type", "epsilon", "L", "use_k"});
    k.epsilon = positive(kernel, "kernel", "epsilon");
    k.L = count(kernel, "kernel", "L");
    k.use_k = boolean(kernel, "kernel", "use_k", true);
  } else if (k.type == "gibbs") {
    reject_unknown(kernel, "kernel", {"type", "rw_scale", "sweeps_per_step"});
    k.rw_scale = positive(kernel, "kernel", "rw_scale");
    k.sweeps_per_step = count(kernel, "kernel", "sweeps_per_step", 1);
  } else {
    throw ConfigError("kernel.type", "unknown kernel '" + k.type + "'");
  }
  if (kernel.contains("mass")) {
    k.mass = number_array(kernel.at("mass"), "kernel.mass");
    for (std::size_t i = 0; i < k.mass.size(); ++i) {
      if (!(k.mass[i] > 0.0)) throw ConfigError("kernel.mass[" + std::to_string(i) + "]", "must be positive");
    }
  }
  if (kernel.contains("proposal")) {
    k.proposal = text(kernel, "kernel", "proposal");
    if (k.proposal != "informed" && k.proposal != "uniform") {
      throw ConfigError("kernel.proposal", "must be 'informed' or 'uniform'");
    }
  }

  const json& run = section(doc, "run", true);
  reject_unknown(run, "run", {"chains", "burn_in", "samples", "seed", "threads"});
  cfg.run.chains = count(run, "run", "chains", 1);
  cfg.run.samples = count(run, "run", "samples");
  cfg.run.burn_in = count(run, "run", "burn_in", 0, true);
  cfg.run.seed = count(run, "run", "seed", 0, true);
  cfg.run.threads = count(run, "run", "threads", 0, true);

  const json& output = section(doc, "output", false);
  reject_unknown(output, "output", {"samples_path", "summary_path", "data_path"});
  cfg.output.samples_path = text(output, "output", "samples_path", "samples.csv");
  cfg.output.summary_path = text(output, "output", "summary_path", "summary.json");
  cfg.output.data_path = text(output, "output", "data_path", "");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json kernel_params_json(const KernelSection& k) {
  json j{{"type", k.type}};
  if (k.type == "laplace") {
    j.update({{"epsilon", k.epsilon}, {"T", k.T}, {"L", k.L}, {"n_D", k.n_D}, {"proposal", k.proposal}});
  } else if (k.type == "general") {
    j.update({{"T", k.T}, {"tau", k.tau}, {"beta", k.beta}, {"integrator_eps", k.integrator_eps},
              {"resample_aux", k.resample_aux}, {"proposal", k.proposal}});
  } else if (k.type == "naive") {
    j.update({{"epsilon", k.epsilon}, {"L", k.L}, {"use_k", k.use_k}});
  } else if (k.type == "gibbs") {
    j.update({{"rw_scale", k.rw_scale}, {"sweeps_per_step", k.sweeps_per_step}});
  }
  if (!k.mass.empty()) j["mass"] = k.mass;
  return j;
}

BuiltModel build_model(const ModelSection& model) {
  const json& o = model.overrides;
  BuiltModel built;
  if (model.type == "gmm1d" || model.type == "gmm24") {
    reject_unknown(o, "model", {"type", "weights", "means", "variances", "variance"});
    models::GmmSpec spec = model.type == "gmm1d" ? models::gmm1d_preset() : models::gmm24_preset();
    if (o.contains("weights")) {
      spec.weights = number_array(o.at("weights"), "model.weights");
      spec.K = spec.weights.size();
    }
    if (o.contains("means")) {
      const json& m = o.at("means");
      if (!m.is_array()) throw ConfigError("model.means", "must be an array");
      spec.means.clear();
      for (std::size_t k = 0; k < m.size(); ++k) {
        const std::string path = "model.means[" + std::to_string(k) + "]";
        spec.means.push_back(m[k].is_array() ? number_array(m[k], path)
                                             : std::vector<double>{number_array(json::array({m[k]}), path)});
      }
      spec.D = spec.means.empty() ? 0 : spec.means[0].size();
    }
    if (o.contains("variance")) {
      const double v = positive(o, "model", "variance");
      spec.variances.assign(spec.K, std::vector<double>(spec.D, v));
    }
    if (o.contains("variances")) {
      const auto v = number_array(o.at("variances"), "model.variances");
      if (v.size() != spec.K) throw ConfigError("model.variances", "need one variance per component");
      spec.variances.clear();
      for (double vk : v) spec.variances.emplace_back(spec.D, vk);
    }
    if (spec.variances.size() != spec.K) {
      const double v = spec.variances.empty() ? 1.0 : spec.variances[0][0];
      spec.variances.assign(spec.K, std::vector<double>(spec.D, v));
    }
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("model", e.what());
    }
    built.info = {{"type", model.type}, {"K", spec.K}, {"D", spec.D}, {"weights", spec.weights}};
    built.model = std::make_unique<models::GmmModel>(std::move(spec), model.type);
  } else if (model.type == "blr") {
    reject_unknown(o, "model", {"type", "seed", "n", "d", "prior_var", "data_path"});
    const double prior_var = positive(o, "model", "prior_var", 25.0);
    if (o.contains("data_path")) {
      const std::string path = text(o, "model", "data_path");
      std::ifstream in(path);
      if (!in) throw ConfigError("model.data_path", "cannot open '" + path + "'");
      try {
        built.model = std::make_unique<models::BlrModel>(models::read_blr_csv(in, prior_var));
      } catch (const std::exception& e) {
        throw ConfigError("model.data_path", e.what());
      }
      built.info = {{"type", "blr"}, {"data_path", path}};
    } else {
      const auto seed = count(o, "model", "seed", 0, true);
      const auto n = count(o, "model", "n", 100);
      const auto d = count(o, "model", "d", 20);
      auto data = models::blr_generate(seed, n, d);
      data.spec.prior_var = prior_var;
      built.true_gamma.assign(d, 0);
      for (auto j : data.support) built.true_gamma[j] = 1;
      built.info = {{"type", "blr"}, {"seed", seed}, {"n", n}, {"d", d},
                    {"true_beta", data.true_beta}, {"true_support", data.support}};
      built.model = std::make_unique<models::BlrModel>(std::move(data.spec));
    }
  } else if (model.type == "binary") {
    reject_unknown(o, "model", {"type", "N", "seed", "coupling_scale", "field_scale", "W", "b"});
    models::BinaryQuadraticSpec spec;
    if (o.contains("W") || o.contains("b")) {
      if (!o.contains("W") || !o.contains("b")) throw ConfigError("model", "W and b must be given together");
      spec.b = number_array(o.at("b"), "model.b");
      spec.N = spec.b.size();
      spec.W = number_array(o.at("W"), "model.W");
    } else {
      const auto N = count(o, "model", "N", 6);
      spec = models::random_binary_quadratic(N, count(o, "model", "seed", 0, true),
                                             number(o, "model", "coupling_scale", 0.5),
                                             number(o, "model", "field_scale", 0.5));
    }
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("model", e.what());
    }
    built.info = {{"type", "binary"}, {"N", spec.N}};
    if (spec.N <= models::kMaxEnumerationSites) {
      const auto exact = models::binary_quadratic_enumerate(spec);
      built.exact_marginals = exact.marginals;
      built.info["log_partition"] = exact.log_partition;
    }
    built.model = std::make_unique<models::BinaryQuadraticModel>(std::move(spec));
  }
  return built;
}

SamplerFactory make_sampler_factory(const KernelSection& k, const Model& model) {
  if (!k.mass.empty() && k.mass.size() != model.n_continuous()) {
    throw ConfigError("kernel.mass", "needs one entry per continuous coordinate (" +
                                         std::to_string(model.n_continuous()) + ")");
  }
  auto make_proposal = [type = k.proposal]() -> std::unique_ptr<Proposal> {
    if (type == "uniform") return std::make_unique<UniformProposal>();
    return std::make_unique<LocallyInformedProposal>();
  };
  if (k.type == "laplace") {
    LaplaceKernelParams params{k.epsilon, k.T, k.L, k.n_D, DiagonalMass(k.mass)};
    try {
      validate(params, model.n_discrete());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("kernel", e.what());
    }
    return [&model, params, make_proposal](std::size_t) {
      return std::make_unique<LaplaceSampler>(model, params, make_proposal());
    };
  }
  if (k.type == "general") {
    GeneralKernelParams params{k.T, k.tau, k.integrator_eps, k.beta, k.resample_aux, DiagonalMass(k.mass)};
    try {
      validate(params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("kernel", e.what());
    }
    return [&model, params, make_proposal](std::size_t) {
      return std::make_unique<GeneralSampler>(model, params, make_proposal());
    };
  }
  if (k.type == "naive") {
    if (model.n_discrete() != 1) throw ConfigError("kernel.type", "naive needs a single-site model (gmm)");
    NaiveParams params{k.epsilon, k.L, k.use_k};
    return [&model, params](std::size_t) { return std::make_unique<NaiveSampler>(model, params); };
  }
  const double scale = k.rw_scale;
  const std::size_t sweeps = k.sweeps_per_step;
  return [&model, scale, sweeps](std::size_t) {
    return std::make_unique<GibbsMhSampler>(model, scale, sweeps);
  };
}

}  // namespace mhmc
