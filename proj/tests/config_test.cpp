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

#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "mhmc/models/blr.hpp"
#include "mhmc/models/gmm.hpp"

namespace mhmc {
namespace {

using nlohmann::json;

json base() {
  return json::parse(R"({
    "model": {"type": "gmm1d"},
    "kernel": {"type": "laplace", "epsilon": 0.2, "T": 20, "L": 100},
    "run": {"samples": 10}
  })");
}

std::string error_path(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

TEST(ParseConfig, Defaults) {
  const RunConfig c = parse_config(base());
  EXPECT_EQ(c.model.type, "gmm1d");
  EXPECT_EQ(c.kernel.type, "laplace");
  EXPECT_EQ(c.kernel.n_D, 1u);
  EXPECT_EQ(c.kernel.proposal, "informed");
  EXPECT_EQ(c.run.chains, 1u);
  EXPECT_EQ(c.run.burn_in, 0u);
  EXPECT_EQ(c.run.seed, 0u);
  EXPECT_EQ(c.run.threads, 0u);
  EXPECT_EQ(c.output.samples_path, "samples.csv");
  EXPECT_EQ(c.output.summary_path, "summary.json");
  EXPECT_TRUE(c.output.data_path.empty());

  json g = base();
  g["kernel"] = {{"type", "general"}, {"T", 2.5}};
  const RunConfig gc = parse_config(g);
  EXPECT_EQ(gc.kernel.tau, 1.0);
  EXPECT_EQ(gc.kernel.beta, 1.0);
  EXPECT_EQ(gc.kernel.integrator_eps, 0.1);
  EXPECT_TRUE(gc.kernel.resample_aux);
}

TEST(ParseConfig, ErrorsNameTheField) {
  json doc = base();
  doc["kernel"].erase("epsilon");
  EXPECT_EQ(error_path(doc), "kernel.epsilon");
  doc = base();
  doc["kernel"]["epsilon"] = -1.0;
  EXPECT_EQ(error_path(doc), "kernel.epsilon");
  doc = base();
  doc["kernel"]["L"] = 2.5;
  EXPECT_EQ(error_path(doc), "kernel.L");
  doc = base();
  doc["kernel"]["type"] = "magic";
  EXPECT_EQ(error_path(doc), "kernel.type");
  doc = base();
  doc["model"]["type"] = "ising";
  EXPECT_EQ(error_path(doc), "model.type");
  doc = base();
  doc["run"]["samples"] = "ten";
  EXPECT_EQ(error_path(doc), "run.samples");
  doc = base();
  doc["run"]["chain"] = 4;
  EXPECT_EQ(error_path(doc), "run.chain");
  doc = base();
  doc["kernel"]["mass"] = json::array({1.0, 0.0});
  EXPECT_EQ(error_path(doc), "kernel.mass[1]");
  doc = base();
  doc["kernel"]["proposal"] = "greedy";
  EXPECT_EQ(error_path(doc), "kernel.proposal");
  doc = base();
  doc.erase("run");
  EXPECT_EQ(error_path(doc), "run");
  doc = base();
  doc["extra"] = 1;
  EXPECT_EQ(error_path(doc), "$.extra");
  EXPECT_EQ(error_path(json::array()), "$");
}

TEST(ParseConfig, MessageStartsWithPath) {
  json doc = base();
  doc["kernel"].erase("epsilon");
  try {
    parse_config(doc);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()), "kernel.epsilon: required");
  }
}

TEST(LoadConfig, MissingAndMalformedFiles) {
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
  const std::string path = ::testing::TempDir() + "mhmc_bad_config.json";
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_config(path), ConfigError);
}

TEST(BuildModel, GmmOverrides) {
  json doc = base();
  doc["model"] = {{"type", "gmm1d"}, {"variance", 0.5}};
  const BuiltModel built = build_model(parse_config(doc).model);
  const auto* gmm = dynamic_cast<const models::GmmModel*>(built.model.get());
  ASSERT_NE(gmm, nullptr);
  for (const auto& v : gmm->spec().variances) EXPECT_EQ(v[0], 0.5);

  doc["model"] = {{"type", "gmm24"}};
  EXPECT_EQ(build_model(parse_config(doc).model).model->n_continuous(), 24u);
  doc["model"] = {{"type", "gmm1d"}, {"weights", {0.5, 0.6, 0.1, 0.1}}};
  EXPECT_THROW(build_model(parse_config(doc).model), ConfigError);
}

TEST(BuildModel, BlrReportsGroundTruth) {
  json doc = base();
  doc["model"] = {{"type", "blr"}, {"seed", 3}, {"n", 50}, {"d", 6}};
  const BuiltModel built = build_model(parse_config(doc).model);
  EXPECT_EQ(built.model->n_discrete(), 6u);
  EXPECT_EQ(built.true_gamma.size(), 6u);
  EXPECT_TRUE(built.info.contains("true_beta"));
  const auto data = models::blr_generate(3, 50, 6);
  for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(built.true_gamma[j], data.true_beta[j] != 0.0 ? 1 : 0);
}

TEST(BuildModel, BinaryHasExactMarginals) {
  json doc = base();
  doc["model"] = {{"type", "binary"}, {"N", 4}, {"seed", 2}};
  const BuiltModel built = build_model(parse_config(doc).model);
  EXPECT_EQ(built.exact_marginals.size(), 4u);
  doc["model"] = {{"type", "binary"}, {"W", {0.0, 1.0, 1.0, 0.0}}};
  EXPECT_THROW(build_model(parse_config(doc).model), ConfigError);
}

TEST(SamplerFactory, RejectsIncompatibleKernels) {
  json doc = base();
  doc["model"] = {{"type", "binary"}, {"N", 4}};
  doc["kernel"] = {{"type", "naive"}, {"epsilon", 0.1}, {"L", 5}};
  RunConfig c = parse_config(doc);
  BuiltModel built = build_model(c.model);
  EXPECT_THROW(make_sampler_factory(c.kernel, *built.model), ConfigError);

  doc = base();
  doc["kernel"]["mass"] = {1.0, 2.0};
  c = parse_config(doc);
  built = build_model(c.model);
  EXPECT_THROW(make_sampler_factory(c.kernel, *built.model), ConfigError);

  doc = base();
  doc["kernel"]["n_D"] = 3;
  c = parse_config(doc);
  built = build_model(c.model);
  try {
    make_sampler_factory(c.kernel, *built.model);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.path(), "kernel");
  }
}

TEST(KernelParamsJson, EchoesKernel) {
  const RunConfig c = parse_config(base());
  const json p = kernel_params_json(c.kernel);
  EXPECT_EQ(p.at("epsilon"), 0.2);
  EXPECT_EQ(p.at("L"), 100);
}

}  // namespace
}  // namespace mhmc
