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

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mhmc/checks.hpp"
#include "mhmc/config.hpp"
#include "mhmc/runner.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kIoError = 3, kInternal = 4 };

int run_command(const std::string& config_path, const mhmc::RunOverrides& overrides,
                const std::string& out_dir) {
  mhmc::RunConfig config = mhmc::load_config(config_path);
  mhmc::apply_overrides(config, overrides);
  const mhmc::RunResult result = mhmc::run(config, out_dir);
  const auto& s = result.summary;
  std::cout << "model=" << s["model"].get<std::string>() << " kernel=" << s["kernel"].get<std::string>()
            << " chains=" << s["chains"] << " samples=" << s["samples"]
            << " acceptance=" << s["acceptance_rate"] << " mress=" << s["mress"]
            << " wall_time=" << s["wall_time"] << "s\n";
  for (const auto& w : s["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
  return kOk;
}

int check_command(const std::string& suite) {
  nlohmann::json report{{"suite", suite}, {"results", nlohmann::json::array()}};
  bool all_passed = true;
  for (int id : mhmc::suite_criteria(suite)) {
    const mhmc::CriterionResult r = mhmc::run_criterion(id);
    std::cerr << mhmc::format_line(r) << std::endl;
    report["results"].push_back(mhmc::to_json(r));
    all_passed = all_passed && r.passed;
  }
  report["passed"] = all_passed;
  std::cout << report.dump(2) << '\n';
  return all_passed ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed Hamiltonian Monte Carlo sampler"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run chains from a JSON config");
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> chains;
  std::optional<std::size_t> threads;
  run->add_option("--config", config_path, "Path to the run config")->required();
  run->add_option("--seed", seed, "Override run.seed");
  run->add_option("--chains", chains, "Override run.chains");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)")->envname("MHMC_THREADS");
  run->add_option("--out-dir", out_dir, "Directory for the output files");

  auto* check = app.add_subcommand("check", "Run a built-in validation suite");
  std::string suite;
  check->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(mhmc::suite_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(config_path, {seed, chains, threads}, out_dir);
    return check_command(suite);
  } catch (const mhmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const mhmc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
}
