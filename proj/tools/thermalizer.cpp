// Copyright 2026 The Thermalizer Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "thermalizer/harness.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace thermalizer;
  CLI::App app{"Variational quantum thermalizer experiments"};
  std::string experiment, config_path, out_dir;
  bool quick = false;
  std::uint64_t seed_override = 0;
  app.add_option("experiment", experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  app.add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  app.add_flag("--quick", quick, "Reduced sizes for smoke runs");
  auto* seed_opt = app.add_option("--seed-override", seed_override, "Replace the seed list with this seed");
  app.add_option("--out", out_dir, "Output directory (default: output_path from the config)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  }

  ExperimentConfig config;
  try {
    std::ifstream in(config_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    config = validate_config(buf.str());
    if (experiment_name(config.experiment) != experiment) {
      throw ConfigError(std::string("experiment: config says \"") + experiment_name(config.experiment) +
                        "\" but \"" + experiment + "\" was requested");
    }
    if (quick) apply_quick(config);
    if (*seed_opt) apply_seed_override(config, seed_override);
    if (out_dir.empty()) out_dir = config.output_path;

    const ExperimentRecord record = run(config);
    const std::string stem = write_record(record, config, out_dir);
    std::cout << stem << ".csv\n" << stem << ".json\n";
    if (!record.ok) {
      std::cerr << "error: " << experiment << " reported an invariant violation, see " << stem << ".json\n";
      return kExitInvariant;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
