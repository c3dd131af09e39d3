// Copyright 2026 The InterferLab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INTERFERLAB_APP_COMMANDS_HPP
#define INTERFERLAB_APP_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "interferlab/app/json_io.hpp"

namespace interferlab::app {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitAnomaly = 3, kExitTolerance = 4 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"mz-sweep", "sorkin", "kickback", "deutsch", "exchange", "phase-order"};
  return names;
}

// One source of settings. Unset fields fall through to the next layer.
struct ConfigLayer {
  std::optional<std::string> theory;
  std::optional<int> dim;
  std::optional<int> paths;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps_eq;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> order;
  std::optional<int> points;
  std::optional<double> phi_max;
  std::optional<std::vector<int>> function;
  std::optional<std::vector<double>> angles;
  std::optional<std::string> state;
  std::optional<std::string> branches;  // path to a branch file
  std::optional<Json> branch_spec;      // inline, from a config file
};

// Keys match the long flag names with '-' replaced by '_'.
ConfigLayer layer_from_json(const Json& j);
ConfigLayer layer_from_env(const char* seed_value);

struct RunConfig {
  std::string command;
  std::string theory = "quantum";
  int dim = 2;
  int paths = 2;
  int trials = 1000;
  std::optional<std::uint64_t> seed;
  double eps_eq = kDefaultTolerances.eq;
  std::string out;
  std::string format = "json";
  int order = 3;
  int points = 200;
  double phi_max = std::numbers::pi;
  std::vector<int> function{0, 1};
  std::vector<double> angles;
  std::string state = "antisym";
  std::string branches;
  std::optional<Json> branch_spec;

  Tolerances tolerances() const;
};

// Precedence: flags, then config file, then environment, then defaults.
// Dimension defaults depend on the command (see resolve_config).
RunConfig resolve_config(const std::string& command, const ConfigLayer& flags, const ConfigLayer& file,
                         const ConfigLayer& env);

Json config_to_json(const RunConfig& c);

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;   // document to write (JSON or CSV)
  std::string message;  // diagnostic for stderr
};

// Runs a command; library errors are mapped to exit codes, never thrown.
CommandResult execute(const RunConfig& config);

CommandResult cmd_mz_sweep(const RunConfig& config);
CommandResult cmd_sorkin(const RunConfig& config);
CommandResult cmd_kickback(const RunConfig& config);
CommandResult cmd_deutsch(const RunConfig& config);
CommandResult cmd_exchange(const RunConfig& config);
CommandResult cmd_phase_order(const RunConfig& config);

}  // namespace interferlab::app

#endif  // INTERFERLAB_APP_COMMANDS_HPP
