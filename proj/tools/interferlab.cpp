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

// interferlab: command-line runner for the interference experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "interferlab/app/commands.hpp"

namespace app = interferlab::app;

namespace {

// Raw flag values; copied into a ConfigLayer only when given.
struct Flags {
  std::string theory, out, format, state, branches, config;
  int dim = 0, paths = 0, trials = 0, order = 0, points = 0;
  std::uint64_t seed = 0;
  double eps_eq = 0, phi_max = 0;
  std::vector<int> function;
  std::vector<double> angles;
};

template <typename T>
void copy_if(std::optional<T>& dst, const CLI::App* sub, const char* name, const T& value) {
  if (sub->count(name) > 0) dst = value;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--theory", f.theory, "quantum or classical")->check(CLI::IsMember({"quantum", "classical"}));
  sub->add_option("--dim", f.dim, "system dimension");
  sub->add_option("--paths", f.paths, "number of paths (equals dim)");
  sub->add_option("--trials", f.trials, "random trials or samples");
  sub->add_option("--seed", f.seed, "RNG seed (default: INTERFERLAB_SEED)");
  sub->add_option("--eps-eq", f.eps_eq, "equality tolerance");
  sub->add_option("--out", f.out, "output file (default: stdout)");
  sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", f.config, "JSON config file")->check(CLI::ExistingFile);
}

app::ConfigLayer to_layer(const CLI::App* sub, const Flags& f) {
  app::ConfigLayer l;
  copy_if(l.theory, sub, "--theory", f.theory);
  copy_if(l.dim, sub, "--dim", f.dim);
  copy_if(l.paths, sub, "--paths", f.paths);
  copy_if(l.trials, sub, "--trials", f.trials);
  copy_if(l.seed, sub, "--seed", f.seed);
  copy_if(l.eps_eq, sub, "--eps-eq", f.eps_eq);
  copy_if(l.out, sub, "--out", f.out);
  copy_if(l.format, sub, "--format", f.format);
  if (sub->get_name() == "sorkin") copy_if(l.order, sub, "--order", f.order);
  if (sub->get_name() == "mz-sweep") {
    copy_if(l.points, sub, "--points", f.points);
    copy_if(l.phi_max, sub, "--phi-max", f.phi_max);
  }
  if (sub->get_name() == "deutsch") copy_if(l.function, sub, "--function", f.function);
  if (sub->get_name() == "phase-order") copy_if(l.angles, sub, "--angles", f.angles);
  if (sub->get_name() == "exchange") copy_if(l.state, sub, "--state", f.state);
  if (sub->get_name() == "kickback") copy_if(l.branches, sub, "--branches", f.branches);
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Interference, kick-back and oracle experiments on generalized probabilistic theories"};
  cli.require_subcommand(1);
  Flags f;

  auto* mz = cli.add_subcommand("mz-sweep", "Mach-Zehnder pattern over a uniform phase grid");
  mz->add_option("--points", f.points, "grid points");
  mz->add_option("--phi-max", f.phi_max, "largest phase difference");
  auto* sorkin = cli.add_subcommand("sorkin", "second- or third-order interference test");
  sorkin->add_option("--order", f.order, "2 or 3");
  auto* kickback = cli.add_subcommand("kickback", "kicked-back phase of a controlled transformation");
  kickback->add_option("--branches", f.branches, "JSON file with branch unitaries");
  auto* deutsch = cli.add_subcommand("deutsch", "single-query parity of a decision function");
  deutsch->add_option("--function", f.function, "function table, e.g. 0,1")->delimiter(',');
  auto* exchange = cli.add_subcommand("exchange", "particle exchange statistics");
  exchange->add_option("--state", f.state, "sym, antisym or anyon:<theta>");
  auto* order = cli.add_subcommand("phase-order", "detection order of a diagonal phase");
  order->add_option("--angles", f.angles, "phase angles, e.g. 0,0.5,1")->delimiter(',');
  for (auto* sub : cli.get_subcommands({})) add_common(sub, f);

  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return app::kExitUsage;
  }

  const CLI::App* sub = cli.get_subcommands().front();
  app::RunConfig config;
  try {
    app::ConfigLayer file;
    if (sub->count("--config") > 0) {
      std::ifstream in(f.config);
      file = app::layer_from_json(app::Json::parse(in));
    }
    config = app::resolve_config(sub->get_name(), to_layer(sub, f), file,
                                 app::layer_from_env(std::getenv("INTERFERLAB_SEED")));
  } catch (const std::exception& e) {
    std::cerr << "interferlab: " << e.what() << "\n";
    return app::kExitUsage;
  }

  const auto result = app::execute(config);
  if (!result.message.empty()) std::cerr << "interferlab: " << result.message << "\n";
  if (!result.output.empty()) {
    if (config.out.empty()) {
      std::cout << result.output << std::flush;
    } else {
      std::ofstream out(config.out, std::ios::binary);
      out << result.output;
      if (!out) {
        std::cerr << "interferlab: cannot write " << config.out << "\n";
        return app::kExitUsage;
      }
    }
  }
  return result.exit_code;
}
