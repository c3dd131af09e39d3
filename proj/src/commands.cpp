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

#include "interferlab/app/commands.hpp"

#include <fstream>
#include <sstream>

#include "interferlab/app/csv.hpp"

namespace interferlab::app {

namespace {

// Thrown for configuration problems the library itself would not catch.
struct UsageError : Error {
  using Error::Error;
};

template <typename T>
void take(std::optional<T>& dst, const Json& j, const char* key) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

template <typename T>
T pick(const std::optional<T>& a, const std::optional<T>& b, const std::optional<T>& c, T fallback) {
  if (a) return *a;
  if (b) return *b;
  if (c) return *c;
  return fallback;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json document(const RunConfig& c) {
  return Json{{"meta", Json{{"command", c.command}, {"config", config_to_json(c)}}}};
}

void require_seed(const RunConfig& c) {
  if (!c.seed) throw UsageError(c.command + ": a seed is required (--seed or INTERFERLAB_SEED)");
}

void require_format(const RunConfig& c, bool csv_allowed) {
  if (c.format != "json" && !(csv_allowed && c.format == "csv")) {
    throw UsageError(c.command + ": unsupported output format '" + c.format + "'");
  }
}

bool quantum(const RunConfig& c) { return c.theory == "quantum"; }

SystemType system_of(const RunConfig& c) {
  return quantum(c) ? SystemType::quantum(c.dim) : SystemType::classical(c.dim);
}

}  // namespace

ConfigLayer layer_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
  ConfigLayer l;
  take(l.theory, j, "theory");
  take(l.dim, j, "dim");
  take(l.paths, j, "paths");
  take(l.trials, j, "trials");
  take(l.seed, j, "seed");
  take(l.eps_eq, j, "eps_eq");
  take(l.out, j, "out");
  take(l.format, j, "format");
  take(l.order, j, "order");
  take(l.points, j, "points");
  take(l.phi_max, j, "phi_max");
  take(l.function, j, "function");
  take(l.angles, j, "angles");
  take(l.state, j, "state");
  if (j.contains("branches")) {
    if (j.at("branches").is_string()) {
      l.branches = j.at("branches").get<std::string>();
    } else {
      l.branch_spec = j;
    }
  }
  return l;
}

ConfigLayer layer_from_env(const char* seed_value) {
  ConfigLayer l;
  if (seed_value && *seed_value) {
    try {
      std::size_t used = 0;
      l.seed = std::stoull(seed_value, &used);
      if (seed_value[used] != '\0') throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ValidationError(std::string("INTERFERLAB_SEED is not an unsigned integer: ") + seed_value);
    }
  }
  return l;
}

Tolerances RunConfig::tolerances() const {
  Tolerances t;
  t.eq = eps_eq;
  return t;
}

RunConfig resolve_config(const std::string& command, const ConfigLayer& flags, const ConfigLayer& file,
                         const ConfigLayer& env) {
  RunConfig c;
  c.command = command;
  c.theory = pick(flags.theory, file.theory, env.theory, c.theory);
  c.trials = pick(flags.trials, file.trials, env.trials, c.trials);
  c.seed = flags.seed ? flags.seed : file.seed ? file.seed : env.seed;
  c.eps_eq = pick(flags.eps_eq, file.eps_eq, env.eps_eq, c.eps_eq);
  c.out = pick(flags.out, file.out, env.out, c.out);
  c.format = pick(flags.format, file.format, env.format, c.format);
  c.order = pick(flags.order, file.order, env.order, c.order);
  c.points = pick(flags.points, file.points, env.points, c.points);
  c.phi_max = pick(flags.phi_max, file.phi_max, env.phi_max, c.phi_max);
  c.function = pick(flags.function, file.function, env.function, c.function);
  c.angles = pick(flags.angles, file.angles, env.angles, c.angles);
  c.state = pick(flags.state, file.state, env.state, c.state);
  c.branches = pick(flags.branches, file.branches, env.branches, c.branches);
  if (!flags.branches) c.branch_spec = file.branch_spec;

  int dim_default = 2;
  if (command == "sorkin") dim_default = c.order;
  if (command == "phase-order" && !c.angles.empty()) dim_default = static_cast<int>(c.angles.size());
  if (command == "deutsch") dim_default = static_cast<int>(c.function.size());
  c.dim = pick(flags.dim, file.dim, env.dim, dim_default);
  c.paths = pick(flags.paths, file.paths, env.paths, c.dim);
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j{{"theory", c.theory},
         {"dim", c.dim},
         {"paths", c.paths},
         {"trials", c.trials},
         {"seed", nullptr},
         {"eps_eq", c.eps_eq},
         {"out", c.out},
         {"format", c.format}};
  if (c.seed) j["seed"] = *c.seed;
  if (c.command == "sorkin") j["order"] = c.order;
  if (c.command == "mz-sweep") {
    j["points"] = c.points;
    j["phi_max"] = c.phi_max;
  }
  if (c.command == "deutsch") j["function"] = c.function;
  if (c.command == "phase-order") j["angles"] = c.angles;
  if (c.command == "exchange") j["state"] = c.state;
  if (c.command == "kickback") j["branches"] = c.branches;
  return j;
}

namespace {

void validate_common(const RunConfig& c) {
  if (c.theory != "quantum" && c.theory != "classical") {
    throw UsageError("unknown theory '" + c.theory + "' (expected quantum or classical)");
  }
  if (c.dim < 2) throw UsageError("dim must be >= 2");
  if (c.trials < 1) throw UsageError("trials must be >= 1");
  if (c.paths != c.dim) {
    throw UsageError("paths must equal dim: only rank-one path experiments are supported");
  }
  if (!(c.eps_eq > 0)) throw UsageError("eps-eq must be positive");
}

}  // namespace

CommandResult cmd_mz_sweep(const RunConfig& c) {
  require_format(c, true);
  if (!quantum(c)) throw UsageError("mz-sweep: classical theory has no nontrivial phase group");
  if (c.dim != 2) throw UsageError("mz-sweep: the interferometer is a qubit (dim 2)");
  if (c.points < 1) throw UsageError("mz-sweep: points must be >= 1");
  const auto tol = c.tolerances();
  const auto p = basis_experiment<double>(SystemType::quantum(2), tol.eq);
  const CVector<double> plus = uniform_superposition<double>(p.kets());
  std::vector<std::vector<double>> grid;
  for (int k = 0; k < c.points; ++k) {
    const double dphi = c.points == 1 ? 0.0 : c.phi_max * k / (c.points - 1);
    grid.push_back({0.0, dphi});
  }
  const auto rows = interference_pattern_sweep(ket_state<double>(plus, tol), projector_effect<double>(plus, tol), p,
                                               grid, tol);
  if (c.format == "csv") return {kExitOk, mz_sweep_csv(rows), ""};
  Json doc = document(c);
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(Json{{"delta_phi", r.angles[1]}, {"probability", r.probability}});
  doc["rows"] = std::move(out);
  return {kExitOk, dump(doc), ""};
}

CommandResult cmd_sorkin(const RunConfig& c) {
  require_format(c, true);
  require_seed(c);
  const auto tol = c.tolerances();
  if (c.order != 2 && c.order != 3) throw UsageError("sorkin: order must be 2 or 3");
  if (c.dim != c.order) {
    throw UsageError("sorkin: order " + std::to_string(c.order) + " runs on a " + std::to_string(c.order) +
                     "-path experiment (dim " + std::to_string(c.order) + ")");
  }
  if (!quantum(c) && c.order != 2) throw UsageError("sorkin: classical theory supports order 2 only");
  const auto p = basis_experiment<double>(system_of(c), tol.eq);
  const auto report = c.order == 2 ? second_order_witness(p, *c.seed, tol) : third_order_scan_quantum(p, c.trials, *c.seed, tol);
  const Verdict expected = (quantum(c) && c.order == 2) ? Verdict::Present : Verdict::Absent;
  int code = kExitOk;
  std::string message;
  if (report.verdict == Verdict::Inconclusive) {
    code = kExitTolerance;
    message = "sorkin: residual " + format_double(report.max_abs_residual) + " is inconclusive";
  } else if (report.verdict != expected) {
    code = kExitAnomaly;
    message = std::string("sorkin: expected ") + to_string(expected) + ", found " + to_string(report.verdict);
  }
  if (c.format == "csv") return {code, sorkin_csv(report), message};
  Json doc = document(c);
  doc["expected"] = to_string(expected);
  doc["report"] = to_json(report);
  return {code, dump(doc), message};
}

CommandResult cmd_kickback(const RunConfig& c) {
  require_format(c, false);
  require_seed(c);
  if (!quantum(c)) throw UsageError("kickback: quantum theory only");
  const auto tol = c.tolerances();
  Json spec_json;
  if (!c.branches.empty()) {
    std::ifstream in(c.branches);
    if (!in) throw UsageError("kickback: cannot read branch file " + c.branches);
    try {
      spec_json = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw UsageError("kickback: branch file is not valid JSON: " + std::string(e.what()));
    }
  } else if (c.branch_spec) {
    spec_json = *c.branch_spec;
  } else {
    throw UsageError("kickback: no branches given (--branches FILE or \"branches\" in the config)");
  }
  const auto spec = branch_spec_from_json(spec_json);
  const auto controlled = spec.control_basis.empty() ? build_controlled<double>(spec.branches, tol)
                                                     : build_controlled<double>(spec.branches, spec.control_basis, tol);
  std::optional<State<double>> s;
  if (spec.fixed_state) {
    s = ket_state<double>(controlled.target_system(), *spec.fixed_state, tol);
  } else {
    s = common_fixed_state<double>(spec.branches, tol);
  }
  Json doc = document(c);
  doc["controlled"] = to_json(controlled);
  if (!s) {
    doc["kickback"] = nullptr;
    return {kExitAnomaly, dump(doc), "kickback: the branches share no eigenvector"};
  }
  const auto kb = extract_kickback(controlled, *s, tol);
  doc["kickback"] = to_json(kb);
  doc["kickback"]["residuals"]["kickback_trials"] = c.trials;
  const double residual = kickback_residual(controlled, kb, c.trials, *c.seed);
  doc["kickback"]["residuals"]["kickback_sampled"] = residual;
  if (residual > tol.eq) return {kExitTolerance, dump(doc), "kickback: residual above tolerance"};
  return {kExitOk, dump(doc), ""};
}

CommandResult cmd_deutsch(const RunConfig& c) {
  require_format(c, false);
  if (!quantum(c)) throw UsageError("deutsch: quantum theory only");
  if (c.dim != static_cast<int>(c.function.size())) {
    throw UsageError("deutsch: dim must equal the function table length");
  }
  const auto tol = c.tolerances();
  auto oracle = build_oracle<double>(DecisionFunction(c.function), tol);
  Json doc = document(c);
  doc["function"] = c.function;
  if (oracle.size() == 2) {
    const auto r = deutsch_parity(oracle, tol);
    doc["parity"] = r.parity;
    doc["queries"] = r.queries;
    doc["prob"] = r.probability;
  }
  Json pairs = Json::array();
  for (int i = 0; i < oracle.size(); ++i) {
    for (int j = i + 1; j < oracle.size(); ++j) {
      oracle.reset_queries();
      const auto r = pairwise_parity(oracle, i, j, tol);
      pairs.push_back(Json{{"i", i}, {"j", j}, {"parity", r.parity}, {"queries", r.queries}, {"prob", r.probability}});
    }
  }
  doc["pairs"] = std::move(pairs);
  doc["signature"] = kickback_signature(oracle, tol);
  return {kExitOk, dump(doc), ""};
}

CommandResult cmd_exchange(const RunConfig& c) {
  require_format(c, false);
  if (!quantum(c)) throw UsageError("exchange: quantum theory only");
  const auto tol = c.tolerances();
  const CMatrix<double> swap = swap_unitary<double>(2, 2);
  ExchangeResult<double> r = [&] {
    if (c.state == "sym") return exchange_experiment(two_particle_state(ExchangeSymmetry::Symmetric), swap, tol);
    if (c.state == "antisym") return exchange_experiment(two_particle_state(ExchangeSymmetry::Antisymmetric), swap, tol);
    if (c.state.rfind("anyon:", 0) == 0) {
      double theta = 0;
      try {
        std::size_t used = 0;
        theta = std::stod(c.state.substr(6), &used);
        if (used != c.state.size() - 6) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw UsageError("exchange: bad anyon angle in '" + c.state + "'");
      }
      const auto psi = two_particle_state(ExchangeSymmetry::Symmetric);
      return exchange_experiment(psi, anyonic_exchange<double>(ket_of(psi), theta), tol);
    }
    throw UsageError("exchange: state must be sym, antisym or anyon:<theta>");
  }();
  const auto cls = classify_particle(r.theta, tol);
  Json doc = document(c);
  doc["class"] = cls.name();
  doc["theta"] = cls.theta;
  doc["kickback"] = to_json(r.kickback);
  return {kExitOk, dump(doc), ""};
}

CommandResult cmd_phase_order(const RunConfig& c) {
  require_format(c, false);
  require_seed(c);
  const auto tol = c.tolerances();
  Json doc = document(c);
  if (!quantum(c)) {
    if (!c.angles.empty()) throw UsageError("phase-order: classical phases are permutations, not angles");
    const auto p = basis_experiment<double>(SystemType::classical(c.dim), tol.eq);
    const auto group = classical_phase_group(p, tol);
    doc["order"] = nullptr;
    doc["phase_group_size"] = group.size();
    doc["levels"] = Json::array();
    return {group.size() == 1 ? kExitOk : kExitAnomaly, dump(doc), ""};
  }
  if (c.angles.empty()) throw UsageError("phase-order: --angles is required for quantum theory");
  if (static_cast<int>(c.angles.size()) != c.dim) throw UsageError("phase-order: one angle per path");
  const auto p = basis_experiment<double>(SystemType::quantum(c.dim), tol.eq);
  const auto t = phase_unitary<double>(c.angles);
  const auto order = detection_order(t, p, tol);
  doc["order"] = order ? Json(*order) : Json(nullptr);
  Json levels = Json::array();
  bool agree = true;
  for (int n = 1; n <= p.size(); ++n) {
    const bool closed = is_n_undetectable(t, p, n, tol);
    const bool searched = search_n_undetectable(t, p, n, c.trials, derive_seed(*c.seed, std::uint64_t(n)), tol);
    agree = agree && closed == searched;
    levels.push_back(Json{{"n", n}, {"undetectable", closed}, {"search_undetectable", searched}});
  }
  doc["levels"] = std::move(levels);
  doc["search_agrees"] = agree;
  return {agree ? kExitOk : kExitAnomaly, dump(doc), agree ? "" : "phase-order: randomized search contradicts the closed form"};
}

CommandResult execute(const RunConfig& c) {
  try {
    validate_common(c);
    if (c.command == "mz-sweep") return cmd_mz_sweep(c);
    if (c.command == "sorkin") return cmd_sorkin(c);
    if (c.command == "kickback") return cmd_kickback(c);
    if (c.command == "deutsch") return cmd_deutsch(c);
    if (c.command == "exchange") return cmd_exchange(c);
    if (c.command == "phase-order") return cmd_phase_order(c);
    return {kExitUsage, "", "unknown command '" + c.command + "'"};
  } catch (const ConsistencyError& e) {
    return {kExitTolerance, "", e.what()};
  } catch (const Error& e) {
    return {kExitUsage, "", e.what()};
  } catch (const Json::exception& e) {
    return {kExitUsage, "", std::string("bad JSON input: ") + e.what()};
  }
}

}  // namespace interferlab::app
