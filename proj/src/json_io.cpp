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

#include "interferlab/app/json_io.hpp"

#include <string>

namespace interferlab::app {

Json to_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const CVector<double>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const CMatrix<double>& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

Json real_array(const Vector<double>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

template <typename T>
Json list(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x);
  return out;
}

}  // namespace

Json to_json(const SystemType& sys) {
  return Json{{"theory", to_string(sys.theory())}, {"factors", list(sys.factors())}};
}

Json to_json(const State<double>& s) {
  Json out{{"system", to_json(s.system())}};
  if (!s.system().is_quantum()) {
    out["probabilities"] = real_array(s.coeffs());
  } else if (s.is_pure()) {
    out["amplitudes"] = to_json(ket_of(s));
  } else {
    out["density"] = to_json(s.density());
  }
  return out;
}

Json to_json(const Effect<double>& e) {
  Json out{{"system", to_json(e.system())}};
  if (e.system().is_quantum()) {
    out["operator"] = to_json(e.op());
  } else {
    out["values"] = real_array(e.coeffs());
  }
  return out;
}

Json to_json(const PathExperiment<double>& p) {
  Json paths = Json::array();
  for (int i = 0; i < p.size(); ++i) paths.push_back(Json{{"state", to_json(p[i].state)}, {"effect", to_json(p[i].effect)}});
  return Json{{"system", to_json(p.system())},
              {"n", p.size()},
              {"epsilon_support", p.epsilon_support()},
              {"paths", std::move(paths)}};
}

Json to_json(const SorkinReport<double>& r) {
  Json out{{"order", r.order},
           {"trials", r.trials},
           {"max_abs_residual", r.max_abs_residual},
           {"verdict", to_string(r.verdict)},
           {"convention_dependent", r.convention_dependent},
           {"best_constant", nullptr},
           {"minimax", nullptr},
           {"witness", nullptr}};
  if (r.best_constant) out["best_constant"] = *r.best_constant;
  if (r.minimax) out["minimax"] = *r.minimax;
  if (r.witness) {
    out["witness"] = Json{{"state", to_json(r.witness->state)},
                          {"effect", to_json(r.witness->effect)},
                          {"angles", list(r.witness->angles)}};
  }
  return out;
}

Json to_json(const KickbackResult<double>& kb) {
  return Json{{"fixed_state", to_json(kb.fixed_state)},
              {"angles", list(kb.angles)},
              {"raw_phases", list(kb.raw_phases)},
              {"q", to_json(kb.q_unitary)},
              {"residuals", Json{{"kickback", kb.kickback_residual}, {"phase", kb.phase_residual}}}};
}

Json to_json(const ControlledTransformation<double>& c) {
  Json indices = Json::array();
  Json basis = Json::array();
  Json branches = Json::array();
  for (int i = 0; i < c.size(); ++i) {
    indices.push_back(i);
    basis.push_back(to_json(c.control_kets()[std::size_t(i)]));
    branches.push_back(to_json(c.branch_unitaries()[std::size_t(i)]));
  }
  return Json{{"control_system", to_json(c.control_system())},
              {"target_system", to_json(c.target_system())},
              {"composite_dim", c.composite_system().dim()},
              {"control_basis_indices", std::move(indices)},
              {"control_basis", std::move(basis)},
              {"branches", std::move(branches)}};
}

std::complex<double> complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("expected a number or an [re, im] pair, got " + j.dump());
}

CVector<double> ket_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected a non-empty amplitude array");
  CVector<double> v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(Eigen::Index(i)) = complex_from_json(j[i]);
  return v;
}

CMatrix<double> matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("expected a non-empty array of matrix rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  CMatrix<double> m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw DimensionError("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(Eigen::Index(r), Eigen::Index(c)) = complex_from_json(j[r][c]);
  }
  return m;
}

BranchSpec branch_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("branches")) throw ValidationError("branch file needs a \"branches\" array");
  BranchSpec spec;
  for (const auto& b : j.at("branches")) spec.branches.push_back(matrix_from_json(b));
  if (j.contains("control_basis")) {
    for (const auto& k : j.at("control_basis")) spec.control_basis.push_back(ket_from_json(k));
  }
  if (j.contains("fixed_state")) spec.fixed_state = ket_from_json(j.at("fixed_state"));
  return spec;
}

}  // namespace interferlab::app
