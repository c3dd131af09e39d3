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

#ifndef INTERFERLAB_APP_JSON_IO_HPP
#define INTERFERLAB_APP_JSON_IO_HPP

#include <vector>

#include <json.hpp>

#include "interferlab/interferlab.hpp"

namespace interferlab::app {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; matrices are arrays of rows.
Json to_json(std::complex<double> z);
Json to_json(const CVector<double>& v);
Json to_json(const CMatrix<double>& m);
Json to_json(const SystemType& sys);
Json to_json(const State<double>& s);
Json to_json(const Effect<double>& e);
Json to_json(const PathExperiment<double>& p);
Json to_json(const SorkinReport<double>& r);
Json to_json(const KickbackResult<double>& kb);
Json to_json(const ControlledTransformation<double>& c);

std::complex<double> complex_from_json(const Json& j);
CVector<double> ket_from_json(const Json& j);
CMatrix<double> matrix_from_json(const Json& j);

// {"branches": [U_0, ...], "control_basis": [ket, ...]?, "fixed_state": ket?}
struct BranchSpec {
  std::vector<CMatrix<double>> branches;
  std::vector<CVector<double>> control_basis;  // empty: computational basis
  std::optional<CVector<double>> fixed_state;
};

BranchSpec branch_spec_from_json(const Json& j);

}  // namespace interferlab::app

#endif  // INTERFERLAB_APP_JSON_IO_HPP
