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

#ifndef INTERFERLAB_APP_CSV_HPP
#define INTERFERLAB_APP_CSV_HPP

#include <string>
#include <vector>

#include "interferlab/interference.hpp"

namespace interferlab::app {

// 17 significant digits, '.' decimal point.
std::string format_double(double v);

// delta_phi,probability
std::string mz_sweep_csv(const std::vector<SweepRow<double>>& rows);

// theta_0,...,theta_{n-1},lhs,rhs,residual
std::string sorkin_csv(const SorkinReport<double>& report);

}  // namespace interferlab::app

#endif  // INTERFERLAB_APP_CSV_HPP
