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

#include "interferlab/app/csv.hpp"

#include <cstdio>
#include <sstream>

namespace interferlab::app {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string mz_sweep_csv(const std::vector<SweepRow<double>>& rows) {
  std::ostringstream out;
  out << "delta_phi,probability\n";
  for (const auto& row : rows) {
    out << format_double(row.angles.at(1) - row.angles.at(0)) << ',' << format_double(row.probability) << '\n';
  }
  return out.str();
}

std::string sorkin_csv(const SorkinReport<double>& report) {
  std::ostringstream out;
  const std::size_t n = report.samples.empty() ? 0 : report.samples.front().angles.size();
  for (std::size_t i = 0; i < n; ++i) out << "theta_" << i << ',';
  out << "lhs,rhs,residual\n";
  for (const auto& s : report.samples) {
    for (double a : s.angles) out << format_double(a) << ',';
    out << format_double(s.lhs) << ',' << format_double(s.rhs) << ',' << format_double(s.residual) << '\n';
  }
  return out.str();
}

}  // namespace interferlab::app
