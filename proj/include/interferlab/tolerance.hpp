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

#ifndef INTERFERLAB_TOLERANCE_HPP
#define INTERFERLAB_TOLERANCE_HPP

namespace interferlab {

// Numerical tolerances shared by every module.
struct Tolerances {
  double eq = 1e-9;    // equality of probabilities and covectors
  double norm = 1e-9;  // state normalization
  double psd = 1e-8;   // eigenvalue floor for positivity checks
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace interferlab

#endif  // INTERFERLAB_TOLERANCE_HPP
