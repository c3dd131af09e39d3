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

#ifndef INTERFERLAB_DISTINGUISH_HPP
#define INTERFERLAB_DISTINGUISH_HPP

#include <string>
#include <vector>

#include "interferlab/core.hpp"

namespace interferlab {

// The measurement {(i|} with (i|j) = delta_ij for pure, perfectly
// distinguishable states, padded with a complement effect when the states
// do not span the whole system.
template <typename Scalar>
Measurement<Scalar> distinguishing_measurement(const std::vector<State<Scalar>>& states,
                                               const Tolerances& tol = kDefaultTolerances) {
  if (states.empty()) throw InfeasibleError("distinguishing_measurement: no states");
  const SystemType& sys = states.front().system();
  for (std::size_t i = 0; i < states.size(); ++i) {
    require_same(sys, states[i].system(), "distinguishing_measurement");
    if (!states[i].is_pure(tol)) {
      throw InfeasibleError("distinguishing_measurement: state " + std::to_string(i) + " is not pure");
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      // tr(rho_i rho_j) for quantum, sum p_i q_i for classical point masses
      const Scalar overlap = states[i].coeffs().dot(states[j].coeffs());
      if (overlap > Scalar(tol.eq)) {
        throw InfeasibleError("distinguishing_measurement: states " + std::to_string(i) + " and " +
                              std::to_string(j) + " are not perfectly distinguishable (overlap " +
                              detail::fmt(double(overlap)) + ")");
      }
    }
  }
  // For pure states the projector onto the state is itself the effect:
  // quantum tr(rho_i rho_j) and classical indicators both pair to delta_ij.
  std::vector<Effect<Scalar>> effects;
  Vector<Scalar> rest = unit_coords<Scalar>(sys);
  for (const auto& s : states) {
    effects.push_back(Effect<Scalar>::trusted(sys, s.coeffs()));
    rest -= s.coeffs();
  }
  if (rest.cwiseAbs().maxCoeff() > Scalar(tol.eq)) {
    effects.push_back(Effect<Scalar>(sys, rest, tol));
  }
  return Measurement<Scalar>(std::move(effects), tol);
}

}  // namespace interferlab

#endif  // INTERFERLAB_DISTINGUISH_HPP
