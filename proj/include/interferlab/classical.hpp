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

#ifndef INTERFERLAB_CLASSICAL_HPP
#define INTERFERLAB_CLASSICAL_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "interferlab/core.hpp"

namespace interferlab {

template <typename Scalar = double>
State<Scalar> point_mass(int d, int i) {
  if (i < 0 || i >= d) throw DimensionError("point_mass: index out of range");
  Vector<Scalar> p = Vector<Scalar>::Zero(d);
  p(i) = Scalar(1);
  return State<Scalar>::trusted(SystemType::classical(d), std::move(p));
}

template <typename Scalar = double>
Effect<Scalar> indicator_effect(int d, int i) {
  if (i < 0 || i >= d) throw DimensionError("indicator_effect: index out of range");
  Vector<Scalar> e = Vector<Scalar>::Zero(d);
  e(i) = Scalar(1);
  return Effect<Scalar>::trusted(SystemType::classical(d), std::move(e));
}

// Reversible classical map sending outcome i to perm[i].
template <typename Scalar = double>
Transformation<Scalar> permutation_transformation(const std::vector<int>& perm) {
  const int d = static_cast<int>(perm.size());
  std::vector<int> seen(perm);
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < d; ++i) {
    if (seen[static_cast<std::size_t>(i)] != i) throw ValidationError("permutation_transformation: not a permutation");
  }
  Matrix<Scalar> m = Matrix<Scalar>::Zero(d, d);
  for (int i = 0; i < d; ++i) m(perm[static_cast<std::size_t>(i)], i) = Scalar(1);
  const SystemType sys = SystemType::classical(d);
  return Transformation<Scalar>::trusted(sys, sys, std::move(m), true);
}

// Every reversible transformation of a classical d-outcome system: the d!
// permutation matrices, in lexicographic order of the permutation.
template <typename Scalar = double>
std::vector<Transformation<Scalar>> all_classical_reversible(int d) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Transformation<Scalar>> out;
  do {
    out.push_back(permutation_transformation<Scalar>(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace interferlab

#endif  // INTERFERLAB_CLASSICAL_HPP
