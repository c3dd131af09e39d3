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

#ifndef INTERFERLAB_SYSTEM_HPP
#define INTERFERLAB_SYSTEM_HPP

#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "interferlab/error.hpp"

namespace interferlab {

enum class Theory { Quantum, Classical };

inline const char* to_string(Theory t) {
  return t == Theory::Quantum ? "quantum" : "classical";
}

// A system type: a backend tag and a list of local dimensions. A single
// system has one factor; composites list their factors in tensor order.
// The coordinate space of a composite is the Kronecker product of the
// coordinate spaces of its factors.
class SystemType {
 public:
  SystemType(Theory theory, int dim) : SystemType(theory, std::vector<int>{dim}) {}

  SystemType(Theory theory, std::vector<int> factors)
      : theory_(theory), factors_(std::move(factors)) {
    if (factors_.empty()) throw DimensionError("system needs at least one factor");
    for (int d : factors_) {
      if (d < 1) throw DimensionError("system dimension must be >= 1, got " + std::to_string(d));
    }
  }

  static SystemType quantum(int dim) { return {Theory::Quantum, dim}; }
  static SystemType classical(int dim) { return {Theory::Classical, dim}; }

  Theory theory() const { return theory_; }
  bool is_quantum() const { return theory_ == Theory::Quantum; }
  bool is_composite() const { return factors_.size() > 1; }
  const std::vector<int>& factors() const { return factors_; }

  // Total Hilbert-space (quantum) or sample-space (classical) dimension.
  int dim() const {
    return std::accumulate(factors_.begin(), factors_.end(), 1, std::multiplies<>());
  }

  // Length of the real coordinate vectors: d^2 for quantum, d for classical.
  int vector_space_dim() const { return is_quantum() ? dim() * dim() : dim(); }

  // Coordinate dimension of a single factor.
  int factor_vector_space_dim(std::size_t k) const {
    const int d = factors_.at(k);
    return is_quantum() ? d * d : d;
  }

  SystemType factor(std::size_t k) const { return {theory_, factors_.at(k)}; }

  friend bool operator==(const SystemType&, const SystemType&) = default;

  std::string describe() const {
    std::string s = to_string(theory_);
    s += "(";
    for (std::size_t k = 0; k < factors_.size(); ++k) {
      if (k) s += "x";
      s += std::to_string(factors_[k]);
    }
    return s + ")";
  }

 private:
  Theory theory_;
  std::vector<int> factors_;
};

// Composite of two systems of the same backend.
inline SystemType tensor(const SystemType& a, const SystemType& b) {
  if (a.theory() != b.theory()) {
    throw DimensionError("cannot compose " + a.describe() + " with " + b.describe() +
                         ": mixed backends");
  }
  std::vector<int> f = a.factors();
  f.insert(f.end(), b.factors().begin(), b.factors().end());
  return {a.theory(), std::move(f)};
}

inline void require_same(const SystemType& a, const SystemType& b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": system mismatch " + a.describe() + " vs " +
                         b.describe());
  }
}

}  // namespace interferlab

#endif  // INTERFERLAB_SYSTEM_HPP
