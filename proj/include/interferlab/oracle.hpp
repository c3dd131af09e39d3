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

#ifndef INTERFERLAB_ORACLE_HPP
#define INTERFERLAB_ORACLE_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "interferlab/controlled.hpp"

namespace interferlab {

// f : {0..n-1} -> {0,1} as a table of bits.
class DecisionFunction {
 public:
  explicit DecisionFunction(std::vector<int> table) : table_(std::move(table)) {
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (table_[i] != 0 && table_[i] != 1) {
        throw ValidationError("DecisionFunction: entry " + std::to_string(i) + " is not a bit");
      }
    }
  }

  // The k-th function on n points, bit i of k giving f(i).
  static DecisionFunction enumerate(int n, unsigned k) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = int((k >> i) & 1u);
    return DecisionFunction(std::move(t));
  }

  int size() const { return static_cast<int>(table_.size()); }
  int operator()(int i) const { return table_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& table() const { return table_; }

 private:
  std::vector<int> table_;
};

// U_f = sum_i |i><i| (x) Z^{f(i)} behind a query counter. Every
// application of the composite goes through apply().
template <typename Scalar = double>
class OracleInstance {
 public:
  OracleInstance(DecisionFunction f, ControlledTransformation<Scalar> c)
      : function_(std::move(f)), controlled_(std::move(c)) {}

  int size() const { return controlled_.size(); }
  const SystemType& control_system() const { return controlled_.control_system(); }
  const SystemType& target_system() const { return controlled_.target_system(); }
  std::size_t query_count() const { return queries_; }
  void reset_queries() { queries_ = 0; }

  State<Scalar> apply(const State<Scalar>& in) {
    ++queries_;
    return interferlab::apply(controlled_.composite(), in);
  }

  // For reporting and for the kick-back signature; protocols use apply().
  const DecisionFunction& function() const { return function_; }
  const ControlledTransformation<Scalar>& controlled() const { return controlled_; }

 private:
  DecisionFunction function_;
  ControlledTransformation<Scalar> controlled_;
  std::size_t queries_ = 0;
};

template <typename Scalar = double>
OracleInstance<Scalar> build_oracle(const DecisionFunction& f, const Tolerances& tol = kDefaultTolerances) {
  if (f.size() < 2) throw ValidationError("build_oracle: domain needs at least two points");
  std::vector<CMatrix<Scalar>> branches;
  for (int i = 0; i < f.size(); ++i) {
    branches.push_back(f(i) ? pauli_z<Scalar>() : CMatrix<Scalar>::Identity(2, 2));
  }
  return OracleInstance<Scalar>(f, build_controlled<Scalar>(branches, tol));
}

template <typename Scalar = double>
struct ParityResult {
  int parity;
  Scalar probability;  // probability of the observed (deterministic) outcome
  std::size_t queries;
};

namespace detail {

// Runs one query on (|i> + |j>)/sqrt(2) (x) |1> and measures the control
// against the same superposition.
template <typename Scalar>
ParityResult<Scalar> parity_protocol(OracleInstance<Scalar>& oracle, int i, int j, const Tolerances& tol) {
  const int n = oracle.size();
  const CVector<Scalar> plus = (basis_ket<Scalar>(n, i) + basis_ket<Scalar>(n, j)) / std::sqrt(Scalar(2));
  const auto input = tensor_states(ket_state<Scalar>(oracle.control_system(), plus, tol),
                                   ket_state<Scalar>(oracle.target_system(), basis_ket<Scalar>(2, 1), tol));
  const std::size_t before = oracle.query_count();
  const auto out = oracle.apply(input);
  const std::size_t queries = oracle.query_count() - before;
  if (queries != 1) throw ConsistencyError("parity protocol: expected one query, made " + std::to_string(queries));
  const Scalar p_plus = pair(projector_effect<Scalar>(oracle.control_system(), plus, tol), marginalize(out, {0}));
  if (p_plus > Scalar(1) - Scalar(tol.eq)) return {0, p_plus, queries};
  if (p_plus < Scalar(tol.eq)) return {1, Scalar(1) - p_plus, queries};
  throw ConsistencyError("parity protocol: outcome is not deterministic (p+ = " + fmt(double(p_plus)) + ")");
}

}  // namespace detail

// f(0) xor f(1) from a single query.
template <typename Scalar>
ParityResult<Scalar> deutsch_parity(OracleInstance<Scalar>& oracle, const Tolerances& tol = kDefaultTolerances) {
  if (oracle.size() != 2) throw ValidationError("deutsch_parity: needs a two-point domain");
  return detail::parity_protocol(oracle, 0, 1, tol);
}

// f(i) xor f(j) from a single query on the levels i, j of the control.
template <typename Scalar>
ParityResult<Scalar> pairwise_parity(OracleInstance<Scalar>& oracle, int i, int j,
                                     const Tolerances& tol = kDefaultTolerances) {
  if (i < 0 || j <= i || j >= oracle.size()) {
    throw ValidationError("pairwise_parity: need 0 <= i < j < n, got (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
  }
  return detail::parity_protocol(oracle, i, j, tol);
}

// Per-branch signs (-1)^{f(i) xor f(0)} kicked back by the target |1><1|.
// Reads the composite directly and does not count as a query.
template <typename Scalar>
std::vector<int> kickback_signature(const OracleInstance<Scalar>& oracle, const Tolerances& tol = kDefaultTolerances) {
  const auto kb = extract_kickback(oracle.controlled(), ket_state<Scalar>(basis_ket<Scalar>(2, 1), tol), tol);
  std::vector<int> signs;
  for (Scalar a : kb.angles) {
    if (angular_distance(double(a), 0.0) <= tol.eq) {
      signs.push_back(1);
    } else if (angular_distance(double(a), std::numbers::pi) <= tol.eq) {
      signs.push_back(-1);
    } else {
      throw ConsistencyError("kickback_signature: angle " + detail::fmt(double(a)) + " is not 0 or pi");
    }
  }
  return signs;
}

}  // namespace interferlab

#endif  // INTERFERLAB_ORACLE_HPP
