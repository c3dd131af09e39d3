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

#ifndef INTERFERLAB_QUANTUM_HPP
#define INTERFERLAB_QUANTUM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "interferlab/core.hpp"
#include "interferlab/random.hpp"

namespace interferlab {

// Quantum backend constructors. Complex amplitudes and unitaries only
// appear here; everything they build is real-linear.

enum class Purity { Pure, Mixed };

namespace detail {

template <typename Scalar>
void require_normalized(const CVector<Scalar>& amps, const Tolerances& tol, const char* what) {
  const Scalar n = amps.norm();
  if (std::abs(n - Scalar(1)) > Scalar(tol.norm)) {
    throw ValidationError(std::string(what) + ": amplitudes not normalized (norm " +
                          fmt(double(n)) + ")");
  }
}

template <typename Scalar>
void require_quantum(const SystemType& sys, const char* what) {
  if (!sys.is_quantum()) throw UnsupportedError(std::string(what) + ": requires a quantum system");
}

}  // namespace detail

template <typename Scalar>
State<Scalar> density_state(const SystemType& sys, const CMatrix<Scalar>& rho,
                            const Tolerances& tol = kDefaultTolerances) {
  detail::require_quantum<Scalar>(sys, "density_state");
  if (rho.rows() != sys.dim() || rho.cols() != sys.dim()) {
    throw DimensionError("density_state: operator shape does not match " + sys.describe());
  }
  return State<Scalar>(sys, operator_to_coords<Scalar>(sys, rho), tol);
}

template <typename Scalar>
State<Scalar> ket_state(const SystemType& sys, const CVector<Scalar>& amps,
                        const Tolerances& tol = kDefaultTolerances) {
  detail::require_normalized(amps, tol, "ket_state");
  return density_state<Scalar>(sys, amps * amps.adjoint(), tol);
}

template <typename Scalar>
State<Scalar> ket_state(const CVector<Scalar>& amps, const Tolerances& tol = kDefaultTolerances) {
  return ket_state<Scalar>(SystemType::quantum(static_cast<int>(amps.size())), amps, tol);
}

template <typename Scalar>
Effect<Scalar> operator_effect(const SystemType& sys, const CMatrix<Scalar>& e,
                               const Tolerances& tol = kDefaultTolerances) {
  detail::require_quantum<Scalar>(sys, "operator_effect");
  if (e.rows() != sys.dim() || e.cols() != sys.dim()) {
    throw DimensionError("operator_effect: operator shape does not match " + sys.describe());
  }
  return Effect<Scalar>(sys, operator_to_coords<Scalar>(sys, e), tol);
}

template <typename Scalar>
Effect<Scalar> projector_effect(const SystemType& sys, const CVector<Scalar>& amps,
                                const Tolerances& tol = kDefaultTolerances) {
  detail::require_normalized(amps, tol, "projector_effect");
  return operator_effect<Scalar>(sys, amps * amps.adjoint(), tol);
}

template <typename Scalar>
Effect<Scalar> projector_effect(const CVector<Scalar>& amps,
                                const Tolerances& tol = kDefaultTolerances) {
  return projector_effect<Scalar>(SystemType::quantum(static_cast<int>(amps.size())), amps, tol);
}

// Computational basis ket |i> in dimension d.
template <typename Scalar = double>
CVector<Scalar> basis_ket(int d, int i) {
  CVector<Scalar> v = CVector<Scalar>::Zero(d);
  v(i) = Scalar(1);
  return v;
}

// (|0> + e^{i phi}|1> + ...)/sqrt(d) style uniform superposition over the given kets.
template <typename Scalar = double>
CVector<Scalar> uniform_superposition(const std::vector<CVector<Scalar>>& kets) {
  CVector<Scalar> v = CVector<Scalar>::Zero(kets.front().size());
  for (const auto& k : kets) v += k;
  return v / v.norm();
}

// Superoperator of X -> U X U^dagger in the real coordinates of `sys`.
template <typename Scalar>
Transformation<Scalar> unitary_channel(const SystemType& sys, const CMatrix<Scalar>& u,
                                       const Tolerances& tol = kDefaultTolerances) {
  detail::require_quantum<Scalar>(sys, "unitary_channel");
  if (u.rows() != sys.dim() || u.cols() != sys.dim()) {
    throw DimensionError("unitary_channel: matrix shape does not match " + sys.describe());
  }
  const Scalar defect = unitarity_defect(u);
  if (defect > Scalar(tol.norm)) {
    throw ValidationError("unitary_channel: matrix is not unitary (defect " +
                          detail::fmt(double(defect)) + ")");
  }
  const auto basis = operator_basis<Scalar>(sys);
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix<Scalar> m(n, n);
  const CMatrix<Scalar> ud = u.adjoint();
  for (Eigen::Index b = 0; b < n; ++b) {
    const CMatrix<Scalar> image = u * basis[static_cast<std::size_t>(b)] * ud;
    m.col(b) = operator_to_coords<Scalar>(basis, image);
  }
  return Transformation<Scalar>::trusted(sys, sys, std::move(m), true);
}

template <typename Scalar>
Transformation<Scalar> unitary_channel(const CMatrix<Scalar>& u,
                                       const Tolerances& tol = kDefaultTolerances) {
  return unitary_channel<Scalar>(SystemType::quantum(static_cast<int>(u.rows())), u, tol);
}

template <typename Scalar = double>
CMatrix<Scalar> phase_matrix(const std::vector<Scalar>& angles) {
  const int d = static_cast<int>(angles.size());
  CMatrix<Scalar> u = CMatrix<Scalar>::Zero(d, d);
  for (int i = 0; i < d; ++i) u(i, i) = std::polar(Scalar(1), angles[static_cast<std::size_t>(i)]);
  return u;
}

// Conjugation by diag(e^{i theta_0}, ..., e^{i theta_{d-1}}).
template <typename Scalar = double>
Transformation<Scalar> phase_unitary(const std::vector<Scalar>& angles) {
  if (angles.empty()) throw DimensionError("phase_unitary: no angles");
  return unitary_channel<Scalar>(phase_matrix<Scalar>(angles));
}

template <typename Scalar = double>
CMatrix<Scalar> random_unitary_matrix(int d, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary<Scalar>(d, rng);
}

// Haar-random unitary channel, deterministic per seed.
template <typename Scalar = double>
Transformation<Scalar> random_unitary(const SystemType& sys, std::uint64_t seed) {
  return unitary_channel<Scalar>(sys, random_unitary_matrix<Scalar>(sys.dim(), seed));
}

template <typename Scalar = double>
State<Scalar> random_state(const SystemType& sys, std::uint64_t seed, Purity purity) {
  Rng rng(seed);
  if (sys.is_quantum()) {
    if (purity == Purity::Pure) {
      const CVector<Scalar> ket = haar_ket<Scalar>(sys.dim(), rng);
      return State<Scalar>::trusted(sys,
                                    operator_to_coords<Scalar>(sys, CMatrix<Scalar>(ket * ket.adjoint())));
    }
    const CMatrix<Scalar> g = ginibre<Scalar>(sys.dim(), sys.dim(), rng);
    CMatrix<Scalar> rho = g * g.adjoint();
    rho /= rho.trace();
    return State<Scalar>::trusted(sys, operator_to_coords<Scalar>(sys, rho));
  }
  Vector<Scalar> p(sys.dim());
  if (purity == Purity::Pure) {
    std::uniform_int_distribution<int> pick(0, sys.dim() - 1);
    p.setZero();
    p(pick(rng)) = Scalar(1);
  } else {
    std::exponential_distribution<double> expo(1.0);
    for (int i = 0; i < sys.dim(); ++i) p(i) = Scalar(expo(rng));
    p /= p.sum();
  }
  return State<Scalar>::trusted(sys, std::move(p));
}

// Action of a quantum transformation on an arbitrary complex operator,
// extended linearly from its action on Hermitian operators.
template <typename Scalar>
CMatrix<Scalar> apply_to_operator(const Transformation<Scalar>& t, const CMatrix<Scalar>& x) {
  detail::require_quantum<Scalar>(t.in_system(), "apply_to_operator");
  using C = std::complex<Scalar>;
  const auto in_basis = operator_basis<Scalar>(t.in_system());
  const auto out_basis = operator_basis<Scalar>(t.out_system());
  auto map = [&](const CMatrix<Scalar>& h) {
    return coords_to_operator<Scalar>(out_basis,
                                      t.matrix() * operator_to_coords<Scalar>(in_basis, h));
  };
  const CMatrix<Scalar> h1 = (x + x.adjoint()) / C(2);
  const CMatrix<Scalar> h2 = (x - x.adjoint()) / C(0, 2);
  return map(h1) + C(0, 1) * map(h2);
}

// Unit vector spanning the support of a pure quantum state. The phase is
// fixed so that the largest-magnitude component is real and positive.
template <typename Scalar>
CVector<Scalar> ket_of(const State<Scalar>& s, const Tolerances& tol = kDefaultTolerances) {
  detail::require_quantum<Scalar>(s.system(), "ket_of");
  if (!s.is_pure(tol)) {
    throw ValidationError("ket_of: state is not pure (purity " + detail::fmt(double(s.purity())) + ")");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(s.density());
  const auto n = es.eigenvalues().size();
  CVector<Scalar> v = es.eigenvectors().col(n - 1);
  Eigen::Index k;
  v.cwiseAbs().maxCoeff(&k);
  v *= std::conj(v(k)) / std::abs(v(k));
  return v;
}

// Normalized maximally entangled state on sys (x) sys; its marginal is the
// maximally mixed state. Classical: the perfectly correlated uniform state.
template <typename Scalar = double>
State<Scalar> dynamically_faithful_state(const SystemType& sys) {
  if (sys.is_composite()) throw DimensionError("dynamically_faithful_state: expects a single system");
  const int d = sys.dim();
  const SystemType both = tensor(sys, sys);
  if (sys.is_quantum()) {
    CVector<Scalar> phi = CVector<Scalar>::Zero(d * d);
    for (int i = 0; i < d; ++i) phi(i * d + i) = Scalar(1);
    phi /= std::sqrt(Scalar(d));
    return State<Scalar>::trusted(both, operator_to_coords<Scalar>(both, CMatrix<Scalar>(phi * phi.adjoint())));
  }
  Vector<Scalar> p = Vector<Scalar>::Zero(d * d);
  for (int i = 0; i < d; ++i) p(i * d + i) = Scalar(1) / Scalar(d);
  return State<Scalar>::trusted(both, std::move(p));
}

// Common unitaries.
template <typename Scalar = double>
CMatrix<Scalar> pauli_x() {
  CMatrix<Scalar> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
CMatrix<Scalar> pauli_z() {
  CMatrix<Scalar> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

template <typename Scalar = double>
CMatrix<Scalar> hadamard() {
  CMatrix<Scalar> m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(Scalar(2));
}

// SWAP: C^da (x) C^db -> C^db (x) C^da, |i j> -> |j i>.
template <typename Scalar = double>
CMatrix<Scalar> swap_unitary(int da, int db) {
  CMatrix<Scalar> m = CMatrix<Scalar>::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) m(j * da + i, i * db + j) = Scalar(1);
  }
  return m;
}

}  // namespace interferlab

#endif  // INTERFERLAB_QUANTUM_HPP
