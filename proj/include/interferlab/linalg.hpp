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

#ifndef INTERFERLAB_LINALG_HPP
#define INTERFERLAB_LINALG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "interferlab/system.hpp"

namespace interferlab {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived1, typename Derived2>
auto kron(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using S = typename Derived1::Scalar;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Scalar>
Vector<Scalar> kron_vec(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  Vector<Scalar> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Generalized Gell-Mann basis of the d x d Hermitian matrices, orthonormal
// under the Hilbert-Schmidt inner product. Element 0 is I/sqrt(d); then the
// symmetric and antisymmetric off-diagonal pairs for j < k; then the
// traceless diagonal elements.
template <typename Scalar>
std::vector<CMatrix<Scalar>> gell_mann_basis(int d) {
  using C = std::complex<Scalar>;
  using std::sqrt;
  std::vector<CMatrix<Scalar>> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  basis.push_back(CMatrix<Scalar>::Identity(d, d) / C(sqrt(Scalar(d))));
  const Scalar r = Scalar(1) / sqrt(Scalar(2));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix<Scalar> sym = CMatrix<Scalar>::Zero(d, d);
      sym(j, k) = sym(k, j) = C(r);
      basis.push_back(std::move(sym));
      CMatrix<Scalar> anti = CMatrix<Scalar>::Zero(d, d);
      anti(j, k) = C(0, -r);
      anti(k, j) = C(0, r);
      basis.push_back(std::move(anti));
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix<Scalar> diag = CMatrix<Scalar>::Zero(d, d);
    const Scalar w = Scalar(1) / sqrt(Scalar(l) * Scalar(l + 1));
    for (int j = 0; j < l; ++j) diag(j, j) = C(w);
    diag(l, l) = C(-Scalar(l) * w);
    basis.push_back(std::move(diag));
  }
  return basis;
}

// Operator basis of a (possibly composite) quantum system: Kronecker
// products of the factor bases, first factor most significant.
template <typename Scalar>
std::vector<CMatrix<Scalar>> operator_basis(const SystemType& sys) {
  std::vector<CMatrix<Scalar>> acc = gell_mann_basis<Scalar>(sys.factors().front());
  for (std::size_t k = 1; k < sys.factors().size(); ++k) {
    const auto next = gell_mann_basis<Scalar>(sys.factors()[k]);
    std::vector<CMatrix<Scalar>> out;
    out.reserve(acc.size() * next.size());
    for (const auto& a : acc) {
      for (const auto& b : next) out.push_back(kron(a, b));
    }
    acc = std::move(out);
  }
  return acc;
}

// tr(A B) without forming the product.
template <typename Scalar>
std::complex<Scalar> trace_product(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b) {
  return (a.array() * b.transpose().array()).sum();
}

// Real coordinates of a Hermitian operator: c_a = tr(B_a X).
template <typename Scalar>
Vector<Scalar> operator_to_coords(const std::vector<CMatrix<Scalar>>& basis,
                                  const CMatrix<Scalar>& x) {
  Vector<Scalar> c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    c(static_cast<Eigen::Index>(a)) = std::real(trace_product(basis[a], x));
  }
  return c;
}

template <typename Scalar>
CMatrix<Scalar> coords_to_operator(const std::vector<CMatrix<Scalar>>& basis,
                                   const Vector<Scalar>& c) {
  const auto d = basis.front().rows();
  CMatrix<Scalar> x = CMatrix<Scalar>::Zero(d, d);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Scalar w = c(static_cast<Eigen::Index>(a));
    if (w != Scalar(0)) x += std::complex<Scalar>(w) * basis[a];
  }
  return x;
}

template <typename Scalar>
Vector<Scalar> operator_to_coords(const SystemType& sys, const CMatrix<Scalar>& x) {
  return operator_to_coords(operator_basis<Scalar>(sys), x);
}

template <typename Scalar>
CMatrix<Scalar> coords_to_operator(const SystemType& sys, const Vector<Scalar>& c) {
  return coords_to_operator(operator_basis<Scalar>(sys), c);
}

template <typename Scalar>
Scalar min_hermitian_eigenvalue(const CMatrix<Scalar>& h) {
  const CMatrix<Scalar> sym = (h + h.adjoint()) / std::complex<Scalar>(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <typename Scalar>
Scalar max_hermitian_eigenvalue(const CMatrix<Scalar>& h) {
  const CMatrix<Scalar> sym = (h + h.adjoint()) / std::complex<Scalar>(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Deviation of U from unitarity, max |U^dagger U - I|.
template <typename Derived>
auto unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
  using C = typename Derived::Scalar;
  const auto n = u.rows();
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> g = u.adjoint() * u;
  g -= Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n);
  return g.cwiseAbs().maxCoeff();
}

}  // namespace interferlab

#endif  // INTERFERLAB_LINALG_HPP
