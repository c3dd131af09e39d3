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

#ifndef INTERFERLAB_RANDOM_HPP
#define INTERFERLAB_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "interferlab/linalg.hpp"

namespace interferlab {

using Rng = std::mt19937_64;

// Derive an independent stream for trial `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t(words[0]) << 32) | words[1];
}

template <typename Scalar = double>
CMatrix<Scalar> ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix<Scalar> g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = std::complex<Scalar>(Scalar(re), Scalar(im)) / std::sqrt(Scalar(2));
    }
  }
  return g;
}

// Haar-distributed unitary: QR of a complex Gaussian matrix with the
// phases of diag(R) divided out.
template <typename Scalar = double>
CMatrix<Scalar> haar_unitary(int d, Rng& rng) {
  const CMatrix<Scalar> g = ginibre<Scalar>(d, d, rng);
  Eigen::HouseholderQR<CMatrix<Scalar>> qr(g);
  CMatrix<Scalar> q = qr.householderQ() * CMatrix<Scalar>::Identity(d, d);
  const CMatrix<Scalar> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Scalar mag = std::abs(r(j, j));
    if (mag > Scalar(0)) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

// Uniformly distributed unit vector in C^d.
template <typename Scalar = double>
CVector<Scalar> haar_ket(int d, Rng& rng) {
  CVector<Scalar> v = ginibre<Scalar>(d, 1, rng);
  return v / v.norm();
}

template <typename Scalar = double>
Scalar uniform_angle(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return Scalar(u(rng));
}

}  // namespace interferlab

#endif  // INTERFERLAB_RANDOM_HPP
