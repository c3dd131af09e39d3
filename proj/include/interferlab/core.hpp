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

#ifndef INTERFERLAB_CORE_HPP
#define INTERFERLAB_CORE_HPP

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "interferlab/error.hpp"
#include "interferlab/linalg.hpp"
#include "interferlab/system.hpp"
#include "interferlab/tolerance.hpp"

namespace interferlab {

// Coordinates of the unit (deterministic) effect. Quantum: the identity
// operator, i.e. sqrt(d) on the I/sqrt(d) basis element of every factor.
// Classical: all ones.
template <typename Scalar = double>
Vector<Scalar> unit_coords(const SystemType& sys) {
  Vector<Scalar> acc;
  for (std::size_t k = 0; k < sys.factors().size(); ++k) {
    const int d = sys.factors()[k];
    Vector<Scalar> u;
    if (sys.is_quantum()) {
      u = Vector<Scalar>::Zero(d * d);
      u(0) = std::sqrt(Scalar(d));
    } else {
      u = Vector<Scalar>::Ones(d);
    }
    acc = k == 0 ? u : kron_vec<Scalar>(acc, u);
  }
  return acc;
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <typename Scalar>
void check_size(const SystemType& sys, Eigen::Index n, const char* what) {
  if (n != sys.vector_space_dim()) {
    throw DimensionError(std::string(what) + ": expected " +
                         std::to_string(sys.vector_space_dim()) + " coordinates for " +
                         sys.describe() + ", got " + std::to_string(n));
  }
}

}  // namespace detail

// A normalized state |s) of a system, stored as real coordinates.
template <typename Scalar = double>
class State {
 public:
  using scalar_type = Scalar;

  // Validates normalization and positivity.
  State(SystemType system, Vector<Scalar> coeffs, const Tolerances& tol = kDefaultTolerances)
      : system_(std::move(system)), coeffs_(std::move(coeffs)) {
    detail::check_size<Scalar>(system_, coeffs_.size(), "State");
    validate(tol);
  }

  // Skips validation; for linear images of states already known to be valid.
  static State trusted(SystemType system, Vector<Scalar> coeffs) {
    return State(std::move(system), std::move(coeffs), Trusted{});
  }

  const SystemType& system() const { return system_; }
  const Vector<Scalar>& coeffs() const { return coeffs_; }

  Scalar norm() const { return unit_coords<Scalar>(system_).dot(coeffs_); }

  // Operator form (quantum only).
  CMatrix<Scalar> density() const {
    if (!system_.is_quantum()) throw UnsupportedError("density(): classical state");
    return coords_to_operator<Scalar>(system_, coeffs_);
  }

  // tr(rho^2), or sum p_i^2 for classical states.
  Scalar purity() const { return coeffs_.squaredNorm(); }

  // Quantum: rank one. Classical: point mass.
  bool is_pure(const Tolerances& tol = kDefaultTolerances) const {
    if (system_.is_quantum()) return std::abs(purity() - Scalar(1)) <= Scalar(tol.psd);
    return std::abs(coeffs_.maxCoeff() - Scalar(1)) <= Scalar(tol.psd);
  }

 private:
  struct Trusted {};
  State(SystemType system, Vector<Scalar> coeffs, Trusted)
      : system_(std::move(system)), coeffs_(std::move(coeffs)) {
    detail::check_size<Scalar>(system_, coeffs_.size(), "State");
  }

  void validate(const Tolerances& tol) const {
    const Scalar n = norm();
    if (std::abs(n - Scalar(1)) > Scalar(tol.norm)) {
      throw ValidationError("state not normalized: (u|s) = " + detail::fmt(double(n)));
    }
    Scalar floor;
    if (system_.is_quantum()) {
      floor = min_hermitian_eigenvalue<Scalar>(density());
    } else {
      floor = coeffs_.minCoeff();
    }
    if (floor < -Scalar(tol.psd)) {
      throw ValidationError("state not positive: smallest eigenvalue " + detail::fmt(double(floor)));
    }
  }

  SystemType system_;
  Vector<Scalar> coeffs_;
};

// An effect (e|, stored as a real covector. Valid effects satisfy
// 0 <= (e|s) <= 1 on every state.
template <typename Scalar = double>
class Effect {
 public:
  using scalar_type = Scalar;

  Effect(SystemType system, Vector<Scalar> coeffs, const Tolerances& tol = kDefaultTolerances)
      : system_(std::move(system)), coeffs_(std::move(coeffs)) {
    detail::check_size<Scalar>(system_, coeffs_.size(), "Effect");
    validate(tol);
  }

  static Effect trusted(SystemType system, Vector<Scalar> coeffs) {
    return Effect(std::move(system), std::move(coeffs), Trusted{});
  }

  static Effect unit(const SystemType& sys) { return trusted(sys, unit_coords<Scalar>(sys)); }

  const SystemType& system() const { return system_; }
  const Vector<Scalar>& coeffs() const { return coeffs_; }

  CMatrix<Scalar> op() const {
    if (!system_.is_quantum()) throw UnsupportedError("op(): classical effect");
    return coords_to_operator<Scalar>(system_, coeffs_);
  }

 private:
  struct Trusted {};
  Effect(SystemType system, Vector<Scalar> coeffs, Trusted)
      : system_(std::move(system)), coeffs_(std::move(coeffs)) {
    detail::check_size<Scalar>(system_, coeffs_.size(), "Effect");
  }

  void validate(const Tolerances& tol) const {
    Scalar lo, hi;
    if (system_.is_quantum()) {
      const CMatrix<Scalar> e = op();
      lo = min_hermitian_eigenvalue<Scalar>(e);
      hi = max_hermitian_eigenvalue<Scalar>(e);
    } else {
      lo = coeffs_.minCoeff();
      hi = coeffs_.maxCoeff();
    }
    if (lo < -Scalar(tol.psd) || hi > Scalar(1) + Scalar(tol.psd)) {
      throw ValidationError("effect outside [0, u]: spectrum in [" + detail::fmt(double(lo)) + ", " +
                            detail::fmt(double(hi)) + "]");
    }
  }

  SystemType system_;
  Vector<Scalar> coeffs_;
};

template <typename Scalar = double>
Effect<Scalar> unit_effect(const SystemType& sys) {
  return Effect<Scalar>::unit(sys);
}

template <typename Scalar>
class Transformation;

namespace detail {
template <typename Scalar>
void validate_transformation(const Transformation<Scalar>& t, const Tolerances& tol, bool check_inverse = true);
}

// A linear map between coordinate spaces, acting on states from the left
// and on effects (as covectors) from the right.
template <typename Scalar = double>
class Transformation {
 public:
  using scalar_type = Scalar;

  // Validates unit-effect preservation and, for quantum systems, complete
  // positivity. Reversible maps must be invertible with a valid inverse.
  Transformation(SystemType in, SystemType out, Matrix<Scalar> matrix, bool reversible,
                 const Tolerances& tol = kDefaultTolerances)
      : in_(std::move(in)), out_(std::move(out)), matrix_(std::move(matrix)),
        reversible_(reversible) {
    check_shape();
    detail::validate_transformation(*this, tol);
  }

  static Transformation trusted(SystemType in, SystemType out, Matrix<Scalar> matrix,
                                bool reversible) {
    return Transformation(std::move(in), std::move(out), std::move(matrix), reversible, Trusted{});
  }

  static Transformation identity(const SystemType& sys) {
    const auto n = sys.vector_space_dim();
    return trusted(sys, sys, Matrix<Scalar>::Identity(n, n), true);
  }

  const SystemType& in_system() const { return in_; }
  const SystemType& out_system() const { return out_; }
  const Matrix<Scalar>& matrix() const { return matrix_; }
  bool reversible() const { return reversible_; }

  Transformation inverse(const Tolerances& tol = kDefaultTolerances) const {
    if (!reversible_) throw UnsupportedError("inverse(): transformation is not reversible");
    Eigen::FullPivLU<Matrix<Scalar>> lu(matrix_);
    if (!lu.isInvertible()) throw ValidationError("inverse(): matrix is singular");
    // The inverse of the inverse is this map, so only the forward checks run.
    auto inv = trusted(out_, in_, lu.inverse(), true);
    detail::validate_transformation(inv, tol, false);
    return inv;
  }

 private:
  struct Trusted {};
  Transformation(SystemType in, SystemType out, Matrix<Scalar> matrix, bool reversible, Trusted)
      : in_(std::move(in)), out_(std::move(out)), matrix_(std::move(matrix)),
        reversible_(reversible) {
    check_shape();
  }

  void check_shape() const {
    if (in_.theory() != out_.theory()) throw DimensionError("Transformation: mixed backends");
    if (matrix_.rows() != out_.vector_space_dim() || matrix_.cols() != in_.vector_space_dim()) {
      throw DimensionError("Transformation: matrix shape does not match systems");
    }
  }

  SystemType in_;
  SystemType out_;
  Matrix<Scalar> matrix_;
  bool reversible_;
};

// A measurement: effects on one system summing to the unit effect.
template <typename Scalar = double>
class Measurement {
 public:
  explicit Measurement(std::vector<Effect<Scalar>> effects,
                       const Tolerances& tol = kDefaultTolerances)
      : effects_(std::move(effects)) {
    if (effects_.empty()) throw ValidationError("measurement needs at least one effect");
    const SystemType& sys = effects_.front().system();
    Vector<Scalar> sum = Vector<Scalar>::Zero(sys.vector_space_dim());
    for (const auto& e : effects_) {
      require_same(sys, e.system(), "Measurement");
      sum += e.coeffs();
    }
    const Scalar dev = (sum - unit_coords<Scalar>(sys)).cwiseAbs().maxCoeff();
    if (dev > Scalar(tol.eq)) {
      throw ValidationError("measurement effects do not sum to the unit effect (deviation " +
                            detail::fmt(double(dev)) + ")");
    }
  }

  const std::vector<Effect<Scalar>>& effects() const { return effects_; }
  std::size_t size() const { return effects_.size(); }
  const Effect<Scalar>& operator[](std::size_t i) const { return effects_[i]; }
  const SystemType& system() const { return effects_.front().system(); }

 private:
  std::vector<Effect<Scalar>> effects_;
};

// Deviation of a state-shaped coordinate vector from another, max-norm.
template <typename Scalar>
Scalar distance(const State<Scalar>& a, const State<Scalar>& b) {
  require_same(a.system(), b.system(), "distance");
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar distance(const Transformation<Scalar>& a, const Transformation<Scalar>& b) {
  require_same(a.in_system(), b.in_system(), "distance");
  require_same(a.out_system(), b.out_system(), "distance");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar distance(const Effect<Scalar>& a, const Effect<Scalar>& b) {
  require_same(a.system(), b.system(), "distance");
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
}

// Raw pairing (e|s); not clamped.
template <typename Scalar>
Scalar pair(const Effect<Scalar>& e, const State<Scalar>& s) {
  require_same(e.system(), s.system(), "pair");
  return e.coeffs().dot(s.coeffs());
}

template <typename Scalar>
State<Scalar> apply(const Transformation<Scalar>& t, const State<Scalar>& s) {
  require_same(t.in_system(), s.system(), "apply");
  return State<Scalar>::trusted(t.out_system(), t.matrix() * s.coeffs());
}

// (e| o T, the effect pulled back through T.
template <typename Scalar>
Effect<Scalar> pullback(const Effect<Scalar>& e, const Transformation<Scalar>& t) {
  require_same(t.out_system(), e.system(), "pullback");
  return Effect<Scalar>::trusted(t.in_system(), t.matrix().transpose() * e.coeffs());
}

// second o first
template <typename Scalar>
Transformation<Scalar> compose_seq(const Transformation<Scalar>& second,
                                   const Transformation<Scalar>& first) {
  require_same(first.out_system(), second.in_system(), "compose_seq");
  return Transformation<Scalar>::trusted(first.in_system(), second.out_system(),
                                         second.matrix() * first.matrix(),
                                         first.reversible() && second.reversible());
}

template <typename Scalar>
State<Scalar> tensor_states(const State<Scalar>& a, const State<Scalar>& b) {
  return State<Scalar>::trusted(tensor(a.system(), b.system()),
                                kron_vec<Scalar>(a.coeffs(), b.coeffs()));
}

template <typename Scalar>
Effect<Scalar> tensor_effects(const Effect<Scalar>& a, const Effect<Scalar>& b) {
  return Effect<Scalar>::trusted(tensor(a.system(), b.system()),
                                 kron_vec<Scalar>(a.coeffs(), b.coeffs()));
}

template <typename Scalar>
Transformation<Scalar> tensor_transformations(const Transformation<Scalar>& a,
                                              const Transformation<Scalar>& b) {
  return Transformation<Scalar>::trusted(tensor(a.in_system(), b.in_system()),
                                         tensor(a.out_system(), b.out_system()),
                                         kron(a.matrix(), b.matrix()),
                                         a.reversible() && b.reversible());
}

namespace detail {

// Contract the coordinate vector of a composite against per-factor
// covectors; factors with an empty covector are kept.
template <typename Scalar>
Vector<Scalar> contract_factors(const SystemType& sys, const Vector<Scalar>& coeffs,
                                const std::vector<Vector<Scalar>>& covectors) {
  const std::size_t nf = sys.factors().size();
  std::vector<Eigen::Index> sizes(nf);
  for (std::size_t k = 0; k < nf; ++k) sizes[k] = sys.factor_vector_space_dim(k);
  Eigen::Index out_size = 1;
  for (std::size_t k = 0; k < nf; ++k) {
    if (covectors[k].size() == 0) out_size *= sizes[k];
  }
  Vector<Scalar> out = Vector<Scalar>::Zero(out_size);
  std::vector<Eigen::Index> idx(nf, 0);
  for (Eigen::Index flat = 0; flat < coeffs.size(); ++flat) {
    Scalar w = coeffs(flat);
    Eigen::Index kept = 0;
    for (std::size_t k = 0; k < nf; ++k) {
      if (covectors[k].size() == 0) {
        kept = kept * sizes[k] + idx[k];
      } else {
        w *= covectors[k](idx[k]);
      }
    }
    out(kept) += w;
    for (std::size_t k = nf; k-- > 0;) {
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
    }
  }
  return out;
}

inline SystemType kept_system(const SystemType& sys, const std::vector<bool>& keep) {
  std::vector<int> f;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k]) f.push_back(sys.factors()[k]);
  }
  return {sys.theory(), std::move(f)};
}

}  // namespace detail

// Discard every factor not listed in `keep` by applying its unit effect.
template <typename Scalar>
State<Scalar> marginalize(const State<Scalar>& s, const std::vector<std::size_t>& keep) {
  const SystemType& sys = s.system();
  const std::size_t nf = sys.factors().size();
  if (keep.empty()) throw DimensionError("marginalize: nothing to keep");
  std::vector<bool> kept(nf, false);
  for (std::size_t k : keep) {
    if (k >= nf) throw DimensionError("marginalize: factor index " + std::to_string(k) +
                                      " out of range for " + sys.describe());
    if (kept[k]) throw DimensionError("marginalize: duplicate factor index");
    kept[k] = true;
  }
  for (std::size_t i = 1; i < keep.size(); ++i) {
    if (keep[i] < keep[i - 1]) throw DimensionError("marginalize: keep must be ascending");
  }
  std::vector<Vector<Scalar>> cov(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    if (!kept[k]) cov[k] = unit_coords<Scalar>(sys.factor(k));
  }
  return State<Scalar>::trusted(detail::kept_system(sys, kept),
                                detail::contract_factors(sys, s.coeffs(), cov));
}

// Unnormalized state left on the remaining factors after an effect on one
// factor of a composite fires: (e|_k applied to s. Its norm is the
// probability of the effect.
template <typename Scalar>
struct ConditionalState {
  SystemType system;
  Vector<Scalar> coeffs;
};

template <typename Scalar>
ConditionalState<Scalar> apply_effect_on_factor(const Effect<Scalar>& e, std::size_t factor,
                                                const State<Scalar>& s) {
  const SystemType& sys = s.system();
  if (!sys.is_composite()) throw DimensionError("apply_effect_on_factor: state is not composite");
  if (factor >= sys.factors().size()) throw DimensionError("apply_effect_on_factor: bad factor");
  require_same(e.system(), sys.factor(factor), "apply_effect_on_factor");
  std::vector<Vector<Scalar>> cov(sys.factors().size());
  cov[factor] = e.coeffs();
  std::vector<bool> kept(sys.factors().size(), true);
  kept[factor] = false;
  return {detail::kept_system(sys, kept), detail::contract_factors(sys, s.coeffs(), cov)};
}

// Uniform mixture; the unique state fixed by every reversible map.
template <typename Scalar = double>
State<Scalar> maximally_mixed(const SystemType& sys) {
  return State<Scalar>::trusted(sys, unit_coords<Scalar>(sys) / Scalar(sys.dim()));
}

namespace detail {

template <typename Scalar>
void validate_transformation(const Transformation<Scalar>& t, const Tolerances& tol, bool check_inverse) {
  const Vector<Scalar> lhs = t.matrix().transpose() * unit_coords<Scalar>(t.out_system());
  const Scalar dev = (lhs - unit_coords<Scalar>(t.in_system())).cwiseAbs().maxCoeff();
  if (dev > Scalar(tol.eq)) {
    throw ValidationError("transformation does not preserve the unit effect (deviation " +
                          fmt(double(dev)) + ")");
  }
  if (t.in_system().is_quantum()) {
    // Choi operator sum_jk |j><k| (x) T(|j><k|) must be positive. With V the
    // column-stacked basis, S = V_out M V_in^dagger acts on vec(X).
    const int din = t.in_system().dim();
    const int dout = t.out_system().dim();
    auto stacked = [](const SystemType& sys) {
      const auto basis = operator_basis<Scalar>(sys);
      const Eigen::Index d = sys.dim();
      CMatrix<Scalar> v(d * d, static_cast<Eigen::Index>(basis.size()));
      for (std::size_t a = 0; a < basis.size(); ++a) {
        v.col(static_cast<Eigen::Index>(a)) = basis[a].reshaped();
      }
      return v;
    };
    const CMatrix<Scalar> vin = stacked(t.in_system());
    const CMatrix<Scalar> s = stacked(t.out_system()) * t.matrix().template cast<std::complex<Scalar>>() * vin.adjoint();
    CMatrix<Scalar> choi(din * dout, din * dout);
    for (int j = 0; j < din; ++j) {
      for (int k = 0; k < din; ++k) {
        choi.block(j * dout, k * dout, dout, dout) = s.col(k * din + j).reshaped(dout, dout);
      }
    }
    const Scalar floor = min_hermitian_eigenvalue<Scalar>(choi);
    if (floor < -Scalar(tol.psd)) {
      throw ValidationError("transformation is not completely positive (Choi eigenvalue " +
                            fmt(double(floor)) + ")");
    }
  } else if (t.matrix().size() > 0 && t.matrix().minCoeff() < -Scalar(tol.psd)) {
    throw ValidationError("classical transformation has a negative entry");
  }
  if (t.reversible() && check_inverse) {
    Eigen::FullPivLU<Matrix<Scalar>> lu(t.matrix());
    if (t.matrix().rows() != t.matrix().cols() || !lu.isInvertible()) {
      throw ValidationError("transformation marked reversible is not invertible");
    }
    const auto inv = Transformation<Scalar>::trusted(t.out_system(), t.in_system(),
                                                     lu.inverse(), false);
    validate_transformation(inv, tol);
  }
}

}  // namespace detail

}  // namespace interferlab

#endif  // INTERFERLAB_CORE_HPP
