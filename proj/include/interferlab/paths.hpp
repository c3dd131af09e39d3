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

#ifndef INTERFERLAB_PATHS_HPP
#define INTERFERLAB_PATHS_HPP

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interferlab/classical.hpp"
#include "interferlab/core.hpp"
#include "interferlab/quantum.hpp"
#include "interferlab/random.hpp"

namespace interferlab {

// A set of path indices of an n-path experiment, stored as a bit mask.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(int n, std::uint32_t mask) : n_(n), mask_(mask) {
    if (n < 0 || n > 31) throw DimensionError("SupportSet: at most 31 paths");
    if (mask >> n) throw DimensionError("SupportSet: index outside the path range");
  }

  static SupportSet of(int n, const std::vector<int>& indices) {
    std::uint32_t m = 0;
    for (int i : indices) {
      if (i < 0 || i >= n) throw DimensionError("SupportSet: index " + std::to_string(i) + " out of range");
      m |= 1u << i;
    }
    return {n, m};
  }
  static SupportSet all(int n) { return {n, n == 0 ? 0u : (~0u >> (32 - n))}; }

  int paths() const { return n_; }
  std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int i) const { return (mask_ >> i) & 1u; }
  bool is_subset_of(const SupportSet& o) const { return (mask_ & ~o.mask_) == 0; }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i) {
      if (contains(i)) out.push_back(i);
    }
    return out;
  }

  std::string describe() const {
    std::string s = "{";
    bool first = true;
    for (int i : indices()) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;
  friend auto operator<=>(const SupportSet& a, const SupportSet& b) {
    return std::pair(a.n_, a.mask_) <=> std::pair(b.n_, b.mask_);
  }

 private:
  int n_ = 0;
  std::uint32_t mask_ = 0;
};

// Nonempty subsets of {0..n-1} with at most max_size elements, by size then mask.
inline std::vector<SupportSet> subsets_up_to(int n, int max_size) {
  std::vector<SupportSet> out;
  for (int k = 1; k <= std::min(n, max_size); ++k) {
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      if (std::popcount(m) == k) out.emplace_back(n, m);
    }
  }
  return out;
}

inline std::vector<SupportSet> proper_nonempty_subsets(int n) { return subsets_up_to(n, n - 1); }

template <typename Scalar = double>
struct Path {
  State<Scalar> state;
  Effect<Scalar> effect;
};

// n mutually disjoint rank-one paths whose effects sum to the unit effect.
template <typename Scalar = double>
class PathExperiment {
 public:
  PathExperiment(std::vector<Path<Scalar>> paths, Scalar epsilon_support,
                 const Tolerances& tol = kDefaultTolerances)
      : paths_(std::move(paths)), epsilon_support_(epsilon_support) {
    validate(tol);
    if (system().is_quantum()) {
      for (const auto& p : paths_) kets_.push_back(ket_of(p.state, tol));
    } else {
      for (const auto& p : paths_) {
        Eigen::Index k;
        p.state.coeffs().maxCoeff(&k);
        outcomes_.push_back(static_cast<int>(k));
      }
    }
  }

  int size() const { return static_cast<int>(paths_.size()); }
  const std::vector<Path<Scalar>>& paths() const { return paths_; }
  const Path<Scalar>& operator[](int i) const { return paths_[static_cast<std::size_t>(i)]; }
  const SystemType& system() const { return paths_.front().state.system(); }
  Scalar epsilon_support() const { return epsilon_support_; }

  // Quantum: unit vectors spanning each path.
  const std::vector<CVector<Scalar>>& kets() const {
    if (!system().is_quantum()) throw UnsupportedError("kets(): classical experiment");
    return kets_;
  }
  // Classical: the outcome each path occupies.
  const std::vector<int>& outcomes() const {
    if (system().is_quantum()) throw UnsupportedError("outcomes(): quantum experiment");
    return outcomes_;
  }

  // Projector onto the span of the paths in I (quantum).
  CMatrix<Scalar> projector(const SupportSet& subset) const {
    const int d = system().dim();
    CMatrix<Scalar> p = CMatrix<Scalar>::Zero(d, d);
    for (int i : subset.indices()) p += kets()[static_cast<std::size_t>(i)] * kets()[static_cast<std::size_t>(i)].adjoint();
    return p;
  }

 private:
  void validate(const Tolerances& tol) const {
    if (paths_.empty()) throw ValidationError("path experiment needs at least one path");
    if (paths_.size() > 31) throw UnsupportedError("path experiment: at most 31 paths");
    const SystemType& sys = paths_.front().state.system();
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      require_same(sys, paths_[i].state.system(), "path experiment");
      require_same(sys, paths_[i].effect.system(), "path experiment");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(paths_.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Scalar p = pair(paths_[std::size_t(i)].effect, paths_[std::size_t(j)].state);
        const Scalar want = i == j ? Scalar(1) : Scalar(0);
        if (std::abs(p - want) > Scalar(tol.eq)) {
          if (i == j) {
            throw ValidationError("path " + std::to_string(i) + ": (e|s) = " + detail::fmt(double(p)) +
                                  ", expected 1");
          }
          throw ValidationError("paths " + std::to_string(i) + " and " + std::to_string(j) +
                                " are not disjoint: (e_" + std::to_string(i) + "|s_" +
                                std::to_string(j) + ") = " + detail::fmt(double(p)));
        }
      }
    }
    Vector<Scalar> sum = Vector<Scalar>::Zero(sys.vector_space_dim());
    for (const auto& p : paths_) sum += p.effect.coeffs();
    const Scalar dev = (sum - unit_coords<Scalar>(sys)).norm();
    if (dev > Scalar(tol.eq)) {
      throw ValidationError("path effects do not sum to the unit effect: |sum e_i - u| = " +
                            detail::fmt(double(dev)));
    }
    // Only rank-one paths: pure states, and effects of unit trace (which
    // together with (e|s) = 1 and e <= u forces e = |psi><psi|).
    const Vector<Scalar> u = unit_coords<Scalar>(sys);
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      const Scalar trace = paths_[i].effect.coeffs().dot(u);
      if (!paths_[i].state.is_pure(tol) || std::abs(trace - Scalar(1)) > Scalar(tol.eq)) {
        throw UnsupportedError("path " + std::to_string(i) + " is not rank one");
      }
    }
  }

  std::vector<Path<Scalar>> paths_;
  Scalar epsilon_support_;
  std::vector<CVector<Scalar>> kets_;
  std::vector<int> outcomes_;
};

template <typename Scalar>
PathExperiment<Scalar> make_experiment(std::vector<Path<Scalar>> paths,
                                       Scalar epsilon_support = Scalar(kDefaultTolerances.eq),
                                       const Tolerances& tol = kDefaultTolerances) {
  return PathExperiment<Scalar>(std::move(paths), epsilon_support, tol);
}

// Computational-basis paths: (|i><i|, |i><i|) or (delta_i, indicator_i).
template <typename Scalar = double>
PathExperiment<Scalar> basis_experiment(const SystemType& sys,
                                        Scalar epsilon_support = Scalar(kDefaultTolerances.eq)) {
  std::vector<Path<Scalar>> paths;
  const int d = sys.dim();
  for (int i = 0; i < d; ++i) {
    if (sys.is_quantum()) {
      paths.push_back({ket_state<Scalar>(sys, basis_ket<Scalar>(d, i)),
                       projector_effect<Scalar>(sys, basis_ket<Scalar>(d, i))});
    } else {
      paths.push_back({point_mass<Scalar>(d, i), indicator_effect<Scalar>(d, i)});
    }
  }
  return make_experiment(std::move(paths), epsilon_support);
}

template <typename Scalar>
SupportSet support_of_state(const State<Scalar>& s, const PathExperiment<Scalar>& p) {
  require_same(s.system(), p.system(), "support_of_state");
  std::uint32_t m = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (pair(p[i].effect, s) > p.epsilon_support()) m |= 1u << i;
  }
  return {p.size(), m};
}

template <typename Scalar>
SupportSet support_of_effect(const Effect<Scalar>& e, const PathExperiment<Scalar>& p) {
  require_same(e.system(), p.system(), "support_of_effect");
  std::uint32_t m = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (pair(e, p[i].state) > p.epsilon_support()) m |= 1u << i;
  }
  return {p.size(), m};
}

// Membership in E_I: the support is exactly I.
template <typename Scalar>
bool in_E_I(const Effect<Scalar>& e, const PathExperiment<Scalar>& p, const SupportSet& subset) {
  return support_of_effect(e, p) == subset;
}

template <typename Scalar>
bool in_Omega_I(const State<Scalar>& s, const PathExperiment<Scalar>& p, const SupportSet& subset) {
  return support_of_state(s, p) == subset;
}

// True iff s has support on at least two paths and is not a mixture of
// single-path states. For rank-one quantum paths this is nonzero coherence
// <psi_i|rho|psi_j> between two distinct paths. Classical states are always
// mixtures.
template <typename Scalar>
bool is_superposition(const State<Scalar>& s, const PathExperiment<Scalar>& p,
                      const Tolerances& tol = kDefaultTolerances) {
  if (support_of_state(s, p).size() < 2) return false;
  if (!s.system().is_quantum()) return false;
  const CMatrix<Scalar> rho = s.density();
  const auto& kets = p.kets();
  for (std::size_t i = 0; i < kets.size(); ++i) {
    for (std::size_t j = i + 1; j < kets.size(); ++j) {
      const std::complex<Scalar> c = (kets[i].adjoint() * rho * kets[j])(0, 0);
      if (std::abs(c) > Scalar(tol.eq)) return true;
    }
  }
  return false;
}

// Membership in the phase group: T reversible and (e_i| o T = (e_i| for all paths.
template <typename Scalar>
bool is_phase(const Transformation<Scalar>& t, const PathExperiment<Scalar>& p,
              const Tolerances& tol = kDefaultTolerances) {
  require_same(t.in_system(), p.system(), "is_phase");
  require_same(t.out_system(), p.system(), "is_phase");
  if (!t.reversible()) return false;
  for (const auto& path : p.paths()) {
    if (distance(pullback(path.effect, t), path.effect) > Scalar(tol.eq)) return false;
  }
  return true;
}

namespace detail {

template <typename Scalar>
void require_phase(const Transformation<Scalar>& t, const PathExperiment<Scalar>& p,
                   const Tolerances& tol, const char* what) {
  if (!is_phase(t, p, tol)) throw ValidationError(std::string(what) + ": not a phase transformation");
}

// <psi_i| T(|psi_i><psi_j|) |psi_j>; equals e^{i(theta_i - theta_j)} for the
// phase diag(e^{i theta}) in the path basis.
template <typename Scalar>
std::complex<Scalar> relative_phase_factor(const Transformation<Scalar>& t,
                                           const PathExperiment<Scalar>& p, int i, int j) {
  const auto& ki = p.kets()[static_cast<std::size_t>(i)];
  const auto& kj = p.kets()[static_cast<std::size_t>(j)];
  const CMatrix<Scalar> image = apply_to_operator(t, CMatrix<Scalar>(ki * kj.adjoint()));
  return (ki.adjoint() * image * kj)(0, 0);
}

template <typename Scalar>
Scalar wrap_angle(Scalar a) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  a = std::fmod(a, two_pi);
  if (a < Scalar(0)) a += two_pi;
  if (two_pi - a < Scalar(1e-12)) a = Scalar(0);
  return a;
}

}  // namespace detail

// Angles of a quantum phase in the path basis, gauge-fixed so theta_0 = 0,
// each in [0, 2 pi).
template <typename Scalar>
std::vector<Scalar> phase_angles(const Transformation<Scalar>& t, const PathExperiment<Scalar>& p,
                                 const Tolerances& tol = kDefaultTolerances) {
  detail::require_phase(t, p, tol, "phase_angles");
  if (!p.system().is_quantum()) throw UnsupportedError("phase_angles: classical experiment");
  std::vector<Scalar> angles(static_cast<std::size_t>(p.size()), Scalar(0));
  for (int j = 1; j < p.size(); ++j) {
    angles[static_cast<std::size_t>(j)] =
        detail::wrap_angle(-std::arg(detail::relative_phase_factor(t, p, 0, j)));
  }
  return angles;
}

// The phase sum_i e^{i theta_i} |psi_i><psi_i| on a quantum path experiment.
template <typename Scalar>
Transformation<Scalar> path_phase(const PathExperiment<Scalar>& p, const std::vector<Scalar>& angles) {
  if (!p.system().is_quantum()) throw UnsupportedError("path_phase: classical experiments have no nontrivial phases");
  if (static_cast<int>(angles.size()) != p.size()) throw DimensionError("path_phase: one angle per path");
  const int d = p.system().dim();
  CMatrix<Scalar> u = CMatrix<Scalar>::Zero(d, d);
  for (int i = 0; i < p.size(); ++i) {
    const auto& k = p.kets()[static_cast<std::size_t>(i)];
    u += std::polar(Scalar(1), angles[static_cast<std::size_t>(i)]) * k * k.adjoint();
  }
  return unitary_channel<Scalar>(p.system(), u);
}

// T fixes every effect with support on at most n paths. Quantum rank-one
// paths: for n >= 2 this holds iff every relative phase vanishes, since the
// effects supported on {i, j} include coherences |psi_i><psi_j| + h.c.;
// for n <= 1 every phase qualifies. Classical: effects supported on I are
// spanned by the indicators of I.
template <typename Scalar>
bool is_n_undetectable(const Transformation<Scalar>& t, const PathExperiment<Scalar>& p, int n,
                       const Tolerances& tol = kDefaultTolerances) {
  detail::require_phase(t, p, tol, "is_n_undetectable");
  if (n <= 1) return true;
  if (p.system().is_quantum()) {
    for (int i = 0; i < p.size(); ++i) {
      for (int j = i + 1; j < p.size(); ++j) {
        if (std::abs(detail::relative_phase_factor(t, p, i, j) - Scalar(1)) > Scalar(tol.eq)) return false;
      }
    }
    return true;
  }
  const int d = p.system().dim();
  for (int k : p.outcomes()) {
    if (distance(pullback(indicator_effect<Scalar>(d, k), t), indicator_effect<Scalar>(d, k)) > Scalar(tol.eq)) {
      return false;
    }
  }
  return true;
}

// Smallest m such that T is m-detectable; nullopt if no effect detects T.
template <typename Scalar>
std::optional<int> detection_order(const Transformation<Scalar>& t, const PathExperiment<Scalar>& p,
                                   const Tolerances& tol = kDefaultTolerances) {
  detail::require_phase(t, p, tol, "detection_order");
  for (int m = 1; m <= p.size(); ++m) {
    if (!is_n_undetectable(t, p, m, tol)) return m;
  }
  return std::nullopt;
}

// Random effect whose support is exactly `subset`: V A V^dagger with V the
// path kets of the subset and A a random positive contraction.
template <typename Scalar>
Effect<Scalar> random_effect_on(const PathExperiment<Scalar>& p, const SupportSet& subset, Rng& rng) {
  const auto idx = subset.indices();
  const int k = static_cast<int>(idx.size());
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  if (p.system().is_quantum()) {
    const int d = p.system().dim();
    CMatrix<Scalar> v(d, k);
    for (int c = 0; c < k; ++c) v.col(c) = p.kets()[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])];
    const CMatrix<Scalar> w = haar_unitary<Scalar>(k, rng);
    CMatrix<Scalar> lam = CMatrix<Scalar>::Zero(k, k);
    for (int c = 0; c < k; ++c) lam(c, c) = Scalar(unit(rng));
    const CMatrix<Scalar> a = w * lam * w.adjoint();
    return Effect<Scalar>::trusted(p.system(), operator_to_coords<Scalar>(p.system(), CMatrix<Scalar>(v * a * v.adjoint())));
  }
  Vector<Scalar> e = Vector<Scalar>::Zero(p.system().dim());
  for (int i : idx) e(p.outcomes()[static_cast<std::size_t>(i)]) = Scalar(unit(rng));
  return Effect<Scalar>::trusted(p.system(), std::move(e));
}

// Randomized falsification: sample effects supported on `subset` and return
// the first one whose statistics T changes. Can refute undetectability,
// never prove it.
template <typename Scalar>
std::optional<Effect<Scalar>> find_detecting_effect(const Transformation<Scalar>& t,
                                                    const PathExperiment<Scalar>& p,
                                                    const SupportSet& subset, int samples,
                                                    std::uint64_t seed,
                                                    const Tolerances& tol = kDefaultTolerances) {
  Rng rng(seed);
  for (int k = 0; k < samples; ++k) {
    Effect<Scalar> e = random_effect_on(p, subset, rng);
    if (distance(pullback(e, t), e) > Scalar(tol.eq)) return e;
  }
  return std::nullopt;
}

// Search-based counterpart of is_n_undetectable.
template <typename Scalar>
bool search_n_undetectable(const Transformation<Scalar>& t, const PathExperiment<Scalar>& p, int n,
                           int samples_per_subset, std::uint64_t seed,
                           const Tolerances& tol = kDefaultTolerances) {
  std::uint64_t k = 0;
  for (const auto& subset : subsets_up_to(p.size(), n)) {
    if (find_detecting_effect(t, p, subset, samples_per_subset, derive_seed(seed, k++), tol)) return false;
  }
  return true;
}

// Elements of the phase group among the reversible maps of a classical system.
template <typename Scalar>
std::vector<Transformation<Scalar>> classical_phase_group(const PathExperiment<Scalar>& p,
                                                          const Tolerances& tol = kDefaultTolerances) {
  if (p.system().is_quantum()) throw UnsupportedError("classical_phase_group: quantum experiment");
  std::vector<Transformation<Scalar>> out;
  for (auto& t : all_classical_reversible<Scalar>(p.system().dim())) {
    if (is_phase(t, p, tol)) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace interferlab

#endif  // INTERFERLAB_PATHS_HPP
