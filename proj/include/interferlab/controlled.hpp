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

#ifndef INTERFERLAB_CONTROLLED_HPP
#define INTERFERLAB_CONTROLLED_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "interferlab/distinguish.hpp"
#include "interferlab/paths.hpp"

namespace interferlab {

// Seed for the randomized self-checks run at construction time.
inline constexpr std::uint64_t kSelfCheckSeed = 0x5eed0c7b01ULL;
inline constexpr int kSelfCheckTrials = 20;

template <typename Scalar = double>
class ControlledTransformation;

template <typename Scalar>
ControlledTransformation<Scalar> build_controlled(const std::vector<CMatrix<Scalar>>& branches,
                                                  const std::vector<CVector<Scalar>>& control_kets,
                                                  const Tolerances& tol = kDefaultTolerances);

// C{T_i} on control (x) target: applies T_i to the target when the control
// is in basis state |i). Quantum backend; branches are unitary conjugations.
template <typename Scalar>
class ControlledTransformation {
 public:
  const SystemType& control_system() const { return control_; }
  const SystemType& target_system() const { return target_; }
  SystemType composite_system() const { return tensor(control_, target_); }
  int size() const { return static_cast<int>(branch_unitaries_.size()); }

  const std::vector<CVector<Scalar>>& control_kets() const { return control_kets_; }
  const std::vector<State<Scalar>>& control_states() const { return control_states_; }
  const Measurement<Scalar>& control_measurement() const { return control_measurement_; }
  const std::vector<CMatrix<Scalar>>& branch_unitaries() const { return branch_unitaries_; }
  const std::vector<Transformation<Scalar>>& branches() const { return branches_; }
  const CMatrix<Scalar>& unitary() const { return unitary_; }
  const Transformation<Scalar>& composite() const { return composite_; }

  // The control basis as a path experiment.
  PathExperiment<Scalar> control_experiment() const {
    std::vector<Path<Scalar>> paths;
    for (std::size_t i = 0; i < control_states_.size(); ++i) {
      paths.push_back({control_states_[i], control_measurement_[i]});
    }
    return make_experiment(std::move(paths));
  }

 private:
  friend ControlledTransformation build_controlled<Scalar>(const std::vector<CMatrix<Scalar>>&,
                                                           const std::vector<CVector<Scalar>>&,
                                                           const Tolerances&);
  ControlledTransformation(SystemType control, SystemType target, std::vector<CVector<Scalar>> kets,
                           std::vector<State<Scalar>> states, Measurement<Scalar> measurement,
                           std::vector<CMatrix<Scalar>> unitaries, std::vector<Transformation<Scalar>> branches,
                           CMatrix<Scalar> unitary, Transformation<Scalar> composite)
      : control_(std::move(control)), target_(std::move(target)), control_kets_(std::move(kets)),
        control_states_(std::move(states)), control_measurement_(std::move(measurement)),
        branch_unitaries_(std::move(unitaries)), branches_(std::move(branches)), unitary_(std::move(unitary)),
        composite_(std::move(composite)) {}

  SystemType control_;
  SystemType target_;
  std::vector<CVector<Scalar>> control_kets_;
  std::vector<State<Scalar>> control_states_;
  Measurement<Scalar> control_measurement_;
  std::vector<CMatrix<Scalar>> branch_unitaries_;
  std::vector<Transformation<Scalar>> branches_;
  CMatrix<Scalar> unitary_;
  Transformation<Scalar> composite_;
};

// max_i | C(|i) (x) sigma) - |i) (x) T_i sigma |
template <typename Scalar>
Scalar control_deviation(const Transformation<Scalar>& composite, const std::vector<State<Scalar>>& control_states,
                         const std::vector<Transformation<Scalar>>& branches, const State<Scalar>& sigma) {
  Scalar worst = 0;
  for (std::size_t i = 0; i < control_states.size(); ++i) {
    const auto lhs = apply(composite, tensor_states(control_states[i], sigma));
    const auto rhs = tensor_states(control_states[i], apply(branches[i], sigma));
    worst = std::max(worst, distance(lhs, rhs));
  }
  return worst;
}

// max_i | ((i| (x) id) C (omega (x) sigma) - (i|omega) T_i sigma |
template <typename Scalar>
Scalar superposition_deviation(const Transformation<Scalar>& composite, const Measurement<Scalar>& control_effects,
                               const std::vector<Transformation<Scalar>>& branches, const State<Scalar>& omega,
                               const State<Scalar>& sigma) {
  const auto out = apply(composite, tensor_states(omega, sigma));
  Scalar worst = 0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto cond = apply_effect_on_factor(control_effects[i], 0, out);
    const Vector<Scalar> want = pair(control_effects[i], omega) * apply(branches[i], sigma).coeffs();
    worst = std::max(worst, (cond.coeffs - want).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace detail {

template <typename Scalar>
State<Scalar> random_any_state(const SystemType& sys, std::uint64_t seed) {
  return random_state<Scalar>(sys, seed, (seed & 1) ? Purity::Mixed : Purity::Pure);
}

}  // namespace detail

template <typename Scalar>
ControlledTransformation<Scalar> build_controlled(const std::vector<CMatrix<Scalar>>& branches,
                                                  const std::vector<CVector<Scalar>>& control_kets,
                                                  const Tolerances& tol) {
  if (branches.empty()) throw ValidationError("build_controlled: no branches");
  if (branches.size() != control_kets.size()) {
    throw DimensionError("build_controlled: one control basis state per branch");
  }
  const int dc = static_cast<int>(control_kets.size());
  const int dt = static_cast<int>(branches.front().rows());
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (branches[i].rows() != dt || branches[i].cols() != dt) {
      throw DimensionError("build_controlled: branch " + std::to_string(i) + " has the wrong shape");
    }
    const Scalar defect = unitarity_defect(branches[i]);
    if (defect > Scalar(tol.norm)) {
      throw ValidationError("build_controlled: branch " + std::to_string(i) + " is not unitary (defect " +
                            detail::fmt(double(defect)) + ")");
    }
  }
  CMatrix<Scalar> gram(dc, dc);
  for (int i = 0; i < dc; ++i) {
    if (control_kets[std::size_t(i)].size() != dc) throw DimensionError("build_controlled: control ket has the wrong size");
    for (int j = 0; j < dc; ++j) gram(i, j) = control_kets[std::size_t(i)].dot(control_kets[std::size_t(j)]);
  }
  const Scalar gram_dev = (gram - CMatrix<Scalar>::Identity(dc, dc)).cwiseAbs().maxCoeff();
  if (gram_dev > Scalar(tol.eq)) {
    throw ValidationError("build_controlled: control basis is not orthonormal (deviation " +
                          detail::fmt(double(gram_dev)) + ")");
  }

  const SystemType control = SystemType::quantum(dc);
  const SystemType target = SystemType::quantum(dt);
  CMatrix<Scalar> w = CMatrix<Scalar>::Zero(dc * dt, dc * dt);
  std::vector<State<Scalar>> states;
  std::vector<Transformation<Scalar>> channels;
  for (int i = 0; i < dc; ++i) {
    const auto& k = control_kets[std::size_t(i)];
    w += kron(CMatrix<Scalar>(k * k.adjoint()), branches[std::size_t(i)]);
    states.push_back(ket_state<Scalar>(control, k, tol));
    channels.push_back(unitary_channel<Scalar>(target, branches[std::size_t(i)], tol));
  }
  auto measurement = distinguishing_measurement<Scalar>(states, tol);
  auto composite = unitary_channel<Scalar>(tensor(control, target), w, tol);

  // Self-check of the defining equations on random target states.
  Rng rng(kSelfCheckSeed);
  Scalar worst_control = 0, worst_sup = 0;
  for (int k = 0; k < kSelfCheckTrials; ++k) {
    const auto sigma = detail::random_any_state<Scalar>(target, rng());
    const auto omega = detail::random_any_state<Scalar>(control, rng());
    worst_control = std::max(worst_control, control_deviation(composite, states, channels, sigma));
    worst_sup = std::max(worst_sup, superposition_deviation(composite, measurement, channels, omega, sigma));
  }
  if (worst_control > Scalar(tol.eq) || worst_sup > Scalar(tol.eq)) {
    throw ConsistencyError("build_controlled: control equations violated (" + detail::fmt(double(worst_control)) +
                           ", " + detail::fmt(double(worst_sup)) + ")");
  }
  return ControlledTransformation<Scalar>(control, target, control_kets, std::move(states), std::move(measurement),
                                          branches, std::move(channels), std::move(w), std::move(composite));
}

// Controlled transformation with the computational basis as control basis.
template <typename Scalar>
ControlledTransformation<Scalar> build_controlled(const std::vector<CMatrix<Scalar>>& branches,
                                                  const Tolerances& tol = kDefaultTolerances) {
  std::vector<CVector<Scalar>> kets;
  const int dc = static_cast<int>(branches.size());
  for (int i = 0; i < dc; ++i) kets.push_back(basis_ket<Scalar>(dc, i));
  return build_controlled(branches, kets, tol);
}

template <typename Scalar = double>
struct SuperpositionReport {
  int trials = 0;
  Scalar max_control_deviation = 0;
  Scalar max_superposition_deviation = 0;
};

// Checks the control equation and superposition preservation for an
// arbitrary composite map against a claimed control basis and branches.
template <typename Scalar>
SuperpositionReport<Scalar> superposition_preservation(const Transformation<Scalar>& composite,
                                                       const std::vector<State<Scalar>>& control_states,
                                                       const Measurement<Scalar>& control_effects,
                                                       const std::vector<Transformation<Scalar>>& branches,
                                                       int trials, std::uint64_t seed) {
  SuperpositionReport<Scalar> report;
  report.trials = trials;
  const SystemType control = control_states.front().system();
  const SystemType target = branches.front().in_system();
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(k));
    const auto omega = detail::random_any_state<Scalar>(control, base);
    const auto sigma = detail::random_any_state<Scalar>(target, base ^ 0x9e3779b97f4a7c15ULL);
    report.max_control_deviation =
        std::max(report.max_control_deviation, control_deviation(composite, control_states, branches, sigma));
    report.max_superposition_deviation = std::max(
        report.max_superposition_deviation, superposition_deviation(composite, control_effects, branches, omega, sigma));
  }
  return report;
}

template <typename Scalar>
SuperpositionReport<Scalar> verify_superposition_preservation(const ControlledTransformation<Scalar>& c, int trials,
                                                              std::uint64_t seed) {
  return superposition_preservation(c.composite(), c.control_states(), c.control_measurement(), c.branches(), trials,
                                    seed);
}

// Joint eigenspace of a family of unitaries, with one eigenvalue per unitary.
template <typename Scalar = double>
struct JointEigenspace {
  CMatrix<Scalar> basis;  // orthonormal columns
  std::vector<std::complex<Scalar>> eigenvalues;
};

// All nonzero joint eigenspaces, refined one unitary at a time: each
// current space V is split by the null spaces of (U - mu I) V over the
// distinct eigenvalues mu of U.
template <typename Scalar>
std::vector<JointEigenspace<Scalar>> joint_eigenspaces(const std::vector<CMatrix<Scalar>>& unitaries,
                                                       const Tolerances& tol = kDefaultTolerances) {
  if (unitaries.empty()) throw ValidationError("joint_eigenspaces: no unitaries");
  const auto d = unitaries.front().rows();
  std::vector<JointEigenspace<Scalar>> spaces{{CMatrix<Scalar>::Identity(d, d), {}}};
  const Scalar cluster = Scalar(1e-7);
  for (const auto& u : unitaries) {
    if (u.rows() != d || u.cols() != d) throw DimensionError("joint_eigenspaces: unitaries differ in size");
    Eigen::ComplexEigenSolver<CMatrix<Scalar>> es(u, false);
    std::vector<std::complex<Scalar>> distinct;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      const auto mu = es.eigenvalues()(k);
      const bool seen = std::any_of(distinct.begin(), distinct.end(),
                                    [&](const auto& x) { return std::abs(x - mu) < cluster; });
      if (!seen) distinct.push_back(mu);
    }
    std::vector<JointEigenspace<Scalar>> next;
    for (const auto& space : spaces) {
      for (const auto& mu : distinct) {
        const CMatrix<Scalar> a = (u - mu * CMatrix<Scalar>::Identity(d, d)) * space.basis;
        Eigen::JacobiSVD<CMatrix<Scalar>> svd(a, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const Eigen::Index k = space.basis.cols();
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
          if (sv(i) > Scalar(tol.psd)) ++rank;
        }
        if (rank == k) continue;
        const CMatrix<Scalar> null = svd.matrixV().rightCols(k - rank);
        auto eig = space.eigenvalues;
        eig.push_back(mu);
        next.push_back({space.basis * null, std::move(eig)});
      }
    }
    spaces = std::move(next);
  }
  return spaces;
}

// A pure state fixed (as a density operator) by every branch: a joint
// eigenvector of the unitaries. Eigenphases may differ per branch. Among
// joint eigenspaces, the canonical vector of a space is the normalized
// projection of the first computational basis vector it overlaps; the
// space whose canonical index is smallest wins, ties going to the larger
// overlap.
template <typename Scalar>
std::optional<State<Scalar>> common_fixed_state(const std::vector<CMatrix<Scalar>>& unitaries,
                                                const Tolerances& tol = kDefaultTolerances) {
  const auto spaces = joint_eigenspaces(unitaries, tol);
  if (spaces.empty()) return std::nullopt;
  const auto d = unitaries.front().rows();
  std::optional<std::pair<Eigen::Index, Scalar>> best_key;
  CVector<Scalar> best;
  for (const auto& space : spaces) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const CVector<Scalar> w = space.basis * space.basis.row(k).adjoint();
      const Scalar n = w.norm();
      if (n <= Scalar(1e-6)) continue;
      if (!best_key || k < best_key->first || (k == best_key->first && n > best_key->second + Scalar(1e-12))) {
        best_key = std::pair(k, n);
        best = w / n;
        best *= std::conj(best(k)) / std::abs(best(k));
      }
      break;
    }
  }
  return ket_state<Scalar>(SystemType::quantum(static_cast<int>(d)), best, tol);
}

template <typename Scalar = double>
struct KickbackResult {
  State<Scalar> fixed_state;
  // Kicked-back angles relative to branch 0, each in [0, 2 pi).
  std::vector<Scalar> angles;
  // Eigenphases arg <psi|U_i|psi> before gauge fixing.
  std::vector<Scalar> raw_phases;
  CMatrix<Scalar> q_unitary;
  Transformation<Scalar> q;
  Scalar kickback_residual;  // max | C(sigma (x) s) - Q sigma (x) s | over self-check states
  Scalar phase_residual;     // max_i | (i| o Q - (i| |
};

template <typename Scalar>
Scalar kickback_residual(const ControlledTransformation<Scalar>& c, const KickbackResult<Scalar>& kb, int trials,
                         std::uint64_t seed) {
  Scalar worst = 0;
  for (int k = 0; k < trials; ++k) {
    const auto sigma = detail::random_any_state<Scalar>(c.control_system(), derive_seed(seed, std::uint64_t(k)));
    const auto lhs = apply(c.composite(), tensor_states(sigma, kb.fixed_state));
    const auto rhs = tensor_states(apply(kb.q, sigma), kb.fixed_state);
    worst = std::max(worst, distance(lhs, rhs));
  }
  return worst;
}

// Kicked-back phase Q_s for a target state s fixed by every branch.
template <typename Scalar>
KickbackResult<Scalar> extract_kickback(const ControlledTransformation<Scalar>& c, const State<Scalar>& s,
                                        const Tolerances& tol = kDefaultTolerances) {
  require_same(s.system(), c.target_system(), "extract_kickback");
  Scalar worst = 0;
  int worst_branch = 0;
  for (int i = 0; i < c.size(); ++i) {
    const Scalar dev = distance(apply(c.branches()[std::size_t(i)], s), s);
    if (dev > worst) {
      worst = dev;
      worst_branch = i;
    }
  }
  if (worst > Scalar(tol.eq)) {
    throw ValidationError("extract_kickback: state is not fixed by every branch (branch " +
                          std::to_string(worst_branch) + " moves it by " + detail::fmt(double(worst)) + ")");
  }
  const CVector<Scalar> psi = ket_of(s, tol);
  std::vector<Scalar> raw, angles;
  for (const auto& u : c.branch_unitaries()) raw.push_back(std::arg(psi.dot(u * psi)));
  for (Scalar phi : raw) angles.push_back(detail::wrap_angle(phi - raw.front()));

  const int dc = c.control_system().dim();
  CMatrix<Scalar> qu = CMatrix<Scalar>::Zero(dc, dc);
  for (int i = 0; i < dc; ++i) {
    const auto& k = c.control_kets()[std::size_t(i)];
    qu += std::polar(Scalar(1), raw[std::size_t(i)]) * k * k.adjoint();
  }
  KickbackResult<Scalar> kb{s, std::move(angles), std::move(raw), qu,
                            unitary_channel<Scalar>(c.control_system(), qu, tol), 0, 0};
  for (std::size_t i = 0; i < c.control_measurement().size() && i < std::size_t(dc); ++i) {
    const auto& e = c.control_measurement()[i];
    kb.phase_residual = std::max(kb.phase_residual, distance(pullback(e, kb.q), e));
  }
  kb.kickback_residual = kickback_residual(c, kb, kSelfCheckTrials, kSelfCheckSeed);
  if (kb.kickback_residual > Scalar(tol.eq) || kb.phase_residual > Scalar(tol.eq)) {
    throw ConsistencyError("extract_kickback: kick-back equation violated (" +
                           detail::fmt(double(kb.kickback_residual)) + ")");
  }
  return kb;
}

template <typename Scalar = double>
struct KickbackRealization {
  ControlledTransformation<Scalar> controlled;
  State<Scalar> target_state;
};

// Realizes a phase W of the control experiment as a kick-back: target is a
// qubit, branch i is diag(1, e^{i w_i}), and the fixed target state is
// |1><1|, so the kicked-back phase is W up to a global phase.
template <typename Scalar>
KickbackRealization<Scalar> realize_phase_as_kickback(const Transformation<Scalar>& w,
                                                      const PathExperiment<Scalar>& control,
                                                      const Tolerances& tol = kDefaultTolerances) {
  if (!control.system().is_quantum()) throw UnsupportedError("realize_phase_as_kickback: quantum backend only");
  if (!is_phase(w, control, tol)) throw ValidationError("realize_phase_as_kickback: W is not a phase of the control");
  const auto omega = phase_angles(w, control, tol);
  std::vector<CMatrix<Scalar>> branches;
  for (Scalar a : omega) branches.push_back(phase_matrix<Scalar>({Scalar(0), a}));
  auto c = build_controlled<Scalar>(branches, control.kets(), tol);
  return {std::move(c), ket_state<Scalar>(basis_ket<Scalar>(2, 1), tol)};
}

template <typename Scalar = double>
struct SwapCheckReport {
  ControlledTransformation<Scalar> swapped;  // C{Q_j} with the target as control
  Scalar max_deviation;                     // | SWAP C SWAP - C{Q_j} | at channel level
};

// Control-target symmetry of a controlled transformation whose branches are
// phases of the target experiment.
template <typename Scalar>
SwapCheckReport<Scalar> control_target_swap_check(const ControlledTransformation<Scalar>& c,
                                                  const PathExperiment<Scalar>& target,
                                                  const Tolerances& tol = kDefaultTolerances) {
  require_same(target.system(), c.target_system(), "control_target_swap_check");
  for (int i = 0; i < c.size(); ++i) {
    if (!is_phase(c.branches()[std::size_t(i)], target, tol)) {
      throw ValidationError("control_target_swap_check: branch " + std::to_string(i) +
                            " is not a phase of the target experiment");
    }
  }
  std::vector<CMatrix<Scalar>> qs;
  for (int j = 0; j < target.size(); ++j) qs.push_back(extract_kickback(c, target[j].state, tol).q_unitary);
  auto swapped = build_controlled<Scalar>(qs, target.kets(), tol);
  const int dc = c.control_system().dim();
  const int dt = c.target_system().dim();
  const CMatrix<Scalar> sw = swap_unitary<Scalar>(dc, dt);
  const CMatrix<Scalar> conj = sw * c.unitary() * sw.adjoint();
  const auto lhs = unitary_channel<Scalar>(tensor(c.target_system(), c.control_system()), conj, tol);
  const Scalar dev = distance(lhs, swapped.composite());
  return {std::move(swapped), dev};
}

// Particle type read off the kicked-back exchange phase.
struct ParticleClass {
  enum class Kind { Boson, Fermion, Anyon };
  Kind kind;
  double theta;

  const char* name() const {
    switch (kind) {
      case Kind::Boson: return "Boson";
      case Kind::Fermion: return "Fermion";
      default: return "Anyon";
    }
  }
};

inline double angular_distance(double a, double b) {
  const double two_pi = 2 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

inline ParticleClass classify_particle(double theta, const Tolerances& tol = kDefaultTolerances) {
  theta = detail::wrap_angle(theta);
  if (angular_distance(theta, 0) <= tol.eq) return {ParticleClass::Kind::Boson, theta};
  if (angular_distance(theta, std::numbers::pi) <= tol.eq) return {ParticleClass::Kind::Fermion, theta};
  return {ParticleClass::Kind::Anyon, theta};
}

template <typename Scalar = double>
struct ExchangeResult {
  Scalar theta;
  KickbackResult<Scalar> kickback;
};

namespace detail {

template <typename Scalar>
void require_fixes(const CMatrix<Scalar>& u, const State<Scalar>& psi, const Tolerances& tol, const std::string& what) {
  const Scalar dev = distance(apply(unitary_channel<Scalar>(psi.system(), u, tol), psi), psi);
  if (dev > Scalar(tol.eq)) {
    throw ValidationError(what + " does not fix the particle state (deviation " + fmt(double(dev)) + ")");
  }
}

}  // namespace detail

// Interferometer with the identity on one arm and S on the other; the
// particle state is the target. Returns the kicked-back relative angle.
template <typename Scalar>
ExchangeResult<Scalar> exchange_experiment(const State<Scalar>& psi, const CMatrix<Scalar>& s,
                                           const Tolerances& tol = kDefaultTolerances) {
  detail::require_fixes(s, psi, tol, "exchange operation");
  const auto dim = static_cast<Eigen::Index>(psi.system().dim());
  const auto c = build_controlled<Scalar>({CMatrix<Scalar>::Identity(dim, dim), s}, tol);
  // The particle system keeps its factor structure in the fixed state.
  const State<Scalar> flat = State<Scalar>::trusted(c.target_system(),
                                                    operator_to_coords<Scalar>(c.target_system(), psi.density()));
  auto kb = extract_kickback(c, flat, tol);
  const Scalar theta = kb.angles[1];
  return {theta, std::move(kb)};
}

template <typename Scalar = double>
struct PermutationExperimentResult {
  std::vector<Scalar> angles;  // phi_1..phi_{n-1} relative to path 0
  KickbackResult<Scalar> kickback;
};

// n-path version: permutation pi_i on path i, all fixing psi.
template <typename Scalar>
PermutationExperimentResult<Scalar> multi_path_permutation_experiment(const std::vector<CMatrix<Scalar>>& perms,
                                                                      const State<Scalar>& psi,
                                                                      const Tolerances& tol = kDefaultTolerances) {
  if (perms.size() < 2) throw ValidationError("multi_path_permutation_experiment: needs at least two paths");
  for (std::size_t i = 0; i < perms.size(); ++i) {
    detail::require_fixes(perms[i], psi, tol, "permutation " + std::to_string(i));
  }
  const auto c = build_controlled<Scalar>(perms, tol);
  const State<Scalar> flat = State<Scalar>::trusted(c.target_system(),
                                                    operator_to_coords<Scalar>(c.target_system(), psi.density()));
  auto kb = extract_kickback(c, flat, tol);
  std::vector<Scalar> rel(kb.angles.begin() + 1, kb.angles.end());
  return {std::move(rel), std::move(kb)};
}

enum class ExchangeSymmetry { Symmetric, Antisymmetric };

// (|01> +- |10>)/sqrt(2) on two qubits.
template <typename Scalar = double>
State<Scalar> two_particle_state(ExchangeSymmetry sym) {
  CVector<Scalar> v = CVector<Scalar>::Zero(4);
  v(1) = Scalar(1);
  v(2) = sym == ExchangeSymmetry::Symmetric ? Scalar(1) : Scalar(-1);
  v /= std::sqrt(Scalar(2));
  return ket_state<Scalar>(tensor(SystemType::quantum(2), SystemType::quantum(2)), v);
}

// Abstract exchange operator fixing psi with eigenphase theta:
// e^{i theta}|psi><psi| + (1 - |psi><psi|).
template <typename Scalar>
CMatrix<Scalar> anyonic_exchange(const CVector<Scalar>& psi, Scalar theta) {
  const auto d = psi.size();
  const CMatrix<Scalar> proj = psi * psi.adjoint();
  return std::polar(Scalar(1), theta) * proj + (CMatrix<Scalar>::Identity(d, d) - proj);
}

}  // namespace interferlab

#endif  // INTERFERLAB_CONTROLLED_HPP
