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

#ifndef INTERFERLAB_INTERFERENCE_HPP
#define INTERFERLAB_INTERFERENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interferlab/paths.hpp"

namespace interferlab {

// Verdict thresholds: a residual above kPresenceThreshold witnesses
// interference; one below kAbsenceThreshold rules it out. Values in between
// are reported as inconclusive.
inline constexpr double kPresenceThreshold = 1e-6;
inline constexpr double kAbsenceThreshold = 1e-9;

enum class Verdict { Present, Absent, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Present: return "present";
    case Verdict::Absent: return "absent";
    default: return "inconclusive";
  }
}

inline Verdict classify_residual(double max_abs_residual) {
  if (max_abs_residual > kPresenceThreshold) return Verdict::Present;
  if (max_abs_residual < kAbsenceThreshold) return Verdict::Absent;
  return Verdict::Inconclusive;
}

// C_{s,e}: T -> (e|T|s) on the phase group of an experiment.
template <typename Scalar = double>
class InterferencePattern {
 public:
  InterferencePattern(State<Scalar> s, Effect<Scalar> e, PathExperiment<Scalar> experiment,
                      const Tolerances& tol = kDefaultTolerances)
      : s_(std::move(s)), e_(std::move(e)), experiment_(std::move(experiment)), tol_(tol) {
    require_same(s_.system(), experiment_.system(), "pattern");
    require_same(e_.system(), experiment_.system(), "pattern");
  }

  Scalar operator()(const Transformation<Scalar>& t) const {
    if (!is_phase(t, experiment_, tol_)) {
      throw ValidationError("interference pattern evaluated outside the phase group");
    }
    return pair(e_, apply(t, s_));
  }

  const State<Scalar>& state() const { return s_; }
  const Effect<Scalar>& effect() const { return e_; }
  const PathExperiment<Scalar>& experiment() const { return experiment_; }

 private:
  State<Scalar> s_;
  Effect<Scalar> e_;
  PathExperiment<Scalar> experiment_;
  Tolerances tol_;
};

template <typename Scalar>
InterferencePattern<Scalar> pattern(const State<Scalar>& s, const Effect<Scalar>& e,
                                    const PathExperiment<Scalar>& p,
                                    const Tolerances& tol = kDefaultTolerances) {
  return InterferencePattern<Scalar>(s, e, p, tol);
}

// One effect per subset of paths, each supported within its subset.
template <typename Scalar = double>
class EffectChoice {
 public:
  explicit EffectChoice(PathExperiment<Scalar> experiment, Tolerances tol = kDefaultTolerances)
      : experiment_(std::move(experiment)), tol_(tol) {}

  void set(const SupportSet& subset, const Effect<Scalar>& e) {
    if (subset.paths() != experiment_.size()) throw DimensionError("EffectChoice: subset of the wrong experiment");
    require_same(e.system(), experiment_.system(), "EffectChoice");
    // re-validate 0 <= e <= u
    Effect<Scalar> checked(e.system(), e.coeffs(), tol_);
    const SupportSet supp = support_of_effect(checked, experiment_);
    if (!supp.is_subset_of(subset)) {
      throw ValidationError("EffectChoice: effect for " + subset.describe() + " has support " +
                            supp.describe());
    }
    effects_.insert_or_assign(subset, std::move(checked));
  }

  bool contains(const SupportSet& subset) const { return effects_.count(subset) > 0; }

  const Effect<Scalar>& at(const SupportSet& subset) const {
    auto it = effects_.find(subset);
    if (it == effects_.end()) throw ValidationError("EffectChoice: no effect for subset " + subset.describe());
    return it->second;
  }

  const std::map<SupportSet, Effect<Scalar>>& effects() const { return effects_; }
  const PathExperiment<Scalar>& experiment() const { return experiment_; }

 private:
  PathExperiment<Scalar> experiment_;
  Tolerances tol_;
  std::map<SupportSet, Effect<Scalar>> effects_;
};

// (e_I| = (e| F_I with F_I the filter onto the paths in I: P_I E P_I.
template <typename Scalar>
Effect<Scalar> filtered_effect(const Effect<Scalar>& e, const SupportSet& subset,
                               const PathExperiment<Scalar>& p,
                               const Tolerances& tol = kDefaultTolerances) {
  if (!p.system().is_quantum()) {
    throw UnsupportedError("filtered_effect: classical backend; use masked_effect");
  }
  require_same(e.system(), p.system(), "filtered_effect");
  const CMatrix<Scalar> proj = p.projector(subset);
  return operator_effect<Scalar>(p.system(), CMatrix<Scalar>(proj * e.op() * proj), tol);
}

// Classical filter: zero the effect outside the outcomes of the paths in I.
template <typename Scalar>
Effect<Scalar> masked_effect(const Effect<Scalar>& e, const SupportSet& subset,
                             const PathExperiment<Scalar>& p) {
  if (p.system().is_quantum()) throw UnsupportedError("masked_effect: quantum backend; use filtered_effect");
  require_same(e.system(), p.system(), "masked_effect");
  Vector<Scalar> out = Vector<Scalar>::Zero(e.coeffs().size());
  for (int i : subset.indices()) {
    const int k = p.outcomes()[static_cast<std::size_t>(i)];
    out(k) = e.coeffs()(k);
  }
  return Effect<Scalar>::trusted(e.system(), std::move(out));
}

// Canonical choice: the filtered (quantum) or masked (classical) effect for
// every nonempty proper subset.
template <typename Scalar>
EffectChoice<Scalar> filter_choice(const Effect<Scalar>& e, const PathExperiment<Scalar>& p,
                                   const Tolerances& tol = kDefaultTolerances) {
  EffectChoice<Scalar> choice(p, tol);
  for (const auto& subset : proper_nonempty_subsets(p.size())) {
    choice.set(subset, p.system().is_quantum() ? filtered_effect(e, subset, p, tol)
                                               : masked_effect(e, subset, p));
  }
  return choice;
}

template <typename Scalar = double>
struct SorkinTerms {
  Scalar lhs;
  Scalar rhs;
  Scalar residual;
};

// Sign of subset I in the order-n inclusion-exclusion sum.
inline int sorkin_sign(int n, int subset_size) { return ((n - subset_size + 1) % 2 == 0) ? 1 : -1; }

// lhs = (e|T|s); rhs = sum over nonempty proper I of (-1)^{n-|I|+1} (e_I|T|s).
template <typename Scalar>
SorkinTerms<Scalar> sorkin_residual(const State<Scalar>& s, const Effect<Scalar>& e,
                                    const PathExperiment<Scalar>& p, const Transformation<Scalar>& t,
                                    const EffectChoice<Scalar>& choice,
                                    const Tolerances& tol = kDefaultTolerances) {
  const int n = p.size();
  if (choice.experiment().size() != n) throw DimensionError("sorkin_residual: choice for another experiment");
  if (!is_phase(t, p, tol)) throw ValidationError("sorkin_residual: T is not a phase transformation");
  const State<Scalar> image = apply(t, s);
  const Scalar lhs = pair(e, image);
  Scalar rhs = 0;
  for (const auto& subset : proper_nonempty_subsets(n)) {
    rhs += Scalar(sorkin_sign(n, subset.size())) * pair(choice.at(subset), image);
  }
  return {lhs, rhs, lhs - rhs};
}

template <typename Scalar = double>
struct SorkinSample {
  std::vector<Scalar> angles;
  Scalar lhs;
  Scalar rhs;
  Scalar residual;
};

template <typename Scalar = double>
struct SorkinWitness {
  State<Scalar> state;
  Effect<Scalar> effect;
  std::vector<Scalar> angles;
};

template <typename Scalar = double>
struct SorkinReport {
  int order = 0;
  int trials = 0;
  std::vector<SorkinSample<Scalar>> samples;
  Scalar max_abs_residual = 0;
  std::optional<SorkinWitness<Scalar>> witness;
  Verdict verdict = Verdict::Absent;
  // Order >= 4: the alternating-sign sum over all proper subsets is one of
  // several possible conventions.
  bool convention_dependent = false;
  // Order 2 only: the best constant right-hand side and its sup deviation.
  std::optional<Scalar> best_constant;
  std::optional<Scalar> minimax;
};

namespace detail {

template <typename Scalar>
void finish_report(SorkinReport<Scalar>& report) {
  report.max_abs_residual = 0;
  for (const auto& smp : report.samples) {
    report.max_abs_residual = std::max(report.max_abs_residual, std::abs(smp.residual));
  }
  report.verdict = classify_residual(double(report.max_abs_residual));
}

}  // namespace detail

// Second-order test on a 2-path experiment for a given (s, e). Effects
// supported on a single path are fixed by every phase, so any single-path
// choice makes the right-hand side a constant c in [0, (u|s)]. The best
// such constant is the midpoint of the pattern's range, and the minimax
// residual is half that range. Phases are sampled on a uniform grid of
// relative angles plus `random_samples` seeded angles; classical
// experiments enumerate their (finite) phase group instead.
template <typename Scalar>
SorkinReport<Scalar> second_order_scan(const State<Scalar>& s, const Effect<Scalar>& e,
                                       const PathExperiment<Scalar>& p, std::uint64_t seed,
                                       int grid_points = 512, int random_samples = 64,
                                       const Tolerances& tol = kDefaultTolerances) {
  if (p.size() != 2) throw DimensionError("second_order_scan: needs a 2-path experiment");
  const auto pat = pattern(s, e, p, tol);

  std::vector<std::pair<std::vector<Scalar>, Transformation<Scalar>>> phases;
  if (p.system().is_quantum()) {
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    for (int k = 0; k < grid_points; ++k) {
      std::vector<Scalar> a{Scalar(0), two_pi * Scalar(k) / Scalar(grid_points)};
      phases.emplace_back(a, path_phase(p, a));
    }
    Rng rng(seed);
    for (int k = 0; k < random_samples; ++k) {
      std::vector<Scalar> a{uniform_angle<Scalar>(rng), uniform_angle<Scalar>(rng)};
      phases.emplace_back(a, path_phase(p, a));
    }
  } else {
    for (auto& t : classical_phase_group(p, tol)) phases.emplace_back(std::vector<Scalar>{}, std::move(t));
  }

  std::vector<Scalar> values;
  values.reserve(phases.size());
  for (const auto& [angles, t] : phases) values.push_back(pat(t));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const Scalar single_total = pair(p[0].effect, s) + pair(p[1].effect, s);
  const Scalar c = std::clamp((*lo + *hi) / Scalar(2), Scalar(0), single_total);

  // Realize c with single-path effects r (e_i| and evaluate through the
  // generic inclusion-exclusion machinery.
  EffectChoice<Scalar> choice(p, tol);
  const Scalar r = single_total > Scalar(0) ? c / single_total : Scalar(0);
  for (int i = 0; i < 2; ++i) {
    choice.set(SupportSet::of(2, {i}), Effect<Scalar>::trusted(p.system(), r * p[i].effect.coeffs()));
  }

  SorkinReport<Scalar> report;
  report.order = 2;
  report.trials = static_cast<int>(phases.size());
  Scalar worst = -1;
  std::size_t worst_k = 0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const auto terms = sorkin_residual(s, e, p, phases[k].second, choice, tol);
    report.samples.push_back({phases[k].first, terms.lhs, terms.rhs, terms.residual});
    if (std::abs(terms.residual) > worst) {
      worst = std::abs(terms.residual);
      worst_k = k;
    }
  }
  detail::finish_report(report);
  report.best_constant = c;
  report.minimax = report.max_abs_residual;
  if (report.verdict == Verdict::Present) report.witness = SorkinWitness<Scalar>{s, e, phases[worst_k].first};
  return report;
}

// Second-order witness with s and e both the uniform superposition of the
// paths (quantum) or the uniform mixture and unit effect (classical).
template <typename Scalar>
SorkinReport<Scalar> second_order_witness(const PathExperiment<Scalar>& p, std::uint64_t seed,
                                          const Tolerances& tol = kDefaultTolerances) {
  if (p.size() != 2) throw DimensionError("second_order_witness: needs a 2-path experiment");
  if (p.system().is_quantum()) {
    const CVector<Scalar> psi = uniform_superposition<Scalar>(p.kets());
    return second_order_scan(ket_state<Scalar>(p.system(), psi), projector_effect<Scalar>(p.system(), psi),
                             p, seed, 512, 64, tol);
  }
  return second_order_scan(maximally_mixed<Scalar>(p.system()), unit_effect<Scalar>(p.system()), p, seed,
                           512, 64, tol);
}

// Order-n scan on a quantum n-path experiment: random pure (s, e), random
// phases, and the filter-based effect choice derived from e.
template <typename Scalar>
SorkinReport<Scalar> sorkin_scan_quantum(const PathExperiment<Scalar>& p, int trials, std::uint64_t seed,
                                         const Tolerances& tol = kDefaultTolerances) {
  if (!p.system().is_quantum()) throw UnsupportedError("sorkin_scan_quantum: quantum experiments only");
  if (p.size() < 3) throw DimensionError("sorkin_scan_quantum: needs at least 3 paths");
  if (trials < 1) throw ValidationError("sorkin_scan_quantum: trials must be >= 1");
  const int d = p.system().dim();
  SorkinReport<Scalar> report;
  report.order = p.size();
  report.trials = trials;
  report.convention_dependent = p.size() >= 4;
  Scalar worst = -1;
  std::optional<SorkinWitness<Scalar>> worst_witness;
  for (int k = 0; k < trials; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const CVector<Scalar> ks = haar_ket<Scalar>(d, rng);
    const CVector<Scalar> ke = haar_ket<Scalar>(d, rng);
    const State<Scalar> s = ket_state<Scalar>(p.system(), ks, tol);
    const Effect<Scalar> e = projector_effect<Scalar>(p.system(), ke, tol);
    std::vector<Scalar> angles(static_cast<std::size_t>(p.size()));
    for (auto& a : angles) a = uniform_angle<Scalar>(rng);
    const auto terms = sorkin_residual(s, e, p, path_phase(p, angles), filter_choice(e, p, tol), tol);
    report.samples.push_back({angles, terms.lhs, terms.rhs, terms.residual});
    if (std::abs(terms.residual) > worst) {
      worst = std::abs(terms.residual);
      worst_witness = SorkinWitness<Scalar>{s, e, angles};
    }
  }
  detail::finish_report(report);
  if (report.verdict == Verdict::Present) report.witness = worst_witness;
  return report;
}

template <typename Scalar>
SorkinReport<Scalar> third_order_scan_quantum(const PathExperiment<Scalar>& p, int trials, std::uint64_t seed,
                                              const Tolerances& tol = kDefaultTolerances) {
  if (p.size() != 3) throw DimensionError("third_order_scan_quantum: needs a 3-path experiment");
  return sorkin_scan_quantum(p, trials, seed, tol);
}

template <typename Scalar = double>
struct SweepRow {
  std::vector<Scalar> angles;
  Scalar probability;
};

// Pattern values at each grid point (one angle per path).
template <typename Scalar>
std::vector<SweepRow<Scalar>> interference_pattern_sweep(const State<Scalar>& s, const Effect<Scalar>& e,
                                                         const PathExperiment<Scalar>& p,
                                                         const std::vector<std::vector<Scalar>>& grid,
                                                         const Tolerances& tol = kDefaultTolerances) {
  if (grid.empty()) throw ValidationError("interference_pattern_sweep: empty angle grid");
  const auto pat = pattern(s, e, p, tol);
  std::vector<SweepRow<Scalar>> rows;
  rows.reserve(grid.size());
  for (const auto& angles : grid) rows.push_back({angles, pat(path_phase(p, angles))});
  return rows;
}

}  // namespace interferlab

#endif  // INTERFERLAB_INTERFERENCE_HPP
