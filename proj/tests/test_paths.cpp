#include <cmath>
#include <numbers>

#include "doctest.h"
#include "interferlab/paths.hpp"

using namespace interferlab;
constexpr double kPi = std::numbers::pi;

namespace {

CVector<double> plus_ket() { return CVector<double>::Ones(2) / std::sqrt(2.0); }

Path<double> ket_path(const CVector<double>& k) { return {ket_state(k), projector_effect(k)}; }

}  // namespace

TEST_CASE("make_experiment") {
  const auto qubit = basis_experiment<double>(SystemType::quantum(2));
  CHECK(qubit.size() == 2);
  const auto qutrit = basis_experiment<double>(SystemType::quantum(3));
  CHECK(qutrit.size() == 3);
  CHECK(basis_experiment<double>(SystemType::classical(4)).size() == 4);

  SUBCASE("disjointness violation names the pair") {
    try {
      make_experiment<double>({ket_path(plus_ket()), ket_path(basis_ket(2, 0))});
      FAIL("expected a disjointness error");
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("paths 0 and 1") != std::string::npos);
      CHECK(msg.find("0.5") != std::string::npos);
    }
  }
  SUBCASE("completeness violation") {
    try {
      make_experiment<double>({ket_path(basis_ket(3, 0)), ket_path(basis_ket(3, 1))});
      FAIL("expected a completeness error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("sum to the unit effect") != std::string::npos);
    }
  }
  SUBCASE("paths must pair to one") {
    CHECK_THROWS_AS(make_experiment<double>({{ket_state(basis_ket(2, 0)), projector_effect(basis_ket(2, 1))},
                                             {ket_state(basis_ket(2, 1)), projector_effect(basis_ket(2, 0))}}),
                    ValidationError);
  }
  SUBCASE("higher-rank paths are rejected") {
    const auto sys = SystemType::quantum(3);
    CMatrix<double> rest = CMatrix<double>::Zero(3, 3);
    rest(1, 1) = rest(2, 2) = 1.0;
    CHECK_THROWS_AS(make_experiment<double>({ket_path(basis_ket(3, 0)),
                                             {ket_state(basis_ket(3, 1)), operator_effect(sys, rest)}}),
                    UnsupportedError);
  }
  SUBCASE("non-computational basis") {
    CVector<double> minus(2);
    minus << 1, -1;
    minus /= std::sqrt(2.0);
    const auto pm = make_experiment<double>({ket_path(plus_ket()), ket_path(minus)});
    CHECK(support_of_state(ket_state(basis_ket(2, 0)), pm) == SupportSet::all(2));
  }
}

TEST_CASE("supports") {
  const auto p = basis_experiment<double>(SystemType::quantum(2));
  const auto rho_plus = ket_state(plus_ket());
  CHECK(support_of_state(rho_plus, p) == SupportSet::of(2, {0, 1}));
  CHECK(support_of_state(ket_state(basis_ket(2, 0)), p) == SupportSet::of(2, {0}));
  CHECK(support_of_effect(unit_effect<double>(p.system()), p) == SupportSet::all(2));

  CHECK(in_E_I(projector_effect(basis_ket(2, 1)), p, SupportSet::of(2, {1})));
  CHECK_FALSE(in_E_I(unit_effect<double>(p.system()), p, SupportSet::of(2, {0})));
  CHECK(in_Omega_I(rho_plus, p, SupportSet::of(2, {0, 1})));

  SUBCASE("threshold is a field of the experiment") {
    CVector<double> tilted(2);
    tilted << std::sqrt(1 - 1e-6), 1e-3;
    const auto s = ket_state(tilted);
    CHECK(support_of_state(s, p).size() == 2);
    const auto coarse = basis_experiment<double>(SystemType::quantum(2), 1e-5);
    CHECK(support_of_state(s, coarse) == SupportSet::of(2, {0}));
  }
  CHECK_THROWS_AS(SupportSet::of(2, {2}), DimensionError);
}

TEST_CASE("is_superposition") {
  const auto p = basis_experiment<double>(SystemType::quantum(2));
  CHECK(is_superposition(ket_state(plus_ket()), p));
  CHECK_FALSE(is_superposition(maximally_mixed<double>(p.system()), p));
  CHECK_FALSE(is_superposition(ket_state(basis_ket(2, 0)), p));
  const auto c = basis_experiment<double>(SystemType::classical(3));
  CHECK_FALSE(is_superposition(maximally_mixed<double>(c.system()), c));
}

TEST_CASE("is_phase") {
  const auto p = basis_experiment<double>(SystemType::quantum(2));
  for (double dphi : {0.0, 0.4, kPi / 2, kPi, 5.0}) CHECK(is_phase(phase_unitary<double>({0.0, dphi}), p));

  // <0|H|0><0|H|0> = 1/2 while <0|0><0|0> = 1, so (e_0| o H != (e_0|.
  const auto h = unitary_channel(hadamard<double>());
  CHECK(pair(projector_effect(basis_ket(2, 0)), apply(h, ket_state(basis_ket(2, 0)))) ==
        doctest::Approx(0.5));
  CHECK_FALSE(is_phase(h, p));

  const auto c = basis_experiment<double>(SystemType::classical(3));
  CHECK_FALSE(is_phase(permutation_transformation({1, 0, 2}), c));
  CHECK(is_phase(permutation_transformation({0, 1, 2}), c));
}

TEST_CASE("n-undetectability and detection order") {
  const auto qubit = basis_experiment<double>(SystemType::quantum(2));
  const auto rz = phase_unitary<double>({0.0, 1.3});
  CHECK(is_n_undetectable(rz, qubit, 1));
  CHECK_FALSE(is_n_undetectable(phase_unitary<double>({0.0, kPi}), qubit, 2));
  const auto id = Transformation<double>::identity(qubit.system());
  for (int n = 0; n <= 4; ++n) CHECK(is_n_undetectable(id, qubit, n));
  CHECK_FALSE(detection_order(id, qubit).has_value());
  CHECK_THROWS_AS(is_n_undetectable(unitary_channel(hadamard<double>()), qubit, 1), ValidationError);
  CHECK_THROWS_AS(detection_order(unitary_channel(hadamard<double>()), qubit), ValidationError);

  const auto qutrit = basis_experiment<double>(SystemType::quantum(3));
  SUBCASE("qutrit (0, 0, pi) is detected on two paths") {
    const auto t = phase_unitary<double>({0.0, 0.0, kPi});
    REQUIRE(detection_order(t, qutrit).has_value());
    CHECK(*detection_order(t, qutrit) == 2);
    // Brute-force search over effects supported on each pair.
    CHECK(find_detecting_effect(t, qutrit, SupportSet::of(3, {1, 2}), 200, 1).has_value());
    CHECK(find_detecting_effect(t, qutrit, SupportSet::of(3, {0, 2}), 200, 2).has_value());
    CHECK_FALSE(find_detecting_effect(t, qutrit, SupportSet::of(3, {0, 1}), 200, 3).has_value());
    for (int i = 0; i < 3; ++i) {
      CHECK_FALSE(find_detecting_effect(t, qutrit, SupportSet::of(3, {i}), 200, 4).has_value());
    }
  }
  SUBCASE("angles equal mod 2 pi") {
    CHECK_FALSE(detection_order(phase_unitary<double>({0.0, 2 * kPi, 4 * kPi}), qutrit).has_value());
  }
  SUBCASE("phase angles round trip") {
    const auto angles = phase_angles(phase_unitary<double>({0.5, 1.5, 4.0}), qutrit);
    CHECK(angles[0] == 0.0);
    CHECK(angles[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(angles[2] == doctest::Approx(3.5).epsilon(1e-12));
  }
}

TEST_CASE("phase group closure and inverses") {
  const auto p = basis_experiment<double>(SystemType::quantum(3));
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto t1 = path_phase<double>(p, {uniform_angle(rng), uniform_angle(rng), uniform_angle(rng)});
    const auto t2 = path_phase<double>(p, {uniform_angle(rng), uniform_angle(rng), uniform_angle(rng)});
    CHECK(is_phase(compose_seq(t1, t2), p));
    CHECK(is_phase(t1.inverse(), p));
  }
}

TEST_CASE("undetectability is monotone in n") {
  Rng rng(9);
  for (int d = 2; d <= 4; ++d) {
    const auto p = basis_experiment<double>(SystemType::quantum(d));
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> angles(static_cast<std::size_t>(d));
      // every fourth trial has all-equal angles, so both verdicts occur
      const double shared = uniform_angle(rng);
      for (auto& a : angles) a = trial % 4 == 0 ? shared : uniform_angle(rng);
      const auto t = path_phase(p, angles);
      for (int n = 0; n <= 4; ++n) {
        if (!is_n_undetectable(t, p, n)) continue;
        for (int k = 0; k <= n; ++k) CHECK(is_n_undetectable(t, p, k));
      }
    }
  }
}

TEST_CASE("closed form agrees with randomized effect search") {
  const auto p = basis_experiment<double>(SystemType::quantum(3));
  Rng rng(2024);
  int disagreements = 0;
  int trivial = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> angles{0.0, uniform_angle(rng), uniform_angle(rng)};
    if (trial % 10 == 0) {
      angles = {0.0, 2 * kPi, 0.0};
      ++trivial;
    }
    const auto t = path_phase(p, angles);
    for (int n = 1; n <= 3; ++n) {
      const bool closed = is_n_undetectable(t, p, n);
      const bool searched = search_n_undetectable(t, p, n, 200, derive_seed(77, std::uint64_t(trial)));
      if (closed != searched) ++disagreements;
    }
  }
  CHECK(trivial == 50);
  CHECK(disagreements == 0);
}

TEST_CASE("classical phase groups are trivial") {
  for (int d = 2; d <= 5; ++d) {
    const auto p = basis_experiment<double>(SystemType::classical(d));
    const auto group = classical_phase_group(p);
    REQUIRE(group.size() == 1);
    CHECK(distance(group.front(), Transformation<double>::identity(p.system())) == 0.0);
    CHECK_THROWS_AS(path_phase<double>(p, std::vector<double>(std::size_t(d), 0.0)), UnsupportedError);
  }
}

TEST_CASE("no quantum phase is 2-undetectable yet 3-detectable") {
  int violations = 0;
  int evaluated = 0;
  {
    const auto p = basis_experiment<double>(SystemType::quantum(3));
    for (int a = 0; a < 100; ++a) {
      for (int b = 0; b < 100; ++b) {
        const auto t = phase_unitary<double>({0.0, 2 * kPi * a / 100, 2 * kPi * b / 100});
        if (is_n_undetectable(t, p, 2) && !is_n_undetectable(t, p, 3)) ++violations;
        ++evaluated;
      }
    }
  }
  {
    const auto p = basis_experiment<double>(SystemType::quantum(4));
    for (int a = 0; a < 22; ++a) {
      for (int b = 0; b < 22; ++b) {
        for (int c = 0; c < 22; ++c) {
          const auto t = phase_unitary<double>({0.0, 2 * kPi * a / 22, 2 * kPi * b / 22, 2 * kPi * c / 22});
          if (is_n_undetectable(t, p, 2) && !is_n_undetectable(t, p, 3)) ++violations;
          ++evaluated;
        }
      }
    }
  }
  CHECK(evaluated >= 10000);
  CHECK(violations == 0);
}
