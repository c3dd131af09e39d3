#include <cmath>
#include <numbers>

#include "doctest.h"
#include "interferlab/controlled.hpp"

using namespace interferlab;
constexpr double kPi = std::numbers::pi;

namespace {

CMatrix<double> eye(int d) { return CMatrix<double>::Identity(d, d); }

CMatrix<double> diag_phase(std::initializer_list<double> a) { return phase_matrix<double>(std::vector<double>(a)); }

// Block unitary written out entry by entry.
CMatrix<double> block_unitary(const std::vector<CMatrix<double>>& us) {
  const int dc = int(us.size()), dt = int(us.front().rows());
  CMatrix<double> w = CMatrix<double>::Zero(dc * dt, dc * dt);
  for (int i = 0; i < dc; ++i) w.block(i * dt, i * dt, dt, dt) = us[std::size_t(i)];
  return w;
}

State<double> basis_state(int d, int i) { return ket_state(basis_ket<double>(d, i)); }

}  // namespace

TEST_CASE("build_controlled") {
  SUBCASE("{I, Z} is the controlled-Z block unitary") {
    const auto c = build_controlled<double>({eye(2), pauli_z<double>()});
    CHECK((c.unitary() - diag_phase({0, 0, 0, kPi})).cwiseAbs().maxCoeff() < 1e-15);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        CHECK(control_deviation(c.composite(), c.control_states(), c.branches(), basis_state(2, j)) < 1e-14);
      }
    }
  }
  SUBCASE("identity branches give the identity composite") {
    const auto c = build_controlled<double>({eye(3), eye(3), eye(3)});
    CHECK(distance(c.composite(), Transformation<double>::identity(c.composite_system())) < 1e-14);
  }
  SUBCASE("{I, X} acts as CNOT on a basis pair") {
    const auto c = build_controlled<double>({eye(2), pauli_x<double>()});
    const auto out = apply(c.composite(), tensor_states(basis_state(2, 1), basis_state(2, 0)));
    CHECK(distance(out, tensor_states(basis_state(2, 1), basis_state(2, 1))) < 1e-14);
  }
  SUBCASE("matches the block form for random branches") {
    std::vector<CMatrix<double>> us;
    for (int i = 0; i < 3; ++i) us.push_back(random_unitary_matrix<double>(2, 40 + i));
    const auto c = build_controlled<double>(us);
    CHECK((c.unitary() - block_unitary(us)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(c.composite().reversible());
  }
  SUBCASE("non-computational control basis") {
    const CMatrix<double> h = hadamard<double>();
    const auto c = build_controlled<double>({eye(2), pauli_z<double>()}, {h.col(0), h.col(1)});
    const auto r = verify_superposition_preservation(c, 30, 5);
    CHECK(r.max_control_deviation < 1e-12);
    CHECK(r.max_superposition_deviation < 1e-12);
  }
  SUBCASE("errors") {
    CMatrix<double> bad = eye(2);
    bad(0, 0) = 2;
    CHECK_THROWS_AS(build_controlled<double>({eye(2), bad}), ValidationError);
    CVector<double> a = basis_ket<double>(2, 0);
    CVector<double> b = (basis_ket<double>(2, 0) + basis_ket<double>(2, 1)) / std::sqrt(2.0);
    CHECK_THROWS_AS(build_controlled<double>({eye(2), eye(2)}, {a, b}), ValidationError);
    CHECK_THROWS_AS(build_controlled<double>({eye(2), eye(3)}), DimensionError);
  }
}

TEST_CASE("superposition preservation") {
  SUBCASE("constructed transformations") {
    const auto c = build_controlled<double>({random_unitary_matrix<double>(3, 1), random_unitary_matrix<double>(3, 2)});
    const auto r = verify_superposition_preservation(c, 50, 11);
    CHECK(r.max_superposition_deviation < 1e-10);
    CHECK(r.max_control_deviation < 1e-10);
  }
  SUBCASE("a generic unitary is not controlled") {
    const auto c = build_controlled<double>({eye(2), pauli_x<double>()});
    const auto generic = random_unitary<double>(c.composite_system(), 77);
    const auto r = superposition_preservation(generic, c.control_states(), c.control_measurement(), c.branches(), 20, 3);
    CHECK(r.max_superposition_deviation > 1e-3);
  }
}

TEST_CASE("common_fixed_state") {
  SUBCASE("{I, Z} picks |0>") {
    const auto s = common_fixed_state<double>({eye(2), pauli_z<double>()});
    REQUIRE(s.has_value());
    CHECK(distance(*s, basis_state(2, 0)) < 1e-14);
  }
  SUBCASE("{Z, X} has none") {
    CHECK_FALSE(common_fixed_state<double>({pauli_z<double>(), pauli_x<double>()}).has_value());
  }
  SUBCASE("diagonal phases fix every basis state") {
    const std::vector<CMatrix<double>> us{diag_phase({0.3, 1.1, 2.0}), diag_phase({0.0, 0.0, 0.7})};
    for (const auto& space : joint_eigenspaces<double>(us)) CHECK(space.basis.cols() == 1);
    CHECK(joint_eigenspaces<double>(us).size() == 3);
    CHECK(distance(*common_fixed_state<double>(us), basis_state(3, 0)) < 1e-14);
  }
  SUBCASE("degenerate space with no overlap on |0>") {
    // {X} has eigenvectors |+>, |->; both overlap |0> equally, take |+>.
    const auto s = common_fixed_state<double>({pauli_x<double>()});
    const CVector<double> plus = CVector<double>::Ones(2) / std::sqrt(2.0);
    CHECK(distance(*s, ket_state(plus)) < 1e-12);
  }
  SUBCASE("random family with a shared eigenvector") {
    const CMatrix<double> v = random_unitary_matrix<double>(3, 9);
    const CMatrix<double> a = v * diag_phase({0.2, 0.9, 1.7}) * v.adjoint();
    const CMatrix<double> b = v * diag_phase({2.5, 0.4, 0.4}) * v.adjoint();
    const auto s = common_fixed_state<double>({a, b});
    REQUIRE(s.has_value());
    const auto c = build_controlled<double>({a, b});
    CHECK_NOTHROW(extract_kickback(c, *s));
  }
}

TEST_CASE("extract_kickback") {
  const auto c = build_controlled<double>({eye(2), pauli_z<double>()});
  SUBCASE("|1> kicks back Z") {
    const auto kb = extract_kickback(c, basis_state(2, 1));
    CHECK(kb.angles[0] == 0.0);
    CHECK(std::abs(kb.angles[1] - kPi) < 1e-12);
    CHECK(distance(kb.q, unitary_channel<double>(pauli_z<double>())) < 1e-14);
    CHECK(kb.phase_residual < 1e-14);
    CHECK(kickback_residual(c, kb, 100, 21) < 1e-9);
  }
  SUBCASE("|0> kicks back the identity") {
    const auto kb = extract_kickback(c, basis_state(2, 0));
    CHECK(kb.angles[1] == 0.0);
    CHECK(distance(kb.q, Transformation<double>::identity(c.control_system())) < 1e-14);
  }
  SUBCASE("identity branches") {
    const auto id = build_controlled<double>({eye(2), eye(2)});
    const auto kb = extract_kickback(id, random_state<double>(SystemType::quantum(2), 4, Purity::Pure));
    CHECK(distance(kb.q, Transformation<double>::identity(id.control_system())) < 1e-14);
  }
  SUBCASE("a moved state is rejected") {
    const CVector<double> plus = CVector<double>::Ones(2) / std::sqrt(2.0);
    CHECK_THROWS_AS(extract_kickback(c, ket_state(plus)), ValidationError);
  }
  SUBCASE("global phases on the branches drop out after gauge fixing") {
    const auto g = build_controlled<double>({std::polar(1.0, 0.8) * eye(2), std::polar(1.0, -0.3) * pauli_z<double>()});
    const auto kb = extract_kickback(g, basis_state(2, 1));
    CHECK(std::abs(kb.angles[1] - detail::wrap_angle(kPi - 1.1)) < 1e-12);
    CHECK(std::abs(kb.raw_phases[0] - 0.8) < 1e-12);
  }
}

TEST_CASE("realize_phase_as_kickback") {
  SUBCASE("identity") {
    const auto p = basis_experiment<double>(SystemType::quantum(2));
    const auto r = realize_phase_as_kickback(Transformation<double>::identity(p.system()), p);
    CHECK(distance(r.controlled.composite(), Transformation<double>::identity(r.controlled.composite_system())) < 1e-14);
    const auto kb = extract_kickback(r.controlled, r.target_state);
    CHECK(distance(kb.q, Transformation<double>::identity(p.system())) < 1e-14);
  }
  SUBCASE("qutrit round trip") {
    const auto p = basis_experiment<double>(SystemType::quantum(3));
    const auto r = realize_phase_as_kickback(phase_unitary<double>({0.0, 1.0, 2.5}), p);
    const auto kb = extract_kickback(r.controlled, r.target_state);
    CHECK(std::abs(kb.angles[1] - 1.0) < 1e-9);
    CHECK(std::abs(kb.angles[2] - 2.5) < 1e-9);
  }
  SUBCASE("Z-phase gives CZ") {
    const auto p = basis_experiment<double>(SystemType::quantum(2));
    const auto r = realize_phase_as_kickback(unitary_channel<double>(pauli_z<double>()), p);
    CHECK((r.controlled.unitary() - diag_phase({0, 0, 0, kPi})).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rotated control basis") {
    const CMatrix<double> v = random_unitary_matrix<double>(3, 17);
    std::vector<Path<double>> paths;
    for (int i = 0; i < 3; ++i) paths.push_back({ket_state<double>(v.col(i)), projector_effect<double>(v.col(i))});
    const auto p = make_experiment(std::move(paths));
    const auto w = path_phase(p, {0.4, 1.3, 5.0});
    const auto r = realize_phase_as_kickback(w, p);
    const auto kb = extract_kickback(r.controlled, r.target_state);
    CHECK(distance(kb.q, w) < 1e-12);
  }
  SUBCASE("W must be a phase") {
    const auto p = basis_experiment<double>(SystemType::quantum(2));
    CHECK_THROWS_AS(realize_phase_as_kickback(unitary_channel<double>(hadamard<double>()), p), ValidationError);
  }
  SUBCASE("round trip on random angles") {
    Rng rng(123);
    for (int t = 0; t < 100; ++t) {
      const int d = 2 + t % 3;
      const auto p = basis_experiment<double>(SystemType::quantum(d));
      std::vector<double> omega(std::size_t(d), 0.0);
      for (int i = 1; i < d; ++i) omega[std::size_t(i)] = uniform_angle<double>(rng);
      const auto r = realize_phase_as_kickback(phase_unitary<double>(omega), p);
      const auto kb = extract_kickback(r.controlled, r.target_state);
      for (int i = 0; i < d; ++i) {
        CHECK(angular_distance(kb.angles[std::size_t(i)], omega[std::size_t(i)]) < 1e-9);
      }
    }
  }
}

TEST_CASE("control-target symmetry") {
  SUBCASE("{I, Z}") {
    const auto c = build_controlled<double>({eye(2), pauli_z<double>()});
    const auto r = control_target_swap_check(c, basis_experiment<double>(SystemType::quantum(2)));
    CHECK(r.max_deviation < 1e-12);
    CHECK((r.swapped.branch_unitaries()[1] - pauli_z<double>()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("identity branches") {
    const auto c = build_controlled<double>({eye(3), eye(3)});
    CHECK(control_target_swap_check(c, basis_experiment<double>(SystemType::quantum(3))).max_deviation < 1e-12);
  }
  SUBCASE("qutrit bidiagonal phase") {
    const auto c = build_controlled<double>(
        {diag_phase({0.1, 0.7, 2.0}), diag_phase({1.5, 0.2, 4.4}), diag_phase({3.0, 5.5, 0.9})});
    CHECK(control_target_swap_check(c, basis_experiment<double>(SystemType::quantum(3))).max_deviation < 1e-10);
  }
  SUBCASE("non-phase branches are rejected") {
    const auto c = build_controlled<double>({eye(2), pauli_x<double>()});
    CHECK_THROWS_AS(control_target_swap_check(c, basis_experiment<double>(SystemType::quantum(2))), ValidationError);
  }
}

TEST_CASE("exchange statistics") {
  const CMatrix<double> sw = swap_unitary<double>(2, 2);
  SUBCASE("antisymmetric is a fermion") {
    const auto r = exchange_experiment(two_particle_state(ExchangeSymmetry::Antisymmetric), sw);
    CHECK(std::abs(r.theta - kPi) < 1e-12);
    CHECK(classify_particle(r.theta).kind == ParticleClass::Kind::Fermion);
  }
  SUBCASE("symmetric is a boson") {
    const auto r = exchange_experiment(two_particle_state(ExchangeSymmetry::Symmetric), sw);
    CHECK(r.theta == doctest::Approx(0.0));
    CHECK(classify_particle(r.theta).kind == ParticleClass::Kind::Boson);
  }
  SUBCASE("injected anyonic phase") {
    const auto psi = two_particle_state(ExchangeSymmetry::Symmetric);
    const auto r = exchange_experiment(psi, anyonic_exchange<double>(ket_of(psi), 2.2));
    CHECK(std::abs(r.theta - 2.2) < 1e-9);
    const auto cls = classify_particle(r.theta);
    CHECK(cls.kind == ParticleClass::Kind::Anyon);
    CHECK(std::string(cls.name()) == "Anyon");
  }
  SUBCASE("S must fix the state") {
    const CVector<double> ket = basis_ket<double>(4, 1);
    CHECK_THROWS_AS(exchange_experiment(ket_state(ket), sw), ValidationError);
  }
  SUBCASE("class is invariant under V (x) V") {
    for (int t = 0; t < 50; ++t) {
      const CMatrix<double> v = random_unitary_matrix<double>(2, 500 + std::uint64_t(t));
      const CMatrix<double> vv = kron(v, v);
      for (auto sym : {ExchangeSymmetry::Symmetric, ExchangeSymmetry::Antisymmetric}) {
        const auto base = two_particle_state(sym);
        const CVector<double> moved = vv * ket_of(base);
        const auto r = exchange_experiment(ket_state(base.system(), moved), sw);
        CHECK(classify_particle(r.theta).kind == classify_particle(exchange_experiment(base, sw).theta).kind);
      }
    }
  }
}

TEST_CASE("multi-path permutation experiment") {
  SUBCASE("identity permutations") {
    const auto psi = random_state<double>(SystemType::quantum(3), 8, Purity::Pure);
    const auto r = multi_path_permutation_experiment<double>({eye(3), eye(3), eye(3)}, psi);
    for (double a : r.angles) CHECK(a == 0.0);
  }
  SUBCASE("two paths match the exchange experiment") {
    const auto psi = two_particle_state(ExchangeSymmetry::Antisymmetric);
    const CMatrix<double> sw = swap_unitary<double>(2, 2);
    const auto r = multi_path_permutation_experiment<double>({eye(4), sw}, psi);
    CHECK(r.angles.size() == 1);
    CHECK(r.angles[0] == doctest::Approx(exchange_experiment(psi, sw).theta));
  }
  SUBCASE("injected eigenphases") {
    const auto psi = two_particle_state(ExchangeSymmetry::Symmetric);
    const CVector<double> k = ket_of(psi);
    const auto r = multi_path_permutation_experiment<double>(
        {anyonic_exchange<double>(k, 0.0), anyonic_exchange<double>(k, 0.4), anyonic_exchange<double>(k, 1.9)}, psi);
    CHECK(std::abs(r.angles[0] - 0.4) < 1e-9);
    CHECK(std::abs(r.angles[1] - 1.9) < 1e-9);
    // The kicked phase on three paths is detectable on two.
    const auto order = detection_order(r.kickback.q, basis_experiment<double>(SystemType::quantum(3)));
    CHECK(order == std::optional<int>(2));
  }
  SUBCASE("a moving permutation is rejected") {
    const auto psi = ket_state(basis_ket<double>(4, 1));
    CHECK_THROWS_AS(multi_path_permutation_experiment<double>({eye(4), swap_unitary<double>(2, 2)}, psi),
                    ValidationError);
  }
}

TEST_CASE("reversibility of constructed composites") {
  for (int t = 0; t < 20; ++t) {
    const int dc = 2 + t % 3, dt = 2 + (t / 3) % 3;
    std::vector<CMatrix<double>> us;
    for (int i = 0; i < dc; ++i) us.push_back(random_unitary_matrix<double>(dt, derive_seed(900, std::uint64_t(t * 8 + i))));
    const auto c = build_controlled<double>(us);
    const auto inv = c.composite().inverse();
    CHECK(distance(compose_seq(inv, c.composite()), Transformation<double>::identity(c.composite_system())) < 1e-9);
  }
}
