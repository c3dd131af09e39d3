#include <cmath>

#include "doctest.h"
#include "interferlab/oracle.hpp"

using namespace interferlab;

namespace {

// Brute-force ket evaluation: probability of |+> on the control after U_f
// acts on |+>|1>.
double plus_probability(const std::vector<int>& f) {
  CMatrix<double> u = CMatrix<double>::Zero(4, 4);
  for (int i = 0; i < 2; ++i) {
    u(2 * i, 2 * i) = 1;
    u(2 * i + 1, 2 * i + 1) = f[std::size_t(i)] ? -1 : 1;
  }
  CVector<double> in = CVector<double>::Zero(4);
  in(1) = in(3) = 1 / std::sqrt(2.0);
  const CVector<double> out = u * in;
  // Amplitude of |+>|1>.
  return std::norm((out(1) + out(3)) / std::sqrt(2.0));
}

}  // namespace

TEST_CASE("DecisionFunction") {
  CHECK_THROWS_AS(DecisionFunction({0, 2}), ValidationError);
  const auto f = DecisionFunction::enumerate(3, 0b110);
  CHECK(f.table() == std::vector<int>{0, 1, 1});
}

TEST_CASE("build_oracle") {
  SUBCASE("f = (0, 1) is controlled-Z") {
    const auto o = build_oracle(DecisionFunction({0, 1}));
    CHECK((o.controlled().unitary() - phase_matrix<double>({0, 0, 0, std::numbers::pi})).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("f = (0, 0) is the identity") {
    const auto o = build_oracle(DecisionFunction({0, 0}));
    CHECK((o.controlled().unitary() - CMatrix<double>::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("f = (1, 1) is I (x) Z with no relative kick-back") {
    const auto o = build_oracle(DecisionFunction({1, 1}));
    CHECK((o.controlled().unitary() - kron(CMatrix<double>(CMatrix<double>::Identity(2, 2)), pauli_z<double>()))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(kickback_signature(o) == std::vector<int>{1, 1});
  }
  SUBCASE("domain too small") { CHECK_THROWS_AS(build_oracle(DecisionFunction({1})), ValidationError); }
  SUBCASE("queries are counted per application") {
    auto o = build_oracle(DecisionFunction({0, 1, 1}));
    const auto s = maximally_mixed<double>(tensor(o.control_system(), o.target_system()));
    o.apply(s);
    o.apply(s);
    CHECK(o.query_count() == 2);
    kickback_signature(o);
    CHECK(o.query_count() == 2);
  }
}

TEST_CASE("deutsch parity") {
  for (unsigned k = 0; k < 4; ++k) {
    const auto f = DecisionFunction::enumerate(2, k);
    auto o = build_oracle(f);
    const auto r = deutsch_parity(o);
    CHECK(r.parity == (f(0) ^ f(1)));
    CHECK(std::abs(r.probability - 1.0) < 1e-12);
    CHECK(r.queries == 1);
    CHECK(o.query_count() == 1);
    const double brute = plus_probability(f.table());
    CHECK(std::abs(brute - (r.parity ? 0.0 : 1.0)) < 1e-12);
  }
  auto three = build_oracle(DecisionFunction({0, 1, 0}));
  CHECK_THROWS_AS(deutsch_parity(three), ValidationError);
}

TEST_CASE("pairwise parity") {
  auto o = build_oracle(DecisionFunction({0, 1, 1, 0}));
  CHECK(pairwise_parity(o, 0, 3).parity == 0);
  CHECK(pairwise_parity(o, 0, 1).parity == 1);
  CHECK_THROWS_AS(pairwise_parity(o, 2, 1), ValidationError);
  CHECK_THROWS_AS(pairwise_parity(o, 0, 4), ValidationError);
  auto constant = build_oracle(DecisionFunction({1, 1, 1}));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) CHECK(pairwise_parity(constant, i, j).parity == 0);
  }
}

TEST_CASE("kick-back signature") {
  CHECK(kickback_signature(build_oracle(DecisionFunction({0, 1}))) == std::vector<int>{1, -1});
  CHECK(kickback_signature(build_oracle(DecisionFunction({1, 1, 1}))) == std::vector<int>{1, 1, 1});
  CHECK(kickback_signature(build_oracle(DecisionFunction({0, 1, 0, 1}))) == std::vector<int>{1, -1, 1, -1});
}

TEST_CASE("pairwise parity agrees with the signature") {
  for (int n = 2; n <= 4; ++n) {
    for (unsigned k = 0; k < (1u << n); ++k) {
      const auto f = DecisionFunction::enumerate(n, k);
      auto o = build_oracle(f);
      const auto sig = kickback_signature(o);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          o.reset_queries();
          const auto r = pairwise_parity(o, i, j);
          CHECK(r.parity == int(sig[std::size_t(i)] != sig[std::size_t(j)]));
          CHECK(r.parity == (f(i) ^ f(j)));
          CHECK(o.query_count() == 1);
        }
      }
    }
  }
}
