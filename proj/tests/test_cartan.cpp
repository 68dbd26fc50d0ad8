#include "doctest.h"

#include "kacdem/cartan.hpp"
#include "kacdem/lattice.hpp"

#include <vector>

using namespace kacdem;

namespace {

std::vector<std::string> all_supported_types(int max_rank) {
  std::vector<std::string> out;
  for (int n = 1; n <= max_rank; ++n) out.push_back("A" + std::to_string(n) + "~1");
  for (int n = 2; n <= max_rank; ++n) out.push_back("B" + std::to_string(n) + "~1");
  for (int n = 2; n <= max_rank; ++n) out.push_back("C" + std::to_string(n) + "~1");
  for (int n = 4; n <= max_rank; ++n) out.push_back("D" + std::to_string(n) + "~1");
  for (int n = 6; n <= max_rank && n <= 8; ++n) out.push_back("E" + std::to_string(n) + "~1");
  if (max_rank >= 4) out.push_back("F4~1");
  if (max_rank >= 2) out.push_back("G2~1");
  for (int n = 2; n <= max_rank; ++n) out.push_back("A" + std::to_string(n) + "~2");
  for (int n = 4; n <= max_rank; ++n) out.push_back("D" + std::to_string(n) + "~2");
  if (max_rank >= 6) out.push_back("E6~2");
  if (max_rank >= 4) out.push_back("D4~3");
  return out;
}

} // namespace

TEST_CASE("type labels parse and invalid ones are rejected") {
  CHECK(parse_type_label("A1~1").to_string() == "A1~1");
  CHECK(parse_type_label("D4~3").rank == 4);
  CHECK_THROWS_AS(parse_type_label("Z9~1"), Error);
  CHECK_THROWS_AS(parse_type_label("A1~2"), Error); // A_1 has no twist
  CHECK_THROWS_AS(parse_type_label("G2~2"), Error);
  CHECK_THROWS_AS(parse_type_label("A2"), Error);
  CHECK_THROWS_AS(parse_type_label("E9~1"), Error);
  CHECK_THROWS_AS(parse_type_label("D4~4"), Error);
}

TEST_CASE("Kac labels for the small examples") {
  const auto& d1 = datum("A1~1");
  REQUIRE(d1.ell == 1);
  CHECK(d1.a == ZVec{Integer(1), Integer(1)});
  CHECK(d1.acheck == ZVec{Integer(1), Integer(1)});
  CHECK(d1.A(0, 1) == Integer(-2));
  CHECK(d1.A(1, 0) == Integer(-2));

  const auto& d2 = datum("A2~2");
  REQUIRE(d2.ell == 1);
  CHECK(d2.a == ZVec{Integer(1), Integer(2)});
  CHECK(d2.acheck == ZVec{Integer(2), Integer(1)});
  CHECK(d2.A(0, 1) == Integer(-1));
  CHECK(d2.A(1, 0) == Integer(-4));

  const auto& d3 = datum("A2~1");
  REQUIRE(d3.ell == 2);
  CHECK(d3.a == ZVec{Integer(1), Integer(1), Integer(1)});
  CHECK(d3.acheck == ZVec{Integer(1), Integer(1), Integer(1)});
}

TEST_CASE("null and central identities hold exactly for every supported type") {
  for (const auto& name : all_supported_types(8)) {
    CAPTURE(name);
    const auto& D = datum(name);
    CHECK(D.a[0].is_one());
    bool a2l2 = D.label.family == 'A' && D.label.twist == 2 && D.label.rank % 2 == 0;
    CHECK(D.acheck[0] == Integer(a2l2 ? 2 : 1));
    for (size_t j = 0; j <= D.ell; ++j) {
      Integer s1(0), s2(0);
      for (size_t i = 0; i <= D.ell; ++i) {
        s1 += D.a[i] * D.A(j, i);
        s2 += D.acheck[i] * D.A(i, j);
      }
      CHECK(s1.is_zero());
      CHECK(s2.is_zero());
    }
    // delta is null and K central through the pairing interface
    AffineWeight delta = D.delta();
    CartanElement K = D.central_element();
    for (size_t i = 0; i <= D.ell; ++i) {
      CHECK(D.pair(D.simple_coroot(i), delta).is_zero());
      CHECK(D.pair(K, D.simple_root(i)).is_zero());
    }
    CHECK(D.pair(D.scaling_element(), delta) == Rational(1));
  }
}

TEST_CASE("normalized form: (theta0|theta0) = 2 acheck_o, nu(K) = delta") {
  for (const auto& name : all_supported_types(8)) {
    CAPTURE(name);
    const auto& D = datum(name);
    AffineWeight t0 = D.embed_finite(D.theta0());
    CHECK(D.bilinear(t0, t0) == Rational(2) * Rational(D.acheck[0]));
    CHECK(D.nu(D.central_element()) == D.delta());
    CHECK(D.bilinear(D.delta(), D.delta()).is_zero());
    for (size_t i = 0; i <= D.ell; ++i) {
      AffineWeight lhs = D.nu(D.simple_coroot(i));
      AffineWeight rhs = Rational(D.a[i]) / Rational(D.acheck[i]) * D.simple_root(i);
      CHECK(lhs == rhs);
    }
    // nu_inv . nu = identity on a spanning set
    for (size_t i = 0; i <= D.ell; ++i)
      CHECK(D.nu_inv(D.nu(D.simple_coroot(i))) == D.simple_coroot(i));
    CHECK(D.nu_inv(D.nu(D.scaling_element())) == D.scaling_element());
    CHECK(D.nu(D.zero_cartan()) == D.zero_weight());
    // symmetry of the form on a basis
    std::vector<AffineWeight> basis;
    for (size_t i = 0; i <= D.ell; ++i) basis.push_back(D.fundamental_weight(i));
    basis.push_back(D.delta());
    for (const auto& x : basis)
      for (const auto& y : basis) CHECK(D.bilinear(x, y) == D.bilinear(y, x));
  }
}

TEST_CASE("specific bilinear values") {
  const auto& d1 = datum("A1~1");
  AffineWeight t1 = d1.embed_finite(d1.theta0());
  CHECK(d1.bilinear(t1, t1) == Rational(2));
  const auto& d2 = datum("A2~2");
  AffineWeight t2 = d2.embed_finite(d2.theta0());
  CHECK(d2.bilinear(t2, t2) == Rational(4));
  // (Lambda_o | Lambda_o) = 0 and (Lambda_o | alpha_i) = d_o delta_{io}
  for (const auto& name : {"A1~1", "A2~2", "A2~1", "G2~1"}) {
    const auto& D = datum(name);
    AffineWeight Lo = D.fundamental_weight(0);
    CHECK(D.bilinear(Lo, Lo).is_zero());
    for (size_t i = 0; i <= D.ell; ++i) {
      Rational expect = (i == 0) ? D.d[0] : Rational(0);
      CHECK(D.bilinear(Lo, D.simple_root(i)) == expect);
    }
  }
  CHECK_THROWS_AS(datum("A1~1").bilinear(datum("A1~1").delta(), datum("A2~1").delta()), Error);
}

TEST_CASE("theta0 case values") {
  // A_1^(1): theta_0 = alpha_1
  const auto& d1 = datum("A1~1");
  CHECK(d1.theta0_alpha == ZVec{Integer(1)});
  // A_2^(2): theta_0 = 2 * (highest short root of sl_2) = 2 alpha_1
  const auto& d2 = datum("A2~2");
  CHECK(d2.theta0_alpha == ZVec{Integer(2)});
  // A_2^(1): theta = alpha_1 + alpha_2
  const auto& d3 = datum("A2~1");
  CHECK(d3.theta0_alpha == (ZVec{Integer(1), Integer(1)}));
  // <theta_check_0, theta_0> = 2 everywhere
  for (const auto& name : all_supported_types(8)) {
    CAPTURE(name);
    const auto& D = datum(name);
    CHECK(D.pair(D.theta0_check(), D.embed_finite(D.theta0())) == Rational(2));
  }
}

TEST_CASE("iota, A-map and Lemma numu across all types") {
  for (const auto& name : all_supported_types(8)) {
    CAPTURE(name);
    const auto& D = datum(name);
    const auto& L = lattice(D, LatticeKind::Adjoint);
    // nu(A(mu)) = iota(mu) on the basis of the coinvariant lattice
    for (size_t i = 0; i < D.ell; ++i) {
      CoweightClass mu = L.basis_vector(i);
      CartanElement am = L.A_map(mu);
      FiniteWeight im = L.iota(mu);
      CHECK(D.nu(am) == D.embed_finite(im));
    }
    // A(mu_0) = theta_check_0
    CoweightClass mu0{&L, to_rational(D.mu0_class)};
    CHECK(L.A_map(mu0) == D.theta0_check());
    // r = 1: A is the identity map, i.e. A(class of omega_check_i) has the
    // coroot coordinates of omega_check_i itself
    if (D.r == 1) {
      QMat Ainv = inverse(to_rational(D.A_g));
      for (size_t i = 0; i < D.ell; ++i) {
        CartanElement am = L.A_map(L.basis_vector(i));
        for (size_t k = 0; k < D.ell; ++k) CHECK(am.alc[k + 1] == Ainv(i, k));
      }
    }
    // linearity: iota(0) = 0
    CoweightClass zero{&L, QVec(D.ell, Rational(0))};
    CHECK(L.iota(zero) == D.zero_finite());
  }
}

TEST_CASE("A2~2 specific values: iota(omega_bar_2) = beta, mu_0 = omega_bar_2") {
  const auto& D = datum("A2~2");
  const auto& L = lattice(D, LatticeKind::Adjoint);
  // class of omega_check_2 is the basis vector of the coinvariant lattice
  CoweightClass om2 = L.project_g_coweight(ZVec{Integer(0), Integer(1)});
  CHECK(om2.coords == QVec{Rational(1)});
  // iota of it is the simple root beta of g^tau (= 2 * fundamental weight)
  FiniteWeight beta = D.finite_simple_root(1);
  CHECK(L.iota(om2) == beta);
  // mu_0 = class of alpha_check_1 = same basis vector
  CHECK(D.mu0_class == ZVec{Integer(1)});
}

TEST_CASE("simply connected lattice and omega quotient sizes") {
  const auto& D1 = datum("A1~1");
  CHECK(lattice(D1, LatticeKind::Adjoint).omega_order() == 2);
  CHECK(lattice(D1, LatticeKind::SimplyConnected).omega_order() == 1);
  const auto& D2 = datum("A2~1");
  CHECK(lattice(D2, LatticeKind::Adjoint).omega_order() == 3);
  const auto& D3 = datum("A2~2");
  CHECK(lattice(D3, LatticeKind::Adjoint).omega_order() == 1);
  const auto& D4 = datum("A3~2");
  CHECK(lattice(D4, LatticeKind::Adjoint).omega_order() == 2);
  const auto& D5 = datum("D4~1");
  CHECK(lattice(D5, LatticeKind::Adjoint).omega_order() == 4);
}
