#include "doctest.h"

#include "kacdem/weyl.hpp"

#include <random>

using namespace kacdem;

namespace {

struct Ctx {
  const AffineRootDatum& D;
  const CoweightLatticeDesc& L;
  explicit Ctx(const std::string& name)
      : D(datum(name)), L(lattice(D, LatticeKind::Adjoint)) {}

  CoweightClass cw(std::vector<long long> v) const {
    CoweightClass c = L.zero();
    for (size_t i = 0; i < v.size(); ++i) c.coords[i] = Rational(v[i]);
    return c;
  }
  AffineWeight Lam(size_t i) const { return D.fundamental_weight(i); }
};

// brute-force inversion count for untwisted types: positive real roots
// alpha + n delta with small n sent negative
size_t inversion_count_untwisted(const Ctx& c, const WeylElement& x, int nmax) {
  const auto& D = c.D;
  size_t count = 0;
  WeylElement xinv = inverse(x);
  auto root_weight = [&](const ZVec& alpha, int n, bool neg_alpha) {
    FiniteWeight f = D.zero_finite();
    for (size_t k = 0; k < D.ell; ++k)
      for (size_t i = 0; i < D.ell; ++i)
        f.w[i] += Rational(alpha[k] * D.A_fin(i, k)) * Rational(neg_alpha ? -1 : 1);
    AffineWeight w = D.embed_finite(f);
    w.del += Rational(n);
    return w;
  };
  for (const auto& alpha : D.roots_fin.pos_roots) {
    for (int n = 0; n <= nmax; ++n) {
      // alpha + n delta (n >= 0) and -alpha + n delta (n >= 1)
      if (!is_positive_root(D, act(xinv, root_weight(alpha, n, false)))) ++count;
      if (n >= 1 && !is_positive_root(D, act(xinv, root_weight(alpha, n, true)))) ++count;
    }
  }
  return count;
}

} // namespace

TEST_CASE("appendix values: translations acting on level-one weights of A1~1") {
  Ctx c("A1~1");
  AffineWeight Lo = c.Lam(0), L1 = c.Lam(1);
  AffineWeight alpha = c.D.embed_finite(c.D.finite_simple_root(1));
  AffineWeight delta = c.D.delta();
  WeylElement t_plus = translation(c.cw({2}));  // rho^{alpha_check}
  WeylElement t_minus = inverse(t_plus);
  CHECK(act(t_plus, Lo) == Lo - alpha - delta);
  CHECK(act(t_minus, Lo) == Lo + alpha - delta);
  CHECK(act(t_plus, L1) == L1 - alpha);
  CHECK(act(t_minus, L1) == L1 + alpha - Rational(2) * delta);

  WeylElement t_om = translation(c.cw({1})); // rho^{omega_check}
  AffineWeight Lam = Rational(2) * Lo + (L1 - Lo); // 2 Lambda_o + omega
  CHECK(act(t_om, Lam) == Lam - alpha);
  CHECK(act(inverse(t_om), Lam) == Lam + alpha - delta);
  CHECK(act(t_plus, Rational(2) * Lo) == Rational(2) * Lo - Rational(2) * alpha - Rational(2) * delta);
  CHECK(act(t_plus, Lam) == Lam - Rational(2) * alpha - delta);
  CHECK(act(t_minus, Lam) == Lam + Rational(2) * alpha - Rational(3) * delta);
  CHECK(act(weyl_identity(c.L), Lam) == Lam);
}

TEST_CASE("appendix values: twisted A2~2 translations") {
  Ctx c("A2~2");
  AffineWeight Lo = c.Lam(0), L1 = c.Lam(1);
  AffineWeight beta = c.D.embed_finite(c.D.finite_simple_root(1));
  AffineWeight delta = c.D.delta();
  WeylElement t = translation(c.cw({1})); // rho^{omega_bar_check_2}
  CHECK(act(t, Lo) == Lo - Rational(2) * beta - delta);
  CHECK(act(inverse(t), Lo) == Lo + Rational(2) * beta - delta);
  CHECK(act(t, Rational(2) * L1) == Rational(2) * L1 - Rational(2) * beta);
  CHECK(act(inverse(t), Rational(2) * L1) == Rational(2) * L1 + Rational(2) * beta - Rational(2) * delta);
  // 2 Lambda_1 = Lambda_o + beta as weights of level two
  CHECK(Rational(2) * L1 == Lo + beta);
}

TEST_CASE("simple reflections: involutions and the r_o action") {
  for (const auto& name : {"A1~1", "A2~1", "A2~2", "G2~1", "A3~2", "C2~1"}) {
    CAPTURE(name);
    Ctx c(name);
    WeylElement e = weyl_identity(c.L);
    for (size_t i = 0; i <= c.L.rank; ++i) {
      WeylElement r = simple_reflection(c.L, i);
      CHECK(r * r == e);
      CHECK(length(r) == 1);
      // r_i(x) = x - <alpha_check_i, x> alpha_i on fundamental weights
      for (size_t j = 0; j <= c.L.rank; ++j) {
        AffineWeight x = c.D.fundamental_weight(j);
        AffineWeight expect = x - c.D.pair(c.D.simple_coroot(i), x) * c.D.simple_root(i);
        CHECK(act(r, x) == expect);
      }
    }
  }
}

TEST_CASE("group action law on random products") {
  std::mt19937_64 rng(2024);
  for (const auto& name : {"A1~1", "A2~1", "A2~2"}) {
    CAPTURE(name);
    Ctx c(name);
    std::uniform_int_distribution<size_t> node(0, c.L.rank);
    std::uniform_int_distribution<long long> coeff(-2, 2);
    for (int iter = 0; iter < 25; ++iter) {
      WeylElement x = weyl_identity(c.L), y = weyl_identity(c.L);
      for (int k = 0; k < 4; ++k) {
        x = x * simple_reflection(c.L, node(rng));
        y = y * simple_reflection(c.L, node(rng));
      }
      // generic rational test weight
      AffineWeight lam = c.D.zero_weight();
      for (size_t i = 0; i <= c.L.rank; ++i) lam.lam[i] = Rational(coeff(rng));
      lam.del = Rational(coeff(rng));
      CHECK(act(x * y, lam) == act(x, act(y, lam)));
      // conjugation identity w rho^mu w^{-1} = rho^{w(mu)}
      CoweightClass mu = c.cw({});
      mu.coords.assign(c.L.rank, Rational(0));
      for (size_t i = 0; i < c.L.rank; ++i) mu.coords[i] = Rational(coeff(rng));
      WeylElement t = translation(mu);
      CHECK(x * t * inverse(x) == translation(fin_apply(x, mu)));
    }
  }
}

TEST_CASE("length and reduced words on A1~1") {
  Ctx c("A1~1");
  CHECK(length(weyl_identity(c.L)) == 0);
  WeylElement t_alpha = translation(c.cw({2}));
  CHECK(length(t_alpha) == 2);
  CHECK(inversion_count_untwisted(c, t_alpha, 4) == 2);

  WeylElement t_omega = translation(c.cw({1}));
  CHECK(length(t_omega) == 0 + 1); // rho^{omega_check} = s_alpha sigma
  auto rw = reduced_word(t_omega);
  CHECK(rw.letters == std::vector<int>{1});
  CHECK(is_length_zero(rw.omega));
  CHECK(length(rw.omega) == 0);

  auto rm = reduced_word(inverse(t_alpha)); // rho^{-alpha_check} = r_o r_1
  CHECK(rm.letters == std::vector<int>{0, 1});
  CHECK(rm.omega == weyl_identity(c.L));
  CHECK(from_word(c.L, rm.letters) == inverse(t_alpha));

  auto re = reduced_word(weyl_identity(c.L));
  CHECK(re.letters.empty());
  CHECK(re.omega == weyl_identity(c.L));
}

TEST_CASE("length by inversion counting agrees with descent stripping") {
  // untwisted brute force
  for (const auto& name : {"A1~1", "A2~1", "C2~1"}) {
    CAPTURE(name);
    Ctx c(name);
    auto layers = ball(c.L, 5);
    for (size_t len = 0; len < layers.size(); ++len)
      for (const auto& x : layers[len]) {
        CHECK(length(x) == len);
        CHECK(inversion_count_untwisted(c, x, 8) == len);
      }
  }
  // twisted A2~2 against the explicitly enumerated real roots
  {
    Ctx c("A2~2");
    const auto& D = c.D;
    AffineWeight beta = D.embed_finite(D.finite_simple_root(1));
    AffineWeight delta = D.delta();
    std::vector<AffineWeight> pos;
    for (int n = 0; n <= 8; ++n) {
      if (n >= 0) pos.push_back(beta + Rational(n) * delta);
      if (n >= 1) pos.push_back(Rational(-1) * beta + Rational(n) * delta);
      if (n % 2 == 1) {
        pos.push_back(Rational(2) * beta + Rational(n) * delta);
        pos.push_back(Rational(-2) * beta + Rational(n) * delta);
      }
    }
    auto layers = ball(c.L, 5);
    for (size_t len = 0; len < layers.size(); ++len)
      for (const auto& x : layers[len]) {
        WeylElement xinv = inverse(x);
        size_t inv = 0;
        for (const auto& rho : pos)
          if (!is_positive_root(D, act(xinv, rho))) ++inv;
        CHECK(inv == len);
      }
  }
}

TEST_CASE("omega groups and sigma_kappa realizations") {
  Ctx a1("A1~1");
  auto om1 = omega_group(a1.L);
  REQUIRE(om1.size() == 2);
  // sigma_{omega_check} = rho^{-omega_check} s_alpha
  WeylElement expect = translation(a1.cw({-1})) * simple_reflection(a1.L, 1);
  CHECK(om1[1].elt == expect);
  CHECK(is_length_zero(om1[1].elt));
  // node swap o <-> 1
  auto perm = omega_node_action(om1[1]);
  CHECK(perm[0] == 1);
  CHECK(perm[1] == 0);
  // rho^{omega_check} sigma^{-1} = s_alpha
  CHECK(translation(a1.cw({1})) * inverse(om1[1].elt) == simple_reflection(a1.L, 1));

  Ctx a2("A2~1");
  auto om2 = omega_group(a2.L);
  CHECK(om2.size() == 3);
  // sigma_{omega_check_1} = rho^{-omega_check_1} s_1 s_2
  WeylElement s1s2 = simple_reflection(a2.L, 1) * simple_reflection(a2.L, 2);
  CHECK(translation(a2.cw({-1, 0})) * s1s2 == om2[1].elt);
  WeylElement s2s1 = simple_reflection(a2.L, 2) * simple_reflection(a2.L, 1);
  CHECK(translation(a2.cw({0, -1})) * s2s1 == om2[2].elt);

  Ctx tw("A2~2");
  CHECK(omega_group(tw.L).size() == 1);

  // omega_decompose picks the component with rho^mu sigma^{-1} in W_aff
  CHECK(omega_decompose(a1.L, a1.cw({1})).kappa == a1.cw({1}));
  CHECK(omega_decompose(a1.L, a1.cw({2})).kappa == a1.cw({0}));
  CHECK(omega_decompose(a2.L, a2.cw({0, 1})).kappa == a2.cw({1, 0}));
}

TEST_CASE("bruhat order matches the exhaustive subword oracle") {
  for (const auto& name : {"A1~1", "A2~2"}) {
    CAPTURE(name);
    Ctx c(name);
    auto layers = ball(c.L, 5);
    std::vector<WeylElement> elems;
    std::vector<size_t> lens;
    for (size_t len = 0; len < layers.size(); ++len)
      for (const auto& x : layers[len]) {
        elems.push_back(x);
        lens.push_back(len);
      }
    // subword oracle on one reduced word of w: u <= w iff some subsequence of
    // length(u) multiplies to u
    auto oracle = [&](const WeylElement& u, size_t lu, const WeylElement& w) {
      auto letters = reduced_word(w).letters;
      size_t k = letters.size();
      for (size_t mask = 0; mask < (1u << k); ++mask) {
        if (static_cast<size_t>(__builtin_popcount(mask)) != lu) continue;
        WeylElement p = weyl_identity(c.L);
        for (size_t j = 0; j < k; ++j)
          if (mask & (1u << j)) p = p * simple_reflection(c.L, static_cast<size_t>(letters[j]));
        if (p == u) return true;
      }
      return false;
    };
    for (size_t iu = 0; iu < elems.size(); ++iu)
      for (size_t iw = 0; iw < elems.size(); ++iw)
        CHECK(bruhat_leq(elems[iu], elems[iw]) == oracle(elems[iu], lens[iu], elems[iw]));
  }
}

TEST_CASE("bruhat examples from A1~1") {
  Ctx c("A1~1");
  WeylElement e = weyl_identity(c.L);
  WeylElement ro = simple_reflection(c.L, 0);
  WeylElement r1 = simple_reflection(c.L, 1);
  WeylElement t_alpha = translation(c.cw({2})); // = r_1 r_o
  CHECK(t_alpha == r1 * ro);
  CHECK(bruhat_leq(e, t_alpha));
  CHECK(bruhat_leq(r1, t_alpha));
  CHECK(bruhat_leq(ro, t_alpha));
  CHECK(!bruhat_leq(t_alpha, ro));
  // different Omega components never compare
  CHECK(!bruhat_leq(e, translation(c.cw({1}))));
}

TEST_CASE("minimal coset representatives and leq_Y") {
  Ctx c("A1~1");
  WeylElement e = weyl_identity(c.L);
  WeylElement r1 = simple_reflection(c.L, 1);
  WeylElement ro = simple_reflection(c.L, 0);
  WeylElement t_alpha = translation(c.cw({2}));
  CHECK(min_coset_rep(r1, {1}) == e);
  CHECK(min_coset_rep(t_alpha, {1}) == t_alpha); // r_1 r_o has no right 1-descent
  CHECK(min_coset_rep(t_alpha, {}) == t_alpha);
  CHECK_THROWS_AS(min_coset_rep(t_alpha, {0, 1}), Error);

  // leq_Y examples with Ybar = {1}
  CHECK(leq_Y(r1 * t_alpha, t_alpha, {1}));
  CHECK(leq_Y(inverse(t_alpha), t_alpha, {1}));
  CHECK(leq_Y(t_alpha, t_alpha, {1}));
  CHECK(min_coset_rep(inverse(t_alpha), {1}) == ro);

  // union_simplify shadow: pairing predicate matches the coset order
  for (long long m = -3; m <= 3; ++m) {
    CoweightClass mu = c.cw({2 * m}); // in the coroot lattice
    WeylElement t = translation(mu);
    for (size_t i : {size_t(0), size_t(1)}) {
      std::set<size_t> ybar{i};
      bool lhs = leq_Y(simple_reflection(c.L, i) * t, t, ybar);
      bool rhs = union_simplify_pairing_nonneg(c.L, mu, i);
      CHECK(lhs == rhs);
      bool eq = min_coset_rep(simple_reflection(c.L, i) * t, ybar) == min_coset_rep(t, ybar);
      CHECK(eq == (c.L.coroot_pairing(i, mu).is_zero()));
    }
  }
}

TEST_CASE("orbit dominant representatives") {
  Ctx c("A1~1");
  // Y = {1}: -alpha_check is Ybar-dominant
  auto s = orbit_dominant_reps(c.L, c.cw({2}), {1});
  REQUIRE(s.size() == 1);
  CHECK(s[0] == c.cw({-2}));
  // Y = {o}: dominant orbit representative survives
  auto s2 = orbit_dominant_reps(c.L, c.cw({2}), {0});
  REQUIRE(s2.size() == 1);
  CHECK(s2[0] == c.cw({2}));
  // Y = all: whole orbit
  auto s3 = orbit_dominant_reps(c.L, c.cw({1}), {0, 1});
  CHECK(s3.size() == 2);

  Ctx tw("A2~2");
  auto st = orbit_dominant_reps(tw.L, tw.cw({1}), {1});
  REQUIRE(st.size() == 1);
  CHECK(st[0] == tw.cw({-1}));
  auto st2 = orbit_dominant_reps(tw.L, tw.cw({1}), {0});
  REQUIRE(st2.size() == 1);
  CHECK(st2[0] == tw.cw({1}));
}

TEST_CASE("admissible sets") {
  Ctx c("A1~1");
  // mu = 0: just the identity
  auto adm0 = admissible_set(c.L, c.cw({0}), {0, 1});
  REQUIRE(adm0.size() == 1);
  CHECK(adm0[0] == weyl_identity(c.L));

  // mu = omega_check, Y = {o,1}: {rho^{omega}, rho^{-omega}, sigma}
  auto adm = admissible_set(c.L, c.cw({1}), {0, 1});
  CHECK(adm.size() == 3);
  WeylElement sig = omega_group(c.L)[1].elt;
  WeylElement tp = translation(c.cw({1}));
  WeylElement tm = translation(c.cw({-1}));
  auto has = [&](const WeylElement& x) {
    for (const auto& y : adm)
      if (y == x) return true;
    return false;
  };
  CHECK(has(sig));
  CHECK(has(tp));
  CHECK(has(tm));

  // downward closure under leq_Y
  auto adm2 = admissible_set(c.L, c.cw({2}), {1});
  for (const auto& w : adm2)
    for (const auto& v : adm2)
      if (leq_Y(v, w, {0})) {
        // v is already a minimal representative in the output
        CHECK(min_coset_rep(v, {0}) == v);
      }
}
