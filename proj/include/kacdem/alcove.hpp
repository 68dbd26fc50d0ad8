#pragma once

#include "kacdem/weyl.hpp"

#include <set>
#include <vector>

namespace kacdem {

// Facet F_Y of the fundamental alcove, spanned by the vertices
// omega_check_i / a_i for i in Y (with omega_check_o = 0).
struct Facet {
  const AffineRootDatum* dat = nullptr;
  std::set<size_t> Y;
  Integer a_Y;
  // vertex coordinates in the omega_check basis of X_*(T_ad)^tau
  std::vector<std::pair<size_t, QVec>> vertices;
};

inline Facet facet(const AffineRootDatum& D, const std::set<size_t>& Y) {
  require(!Y.empty(), Errc::EmptyY, "facet needs a nonempty vertex set");
  for (size_t i : Y) check(i <= D.ell, "facet node out of range");
  Facet f;
  f.dat = &D;
  f.Y = Y;
  Integer g(0);
  for (size_t i : Y) g = gcd(g, D.a[i]);
  f.a_Y = Integer(D.r) * g;
  for (size_t i : Y) {
    QVec v(D.ell, Rational(0));
    if (i >= 1) v[i - 1] = Rational(1) / Rational(D.a[i]);
    f.vertices.emplace_back(i, v);
  }
  return f;
}

// Rational interior point of F_Y together with the order m of the associated
// automorphism sigma and the integral data h = (m/r) theta = sum s_i omega_check_i.
struct InteriorPointData {
  const AffineRootDatum* dat = nullptr;
  std::set<size_t> Y;
  QVec theta; // omega_check coordinates, size ell
  Integer m;
  ZVec h;     // integer coordinates of (m/r) theta
  ZVec s;     // s_i for i in I_tau
  Integer s_o;
};

namespace detail {

inline InteriorPointData interior_from_theta(const AffineRootDatum& D, const QVec& theta) {
  InteriorPointData out;
  out.dat = &D;
  out.theta = theta;
  Integer q(1);
  for (const auto& x : theta) q = lcm(q, x.den());
  out.m = Integer(D.r) * q;
  out.h.resize(D.ell);
  out.s.resize(D.ell);
  for (size_t i = 0; i < D.ell; ++i) {
    out.h[i] = (theta[i] * Rational(q)).to_integer();
    out.s[i] = out.h[i];
  }
  Integer acc(0);
  for (size_t i = 0; i < D.ell; ++i) acc += D.a[i + 1] * out.s[i];
  out.s_o = q - acc;
  check(out.s_o.sign() >= 0, "interior point lies outside the alcove");
  for (size_t i = 0; i < D.ell; ++i)
    if (!out.s[i].is_zero()) out.Y.insert(i + 1);
  if (!out.s_o.is_zero()) out.Y.insert(0);
  return out;
}

} // namespace detail

// candidate interior points used in the good-prime argument: x_Y first, then
// x_k for k in Y ascending
inline std::vector<QVec> interior_point_candidates(const AffineRootDatum& D, const std::set<size_t>& Y) {
  require(!Y.empty(), Errc::EmptyY, "interior point needs a facet");
  QVec sum(D.ell, Rational(0));
  Integer n_Y(0);
  for (size_t i : Y) {
    n_Y += D.a[i];
    if (i >= 1) sum[i - 1] += Rational(1);
  }
  std::vector<QVec> cands;
  {
    QVec x = sum;
    for (auto& c : x) c /= Rational(n_Y);
    cands.push_back(x);
  }
  for (size_t k : Y) {
    Integer n_k = D.a[k] + n_Y;
    QVec x = sum;
    if (k >= 1) x[k - 1] += Rational(1);
    for (auto& c : x) c /= Rational(n_k);
    cands.push_back(x);
  }
  return cands;
}

// p = 0 means no congruence constraint; otherwise p must not divide a_Y and
// the returned point satisfies p !| m
inline InteriorPointData interior_point(const AffineRootDatum& D, const std::set<size_t>& Y, long long p) {
  Facet f = facet(D, Y);
  if (p != 0)
    require(!(f.a_Y % Integer(p)).is_zero(), Errc::BadPrime,
            "p divides a_Y = " + f.a_Y.to_string());
  for (const auto& theta : interior_point_candidates(D, Y)) {
    InteriorPointData ipd = detail::interior_from_theta(D, theta);
    check(ipd.Y == Y, "candidate is not interior to the facet");
    if (p == 0 || !(ipd.m % Integer(p)).is_zero()) return ipd;
  }
  fail(Errc::Internal, "no good interior point found; good-prime argument violated");
}

// interior point attached to a dominant weight: theta = (1/c) nu^{-1}(lambda)
inline InteriorPointData interior_point_from_weight(const AffineRootDatum& D, const AffineWeight& Lambda) {
  require(Lambda.dat == &D, Errc::MixedDatum, "interior_point_from_weight: foreign weight");
  require(D.is_dominant_integral(Lambda), Errc::NotDominant, "weight must be dominant integral");
  Rational c = D.level(Lambda);
  require(c.sign() > 0, Errc::NotDominant, "weight must have positive level");
  QVec theta(D.ell, Rational(0));
  for (size_t i = 1; i <= D.ell; ++i)
    theta[i - 1] = Lambda.lam[i] / c * Rational(D.acheck[i]) / Rational(D.a[i]);
  InteriorPointData ipd = detail::interior_from_theta(D, theta);
  // the facet of theta is exactly the support of the weight
  std::set<size_t> support;
  for (size_t i = 0; i <= D.ell; ++i)
    if (!Lambda.lam[i].is_zero()) support.insert(i);
  require(ipd.Y == support, Errc::LevelMismatch,
          "interior point support disagrees with the weight support");
  return ipd;
}

// Root data of the sigma-fixed Levi: Pi_sigma, the roots of M_Y, and the
// roots of the centralizer G_theta (all as weights of g^tau, both signs).
struct LeviRoots {
  std::vector<FiniteWeight> pi_sigma;
  std::vector<FiniteWeight> roots_m_y;
  std::vector<FiniteWeight> roots_g_theta;
  std::vector<FiniteWeight> roots_m_yprime; // M_{Y u {o}}
};

namespace detail {

inline std::vector<FiniteWeight> closure_with_negatives(const AffineRootDatum& D,
                                                        const std::set<size_t>& ybar) {
  FacetRootSystem rs = facet_root_system(D, ybar);
  std::set<FiniteWeight> all;
  for (const auto& r : rs.pos_roots) {
    all.insert(r);
    all.insert(Rational(-1) * r);
  }
  return std::vector<FiniteWeight>(all.begin(), all.end());
}

} // namespace detail

inline LeviRoots sigma_levi(const AffineRootDatum& D, const std::set<size_t>& Y,
                            const InteriorPointData& ipd) {
  check(ipd.dat == &D && ipd.Y == Y, "interior point data inconsistent with Y");
  LeviRoots out;
  bool has_o = Y.count(0) > 0;
  if (!has_o) out.pi_sigma.push_back(Rational(-1) * D.theta0());
  for (size_t i = 1; i <= D.ell; ++i)
    if (!Y.count(i)) out.pi_sigma.push_back(D.finite_simple_root(i));

  std::set<size_t> ybar, ybar_prime;
  for (size_t i = 0; i <= D.ell; ++i) {
    if (!Y.count(i)) ybar.insert(i);
    if (!Y.count(i) && i != 0) ybar_prime.insert(i);
  }
  out.roots_m_y = detail::closure_with_negatives(D, ybar);
  out.roots_m_yprime = detail::closure_with_negatives(D, ybar_prime);

  // centralizer roots: <h, alpha> = 0 among all roots of g^tau
  for (const auto& alpha : D.roots_fin.pos_roots) {
    Rational pairing(0);
    for (size_t k = 0; k < D.ell; ++k) pairing += Rational(ipd.h[k] * alpha[k]);
    if (!pairing.is_zero()) continue;
    FiniteWeight w = D.zero_finite();
    for (size_t k = 0; k < D.ell; ++k)
      for (size_t i = 0; i < D.ell; ++i) w.w[i] += Rational(alpha[k] * D.A_fin(i, k));
    out.roots_g_theta.push_back(w);
    out.roots_g_theta.push_back(Rational(-1) * w);
  }
  std::sort(out.roots_g_theta.begin(), out.roots_g_theta.end());
  return out;
}

} // namespace kacdem
