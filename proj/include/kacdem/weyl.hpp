#pragma once

#include "kacdem/lattice.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace kacdem {

// Element of the extended affine Weyl group X_*(T)_tau x| W^tau, stored as
// a translation part (class coordinates) and the finite part as matrices on
// the coweight classes and on (h^tau)^*. Equality is structural.
struct WeylElement {
  const CoweightLatticeDesc* lat = nullptr;
  QVec trans;                 // translation coweight class
  ZMat mc;                    // finite part on class coordinates
  QMat mw;                    // finite part on omega-coordinates of (h^tau)^*
  std::vector<int> word_hint; // letters of I_tau used to build the finite part

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.lat == b.lat && a.trans == b.trans && a.mc == b.mc;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
  friend bool operator<(const WeylElement& a, const WeylElement& b) {
    check(a.lat == b.lat, "WeylElement: comparing across lattices");
    for (size_t i = 0; i < a.trans.size(); ++i) {
      int c = cmp(a.trans[i], b.trans[i]);
      if (c) return c < 0;
    }
    size_t n = a.mc.rows();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        int c = cmp(a.mc(i, j), b.mc(i, j));
        if (c) return c < 0;
      }
    return false;
  }
};

inline WeylElement weyl_identity(const CoweightLatticeDesc& L) {
  return WeylElement{&L, QVec(L.rank, Rational(0)), ZMat::identity(L.rank), QMat::identity(L.rank), {}};
}

inline WeylElement translation(const CoweightClass& mu) {
  require(mu.lat != nullptr, Errc::Internal, "translation: no lattice");
  require(mu.lat->contains(mu), Errc::NotInLattice,
          "coweight is not a lattice point of the chosen lattice");
  WeylElement x = weyl_identity(*mu.lat);
  x.trans = mu.coords;
  return x;
}

// finite part applied to a coweight class
inline CoweightClass fin_apply(const WeylElement& x, const CoweightClass& mu) {
  require(mu.lat == x.lat, Errc::MixedDatum, "fin_apply: foreign coweight");
  return CoweightClass{x.lat, to_rational(x.mc).apply(mu.coords)};
}

inline WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  require(a.lat == b.lat, Errc::MixedDatum, "product across lattices");
  WeylElement r;
  r.lat = a.lat;
  QVec ubv = to_rational(a.mc).apply(b.trans);
  r.trans = a.trans;
  for (size_t i = 0; i < r.trans.size(); ++i) r.trans[i] += ubv[i];
  r.mc = a.mc * b.mc;
  r.mw = a.mw * b.mw;
  r.word_hint = a.word_hint;
  r.word_hint.insert(r.word_hint.end(), b.word_hint.begin(), b.word_hint.end());
  return r;
}

inline WeylElement inverse(const WeylElement& x) {
  WeylElement r;
  r.lat = x.lat;
  QMat mcinv = inverse(to_rational(x.mc));
  r.mc = to_integer(mcinv);
  r.mw = inverse(x.mw);
  QVec t = mcinv.apply(x.trans);
  r.trans = QVec(t.size());
  for (size_t i = 0; i < t.size(); ++i) r.trans[i] = -t[i];
  r.word_hint.assign(x.word_hint.rbegin(), x.word_hint.rend());
  return r;
}

namespace detail {

inline WeylElement make_finite_reflection(const CoweightLatticeDesc& L, size_t i) {
  WeylElement x = weyl_identity(L);
  x.mc = L.refl_c[i - 1];
  x.mw = L.refl_w[i - 1];
  x.word_hint = {static_cast<int>(i)};
  return x;
}

// r_o = rho^{-mu_0} r_{theta_0}
inline WeylElement make_affine_reflection(const CoweightLatticeDesc& L) {
  const AffineRootDatum& D = *L.dat;
  // reflection in theta_0 as a word in the finite generators
  ZVec gamma = D.theta0_alpha;
  bool a2l2 = D.label.family == 'A' && D.label.twist == 2 && D.label.rank % 2 == 0;
  if (a2l2)
    for (auto& c : gamma) c = c / Integer(2);
  std::vector<int> pre;
  auto is_simple = [&](const ZVec& c) -> int {
    int idx = -1;
    for (size_t k = 0; k < c.size(); ++k) {
      if (c[k].is_zero()) continue;
      if (idx >= 0 || !c[k].is_one()) return -1;
      idx = static_cast<int>(k);
    }
    return idx;
  };
  int simple = is_simple(gamma);
  size_t guard = 0;
  while (simple < 0) {
    check(++guard < 10000, "reflection word search did not terminate");
    bool moved = false;
    for (size_t j = 0; j < D.ell && !moved; ++j) {
      Integer p(0);
      for (size_t k = 0; k < D.ell; ++k) p += gamma[k] * D.A_fin(j, k);
      if (p.sign() <= 0) continue;
      ZVec next = gamma;
      next[j] -= p;
      bool positive = true;
      for (const auto& c : next)
        if (c.sign() < 0) positive = false;
      if (!positive) continue;
      gamma = next;
      pre.push_back(static_cast<int>(j) + 1);
      moved = true;
    }
    check(moved, "stuck while reducing theta_0 to a simple root");
    simple = is_simple(gamma);
  }
  WeylElement w = weyl_identity(L);
  for (int letter : pre) w = w * make_finite_reflection(L, static_cast<size_t>(letter));
  WeylElement refl = w * make_finite_reflection(L, static_cast<size_t>(simple + 1)) * inverse(w);
  refl.word_hint.clear();
  for (int letter : pre) refl.word_hint.push_back(letter);
  refl.word_hint.push_back(simple + 1);
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) refl.word_hint.push_back(*it);
  WeylElement mu0 = weyl_identity(L);
  for (size_t k = 0; k < L.rank; ++k) mu0.trans[k] = -Rational(D.mu0_class[k]);
  return mu0 * refl;
}

} // namespace detail

// cached generators r_o, r_1, ..., r_ell
inline const std::vector<WeylElement>& simple_reflections(const CoweightLatticeDesc& L) {
  static std::mutex mu;
  static std::map<const CoweightLatticeDesc*, std::unique_ptr<std::vector<WeylElement>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(&L);
    if (it != cache.end()) return *it->second;
  }
  auto gens = std::make_unique<std::vector<WeylElement>>();
  gens->push_back(detail::make_affine_reflection(L));
  for (size_t i = 1; i <= L.rank; ++i) gens->push_back(detail::make_finite_reflection(L, i));
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(&L);
  if (it == cache.end()) it = cache.emplace(&L, std::move(gens)).first;
  return *it->second;
}

inline WeylElement simple_reflection(const CoweightLatticeDesc& L, size_t i) {
  check(i <= L.rank, "simple_reflection: node out of range");
  return simple_reflections(L)[i];
}

// action on the affine weight space, following the standard formula
// rho^mu w (x) = w(x) - <w(x),K> iota(mu)
//               + ((w(x)|iota(mu)) - 1/2 (iota(mu)|iota(mu)) <w(x),K>) delta
inline AffineWeight act(const WeylElement& x, const AffineWeight& lam) {
  const AffineRootDatum& D = *x.lat->dat;
  require(lam.dat == &D, Errc::MixedDatum, "act: weight over a different datum");
  // finite part fixes Lambda_o and delta
  FiniteWeight xi = D.restrict_finite(lam);
  FiniteWeight wxi{&D, x.mw.apply(xi.w)};
  AffineWeight wlam = D.embed_finite(wxi) + (lam - D.embed_finite(xi));
  CoweightClass mu{x.lat, x.trans};
  FiniteWeight im = x.lat->iota(mu);
  AffineWeight imw = D.embed_finite(im);
  Rational lvl = D.level(wlam);
  Rational shift = D.bilinear(wlam, imw) - Rational(1, 2) * D.bilinear(imw, imw) * lvl;
  AffineWeight out = wlam - lvl * imw;
  out.del += shift;
  return out;
}

// positivity of a real affine root given as a weight (level zero)
inline bool is_positive_root(const AffineRootDatum& D, const AffineWeight& rho) {
  check(D.level(rho).is_zero(), "root must have level zero");
  Rational n = D.delta_degree(rho);
  if (!n.is_zero()) return n.sign() > 0;
  FiniteWeight xi = D.restrict_finite(rho);
  QVec alpha = D.A_fin_inv.apply(xi.w);
  for (const auto& c : alpha) {
    if (c.sign() > 0) return true;
    if (c.sign() < 0) return false;
  }
  fail(Errc::Internal, "zero weight is not a root");
}

namespace detail {
inline Rational length_bound(const WeylElement& x) {
  const auto& L = *x.lat;
  const auto& D = *L.dat;
  CoweightClass mu{&L, x.trans};
  FiniteWeight im = L.iota(mu);
  Rational b(0);
  for (size_t k = 0; k < D.roots_fin.pos_roots.size(); ++k) {
    Rational p(0);
    for (size_t i = 0; i < D.ell; ++i) p += Rational(D.roots_fin.pos_coroots[k][i]) * im.w[i];
    if (p.sign() < 0) p = -p;
    b += p + Rational(2);
  }
  return b;
}
} // namespace detail

struct ReducedWord {
  std::vector<int> letters; // affine nodes, 0 = o
  WeylElement omega;        // length-zero remainder, x = prod r_i . omega
};

// reduced word by stripping left descents; the remainder has length zero
inline ReducedWord reduced_word(const WeylElement& x) {
  const auto& L = *x.lat;
  const auto& D = *L.dat;
  std::vector<AffineWeight> alpha;
  std::vector<WeylElement> gens;
  for (size_t i = 0; i <= L.rank; ++i) {
    alpha.push_back(D.simple_root(i));
    gens.push_back(simple_reflection(L, i));
  }
  ReducedWord out;
  WeylElement z = inverse(x);
  Rational bound = detail::length_bound(x) + Rational(static_cast<long long>(L.rank) + 2);
  while (true) {
    check(Rational(static_cast<long long>(out.letters.size())) <= bound,
          "descent stripping exceeded the length bound");
    bool found = false;
    for (size_t i = 0; i <= L.rank; ++i) {
      if (is_positive_root(D, act(z, alpha[i]))) continue;
      z = z * gens[i];
      out.letters.push_back(static_cast<int>(i));
      found = true;
      break;
    }
    if (!found) break;
  }
  out.omega = inverse(z);
  return out;
}

inline size_t length(const WeylElement& x) { return reduced_word(x).letters.size(); }

inline bool is_length_zero(const WeylElement& x) {
  const auto& D = *x.lat->dat;
  for (size_t i = 0; i <= x.lat->rank; ++i)
    if (!is_positive_root(D, act(x, D.simple_root(i)))) return false;
  return true;
}

inline WeylElement from_word(const CoweightLatticeDesc& L, const std::vector<int>& letters) {
  WeylElement x = weyl_identity(L);
  for (int i : letters) x = x * simple_reflection(L, static_cast<size_t>(i));
  return x;
}

inline bool in_waff(const WeylElement& x) {
  return x.lat->in_coroot_lattice(CoweightClass{x.lat, x.trans});
}

// ---------------------------------------------------------------------------
// Omega, the length-zero subgroup
// ---------------------------------------------------------------------------

struct OmegaElement {
  CoweightClass kappa;  // 0 or a minuscule dominant class
  WeylElement elt;      // rho^{-kappa} w_kappa w_0
};

inline WeylElement longest_in_parabolic(const CoweightLatticeDesc& L, const std::vector<size_t>& J) {
  // push rho_J to the antidominant chamber of the parabolic
  QVec v(L.rank, Rational(0));
  for (size_t i : J) v[i - 1] = Rational(1);
  WeylElement w = weyl_identity(L);
  size_t guard = 0;
  while (true) {
    check(++guard < 100000, "longest element search did not terminate");
    bool moved = false;
    for (size_t i : J) {
      if (v[i - 1].sign() <= 0) continue;
      v = L.refl_w[i - 1].apply(v);
      w = simple_reflection(L, i) * w;
      moved = true;
      break;
    }
    if (!moved) break;
  }
  return w;
}

inline WeylElement longest_element(const CoweightLatticeDesc& L) {
  std::vector<size_t> all;
  for (size_t i = 1; i <= L.rank; ++i) all.push_back(i);
  return longest_in_parabolic(L, all);
}

namespace detail {
inline std::vector<OmegaElement> build_omega_group(const CoweightLatticeDesc& L) {
  std::vector<OmegaElement> out;
  // identity
  out.push_back(OmegaElement{L.zero(), weyl_identity(L)});
  if (L.omega_order() == 1) return out;
  std::set<std::vector<long long>> found;
  {
    auto c = L.quotient_class(L.zero());
    std::vector<long long> key;
    for (const auto& x : c) key.push_back(x.to_int64());
    found.insert(key);
  }
  WeylElement w0 = longest_element(L);
  for (size_t i = 0; i < L.rank && out.size() < L.omega_order(); ++i) {
    CoweightClass kappa = L.basis_vector(i);
    auto cls = L.quotient_class(CoweightClass{&L, QVec(kappa.coords)});
    std::vector<long long> key;
    for (const auto& x : cls) key.push_back(x.to_int64());
    // the class of the translation part of sigma_kappa is [-kappa]; dedupe on [kappa]
    if (found.count(key)) continue;
    // stabilizer parabolic of kappa
    std::vector<size_t> J;
    FiniteWeight ik = L.iota(kappa);
    for (size_t j = 1; j <= L.rank; ++j)
      if (ik.w[j - 1].is_zero()) J.push_back(j);
    WeylElement wk = longest_in_parabolic(L, J);
    WeylElement cand = translation(-kappa) * wk * w0;
    if (!is_length_zero(cand)) continue;
    found.insert(key);
    out.push_back(OmegaElement{kappa, cand});
  }
  check(out.size() == L.omega_order(), "could not realize every Omega class");
  return out;
}
} // namespace detail

inline const std::vector<OmegaElement>& omega_group(const CoweightLatticeDesc& L) {
  static std::mutex mu;
  static std::map<const CoweightLatticeDesc*, std::unique_ptr<std::vector<OmegaElement>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(&L);
    if (it != cache.end()) return *it->second;
  }
  auto built = std::make_unique<std::vector<OmegaElement>>(detail::build_omega_group(L));
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(&L);
  if (it == cache.end()) it = cache.emplace(&L, std::move(built)).first;
  return *it->second;
}

// the unique sigma_kappa with rho^mu sigma_kappa^{-1} in W_aff
inline OmegaElement omega_decompose(const CoweightLatticeDesc& L, const CoweightClass& mu) {
  require(mu.lat == &L, Errc::MixedDatum, "omega_decompose: foreign coweight");
  require(L.contains(mu), Errc::NotInLattice, "omega_decompose: not a lattice point");
  for (const auto& om : omega_group(L)) {
    WeylElement probe = translation(mu) * inverse(om.elt);
    if (in_waff(probe)) return om;
  }
  fail(Errc::Internal, "no Omega component matched");
}

// Omega-component of an arbitrary extended element
inline OmegaElement omega_component(const WeylElement& x) {
  return omega_decompose(*x.lat, CoweightClass{x.lat, x.trans});
}

// node permutation induced by conjugation with a length-zero element
inline std::vector<size_t> omega_node_action(const OmegaElement& om) {
  const auto& L = *om.elt.lat;
  std::vector<size_t> perm(L.rank + 1);
  for (size_t i = 0; i <= L.rank; ++i) {
    WeylElement c = om.elt * simple_reflection(L, i) * inverse(om.elt);
    bool found = false;
    for (size_t j = 0; j <= L.rank && !found; ++j)
      if (c == simple_reflection(L, j)) {
        perm[i] = j;
        found = true;
      }
    check(found, "conjugation by Omega does not permute the simple reflections");
  }
  return perm;
}

// ---------------------------------------------------------------------------
// Bruhat order and coset combinatorics
// ---------------------------------------------------------------------------

namespace detail {
// u <= w inside W_aff, recursing on a left descent of w
inline bool bruhat_leq_waff(const WeylElement& u, const WeylElement& w, size_t lu, size_t lw) {
  const auto& L = *u.lat;
  const auto& D = *L.dat;
  if (lu > lw) return false;
  if (lw == 0) return lu == 0;
  WeylElement winv = inverse(w);
  size_t s = L.rank + 1;
  for (size_t i = 0; i <= L.rank; ++i)
    if (!is_positive_root(D, act(winv, D.simple_root(i)))) { s = i; break; }
  check(s <= L.rank, "positive-length element without a left descent");
  WeylElement rs = simple_reflection(L, s);
  WeylElement sw = rs * w;
  WeylElement uinv = inverse(u);
  bool su_down = !is_positive_root(D, act(uinv, D.simple_root(s)));
  if (su_down) return bruhat_leq_waff(rs * u, sw, lu - 1, lw - 1);
  return bruhat_leq_waff(u, sw, lu, lw - 1);
}
} // namespace detail

inline bool bruhat_leq(const WeylElement& u, const WeylElement& w) {
  require(u.lat == w.lat, Errc::MixedDatum, "bruhat_leq across lattices");
  // same Omega component required
  WeylElement ou = omega_component(u).elt;
  WeylElement ow = omega_component(w).elt;
  if (ou != ow) return false;
  WeylElement u1 = u * inverse(ou);
  WeylElement w1 = w * inverse(ow);
  return detail::bruhat_leq_waff(u1, w1, length(u1), length(w1));
}

inline void require_proper_parabolic(const CoweightLatticeDesc& L, const std::set<size_t>& ybar) {
  require(ybar.size() <= L.rank, Errc::InfiniteParabolic,
          "parabolic on all affine nodes is the whole affine Weyl group");
  for (size_t i : ybar) check(i <= L.rank, "parabolic node out of range");
}

// minimal-length element of x W_{Ybar}
inline WeylElement min_coset_rep(const WeylElement& x, const std::set<size_t>& ybar) {
  const auto& L = *x.lat;
  const auto& D = *L.dat;
  require_proper_parabolic(L, ybar);
  WeylElement y = x;
  size_t guard = 0;
  while (true) {
    check(++guard < 100000, "min_coset_rep did not terminate");
    bool moved = false;
    for (size_t i : ybar) {
      if (is_positive_root(D, act(y, D.simple_root(i)))) continue;
      y = y * simple_reflection(L, i);
      moved = true;
      break;
    }
    if (!moved) break;
  }
  return y;
}

inline bool leq_Y(const WeylElement& u, const WeylElement& w, const std::set<size_t>& ybar) {
  return bruhat_leq(min_coset_rep(u, ybar), min_coset_rep(w, ybar));
}

// ---------------------------------------------------------------------------
// Orbits, Ybar-dominance, admissible sets
// ---------------------------------------------------------------------------

inline std::vector<CoweightClass> weyl_orbit(const CoweightLatticeDesc& L, const CoweightClass& mu) {
  require(mu.lat == &L, Errc::MixedDatum, "weyl_orbit: foreign coweight");
  std::set<CoweightClass> seen{mu};
  std::vector<CoweightClass> frontier{mu};
  while (!frontier.empty()) {
    std::vector<CoweightClass> next;
    for (const auto& v : frontier)
      for (size_t i = 1; i <= L.rank; ++i) {
        CoweightClass w = L.reflect(i, v);
        if (seen.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  return std::vector<CoweightClass>(seen.begin(), seen.end());
}

// the root system Phi_{Ybar} on the base {beta_i}, beta_o = -theta_0
struct FacetRootSystem {
  std::vector<FiniteWeight> pos_roots;
  std::vector<QVec> pos_coroots; // in beta_check coordinates of g^tau
  std::vector<FiniteWeight> base_roots;
  std::vector<QVec> base_coroots;
};

inline FacetRootSystem facet_root_system(const AffineRootDatum& D, const std::set<size_t>& ybar) {
  FacetRootSystem out;
  std::vector<FiniteWeight> base;
  std::vector<QVec> base_co;
  for (size_t i : ybar) {
    if (i == 0) {
      FiniteWeight t = D.theta0();
      base.push_back(Rational(-1) * t);
      QVec co(D.ell);
      for (size_t k = 0; k < D.ell; ++k) co[k] = -D.theta0_check_beta[k];
      base_co.push_back(co);
    } else {
      base.push_back(D.finite_simple_root(i));
      QVec co(D.ell, Rational(0));
      co[i - 1] = Rational(1);
      base_co.push_back(co);
    }
  }
  out.base_roots = base;
  out.base_coroots = base_co;
  size_t m = base.size();
  auto pair_co = [&](const QVec& co, const FiniteWeight& w) {
    Rational s(0);
    for (size_t k = 0; k < co.size(); ++k) s += co[k] * w.w[k];
    return s;
  };
  // enumerate in base coordinates
  std::set<std::vector<Rational>> seen_keys;
  struct Node {
    QVec basecoords;
    FiniteWeight root;
    QVec coroot;
  };
  std::vector<Node> all, frontier;
  for (size_t i = 0; i < m; ++i) {
    QVec bc(m, Rational(0));
    bc[i] = Rational(1);
    Node n{bc, base[i], base_co[i]};
    std::vector<Rational> key = bc;
    seen_keys.insert(key);
    all.push_back(n);
    frontier.push_back(n);
  }
  while (!frontier.empty()) {
    std::vector<Node> next;
    for (const auto& node : frontier)
      for (size_t j = 0; j < m; ++j) {
        Rational pr = pair_co(base_co[j], node.root);
        Rational pc = pair_co(node.coroot, base[j]);
        Node nn = node;
        nn.basecoords[j] -= pr;
        nn.root = node.root - pr * base[j];
        for (size_t k = 0; k < nn.coroot.size(); ++k) nn.coroot[k] -= pc * base_co[j][k];
        if (seen_keys.insert(nn.basecoords).second) {
          all.push_back(nn);
          next.push_back(nn);
        }
      }
    frontier = std::move(next);
  }
  for (const auto& node : all) {
    bool pos = true;
    for (const auto& c : node.basecoords)
      if (c.sign() < 0) pos = false;
    if (pos) {
      out.pos_roots.push_back(node.root);
      out.pos_coroots.push_back(node.coroot);
    }
  }
  return out;
}

inline bool is_ybar_dominant(const CoweightLatticeDesc& L, const FacetRootSystem& phi,
                             const CoweightClass& mu) {
  FiniteWeight im = L.iota(mu);
  for (const auto& co : phi.pos_coroots) {
    Rational s(0);
    for (size_t k = 0; k < co.size(); ++k) s += co[k] * im.w[k];
    if (s.sign() < 0) return false;
  }
  return true;
}

// S_{Y,mu}: the Ybar-dominant elements of the W^tau-orbit of mu
inline std::vector<CoweightClass> orbit_dominant_reps(const CoweightLatticeDesc& L,
                                                      const CoweightClass& mu,
                                                      const std::set<size_t>& Y) {
  std::set<size_t> ybar;
  for (size_t i = 0; i <= L.rank; ++i)
    if (!Y.count(i)) ybar.insert(i);
  FacetRootSystem phi = facet_root_system(*L.dat, ybar);
  std::vector<CoweightClass> out;
  for (const auto& eta : weyl_orbit(L, mu))
    if (is_ybar_dominant(L, phi, eta)) out.push_back(eta);
  return out;
}

// Lemma-level predicate: r_i rho^mu <=_Y rho^mu iff <alpha_check_i, iota(mu)> >= 0
inline bool union_simplify_pairing_nonneg(const CoweightLatticeDesc& L, const CoweightClass& mu,
                                          size_t i) {
  return L.coroot_pairing(i, mu).sign() >= 0;
}

// hypothesis of the parabolic-descent order statement: every positive root of
// Phi_{Ybar} made negative by wbar pairs nonnegatively with iota(mu)
inline bool parabolic_descent_hypothesis(const CoweightLatticeDesc& L, const FacetRootSystem& phi,
                                         const std::vector<int>& wbar_letters,
                                         const CoweightClass& mu) {
  const auto& D = *L.dat;
  FiniteWeight im = L.iota(mu);
  auto pair_co = [&](const QVec& co, const FiniteWeight& w) {
    Rational s(0);
    for (size_t k = 0; k < co.size(); ++k) s += co[k] * w.w[k];
    return s;
  };
  // wbar as the product of base reflections indexed by letters into phi.base
  auto apply_wbar = [&](FiniteWeight x) {
    for (auto it = wbar_letters.rbegin(); it != wbar_letters.rend(); ++it) {
      const auto& b = phi.base_roots[static_cast<size_t>(*it)];
      const auto& bc = phi.base_coroots[static_cast<size_t>(*it)];
      x = x - pair_co(bc, x) * b;
    }
    return x;
  };
  // base coordinates for positivity checks
  QMat basemat(D.ell, phi.base_roots.size());
  for (size_t j = 0; j < phi.base_roots.size(); ++j)
    for (size_t k = 0; k < D.ell; ++k) basemat(k, j) = phi.base_roots[j].w[k];
  for (size_t r = 0; r < phi.pos_roots.size(); ++r) {
    FiniteWeight img = apply_wbar(phi.pos_roots[r]);
    auto sol = solve(basemat, img.w);
    check(sol.has_value(), "image not in the facet root lattice");
    bool negative = false;
    for (const auto& c : *sol)
      if (c.sign() < 0) negative = true;
    if (!negative) continue;
    if (pair_co(phi.pos_coroots[r], im).sign() < 0) return false;
  }
  return true;
}

// Bruhat interval [e, w] inside W_aff, through the descent recursion
// [e, sw] u s.[e, sw] for a left descent s of w.
inline std::set<WeylElement> bruhat_interval(const WeylElement& w) {
  const auto& L = *w.lat;
  const auto& D = *L.dat;
  check(in_waff(w), "bruhat_interval expects an affine Weyl group element");
  WeylElement cur = w;
  std::vector<size_t> descents; // left descents peeled from w
  while (true) {
    WeylElement curinv = inverse(cur);
    size_t s = L.rank + 1;
    for (size_t i = 0; i <= L.rank; ++i)
      if (!is_positive_root(D, act(curinv, D.simple_root(i)))) { s = i; break; }
    if (s > L.rank) break;
    descents.push_back(s);
    cur = simple_reflection(L, s) * cur;
  }
  check(cur == weyl_identity(L), "descent stripping ended away from the identity");
  std::set<WeylElement> interval{weyl_identity(L)};
  for (auto it = descents.rbegin(); it != descents.rend(); ++it) {
    WeylElement s = simple_reflection(L, *it);
    std::set<WeylElement> next = interval;
    for (const auto& y : interval) next.insert(s * y);
    interval = std::move(next);
  }
  return interval;
}

// all W_aff elements of length <= maxlen (BFS on the right Cayley graph)
inline std::vector<std::vector<WeylElement>> ball(const CoweightLatticeDesc& L, size_t maxlen) {
  const auto& D = *L.dat;
  std::vector<std::vector<WeylElement>> layers;
  layers.push_back({weyl_identity(L)});
  std::set<WeylElement> seen{weyl_identity(L)};
  for (size_t len = 0; len < maxlen; ++len) {
    std::vector<WeylElement> next;
    for (const auto& x : layers[len])
      for (size_t i = 0; i <= L.rank; ++i) {
        if (!is_positive_root(D, act(x, D.simple_root(i)))) continue;
        WeylElement y = x * simple_reflection(L, i);
        if (seen.insert(y).second) next.push_back(y);
      }
    layers.push_back(std::move(next));
  }
  return layers;
}

// Admissible set Adm^Y(mu) as a set of minimal coset representatives,
// computed as the downward <=_Y closure of the orbit translations.
inline std::vector<WeylElement> admissible_set(const CoweightLatticeDesc& L,
                                               const CoweightClass& mu, const std::set<size_t>& Y) {
  require(L.contains(mu), Errc::NotInLattice, "admissible_set: not a lattice point");
  std::set<size_t> ybar;
  for (size_t i = 0; i <= L.rank; ++i)
    if (!Y.count(i)) ybar.insert(i);
  require_proper_parabolic(L, ybar);
  OmegaElement om = omega_decompose(L, mu);
  auto perm = omega_node_action(om);
  std::set<size_t> ybar_conj;
  for (size_t i : ybar) ybar_conj.insert(perm[i]);

  // union of the Bruhat intervals below the minimal coset representatives of
  // the orbit translations, filtered to minimal representatives
  std::set<WeylElement> closure;
  for (const auto& eta : weyl_orbit(L, mu)) {
    WeylElement t = translation(eta) * inverse(om.elt);
    check(in_waff(t), "orbit translation escaped the affine Weyl group");
    auto interval = bruhat_interval(min_coset_rep(t, ybar_conj));
    closure.insert(interval.begin(), interval.end());
  }
  const auto& D = *L.dat;
  std::vector<WeylElement> out;
  for (const auto& y : closure) {
    bool minrep = true;
    for (size_t i : ybar_conj)
      if (!is_positive_root(D, act(y, D.simple_root(i)))) { minrep = false; break; }
    if (minrep) out.push_back(y * om.elt);
  }
  return out;
}

} // namespace kacdem
