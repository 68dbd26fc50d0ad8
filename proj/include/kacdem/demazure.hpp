#pragma once

#include "kacdem/alcove.hpp"
#include "kacdem/crystal.hpp"

#include <map>
#include <vector>

namespace kacdem {

// Finitely supported integer combination of affine weights. Multiplicities
// may go negative inside operator compositions; final characters are checked
// positive before use.
struct CharacterPoly {
  const AffineRootDatum* dat = nullptr;
  std::map<AffineWeight, Integer> terms;

  void add(const AffineWeight& w, const Integer& mult) {
    if (mult.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, mult);
      return;
    }
    it->second += mult;
    if (it->second.is_zero()) terms.erase(it);
  }

  Integer dimension() const {
    Integer s(0);
    for (const auto& [w, m] : terms) s += m;
    return s;
  }
  bool all_positive() const {
    for (const auto& [w, m] : terms)
      if (m.sign() <= 0) return false;
    return true;
  }
  friend bool operator==(const CharacterPoly& a, const CharacterPoly& b) {
    return a.dat == b.dat && a.terms == b.terms;
  }
  friend bool operator!=(const CharacterPoly& a, const CharacterPoly& b) { return !(a == b); }
};

// Character restricted to the finite Cartan of g^tau.
struct FiniteCharacter {
  const AffineRootDatum* dat = nullptr;
  std::map<FiniteWeight, Integer> terms;

  void add(const FiniteWeight& w, const Integer& mult) {
    if (mult.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
      terms.emplace(w, mult);
      return;
    }
    it->second += mult;
    if (it->second.is_zero()) terms.erase(it);
  }
  Integer dimension() const {
    Integer s(0);
    for (const auto& [w, m] : terms) s += m;
    return s;
  }
  friend bool operator==(const FiniteCharacter& a, const FiniteCharacter& b) {
    return a.dat == b.dat && a.terms == b.terms;
  }
  friend bool operator!=(const FiniteCharacter& a, const FiniteCharacter& b) { return !(a == b); }
};

inline CharacterPoly char_of_paths(const AffineRootDatum& D, const std::vector<LSPath>& paths) {
  CharacterPoly chi;
  chi.dat = &D;
  for (const auto& p : paths) {
    AffineWeight w = p.weight();
    check(w.is_integral(), "path weight is not integral");
    chi.add(w, Integer(1));
  }
  return chi;
}

// Demazure operator D_i, extended linearly; signed intermediates allowed.
inline CharacterPoly demazure_op(const AffineRootDatum& D, size_t i, const CharacterPoly& chi) {
  require(chi.dat == &D, Errc::MixedDatum, "demazure_op: foreign character");
  CharacterPoly out;
  out.dat = &D;
  AffineWeight alpha = D.simple_root(i);
  for (const auto& [lam, mult] : chi.terms) {
    Rational nr = D.pair(D.simple_coroot(i), lam);
    check(nr.is_integer(), "pairing is not integral in demazure_op");
    long long n = nr.to_integer().to_int64();
    if (n >= 0) {
      AffineWeight w = lam;
      for (long long k = 0; k <= n; ++k) {
        out.add(w, mult);
        w = w - alpha;
      }
    } else if (n <= -2) {
      AffineWeight w = lam + alpha;
      for (long long k = 1; k <= -n - 1; ++k) {
        out.add(w, -mult);
        w = w + alpha;
      }
    }
    // n == -1 contributes nothing
  }
  return out;
}

inline CharacterPoly char_of_weight(const AffineRootDatum& D, const AffineWeight& w) {
  CharacterPoly chi;
  chi.dat = &D;
  chi.add(w, Integer(1));
  return chi;
}

// Demazure character by operator composition along a reduced word of w.
inline CharacterPoly demazure_char_ops(const CoweightLatticeDesc& L, const AffineWeight& Lambda,
                                       const WeylElement& w) {
  const AffineRootDatum& D = *L.dat;
  require(Lambda.dat == &D && w.lat == &L, Errc::MixedDatum, "demazure_char_ops: mixed inputs");
  require(D.is_dominant_integral(Lambda), Errc::NotDominant, "weight must be dominant integral");
  require(in_waff(w), Errc::NotMinimalRep, "operator word must lie in the affine Weyl group");
  require(min_coset_rep(w, stabilizer_nodes(D, Lambda)) == w, Errc::NotMinimalRep,
          "w is not minimal modulo the stabilizer of the weight");
  auto letters = reduced_word(w).letters;
  CharacterPoly chi = char_of_weight(D, Lambda);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    chi = demazure_op(D, static_cast<size_t>(*it), chi);
  require(chi.all_positive(), Errc::NegativeResult, "operator character has a negative term");
  return chi;
}

// character by an explicit word, used for reduced-word independence checks
inline CharacterPoly demazure_char_ops_word(const AffineRootDatum& D, const AffineWeight& Lambda,
                                            const std::vector<int>& letters) {
  CharacterPoly chi = char_of_weight(D, Lambda);
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    chi = demazure_op(D, static_cast<size_t>(*it), chi);
  require(chi.all_positive(), Errc::NegativeResult, "operator character has a negative term");
  return chi;
}

// The crystal of D^tau(Lambda, mu): minimal representative of
// rho^mu sigma_kappa^{-1} modulo the stabilizer of Lambda.
inline DemazureCrystal module_crystal(const CoweightLatticeDesc& L, const AffineWeight& Lambda,
                                      const CoweightClass& mu) {
  const AffineRootDatum& D = *L.dat;
  require(Lambda.dat == &D && mu.lat == &L, Errc::MixedDatum, "module_crystal: mixed inputs");
  require(D.is_dominant_integral(Lambda), Errc::NotDominant, "weight must be dominant integral");
  OmegaElement om = omega_decompose(L, mu);
  WeylElement x = translation(mu) * inverse(om.elt);
  check(in_waff(x), "rho^mu sigma^{-1} escaped the affine Weyl group");
  WeylElement w = min_coset_rep(x, stabilizer_nodes(D, Lambda));
  return demazure_crystal(L, Lambda, w);
}

inline CharacterPoly module_char(const CoweightLatticeDesc& L, const AffineWeight& Lambda,
                                 const CoweightClass& mu) {
  DemazureCrystal B = module_crystal(L, Lambda, mu);
  return char_of_paths(*L.dat, B.paths);
}

inline CharacterPoly sum_char(const CoweightLatticeDesc& L, const AffineWeight& Lambda,
                              const std::vector<CoweightClass>& mus) {
  require(!mus.empty(), Errc::MixedHighestWeight, "sum over no translations");
  std::vector<DemazureCrystal> crystals;
  for (const auto& mu : mus) crystals.push_back(module_crystal(L, Lambda, mu));
  return char_of_paths(*L.dat, crystal_union(crystals));
}

// drop the Lambda_o and delta coordinates
inline FiniteCharacter restrict_finite(const CharacterPoly& chi) {
  FiniteCharacter out;
  out.dat = chi.dat;
  for (const auto& [w, m] : chi.terms) out.add(chi.dat->restrict_finite(w), m);
  return out;
}

// restriction matrix from the weight lattice of g to (h^tau)^* of the twisted
// datum; source must be the untwisted datum of the same g
inline FiniteCharacter restrict_to_fixed_subalgebra(const AffineRootDatum& untwisted,
                                                    const AffineRootDatum& twisted,
                                                    const FiniteCharacter& chi) {
  require(chi.dat == &untwisted, Errc::MixedDatum, "restriction source mismatch");
  require(untwisted.label.family == twisted.label.family &&
              untwisted.label.rank == twisted.label.rank && untwisted.r == 1,
          Errc::MixedDatum, "restriction requires the untwisted datum of the same g");
  FiniteCharacter out;
  out.dat = &twisted;
  for (const auto& [w, m] : chi.terms) {
    FiniteWeight img = twisted.zero_finite();
    for (size_t i = 0; i < twisted.ell; ++i) {
      Rational s(0);
      for (size_t j = 0; j < twisted.N; ++j) s += Rational(twisted.beta_check(i, j)) * w.w[j];
      img.w[i] = s;
    }
    out.add(img, m);
  }
  return out;
}

inline FiniteCharacter twist(const FiniteCharacter& chi, const FiniteWeight& lambda) {
  require(chi.dat == lambda.dat, Errc::MixedDatum, "twist: foreign weight");
  FiniteCharacter out;
  out.dat = chi.dat;
  for (const auto& [w, m] : chi.terms) out.add(w + lambda, m);
  return out;
}

// delta-layer histogram: multiplicity totals per delta-degree, starting at
// the top degree and going down
inline std::vector<Integer> delta_layers(const CharacterPoly& chi) {
  if (chi.terms.empty()) return {};
  const AffineRootDatum& D = *chi.dat;
  std::map<Rational, Integer, decltype([](const Rational& a, const Rational& b) {
             return cmp(a, b) > 0;
           })>
      by_degree;
  for (const auto& [w, m] : chi.terms) {
    Rational deg = D.delta_degree(w);
    auto it = by_degree.find(deg);
    if (it == by_degree.end()) by_degree.emplace(deg, m);
    else it->second += m;
  }
  std::vector<Integer> out;
  Rational top = by_degree.begin()->first;
  Rational at = top;
  for (const auto& [deg, m] : by_degree) {
    while (at > deg) {
      out.push_back(Integer(0));
      at -= Rational(1);
    }
    check(at == deg, "delta degrees are not integer spaced");
    out.push_back(m);
    at -= Rational(1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The verification engine for the Demazure sum identity
// ---------------------------------------------------------------------------

struct VerificationReport {
  AffineTypeLabel type;      // type of the (possibly twisted) right-hand side
  AffineWeight Lambda;       // dominant weight over that datum
  ZVec mu_g;                 // dominant coweight of g in fundamental coweight coords
  std::set<size_t> Y;        // facet nodes used on the right-hand side
  std::vector<CoweightClass> s_y_mu;
  std::vector<std::pair<CoweightClass, Integer>> component_dims;
  Integer lhs_dim, rhs_dim;
  FiniteCharacter lhs_char, rhs_char; // both over the twisted finite Cartan
  bool match = false;
  bool full_orbit_same = false; // the full-orbit union gives the same character
};

// D(c,mu) (x) k_lambda  ==  sum over eta in S_{Y,mu} of D^tau(Lambda, eta),
// compared as characters of the finite torus of g^tau.
inline VerificationReport verify_identity(const AffineRootDatum& T, const AffineWeight& Lambda,
                                          const ZVec& mu_g) {
  require(Lambda.dat == &T, Errc::MixedDatum, "verify: weight over a different datum");
  require(T.is_dominant_integral(Lambda), Errc::NotDominant, "Lambda must be dominant integral");
  Rational c = T.level(Lambda);
  require(c.sign() > 0, Errc::NotDominant, "Lambda must have positive level");
  require(mu_g.size() == T.N, Errc::Parse, "mu has the wrong rank");
  for (const auto& m : mu_g)
    require(m.sign() >= 0, Errc::NotDominant, "mu must be a dominant coweight of g");

  VerificationReport rep;
  rep.type = T.label;
  rep.Lambda = Lambda;
  rep.mu_g = mu_g;

  // facet consistency between the weight and the alcove picture
  InteriorPointData ipd = interior_point_from_weight(T, Lambda);
  std::set<size_t> Ykappa = ipd.Y;

  // ---- right-hand side: twisted Demazure sum over S_{Y,mu}
  const CoweightLatticeDesc& LT = lattice(T, LatticeKind::Adjoint);
  CoweightClass mubar = LT.project_g_coweight(mu_g);
  OmegaElement om = omega_decompose(LT, mubar);
  auto perm = omega_node_action(om);
  std::set<size_t> Y;
  for (size_t j = 0; j <= T.ell; ++j)
    if (Ykappa.count(perm[j])) Y.insert(j);
  rep.Y = Y;

  rep.s_y_mu = orbit_dominant_reps(LT, mubar, Y);
  std::vector<DemazureCrystal> comps;
  for (const auto& eta : rep.s_y_mu) {
    comps.push_back(module_crystal(LT, Lambda, eta));
    rep.component_dims.emplace_back(eta, Integer(static_cast<long long>(comps.back().paths.size())));
  }
  auto union_paths = crystal_union(comps);
  // The comparison takes place in the neutral component: weights of the sum
  // are transported through the length-zero element sigma_kappa before
  // restricting to the finite torus. Without this change of frame the two
  // sides differ by a character whenever sigma_kappa is nontrivial.
  CharacterPoly rhs_aff;
  rhs_aff.dat = &T;
  for (const auto& p : union_paths) rhs_aff.add(act(om.elt, p.weight()), Integer(1));
  rep.rhs_char = restrict_finite(rhs_aff);
  rep.rhs_dim = rep.rhs_char.dimension();

  // the simplification is lossless: the full-orbit union gives the same set
  {
    std::vector<DemazureCrystal> full;
    for (const auto& eta : weyl_orbit(LT, mubar)) full.push_back(module_crystal(LT, Lambda, eta));
    rep.full_orbit_same = crystal_union(full) == union_paths;
  }

  // ---- left-hand side: untwisted g[t]-stable Demazure module of level c
  AffineTypeLabel ulabel{T.label.family, T.label.rank, 1};
  const AffineRootDatum& U = datum(ulabel);
  const CoweightLatticeDesc& LU = lattice(U, LatticeKind::Adjoint);
  CoweightClass muU{&LU, to_rational(mu_g)};
  OmegaElement omU = omega_decompose(LU, muU);
  AffineWeight LambdaKappa = U.fundamental_weight(0) + U.embed_finite(LU.iota(omU.kappa));
  check(U.is_dominant_integral(LambdaKappa), "level-one twist weight is not dominant");
  check(U.level(LambdaKappa) == Rational(1), "level-one twist weight has wrong level");
  CharacterPoly lhs_aff = module_char(LU, c * LambdaKappa, muU);
  FiniteCharacter lhs_g = restrict_finite(lhs_aff);
  FiniteCharacter lhs_fixed = restrict_to_fixed_subalgebra(U, T, lhs_g);
  rep.lhs_char = twist(lhs_fixed, T.restrict_finite(Lambda));
  rep.lhs_dim = rep.lhs_char.dimension();

  rep.match = rep.lhs_char == rep.rhs_char;
  return rep;
}

} // namespace kacdem
