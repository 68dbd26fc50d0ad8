#pragma once

#include "kacdem/cartan.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace kacdem {

enum class LatticeKind { Adjoint, SimplyConnected };

struct CoweightLatticeDesc;

// Element of the coinvariant cocharacter lattice X_*(T)_tau, written on the
// basis of tau-orbit classes of the fundamental coweights of g.
struct CoweightClass {
  const CoweightLatticeDesc* lat = nullptr;
  QVec coords;

  friend bool operator==(const CoweightClass& a, const CoweightClass& b) {
    return a.lat == b.lat && a.coords == b.coords;
  }
  friend bool operator!=(const CoweightClass& a, const CoweightClass& b) { return !(a == b); }
  friend bool operator<(const CoweightClass& a, const CoweightClass& b) {
    check(a.lat == b.lat, "CoweightClass: comparing across lattices");
    for (size_t i = 0; i < a.coords.size(); ++i) {
      int c = cmp(a.coords[i], b.coords[i]);
      if (c) return c < 0;
    }
    return false;
  }
  friend CoweightClass operator+(const CoweightClass& a, const CoweightClass& b) {
    require(a.lat == b.lat, Errc::MixedDatum, "coweights from different lattices");
    CoweightClass r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return r;
  }
  friend CoweightClass operator-(const CoweightClass& a, const CoweightClass& b) {
    require(a.lat == b.lat, Errc::MixedDatum, "coweights from different lattices");
    CoweightClass r = a;
    for (size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
    return r;
  }
  CoweightClass operator-() const {
    CoweightClass r = *this;
    for (auto& x : r.coords) x = -x;
    return r;
  }
  friend CoweightClass operator*(const Rational& c, const CoweightClass& a) {
    CoweightClass r = a;
    for (auto& x : r.coords) x *= c;
    return r;
  }
  bool is_zero() const {
    for (const auto& x : coords)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_integral() const {
    for (const auto& x : coords)
      if (!x.is_integer()) return false;
    return true;
  }
};

// Lattice descriptor for translations of the extended affine Weyl group:
// either X_*(T_ad)_tau (adjoint) or X_*(T')_tau (simply connected), realized
// inside the coinvariants of the coweight lattice of g.
struct CoweightLatticeDesc {
  const AffineRootDatum* dat = nullptr;
  LatticeKind kind = LatticeKind::Adjoint;
  size_t rank = 0; // = ell

  QMat iota_mat;           // iota on basis classes, values in (h^tau)^* omega-coords
  QMat a_map_mat;          // A on basis classes, values in beta_check coords
  ZMat coroot_gens;        // columns: classes of the simple coroots of g
  SmithForm coroot_snf;    // Smith form of coroot_gens
  size_t omega_order_ = 1; // index of the coroot classes in the full lattice
  std::vector<ZMat> refl_c; // W^tau generators on class coordinates
  std::vector<QMat> refl_w; // same generators on (h^tau)^* omega-coords

  CoweightClass zero() const { return CoweightClass{this, QVec(rank, Rational(0))}; }
  CoweightClass basis_vector(size_t i) const {
    CoweightClass v = zero();
    v.coords[i] = Rational(1);
    return v;
  }

  // class of a coweight of g given in fundamental-coweight coordinates
  CoweightClass project_g_coweight(const ZVec& v) const {
    check(v.size() == dat->N, "project: wrong size");
    CoweightClass out = zero();
    for (size_t k = 0; k < dat->N; ++k) out.coords[dat->orbit_of[k]] += Rational(v[k]);
    return out;
  }

  FiniteWeight iota(const CoweightClass& mu) const {
    require(mu.lat == this, Errc::MixedDatum, "iota: foreign coweight");
    return FiniteWeight{dat, iota_mat.apply(mu.coords)};
  }
  CartanElement A_map(const CoweightClass& mu) const {
    require(mu.lat == this, Errc::MixedDatum, "A: foreign coweight");
    QVec x = a_map_mat.apply(mu.coords);
    CartanElement h = dat->zero_cartan();
    for (size_t i = 0; i < rank; ++i) h.alc[i + 1] = x[i];
    return h;
  }

  // pairing <beta_check_i, iota(mu)> used by all the order-theoretic tests;
  // node i ranges over the affine index set, with i = 0 meaning
  // alpha_check_o, i.e. minus theta_check_0.
  Rational coroot_pairing(size_t i, const CoweightClass& mu) const {
    FiniteWeight im = iota(mu);
    if (i == 0) {
      Rational s(0);
      for (size_t k = 0; k < rank; ++k) s += dat->theta0_check_beta[k] * im.w[k];
      return -s;
    }
    return im.w[i - 1];
  }

  bool is_dominant(const CoweightClass& mu) const {
    FiniteWeight im = iota(mu);
    for (const auto& x : im.w)
      if (x.sign() < 0) return false;
    return true;
  }

  bool in_coroot_lattice(const CoweightClass& mu) const {
    if (!mu.is_integral()) return false;
    // solve coroot_gens * x = mu over Z via the Smith form: U * M * V = D
    QVec u(rank, Rational(0));
    for (size_t i = 0; i < rank; ++i)
      for (size_t j = 0; j < rank; ++j) u[i] += Rational(coroot_snf.U(i, j)) * mu.coords[j];
    for (size_t i = 0; i < rank; ++i) {
      Integer di = (i < coroot_snf.D.cols()) ? coroot_snf.D(i, i) : Integer(0);
      Integer ui = u[i].to_integer();
      if (di.is_zero()) {
        if (!ui.is_zero()) return false;
      } else if (!(ui % di).is_zero()) {
        return false;
      }
    }
    return true;
  }

  bool contains(const CoweightClass& mu) const {
    if (!mu.is_integral()) return false;
    if (kind == LatticeKind::SimplyConnected) return in_coroot_lattice(mu);
    return true;
  }

  // class in the finite quotient lattice / coroot classes, canonical coords
  std::vector<Integer> quotient_class(const CoweightClass& mu) const {
    check(mu.is_integral(), "quotient_class: not a lattice point");
    std::vector<Integer> out(rank);
    for (size_t i = 0; i < rank; ++i) {
      Integer ui(0);
      for (size_t j = 0; j < rank; ++j) ui += coroot_snf.U(i, j) * mu.coords[j].to_integer();
      Integer di = coroot_snf.D(i, i);
      check(!di.is_zero(), "coroot classes do not have finite index");
      Integer m = ui % di;
      if (m.sign() < 0) m += di.abs();
      out[i] = m;
    }
    return out;
  }

  size_t omega_order() const { return kind == LatticeKind::SimplyConnected ? 1 : omega_order_; }

  // action of the i-th simple reflection of W^tau (i in 1..ell) on classes
  CoweightClass reflect(size_t i, const CoweightClass& mu) const {
    require(mu.lat == this, Errc::MixedDatum, "reflect: foreign coweight");
    return CoweightClass{this, to_rational(refl_c[i - 1]).apply(mu.coords)};
  }
};

inline std::unique_ptr<CoweightLatticeDesc> build_lattice(const AffineRootDatum& D, LatticeKind kind) {
  auto lp = std::make_unique<CoweightLatticeDesc>();
  CoweightLatticeDesc& L = *lp;
  L.dat = &D;
  L.kind = kind;
  L.rank = D.ell;
  const size_t N = D.N, ell = D.ell;

  auto lift = [&](const QVec& c) {
    QVec v(N, Rational(0));
    for (size_t i = 0; i < ell; ++i) v[D.orbits[i][0]] = c[i];
    return v;
  };

  // beta_check_i in coweight coordinates of g: row_i(beta_check) * A_g
  QMat bc_omega(ell, N);
  for (size_t i = 0; i < ell; ++i)
    for (size_t k = 0; k < N; ++k) {
      Rational s(0);
      for (size_t m = 0; m < N; ++m) s += Rational(D.beta_check(i, m) * D.A_g(m, k));
      bc_omega(i, k) = s;
    }

  // iota matrix: <beta_check_i, iota_g(lift)> = (beta_check_i , lift)_g
  QMat pairing = bc_omega * D.gram_coweight; // ell x N
  L.iota_mat = QMat(ell, ell);
  for (size_t j = 0; j < ell; ++j) {
    QVec v = lift(QVec(ell, Rational(0)));
    v[D.orbits[j][0]] = Rational(1);
    QVec im = pairing.apply(v);
    for (size_t i = 0; i < ell; ++i) L.iota_mat(i, j) = im[i];
  }

  // A-map matrix: sum of tau images, solved against the beta_check basis
  {
    QMat bt = bc_omega.transposed(); // N x ell
    L.a_map_mat = QMat(ell, ell);
    for (size_t j = 0; j < ell; ++j) {
      QVec v(N, Rational(0));
      for (size_t rep : D.orbits[j]) v[rep] = Rational(D.orbits[j].size() == 1 ? D.r : D.r / static_cast<int>(D.orbits[j].size()));
      // v = sum_k tau^k(lift(e_j)) placed directly on the orbit
      auto x = solve(bt, v);
      check(x.has_value(), "A(mu) does not lie in the span of beta_check");
      for (size_t i = 0; i < ell; ++i) L.a_map_mat(i, j) = (*x)[i];
    }
  }

  // classes of the simple coroots of g
  L.coroot_gens = ZMat(ell, N);
  for (size_t j = 0; j < N; ++j)
    for (size_t k = 0; k < N; ++k) {
      size_t i = D.orbit_of[k];
      L.coroot_gens(i, j) += D.A_g(j, k);
    }
  L.coroot_snf = smith_form(L.coroot_gens);
  {
    Integer idx(1);
    for (size_t i = 0; i < ell; ++i) {
      check(!L.coroot_snf.D(i, i).is_zero(), "coroot classes not of full rank");
      idx *= L.coroot_snf.D(i, i).abs();
    }
    L.omega_order_ = static_cast<size_t>(idx.to_int64());
  }

  // W^tau simple generators on class coordinates and on omega-coordinates
  for (size_t i = 0; i < ell; ++i) {
    const auto& orb = D.orbits[i];
    bool adjacent = orb.size() == 2 && !D.A_g(orb[0], orb[1]).is_zero();
    auto apply_g_reflection = [&](QVec v, size_t m) {
      Rational c = v[m];
      for (size_t k = 0; k < N; ++k) v[k] -= c * Rational(D.A_g(m, k));
      return v;
    };
    ZMat R(ell, ell);
    for (size_t j = 0; j < ell; ++j) {
      QVec v(N, Rational(0));
      v[D.orbits[j][0]] = Rational(1);
      if (adjacent) {
        v = apply_g_reflection(v, orb[0]);
        v = apply_g_reflection(v, orb[1]);
        v = apply_g_reflection(v, orb[0]);
      } else {
        for (size_t m : orb) v = apply_g_reflection(v, m);
      }
      QVec cls(ell, Rational(0));
      for (size_t k = 0; k < N; ++k) cls[D.orbit_of[k]] += v[k];
      for (size_t iRow = 0; iRow < ell; ++iRow) R(iRow, j) = cls[iRow].to_integer();
    }
    L.refl_c.push_back(R);

    QMat Rw = QMat::identity(ell);
    for (size_t jRow = 0; jRow < ell; ++jRow) Rw(jRow, i) -= Rational(D.A_fin(jRow, i));
    L.refl_w.push_back(Rw);

    // equivariance: iota . refl_c = refl_w . iota
    check(L.iota_mat * to_rational(R) == Rw * L.iota_mat, "iota is not W-equivariant");
  }

  return lp;
}

inline const CoweightLatticeDesc& lattice(const AffineRootDatum& D, LatticeKind kind) {
  static std::mutex mu;
  static std::map<std::pair<const AffineRootDatum*, LatticeKind>, std::unique_ptr<CoweightLatticeDesc>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(&D, kind);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_lattice(D, kind)).first;
  return *it->second;
}

} // namespace kacdem
