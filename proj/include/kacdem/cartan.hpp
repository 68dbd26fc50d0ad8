#pragma once

#include "kacdem/errors.hpp"
#include "kacdem/linalg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace kacdem {

// ---------------------------------------------------------------------------
// Affine type labels
// ---------------------------------------------------------------------------

// An affine Dynkin type X_N^(r), written in text as "XN~r", e.g. "A2~2".
struct AffineTypeLabel {
  char family = 'A'; // A..G
  int rank = 1;      // N, the rank of the underlying finite algebra g
  int twist = 1;     // r in {1,2,3}

  friend bool operator==(const AffineTypeLabel& a, const AffineTypeLabel& b) {
    return a.family == b.family && a.rank == b.rank && a.twist == b.twist;
  }
  friend bool operator<(const AffineTypeLabel& a, const AffineTypeLabel& b) {
    if (a.family != b.family) return a.family < b.family;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.twist < b.twist;
  }

  std::string to_string() const {
    return std::string(1, family) + std::to_string(rank) + "~" + std::to_string(twist);
  }
};

inline bool is_valid_affine_type(const AffineTypeLabel& t) {
  const int N = t.rank;
  if (t.twist == 1) {
    switch (t.family) {
      case 'A': return N >= 1;
      case 'B': return N >= 2;
      case 'C': return N >= 2;
      case 'D': return N >= 4;
      case 'E': return N >= 6 && N <= 8;
      case 'F': return N == 4;
      case 'G': return N == 2;
      default: return false;
    }
  }
  if (t.twist == 2) {
    switch (t.family) {
      case 'A': return N >= 2;       // A_{2l}^(2) and A_{2l-1}^(2)
      case 'D': return N >= 4;       // flip of the fork
      case 'E': return N == 6;
      default: return false;
    }
  }
  if (t.twist == 3) return t.family == 'D' && N == 4;
  return false;
}

inline AffineTypeLabel parse_type_label(const std::string& s) {
  AffineTypeLabel t;
  size_t i = 0;
  require(i < s.size() && s[i] >= 'A' && s[i] <= 'G', Errc::InvalidType, "bad family in '" + s + "'");
  t.family = s[i++];
  size_t j = i;
  while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
  require(j > i, Errc::InvalidType, "missing rank in '" + s + "'");
  t.rank = std::stoi(s.substr(i, j - i));
  require(j < s.size() && s[j] == '~', Errc::InvalidType, "missing '~' in '" + s + "'");
  ++j;
  require(j < s.size() && isdigit(static_cast<unsigned char>(s[j])) && j + 1 == s.size(),
          Errc::InvalidType, "bad twist in '" + s + "'");
  t.twist = s[j] - '0';
  require(is_valid_affine_type(t), Errc::InvalidType, "not an affine Dynkin type: " + s);
  return t;
}

// ---------------------------------------------------------------------------
// Finite root systems from a Cartan matrix
// ---------------------------------------------------------------------------

// Roots kept in simple-root coordinates, coroots in simple-coroot coordinates.
struct FiniteRootSystem {
  ZMat cartan;
  QVec eps;                      // (alpha_i|alpha_i)/2, long roots normalized to 1
  std::vector<ZVec> pos_roots;
  std::vector<ZVec> pos_coroots; // aligned with pos_roots
  size_t highest = 0;            // index of highest (long) root
  size_t highest_short = 0;      // index of highest short root (== highest if simply laced)

  size_t rank() const { return cartan.rows(); }

  Rational norm2(const ZVec& root) const {
    Rational s(0);
    size_t n = rank();
    for (size_t i = 0; i < n; ++i) {
      if (root[i].is_zero()) continue;
      for (size_t j = 0; j < n; ++j)
        s += Rational(root[i]) * eps[i] * Rational(cartan(i, j)) * Rational(root[j]);
    }
    return s;
  }
};

inline QVec symmetrizers_from_cartan(const ZMat& A) {
  size_t n = A.rows();
  QVec eps(n, Rational(0));
  // propagate ratios along edges, then normalize the maximum to 1
  std::vector<bool> done(n, false);
  for (size_t start = 0; start < n; ++start) {
    if (done[start]) continue;
    eps[start] = Rational(1);
    done[start] = true;
    std::vector<size_t> stack{start};
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < n; ++j) {
        if (done[j] || A(i, j).is_zero() || i == j) continue;
        // eps_i * A(i,j) = eps_j * A(j,i)
        eps[j] = eps[i] * Rational(A(i, j)) / Rational(A(j, i));
        done[j] = true;
        stack.push_back(j);
      }
    }
  }
  Rational mx = eps[0];
  for (const auto& e : eps)
    if (e > mx) mx = e;
  for (auto& e : eps) e /= mx;
  return eps;
}

inline FiniteRootSystem enumerate_root_system(const ZMat& A) {
  FiniteRootSystem rs;
  rs.cartan = A;
  rs.eps = symmetrizers_from_cartan(A);
  size_t n = A.rows();

  std::set<std::vector<long long>> seen;
  std::vector<std::pair<ZVec, ZVec>> all;
  auto key = [&](const ZVec& v) {
    std::vector<long long> k(n);
    for (size_t i = 0; i < n; ++i) k[i] = v[i].to_int64();
    return k;
  };
  std::vector<std::pair<ZVec, ZVec>> frontier;
  for (size_t i = 0; i < n; ++i) {
    ZVec root(n, Integer(0)), coroot(n, Integer(0));
    root[i] = Integer(1);
    coroot[i] = Integer(1);
    if (seen.insert(key(root)).second) {
      all.emplace_back(root, coroot);
      frontier.emplace_back(root, coroot);
    }
  }
  while (!frontier.empty()) {
    std::vector<std::pair<ZVec, ZVec>> next;
    for (const auto& [root, coroot] : frontier) {
      for (size_t j = 0; j < n; ++j) {
        Integer pr(0), pc(0);
        for (size_t k = 0; k < n; ++k) {
          pr += root[k] * A(j, k);    // <alpha_check_j, root>
          pc += coroot[k] * A(k, j);  // <coroot, alpha_j>
        }
        ZVec nroot = root, ncoroot = coroot;
        nroot[j] -= pr;
        ncoroot[j] -= pc;
        if (seen.insert(key(nroot)).second) {
          all.emplace_back(nroot, ncoroot);
          next.emplace_back(nroot, ncoroot);
        }
      }
    }
    frontier = std::move(next);
  }

  for (auto& [root, coroot] : all) {
    bool pos = true;
    for (const auto& c : root)
      if (c.sign() < 0) { pos = false; break; }
    if (pos) {
      rs.pos_roots.push_back(root);
      rs.pos_coroots.push_back(coroot);
    }
  }

  // highest (long) and highest short roots are the unique dominant ones
  Rational maxnorm(0), minnorm(0);
  bool first = true;
  for (const auto& r : rs.pos_roots) {
    Rational nn = rs.norm2(r);
    if (first) { maxnorm = minnorm = nn; first = false; }
    if (nn > maxnorm) maxnorm = nn;
    if (nn < minnorm) minnorm = nn;
  }
  auto dominant = [&](const ZVec& root) {
    for (size_t j = 0; j < n; ++j) {
      Integer p(0);
      for (size_t k = 0; k < n; ++k) p += root[k] * A(j, k);
      if (p.sign() < 0) return false;
    }
    return true;
  };
  bool found_long = false, found_short = false;
  for (size_t idx = 0; idx < rs.pos_roots.size(); ++idx) {
    if (!dominant(rs.pos_roots[idx])) continue;
    Rational nn = rs.norm2(rs.pos_roots[idx]);
    if (nn == maxnorm) {
      check(!found_long, "two dominant long roots");
      rs.highest = idx;
      found_long = true;
    }
    if (nn == minnorm) {
      check(!found_short, "two dominant short roots");
      rs.highest_short = idx;
      found_short = true;
    }
  }
  check(found_long && found_short, "missing dominant root");
  return rs;
}

// ---------------------------------------------------------------------------
// The affine root datum of X_N^(r)
// ---------------------------------------------------------------------------

struct AffineRootDatum;

// Element of (h^tau)^* in fundamental-weight coordinates of g^tau:
// coord i = <beta_check_i, xi>.
struct FiniteWeight {
  const AffineRootDatum* dat = nullptr;
  QVec w;

  friend bool operator==(const FiniteWeight& a, const FiniteWeight& b) {
    return a.dat == b.dat && a.w == b.w;
  }
  friend bool operator!=(const FiniteWeight& a, const FiniteWeight& b) { return !(a == b); }
  friend bool operator<(const FiniteWeight& a, const FiniteWeight& b) {
    check(a.dat == b.dat, "FiniteWeight: comparing across data");
    for (size_t i = 0; i < a.w.size(); ++i) {
      int c = cmp(a.w[i], b.w[i]);
      if (c) return c < 0;
    }
    return false;
  }
  friend FiniteWeight operator+(const FiniteWeight& a, const FiniteWeight& b) {
    require(a.dat == b.dat, Errc::MixedDatum, "finite weights from different data");
    FiniteWeight r = a;
    for (size_t i = 0; i < r.w.size(); ++i) r.w[i] += b.w[i];
    return r;
  }
  friend FiniteWeight operator-(const FiniteWeight& a, const FiniteWeight& b) {
    require(a.dat == b.dat, Errc::MixedDatum, "finite weights from different data");
    FiniteWeight r = a;
    for (size_t i = 0; i < r.w.size(); ++i) r.w[i] -= b.w[i];
    return r;
  }
  friend FiniteWeight operator*(const Rational& c, const FiniteWeight& a) {
    FiniteWeight r = a;
    for (auto& x : r.w) x *= c;
    return r;
  }
};

// Element of (h_hat^tau)^* in the basis {Lambda_i}_{i in I_hat} plus delta.
// Index 0 is the affine node o.
struct AffineWeight {
  const AffineRootDatum* dat = nullptr;
  QVec lam;     // size ell+1
  Rational del; // coefficient of delta

  friend bool operator==(const AffineWeight& a, const AffineWeight& b) {
    return a.dat == b.dat && a.lam == b.lam && a.del == b.del;
  }
  friend bool operator!=(const AffineWeight& a, const AffineWeight& b) { return !(a == b); }
  friend bool operator<(const AffineWeight& a, const AffineWeight& b) {
    check(a.dat == b.dat, "AffineWeight: comparing across data");
    for (size_t i = 0; i < a.lam.size(); ++i) {
      int c = cmp(a.lam[i], b.lam[i]);
      if (c) return c < 0;
    }
    return cmp(a.del, b.del) < 0;
  }
  friend AffineWeight operator+(const AffineWeight& a, const AffineWeight& b) {
    require(a.dat == b.dat, Errc::MixedDatum, "weights from different data");
    AffineWeight r = a;
    for (size_t i = 0; i < r.lam.size(); ++i) r.lam[i] += b.lam[i];
    r.del += b.del;
    return r;
  }
  friend AffineWeight operator-(const AffineWeight& a, const AffineWeight& b) {
    require(a.dat == b.dat, Errc::MixedDatum, "weights from different data");
    AffineWeight r = a;
    for (size_t i = 0; i < r.lam.size(); ++i) r.lam[i] -= b.lam[i];
    r.del -= b.del;
    return r;
  }
  friend AffineWeight operator*(const Rational& c, const AffineWeight& a) {
    AffineWeight r = a;
    for (auto& x : r.lam) x *= c;
    r.del *= c;
    return r;
  }
  AffineWeight operator-() const { return Rational(-1) * *this; }

  bool is_zero() const {
    for (const auto& x : lam)
      if (!x.is_zero()) return false;
    return del.is_zero();
  }
  bool is_integral() const {
    for (const auto& x : lam)
      if (!x.is_integer()) return false;
    return del.is_integer();
  }
};

// Element of h_hat^tau in the basis {alpha_check_i} plus d. Index 0 is node o.
struct CartanElement {
  const AffineRootDatum* dat = nullptr;
  QVec alc;      // size ell+1
  Rational dco;  // coefficient of d

  friend bool operator==(const CartanElement& a, const CartanElement& b) {
    return a.dat == b.dat && a.alc == b.alc && a.dco == b.dco;
  }
  friend bool operator!=(const CartanElement& a, const CartanElement& b) { return !(a == b); }
  friend CartanElement operator+(const CartanElement& a, const CartanElement& b) {
    require(a.dat == b.dat, Errc::MixedDatum, "cartan elements from different data");
    CartanElement r = a;
    for (size_t i = 0; i < r.alc.size(); ++i) r.alc[i] += b.alc[i];
    r.dco += b.dco;
    return r;
  }
  friend CartanElement operator*(const Rational& c, const CartanElement& a) {
    CartanElement r = a;
    for (auto& x : r.alc) x *= c;
    r.dco *= c;
    return r;
  }
};

struct AffineRootDatum {
  AffineTypeLabel label;
  size_t N = 0;   // rank of g
  size_t ell = 0; // |I_tau|
  int r = 1;

  // data of g
  ZMat A_g;                              // Cartan matrix of g, 0-based Bourbaki order
  std::vector<size_t> tau;               // diagram automorphism as permutation of 0..N-1
  std::vector<std::vector<size_t>> orbits; // tau-orbits, one per node of I_tau
  std::vector<size_t> orbit_of;          // g-node -> I_tau index (0-based)
  QVec eps_g;                            // symmetrizers of g, long = 1
  QMat gram_coweight;                    // (omega_check_j | omega_check_k) under the g-form
  FiniteRootSystem roots_g;

  // data of g^tau
  ZMat A_fin;                            // ell x ell
  QMat A_fin_inv;
  ZMat beta_check;                       // ell x N: beta_check_i in coroot coords of g
  FiniteRootSystem roots_fin;
  QVec eps_fin;

  // affine data; index 0 = node o, 1..ell = I_tau
  ZMat A;                                // (ell+1)^2 affine Cartan matrix
  ZVec a, acheck;                        // Kac labels and dual labels
  QVec d;                                // symmetrizers acheck_i / a_i
  QMat nu_mat, nu_inv_mat;               // between (alpha_check, d) and (Lambda, delta) coords

  ZVec theta0_alpha;                     // theta_0 in simple-root coords of g^tau
  QVec theta0_check_beta;                // theta_check_0 in simple-coroot coords of g^tau
  ZVec mu0_class;                        // mu_0 in coinvariant coordinates (see lattice.hpp)

  size_t dim() const { return ell + 2; } // dim of the affine Cartan / its dual

  // --- basic element builders -------------------------------------------

  AffineWeight zero_weight() const { return AffineWeight{this, QVec(ell + 1, Rational(0)), Rational(0)}; }
  AffineWeight fundamental_weight(size_t i) const {
    AffineWeight w = zero_weight();
    w.lam[i] = Rational(1);
    return w;
  }
  AffineWeight delta() const {
    AffineWeight w = zero_weight();
    w.del = Rational(1);
    return w;
  }
  // the simple affine root alpha_i as a weight
  AffineWeight simple_root(size_t i) const {
    AffineWeight w = zero_weight();
    for (size_t j = 0; j <= ell; ++j) w.lam[j] = Rational(A(j, i));
    if (i == 0) w.del = Rational(1);
    return w;
  }
  CartanElement zero_cartan() const { return CartanElement{this, QVec(ell + 1, Rational(0)), Rational(0)}; }
  CartanElement simple_coroot(size_t i) const {
    CartanElement h = zero_cartan();
    h.alc[i] = Rational(1);
    return h;
  }
  CartanElement scaling_element() const {
    CartanElement h = zero_cartan();
    h.dco = Rational(1);
    return h;
  }
  CartanElement central_element() const {
    CartanElement h = zero_cartan();
    for (size_t i = 0; i <= ell; ++i) h.alc[i] = Rational(acheck[i]);
    return h;
  }

  FiniteWeight zero_finite() const { return FiniteWeight{this, QVec(ell, Rational(0))}; }
  FiniteWeight theta0() const {
    FiniteWeight t = zero_finite();
    for (size_t k = 0; k < ell; ++k)
      for (size_t i = 0; i < ell; ++i) t.w[i] += Rational(theta0_alpha[k] * A_fin(i, k));
    return t;
  }
  CartanElement theta0_check() const {
    CartanElement h = zero_cartan();
    for (size_t i = 0; i < ell; ++i) h.alc[i + 1] = theta0_check_beta[i];
    return h;
  }
  // finite simple root of g^tau as a finite weight
  FiniteWeight finite_simple_root(size_t i) const { // i in 1..ell
    FiniteWeight t = zero_finite();
    for (size_t j = 0; j < ell; ++j) t.w[j] = Rational(A_fin(j, i - 1));
    return t;
  }

  // --- pairings, the invariant form, and nu ------------------------------

  Rational pair(const CartanElement& h, const AffineWeight& w) const {
    require(h.dat == this && w.dat == this, Errc::MixedDatum, "pair: foreign elements");
    Rational s(0);
    for (size_t i = 0; i <= ell; ++i) s += h.alc[i] * w.lam[i];
    s += h.dco * w.del; // <d, delta> = a_o = 1
    return s;
  }
  Rational level(const AffineWeight& w) const { return pair(central_element(), w); }

  AffineWeight nu(const CartanElement& h) const {
    require(h.dat == this, Errc::MixedDatum, "nu: foreign element");
    QVec in(ell + 2);
    for (size_t i = 0; i <= ell; ++i) in[i] = h.alc[i];
    in[ell + 1] = h.dco;
    QVec out = nu_mat.apply(in);
    AffineWeight w = zero_weight();
    for (size_t i = 0; i <= ell; ++i) w.lam[i] = out[i];
    w.del = out[ell + 1];
    return w;
  }
  CartanElement nu_inv(const AffineWeight& w) const {
    require(w.dat == this, Errc::MixedDatum, "nu_inv: foreign element");
    QVec in(ell + 2);
    for (size_t i = 0; i <= ell; ++i) in[i] = w.lam[i];
    in[ell + 1] = w.del;
    QVec out = nu_inv_mat.apply(in);
    CartanElement h = zero_cartan();
    for (size_t i = 0; i <= ell; ++i) h.alc[i] = out[i];
    h.dco = out[ell + 1];
    return h;
  }

  // normalized invariant form (x|y) = <nu^{-1}(x), y>
  Rational bilinear(const AffineWeight& x, const AffineWeight& y) const {
    require(x.dat == this && y.dat == this, Errc::MixedDatum, "bilinear: foreign weights");
    return pair(nu_inv(x), y);
  }

  // --- finite/affine conversion ------------------------------------------

  FiniteWeight restrict_finite(const AffineWeight& w) const {
    require(w.dat == this, Errc::MixedDatum, "restrict: foreign weight");
    FiniteWeight f = zero_finite();
    for (size_t i = 0; i < ell; ++i) f.w[i] = w.lam[i + 1];
    return f;
  }
  // embed (h^tau)^* into the affine dual with <K,.> = 0 and <d,.> = 0
  AffineWeight embed_finite(const FiniteWeight& f) const {
    require(f.dat == this, Errc::MixedDatum, "embed: foreign weight");
    AffineWeight w = zero_weight();
    Rational lo(0);
    for (size_t i = 0; i < ell; ++i) {
      w.lam[i + 1] = f.w[i];
      lo += Rational(acheck[i + 1]) * f.w[i];
    }
    w.lam[0] = -lo / Rational(acheck[0]);
    return w;
  }

  // delta-degree relative to the finite + Lambda_o part:
  // w = embed(restriction) + (level/acheck_o) Lambda_o + n * delta
  Rational delta_degree(const AffineWeight& w) const {
    AffineWeight rest = embed_finite(restrict_finite(w));
    return (w - rest).del;
  }

  bool is_dominant_integral(const AffineWeight& w) const {
    for (size_t i = 0; i <= ell; ++i)
      if (!w.lam[i].is_integer() || w.lam[i].sign() < 0) return false;
    return true;
  }
};

namespace detail {

inline ZMat finite_cartan_matrix(char family, int N) {
  ZMat A(N, N);
  auto link = [&](int i, int j, int aij, int aji) {
    A(i, j) = Integer(aij);
    A(j, i) = Integer(aji);
  };
  for (int i = 0; i < N; ++i) A(i, i) = Integer(2);
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < N; ++i) link(i, i + 1, -1, -1);
      break;
    case 'B': // alpha_N short
      for (int i = 0; i + 2 < N; ++i) link(i, i + 1, -1, -1);
      link(N - 2, N - 1, -1, -2);
      break;
    case 'C': // alpha_N long
      for (int i = 0; i + 2 < N; ++i) link(i, i + 1, -1, -1);
      link(N - 2, N - 1, -2, -1);
      break;
    case 'D':
      for (int i = 0; i + 3 < N; ++i) link(i, i + 1, -1, -1);
      link(N - 3, N - 2, -1, -1);
      link(N - 3, N - 1, -1, -1);
      break;
    case 'E': // Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
      link(0, 2, -1, -1);
      link(2, 3, -1, -1);
      link(1, 3, -1, -1);
      for (int i = 3; i + 1 < N; ++i) link(i, i + 1, -1, -1);
      break;
    case 'F': // 1-2=>3-4, alpha_1, alpha_2 long
      link(0, 1, -1, -1);
      link(1, 2, -1, -2);
      link(2, 3, -1, -1);
      break;
    case 'G': // alpha_1 short
      link(0, 1, -3, -1);
      break;
    default:
      fail(Errc::InvalidType, "unknown family");
  }
  return A;
}

inline std::vector<size_t> diagram_automorphism(const AffineTypeLabel& t) {
  size_t N = static_cast<size_t>(t.rank);
  std::vector<size_t> tau(N);
  for (size_t i = 0; i < N; ++i) tau[i] = i;
  if (t.twist == 1) return tau;
  if (t.twist == 2) {
    if (t.family == 'A') {
      for (size_t i = 0; i < N; ++i) tau[i] = N - 1 - i;
    } else if (t.family == 'D') {
      std::swap(tau[N - 2], tau[N - 1]);
    } else if (t.family == 'E') {
      tau = {5, 1, 4, 3, 2, 0};
    }
    return tau;
  }
  // D_4^(3): Bourbaki 1 -> 3 -> 4 -> 1, 2 fixed
  tau = {2, 1, 3, 0};
  return tau;
}

// positive primitive kernel vector of a singular integer matrix (corank 1)
inline ZVec positive_kernel(const ZMat& M) {
  size_t n = M.rows();
  QMat Q(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Q(i, j) = Rational(M(i, j));
  // find the kernel by solving with last coordinate forced to 1, trying pivots
  for (size_t fixed = 0; fixed < n; ++fixed) {
    QMat A(n, n - 1);
    QVec b(n);
    for (size_t i = 0; i < n; ++i) {
      size_t c = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j == fixed) continue;
        A(i, c++) = Q(i, j);
      }
      b[i] = -Q(i, fixed);
    }
    auto sol = solve(A, b);
    if (!sol) continue;
    QVec full(n);
    size_t c = 0;
    for (size_t j = 0; j < n; ++j) full[j] = (j == fixed) ? Rational(1) : (*sol)[c++];
    // clear denominators, make primitive and positive
    Integer l(1);
    for (const auto& x : full) l = lcm(l, x.den());
    ZVec v(n);
    for (size_t j = 0; j < n; ++j) v[j] = (full[j] * Rational(l)).to_integer();
    Integer g(0);
    for (const auto& x : v) g = gcd(g, x);
    bool all_pos = true;
    for (auto& x : v) {
      x = x / g;
      if (x.sign() <= 0) all_pos = false;
    }
    if (!all_pos) {
      bool all_neg = true;
      for (const auto& x : v)
        if (x.sign() >= 0) all_neg = false;
      check(all_neg, "kernel vector has mixed signs");
      for (auto& x : v) x = -x;
    }
    return v;
  }
  fail(Errc::Internal, "no kernel vector found");
}

} // namespace detail

// Builds the affine root datum of a valid type; see datum() for the cached entry.
inline std::unique_ptr<AffineRootDatum> build_datum_uncached(const AffineTypeLabel& label) {
  require(is_valid_affine_type(label), Errc::InvalidType, label.to_string());
  auto dp = std::make_unique<AffineRootDatum>();
  AffineRootDatum& D = *dp;
  D.label = label;
  D.N = static_cast<size_t>(label.rank);
  D.r = label.twist;
  D.A_g = detail::finite_cartan_matrix(label.family, label.rank);
  D.tau = detail::diagram_automorphism(label);
  D.eps_g = symmetrizers_from_cartan(D.A_g);
  D.roots_g = enumerate_root_system(D.A_g);

  // tau-orbits ordered by smallest member
  std::vector<bool> seen(D.N, false);
  D.orbit_of.assign(D.N, 0);
  for (size_t j = 0; j < D.N; ++j) {
    if (seen[j]) continue;
    std::vector<size_t> orb;
    size_t k = j;
    while (!seen[k]) {
      seen[k] = true;
      orb.push_back(k);
      k = D.tau[k];
    }
    std::sort(orb.begin(), orb.end());
    for (size_t m : orb) D.orbit_of[m] = D.orbits.size();
    D.orbits.push_back(orb);
  }
  D.ell = D.orbits.size();
  const size_t ell = D.ell;

  // beta_check_i: orbit sum of coroots, doubled when the orbit is a pair of
  // adjacent vertices (A_{2l} middle orbit)
  D.beta_check = ZMat(ell, D.N);
  for (size_t i = 0; i < ell; ++i) {
    const auto& orb = D.orbits[i];
    bool adjacent = orb.size() == 2 && !D.A_g(orb[0], orb[1]).is_zero();
    check(orb.size() <= 2 || label.twist == 3, "unexpected orbit size");
    for (size_t j : orb) D.beta_check(i, j) = Integer(adjacent ? 2 : 1);
  }

  // Cartan matrix of g^tau
  D.A_fin = ZMat(ell, ell);
  for (size_t i = 0; i < ell; ++i)
    for (size_t k = 0; k < ell; ++k) {
      Integer v;
      bool first = true;
      for (size_t rep : D.orbits[k]) {
        Integer p(0);
        for (size_t j = 0; j < D.N; ++j) p += D.beta_check(i, j) * D.A_g(j, rep);
        if (first) { v = p; first = false; }
        else check(v == p, "orbit folding is not well defined");
      }
      D.A_fin(i, k) = v;
    }
  D.A_fin_inv = inverse(to_rational(D.A_fin));
  D.roots_fin = enumerate_root_system(D.A_fin);
  D.eps_fin = D.roots_fin.eps;

  // theta_0 by the standard case list
  if (label.twist == 1) {
    D.theta0_alpha = D.roots_fin.pos_roots[D.roots_fin.highest];
  } else if (label.family == 'A' && label.rank % 2 == 0) {
    D.theta0_alpha = D.roots_fin.pos_roots[D.roots_fin.highest_short];
    for (auto& c : D.theta0_alpha) c = Integer(2) * c;
  } else {
    D.theta0_alpha = D.roots_fin.pos_roots[D.roots_fin.highest_short];
  }

  // Kac labels: a_o = 1 and theta_0 = sum_{i in I_tau} a_i alpha_i
  D.a.assign(ell + 1, Integer(1));
  for (size_t i = 0; i < ell; ++i) D.a[i + 1] = D.theta0_alpha[i];

  // affine Cartan matrix
  D.A = ZMat(ell + 1, ell + 1);
  D.A(0, 0) = Integer(2);
  for (size_t i = 0; i < ell; ++i)
    for (size_t j = 0; j < ell; ++j) D.A(i + 1, j + 1) = D.A_fin(i, j);
  // <beta_check_i, alpha_o> = -<beta_check_i, theta_0>
  for (size_t i = 0; i < ell; ++i) {
    Integer p(0);
    for (size_t k = 0; k < ell; ++k) p += D.theta0_alpha[k] * D.A_fin(i, k);
    D.A(i + 1, 0) = -p;
  }
  // <alpha_check_o, alpha_j> = 2 (theta_0 | alpha_j) / (theta_0 | theta_0)
  {
    QVec th(ell);
    for (size_t i = 0; i < ell; ++i) th[i] = Rational(D.theta0_alpha[i]);
    Rational norm(0);
    QVec inner(ell, Rational(0));
    for (size_t k = 0; k < ell; ++k) {
      for (size_t j = 0; j < ell; ++j) {
        Rational term = th[k] * D.eps_fin[k] * Rational(D.A_fin(k, j));
        inner[j] += term;
        norm += term * th[j];
      }
    }
    for (size_t j = 0; j < ell; ++j) {
      Rational v = Rational(2) * (-inner[j]) / norm;
      D.A(0, j + 1) = v.to_integer();
    }
  }

  // dual labels from the left kernel, normalized primitive positive
  D.acheck = detail::positive_kernel(D.A.transposed());
  {
    // cross-check: a equals the right kernel normalized to a_o = 1
    ZVec a2 = detail::positive_kernel(D.A);
    check(a2[0].is_one(), "a_o normalization");
    check(a2 == D.a, "Kac labels disagree with the null vector");
    bool a2l2 = label.family == 'A' && label.twist == 2 && label.rank % 2 == 0;
    check(D.acheck[0] == Integer(a2l2 ? 2 : 1), "dual label at node o");
    Integer zero(0);
    for (size_t j = 0; j <= ell; ++j) {
      Integer s1(0), s2(0);
      for (size_t i = 0; i <= ell; ++i) {
        s1 += D.a[i] * D.A(j, i);
        s2 += D.acheck[i] * D.A(i, j);
      }
      check(s1 == zero && s2 == zero, "null/central identity fails");
    }
  }

  D.d.resize(ell + 1);
  for (size_t i = 0; i <= ell; ++i) D.d[i] = Rational(D.acheck[i]) / Rational(D.a[i]);
  // symmetrizability: d_i A_ij = d_j A_ji
  for (size_t i = 0; i <= ell; ++i)
    for (size_t j = 0; j <= ell; ++j)
      check(D.d[i] * Rational(D.A(i, j)) == D.d[j] * Rational(D.A(j, i)), "not symmetrizable");

  // nu in coordinates: nu(alpha_check_i) = (a_i/acheck_i) alpha_i, nu(d) = Lambda_o / acheck_o
  {
    QMat M(ell + 2, ell + 2);
    for (size_t i = 0; i <= ell; ++i) {
      for (size_t j = 0; j <= ell; ++j)
        M(j, i) = Rational(D.a[i]) / Rational(D.acheck[i]) * Rational(D.A(j, i));
      M(ell + 1, i) = (i == 0) ? Rational(D.a[0]) / Rational(D.acheck[0]) : Rational(0);
    }
    M(0, ell + 1) = Rational(1) / Rational(D.acheck[0]);
    D.nu_mat = M;
    D.nu_inv_mat = inverse(M);
  }

  // theta_check_0 = coroot(theta_s) / acheck_o where theta_s is theta_0 or its half
  {
    bool a2l2 = label.family == 'A' && label.twist == 2 && label.rank % 2 == 0;
    const auto& rsf = D.roots_fin;
    ZVec target = D.theta0_alpha;
    if (a2l2)
      for (auto& c : target) c = c / Integer(2);
    // locate the root and its coroot
    bool found = false;
    QVec co;
    for (size_t k = 0; k < rsf.pos_roots.size(); ++k)
      if (rsf.pos_roots[k] == target) {
        co = to_rational(rsf.pos_coroots[k]);
        found = true;
        break;
      }
    check(found, "theta_s is not a root");
    for (auto& c : co) c /= Rational(D.acheck[0]);
    D.theta0_check_beta = co;
    // sanity: <theta_check_0, theta_0> = 2
    Rational p(0);
    for (size_t i = 0; i < ell; ++i)
      for (size_t k = 0; k < ell; ++k)
        p += co[i] * Rational(D.A_fin(i, k)) * Rational(D.theta0_alpha[k]);
    check(p == Rational(2), "<theta_check_0, theta_0> != 2");
    // the closed form (1/acheck_o) sum acheck_i beta_check_i agrees
    for (size_t i = 0; i < ell; ++i)
      check(co[i] == Rational(D.acheck[i + 1]) / Rational(D.acheck[0]),
            "theta_check_0 disagrees with the dual-label formula");
  }

  // gram matrix of g fundamental coweights under the normalized g-form
  {
    QMat Ainv = inverse(to_rational(D.A_g));
    QMat M(D.N, D.N);
    for (size_t m = 0; m < D.N; ++m)
      for (size_t n2 = 0; n2 < D.N; ++n2) M(m, n2) = Rational(D.A_g(m, n2)) / D.eps_g[n2];
    D.gram_coweight = Ainv * M * Ainv.transposed();
  }

  // mu_0: image of mu^0 in the coinvariant lattice (coordinates on tau-orbit
  // classes of the g fundamental coweights)
  {
    ZVec mu0_g(D.N, Integer(0)); // in coweight coordinates of g
    auto add_coroot_of_g = [&](const ZVec& co) {
      // coroot in alpha_check coords -> coweight coords via rows of A_g
      for (size_t m = 0; m < D.N; ++m)
        for (size_t k = 0; k < D.N; ++k) mu0_g[k] += co[m] * D.A_g(m, k);
    };
    if (label.twist == 1) {
      add_coroot_of_g(D.roots_g.pos_coroots[D.roots_g.highest]);
    } else if (label.family == 'A' && label.rank % 2 == 0) {
      // alpha_check_1 + ... + alpha_check_l
      ZVec co(D.N, Integer(0));
      for (size_t j = 0; j < D.N / 2; ++j) co[j] = Integer(1);
      add_coroot_of_g(co);
    } else {
      // coroot of a g-root theta^0 restricting to theta_0 on h^tau
      FiniteWeight t0{&D, QVec(ell, Rational(0))};
      for (size_t i = 0; i < ell; ++i)
        for (size_t k = 0; k < ell; ++k)
          t0.w[i] += Rational(D.theta0_alpha[k] * D.A_fin(i, k));
      bool found = false;
      for (size_t k = 0; k < D.roots_g.pos_roots.size() && !found; ++k) {
        // restriction of the root: pair with each beta_check_i
        bool match = true;
        for (size_t i = 0; i < ell && match; ++i) {
          Rational p(0);
          for (size_t m = 0; m < D.N; ++m)
            for (size_t n2 = 0; n2 < D.N; ++n2)
              p += Rational(D.beta_check(i, m) * D.roots_g.pos_roots[k][n2] * D.A_g(m, n2));
          if (p != t0.w[i]) match = false;
        }
        if (match) {
          add_coroot_of_g(D.roots_g.pos_coroots[k]);
          found = true;
        }
      }
      check(found, "no g-root restricts to theta_0");
    }
    // project to orbit classes
    D.mu0_class.assign(ell, Integer(0));
    for (size_t k = 0; k < D.N; ++k) D.mu0_class[D.orbit_of[k]] += mu0_g[k];
  }

  return dp;
}

// Cached datum per type; pointers remain valid for the process lifetime.
inline const AffineRootDatum& datum(const AffineTypeLabel& label) {
  static std::mutex mu;
  static std::map<AffineTypeLabel, std::unique_ptr<AffineRootDatum>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, build_datum_uncached(label)).first;
  return *it->second;
}

inline const AffineRootDatum& datum(const std::string& label) { return datum(parse_type_label(label)); }

} // namespace kacdem
