#pragma once

#include "kacdem/weyl.hpp"

#include <optional>
#include <set>
#include <vector>

namespace kacdem {

// Piecewise-linear path in the affine weight space: directions with rational
// segment lengths summing to 1. Kept in canonical form (no zero segments, no
// equal consecutive directions) so set semantics are exact.
struct LSPath {
  const AffineRootDatum* dat = nullptr;
  std::vector<AffineWeight> dirs;
  std::vector<Rational> lens;

  void canonicalize() {
    std::vector<AffineWeight> nd;
    std::vector<Rational> nl;
    for (size_t j = 0; j < dirs.size(); ++j) {
      if (lens[j].is_zero()) continue;
      if (!nd.empty() && nd.back() == dirs[j])
        nl.back() += lens[j];
      else {
        nd.push_back(dirs[j]);
        nl.push_back(lens[j]);
      }
    }
    dirs = std::move(nd);
    lens = std::move(nl);
  }

  AffineWeight weight() const {
    AffineWeight w = dat->zero_weight();
    for (size_t j = 0; j < dirs.size(); ++j) w = w + lens[j] * dirs[j];
    return w;
  }

  friend bool operator==(const LSPath& a, const LSPath& b) {
    return a.dat == b.dat && a.dirs == b.dirs && a.lens == b.lens;
  }
  friend bool operator!=(const LSPath& a, const LSPath& b) { return !(a == b); }
  friend bool operator<(const LSPath& a, const LSPath& b) {
    check(a.dat == b.dat, "LSPath: comparing across data");
    if (a.dirs.size() != b.dirs.size()) return a.dirs.size() < b.dirs.size();
    for (size_t j = 0; j < a.dirs.size(); ++j) {
      if (a.dirs[j] != b.dirs[j]) return a.dirs[j] < b.dirs[j];
      int c = cmp(a.lens[j], b.lens[j]);
      if (c) return c < 0;
    }
    return false;
  }
};

inline LSPath highest_path(const AffineRootDatum& D, const AffineWeight& Lambda) {
  require(Lambda.dat == &D, Errc::MixedDatum, "highest_path: foreign weight");
  require(D.is_dominant_integral(Lambda) && Lambda.del.is_integer(), Errc::NotDominant,
          "highest path needs a dominant integral weight");
  require(D.level(Lambda).sign() > 0, Errc::NotDominant, "highest path needs positive level");
  LSPath p;
  p.dat = &D;
  p.dirs = {Lambda};
  p.lens = {Rational(1)};
  return p;
}

namespace detail {

inline AffineWeight reflect_weight(const AffineRootDatum& D, size_t i, const AffineWeight& w) {
  return w - D.pair(D.simple_coroot(i), w) * D.simple_root(i);
}

struct PathProfile {
  QVec slopes; // <alpha_check_i, dir_j>
  QVec nodes;  // h at the breakpoints, nodes[0] = 0
};

inline PathProfile profile(const AffineRootDatum& D, size_t i, const LSPath& p) {
  PathProfile pr;
  pr.slopes.resize(p.dirs.size());
  pr.nodes.assign(p.dirs.size() + 1, Rational(0));
  for (size_t j = 0; j < p.dirs.size(); ++j) {
    pr.slopes[j] = D.pair(D.simple_coroot(i), p.dirs[j]);
    pr.nodes[j + 1] = pr.nodes[j] + pr.slopes[j] * p.lens[j];
  }
  return pr;
}

} // namespace detail

// Littelmann lowering operator: reflects the final ascent from the last
// minimum of h_i; nullopt when h_i(1) - min < 1.
inline std::optional<LSPath> f_op(size_t i, const LSPath& p) {
  const AffineRootDatum& D = *p.dat;
  auto pr = detail::profile(D, i, p);
  Rational m = pr.nodes[0];
  for (const auto& v : pr.nodes)
    if (v < m) m = v;
  check(m.is_integer(), "minimum of the pairing function is not integral");
  if (pr.nodes.back() - m < Rational(1)) return std::nullopt;
  size_t j0 = 0;
  for (size_t j = 0; j < pr.nodes.size(); ++j)
    if (pr.nodes[j] == m) j0 = j;
  // walk forward to the first crossing of m + 1
  Rational target = m + Rational(1);
  LSPath out;
  out.dat = &D;
  for (size_t j = 0; j < j0; ++j) {
    out.dirs.push_back(p.dirs[j]);
    out.lens.push_back(p.lens[j]);
  }
  size_t j = j0;
  while (true) {
    check(j < p.dirs.size(), "no crossing after the last minimum");
    check(pr.slopes[j].sign() >= 0, "pairing dips between the minimum and the crossing");
    if (pr.nodes[j + 1] >= target) {
      Rational dt = (target - pr.nodes[j]) / pr.slopes[j];
      out.dirs.push_back(detail::reflect_weight(D, i, p.dirs[j]));
      out.lens.push_back(dt);
      if (dt != p.lens[j]) {
        out.dirs.push_back(p.dirs[j]);
        out.lens.push_back(p.lens[j] - dt);
      }
      ++j;
      break;
    }
    out.dirs.push_back(detail::reflect_weight(D, i, p.dirs[j]));
    out.lens.push_back(p.lens[j]);
    ++j;
  }
  for (; j < p.dirs.size(); ++j) {
    out.dirs.push_back(p.dirs[j]);
    out.lens.push_back(p.lens[j]);
  }
  out.canonicalize();
  return out;
}

// Littelmann raising operator, inverse to f_op where both are defined.
inline std::optional<LSPath> e_op(size_t i, const LSPath& p) {
  const AffineRootDatum& D = *p.dat;
  auto pr = detail::profile(D, i, p);
  Rational m = pr.nodes[0];
  for (const auto& v : pr.nodes)
    if (v < m) m = v;
  check(m.is_integer(), "minimum of the pairing function is not integral");
  if (m.sign() >= 0) return std::nullopt;
  size_t j1 = 0;
  for (size_t j = 0; j < pr.nodes.size(); ++j)
    if (pr.nodes[j] == m) { j1 = j; break; }
  // walk backward to the last crossing of m + 1 before j1
  Rational target = m + Rational(1);
  size_t j = j1; // node index; segments j-1, j-2, ... lie before it
  std::vector<AffineWeight> mid_dirs;
  std::vector<Rational> mid_lens;
  while (true) {
    check(j > 0, "no crossing before the first minimum");
    size_t seg = j - 1;
    check(pr.slopes[seg].sign() <= 0, "pairing rises between the crossing and the minimum");
    if (pr.nodes[seg] >= target) {
      Rational dt = (target - pr.nodes[seg + 1]) / (-pr.slopes[seg]); // taken from the right end
      mid_dirs.insert(mid_dirs.begin(), detail::reflect_weight(D, i, p.dirs[seg]));
      mid_lens.insert(mid_lens.begin(), dt);
      LSPath out;
      out.dat = &D;
      for (size_t k = 0; k < seg; ++k) {
        out.dirs.push_back(p.dirs[k]);
        out.lens.push_back(p.lens[k]);
      }
      if (dt != p.lens[seg]) {
        out.dirs.push_back(p.dirs[seg]);
        out.lens.push_back(p.lens[seg] - dt);
      }
      for (size_t k = 0; k < mid_dirs.size(); ++k) {
        out.dirs.push_back(mid_dirs[k]);
        out.lens.push_back(mid_lens[k]);
      }
      for (size_t k = j1; k < p.dirs.size(); ++k) {
        out.dirs.push_back(p.dirs[k]);
        out.lens.push_back(p.lens[k]);
      }
      out.canonicalize();
      return out;
    }
    mid_dirs.insert(mid_dirs.begin(), detail::reflect_weight(D, i, p.dirs[seg]));
    mid_lens.insert(mid_lens.begin(), p.lens[seg]);
    j = seg;
  }
}

// nodes where the weight pairs to zero; the stabilizer parabolic of Lambda
inline std::set<size_t> stabilizer_nodes(const AffineRootDatum& D, const AffineWeight& Lambda) {
  std::set<size_t> out;
  for (size_t i = 0; i <= D.ell; ++i)
    if (Lambda.lam[i].is_zero()) out.insert(i);
  return out;
}

struct DemazureCrystal {
  const AffineRootDatum* dat = nullptr;
  AffineWeight Lambda;
  WeylElement w;
  std::vector<LSPath> paths; // sorted, canonical
};

namespace detail {
inline void f_closure(size_t i, std::set<LSPath>& S) {
  std::vector<LSPath> frontier(S.begin(), S.end());
  while (!frontier.empty()) {
    std::vector<LSPath> next;
    for (const auto& p : frontier) {
      auto q = f_op(i, p);
      if (q && S.insert(*q).second) next.push_back(*q);
    }
    frontier = std::move(next);
  }
}
} // namespace detail

// B_w(Lambda): f-string closure along a reduced word of w, starting from the
// straight highest path. w must be the minimal representative of its coset
// modulo the stabilizer of Lambda.
inline DemazureCrystal demazure_crystal(const CoweightLatticeDesc& L, const AffineWeight& Lambda,
                                        const WeylElement& w) {
  const AffineRootDatum& D = *L.dat;
  require(Lambda.dat == &D && w.lat == &L, Errc::MixedDatum, "demazure_crystal: mixed inputs");
  require(in_waff(w), Errc::NotMinimalRep, "crystal generator must lie in the affine Weyl group");
  std::set<size_t> stab = stabilizer_nodes(D, Lambda);
  require(min_coset_rep(w, stab) == w, Errc::NotMinimalRep,
          "w is not minimal modulo the stabilizer of the weight");
  DemazureCrystal B;
  B.dat = &D;
  B.Lambda = Lambda;
  B.w = w;
  std::set<LSPath> S{highest_path(D, Lambda)};
  auto letters = reduced_word(w).letters;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    detail::f_closure(static_cast<size_t>(*it), S);
  B.paths.assign(S.begin(), S.end());
  return B;
}

// generation along an explicit word (for reduced-word independence tests)
inline std::vector<LSPath> demazure_paths_along_word(const AffineRootDatum& D,
                                                     const AffineWeight& Lambda,
                                                     const std::vector<int>& letters) {
  std::set<LSPath> S{highest_path(D, Lambda)};
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    detail::f_closure(static_cast<size_t>(*it), S);
  return std::vector<LSPath>(S.begin(), S.end());
}

inline std::vector<LSPath> crystal_union(const std::vector<DemazureCrystal>& crystals) {
  require(!crystals.empty(), Errc::MixedHighestWeight, "union of no crystals");
  std::set<LSPath> S;
  for (const auto& B : crystals) {
    require(B.Lambda == crystals.front().Lambda, Errc::MixedHighestWeight,
            "crystal union requires one highest weight");
    S.insert(B.paths.begin(), B.paths.end());
  }
  return std::vector<LSPath>(S.begin(), S.end());
}

inline std::vector<LSPath> crystal_intersection(const DemazureCrystal& a, const DemazureCrystal& b) {
  require(a.Lambda == b.Lambda, Errc::MixedHighestWeight, "intersection requires one highest weight");
  std::vector<LSPath> out;
  std::set<LSPath> sb(b.paths.begin(), b.paths.end());
  for (const auto& p : a.paths)
    if (sb.count(p)) out.push_back(p);
  return out;
}

inline bool crystal_contains(const DemazureCrystal& big, const DemazureCrystal& small) {
  std::set<LSPath> sb(big.paths.begin(), big.paths.end());
  for (const auto& p : small.paths)
    if (!sb.count(p)) return false;
  return true;
}

} // namespace kacdem
