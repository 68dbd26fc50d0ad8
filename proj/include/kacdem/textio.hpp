#pragma once

#include "kacdem/crystal.hpp"
#include "kacdem/demazure.hpp"

#include <sstream>
#include <string>

namespace kacdem {

// ---------------------------------------------------------------------------
// weight grammar:  weight := term (('+'|'-') term)*
//                  term   := [rational '*']? basis
//                  basis  := 'Lam[o]' | 'Lam[<i>]' | 'a[o]' | 'a[<i>]' | 'd'
// "0" denotes the zero weight.
// ---------------------------------------------------------------------------

namespace textio_detail {

struct Scanner {
  const std::string& s;
  size_t pos = 0;

  explicit Scanner(const std::string& str) : s(str) {}
  void skip_ws() {
    while (pos < s.size() && isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  bool eat_word(const std::string& w) {
    skip_ws();
    if (s.compare(pos, w.size(), w) != 0) return false;
    pos += w.size();
    return true;
  }
  std::string take_digits() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    require(pos > start, Errc::Parse, "expected digits in '" + s + "' at " + std::to_string(start));
    return s.substr(start, pos - start);
  }
  Rational take_rational() {
    std::string num = take_digits();
    if (eat('/')) return Rational(Integer::from_string(num), Integer::from_string(take_digits()));
    return Rational(Integer::from_string(num));
  }
  // index inside brackets: 'o' or a positive integer
  long long take_index(bool allow_o) {
    require(eat('['), Errc::Parse, "expected '[' in '" + s + "'");
    long long idx;
    if (allow_o && eat('o')) idx = 0;
    else idx = std::stoll(take_digits());
    require(eat(']'), Errc::Parse, "expected ']' in '" + s + "'");
    return idx;
  }
};

} // namespace textio_detail

inline AffineWeight parse_weight(const AffineRootDatum& D, const std::string& text) {
  textio_detail::Scanner sc(text);
  require(!sc.done(), Errc::Parse, "empty weight expression");
  AffineWeight out = D.zero_weight();
  if (sc.eat('0')) {
    require(sc.done(), Errc::Parse, "trailing input after zero weight: '" + text + "'");
    return out;
  }
  bool first = true;
  while (!sc.done()) {
    int sign = 1;
    if (sc.eat('+')) sign = 1;
    else if (sc.eat('-')) sign = -1;
    else require(first, Errc::Parse, "expected '+' or '-' in '" + text + "'");
    first = false;
    Rational coeff(1);
    sc.skip_ws();
    if (sc.pos < sc.s.size() && isdigit(static_cast<unsigned char>(sc.s[sc.pos]))) {
      coeff = sc.take_rational();
      require(sc.eat('*'), Errc::Parse, "expected '*' after coefficient in '" + text + "'");
    }
    coeff *= Rational(sign);
    if (sc.eat_word("Lam")) {
      long long i = sc.take_index(true);
      require(i >= 0 && i <= static_cast<long long>(D.ell), Errc::Parse,
              "weight node out of range in '" + text + "'");
      out = out + coeff * D.fundamental_weight(static_cast<size_t>(i));
    } else if (sc.eat_word("a")) {
      long long i = sc.take_index(true);
      require(i >= 0 && i <= static_cast<long long>(D.ell), Errc::Parse,
              "root node out of range in '" + text + "'");
      out = out + coeff * D.simple_root(static_cast<size_t>(i));
    } else if (sc.eat_word("d")) {
      out.del += coeff;
    } else {
      fail(Errc::Parse, "unknown basis symbol in '" + text + "'");
    }
  }
  return out;
}

inline std::string format_rational_coeff(const Rational& c) { return c.to_string(); }

inline std::string weight_to_string(const AffineWeight& w) {
  const AffineRootDatum& D = *w.dat;
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Rational& coeff, const std::string& basis) {
    if (coeff.is_zero()) return;
    Rational c = coeff;
    if (first) {
      if (c.sign() < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (c.sign() < 0 ? '-' : '+');
      if (c.sign() < 0) c = -c;
    }
    os << c.to_string() << '*' << basis;
    first = false;
  };
  emit(w.lam[0], "Lam[o]");
  for (size_t i = 1; i <= D.ell; ++i) emit(w.lam[i], "Lam[" + std::to_string(i) + "]");
  emit(w.del, "d");
  if (first) return "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// coweight grammar: term := [int '*']? ('cw[<j>]' | 'ca[<j>]'), indices over
// the nodes of g (1..N); classes are taken in the coinvariant lattice
// ---------------------------------------------------------------------------

inline CoweightClass parse_coweight(const CoweightLatticeDesc& L, const std::string& text) {
  const AffineRootDatum& D = *L.dat;
  textio_detail::Scanner sc(text);
  require(!sc.done(), Errc::Parse, "empty coweight expression");
  CoweightClass out = L.zero();
  if (sc.eat('0')) {
    require(sc.done(), Errc::Parse, "trailing input after zero coweight: '" + text + "'");
    return out;
  }
  bool first = true;
  while (!sc.done()) {
    int sign = 1;
    if (sc.eat('+')) sign = 1;
    else if (sc.eat('-')) sign = -1;
    else require(first, Errc::Parse, "expected '+' or '-' in '" + text + "'");
    first = false;
    Rational coeff(1);
    sc.skip_ws();
    if (sc.pos < sc.s.size() && isdigit(static_cast<unsigned char>(sc.s[sc.pos]))) {
      coeff = Rational(Integer::from_string(sc.take_digits()));
      require(sc.eat('*'), Errc::Parse, "expected '*' after coefficient in '" + text + "'");
    }
    coeff *= Rational(sign);
    ZVec v(D.N, Integer(0));
    if (sc.eat_word("cw")) {
      long long j = sc.take_index(false);
      require(j >= 1 && j <= static_cast<long long>(D.N), Errc::Parse,
              "coweight node out of range in '" + text + "'");
      v[static_cast<size_t>(j - 1)] = Integer(1);
    } else if (sc.eat_word("ca")) {
      long long j = sc.take_index(false);
      require(j >= 1 && j <= static_cast<long long>(D.N), Errc::Parse,
              "coroot node out of range in '" + text + "'");
      for (size_t k = 0; k < D.N; ++k) v[k] = D.A_g(static_cast<size_t>(j - 1), k);
    } else {
      fail(Errc::Parse, "unknown coweight symbol in '" + text + "'");
    }
    out = out + coeff * L.project_g_coweight(v);
  }
  return out;
}

// same grammar, but read as an honest coweight of g (no coinvariant projection)
inline ZVec parse_g_coweight(const AffineRootDatum& D, const std::string& text) {
  textio_detail::Scanner sc(text);
  require(!sc.done(), Errc::Parse, "empty coweight expression");
  ZVec out(D.N, Integer(0));
  if (sc.eat('0')) {
    require(sc.done(), Errc::Parse, "trailing input after zero coweight: '" + text + "'");
    return out;
  }
  bool first = true;
  while (!sc.done()) {
    int sign = 1;
    if (sc.eat('+')) sign = 1;
    else if (sc.eat('-')) sign = -1;
    else require(first, Errc::Parse, "expected '+' or '-' in '" + text + "'");
    first = false;
    Integer coeff(1);
    sc.skip_ws();
    if (sc.pos < sc.s.size() && isdigit(static_cast<unsigned char>(sc.s[sc.pos]))) {
      coeff = Integer::from_string(sc.take_digits());
      require(sc.eat('*'), Errc::Parse, "expected '*' after coefficient in '" + text + "'");
    }
    if (sign < 0) coeff = -coeff;
    if (sc.eat_word("cw")) {
      long long j = sc.take_index(false);
      require(j >= 1 && j <= static_cast<long long>(D.N), Errc::Parse,
              "coweight node out of range in '" + text + "'");
      out[static_cast<size_t>(j - 1)] += coeff;
    } else if (sc.eat_word("ca")) {
      long long j = sc.take_index(false);
      require(j >= 1 && j <= static_cast<long long>(D.N), Errc::Parse,
              "coroot node out of range in '" + text + "'");
      for (size_t k = 0; k < D.N; ++k) out[k] += coeff * D.A_g(static_cast<size_t>(j - 1), k);
    } else {
      fail(Errc::Parse, "unknown coweight symbol in '" + text + "'");
    }
  }
  return out;
}

inline std::string g_coweight_to_string(const AffineRootDatum& D, const ZVec& v) {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < D.N; ++j) {
    if (v[j].is_zero()) continue;
    Integer a = v[j];
    if (first) {
      if (a.sign() < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a.sign() < 0 ? '-' : '+');
      if (a.sign() < 0) a = -a;
    }
    os << a.to_string() << "*cw[" << (j + 1) << "]";
    first = false;
  }
  if (first) return "0";
  return os.str();
}

inline std::string coweight_to_string(const CoweightClass& mu) {
  const CoweightLatticeDesc& L = *mu.lat;
  const AffineRootDatum& D = *L.dat;
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < L.rank; ++i) {
    const Rational& c = mu.coords[i];
    if (c.is_zero()) continue;
    Rational a = c;
    if (first) {
      if (a.sign() < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a.sign() < 0 ? '-' : '+');
      if (a.sign() < 0) a = -a;
    }
    // representative node of the orbit, in 1-based g labels
    os << a.to_string() << "*cw[" << (D.orbits[i][0] + 1) << "]";
    first = false;
  }
  if (first) return "0";
  return os.str();
}

// ---------------------------------------------------------------------------
// Weyl element literal: rho[<coweight>]*w(<letters>), letters in {o,1..ell}
// ---------------------------------------------------------------------------

inline WeylElement parse_weyl_element(const CoweightLatticeDesc& L, const std::string& text) {
  textio_detail::Scanner sc(text);
  WeylElement out = weyl_identity(L);
  bool saw = false;
  if (sc.eat_word("rho")) {
    require(sc.eat('['), Errc::Parse, "expected '[' after rho in '" + text + "'");
    size_t depth = 1, start = sc.pos;
    while (sc.pos < sc.s.size() && depth > 0) {
      if (sc.s[sc.pos] == '[') ++depth;
      if (sc.s[sc.pos] == ']') --depth;
      ++sc.pos;
    }
    require(depth == 0, Errc::Parse, "unbalanced brackets in '" + text + "'");
    std::string inner = text.substr(start, sc.pos - 1 - start);
    out = out * translation(parse_coweight(L, inner));
    saw = true;
    if (!sc.done()) require(sc.eat('*'), Errc::Parse, "expected '*' before w(...) in '" + text + "'");
  }
  if (sc.eat_word("w")) {
    require(sc.eat('('), Errc::Parse, "expected '(' in '" + text + "'");
    bool first = true;
    while (!sc.eat(')')) {
      if (!first) require(sc.eat(','), Errc::Parse, "expected ',' in word of '" + text + "'");
      first = false;
      size_t i;
      if (sc.eat('o')) i = 0;
      else i = static_cast<size_t>(std::stoll(sc.take_digits()));
      require(i <= L.rank, Errc::Parse, "word letter out of range in '" + text + "'");
      out = out * simple_reflection(L, i);
    }
    saw = true;
  }
  require(saw && sc.done(), Errc::Parse, "bad Weyl element literal: '" + text + "'");
  return out;
}

inline std::string weyl_element_to_string(const WeylElement& x) {
  // rho part: translation coordinates; finite part: a reduced word recovered
  // by descent stripping of the finite factor
  const CoweightLatticeDesc& L = *x.lat;
  const AffineRootDatum& D = *L.dat;
  CoweightClass mu{&L, x.trans};
  std::ostringstream os;
  os << "rho[" << coweight_to_string(mu) << "]*w(";
  // finite reduced word from mat_w by stripping left descents
  QMat m = x.mw;
  std::vector<int> letters;
  size_t guard = 0;
  while (m != QMat::identity(L.rank)) {
    check(++guard < 10000, "finite word extraction did not terminate");
    QMat minv = inverse(m);
    bool moved = false;
    for (size_t i = 1; i <= L.rank && !moved; ++i) {
      // image of alpha_i under m^{-1}
      QVec alpha(L.rank, Rational(0));
      for (size_t k = 0; k < L.rank; ++k) alpha[k] = Rational(D.A_fin(k, i - 1));
      QVec img = minv.apply(alpha);
      QVec coords = D.A_fin_inv.apply(img);
      int sign = 0;
      for (const auto& cc : coords) {
        if (cc.sign() > 0) { sign = 1; break; }
        if (cc.sign() < 0) { sign = -1; break; }
      }
      if (sign >= 0) continue;
      letters.push_back(static_cast<int>(i));
      m = L.refl_w[i - 1] * m;
      moved = true;
    }
    check(moved, "finite element without a descent");
  }
  for (size_t k = 0; k < letters.size(); ++k) {
    if (k) os << ',';
    os << letters[k];
  }
  os << ")";
  return os.str();
}

inline std::string affine_letters_to_string(const std::vector<int>& letters) {
  std::ostringstream os;
  for (size_t k = 0; k < letters.size(); ++k) {
    if (k) os << ',';
    if (letters[k] == 0) os << 'o';
    else os << letters[k];
  }
  return os.str();
}

// facet literal: comma list over {o, 1..N}, e.g. "o,1"
inline std::set<size_t> parse_facet(const AffineRootDatum& D, const std::string& text) {
  textio_detail::Scanner sc(text);
  std::set<size_t> Y;
  bool first = true;
  while (!sc.done()) {
    if (!first) require(sc.eat(','), Errc::Parse, "expected ',' in facet '" + text + "'");
    first = false;
    size_t i;
    if (sc.eat('o')) i = 0;
    else i = static_cast<size_t>(std::stoll(sc.take_digits()));
    require(i <= D.ell, Errc::Parse, "facet node out of range in '" + text + "'");
    Y.insert(i);
  }
  require(!Y.empty(), Errc::EmptyY, "empty facet literal");
  return Y;
}

inline std::string facet_to_string(const std::set<size_t>& Y) {
  std::ostringstream os;
  bool first = true;
  for (size_t i : Y) {
    if (!first) os << ',';
    first = false;
    if (i == 0) os << 'o';
    else os << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// character and path serialization
// ---------------------------------------------------------------------------

inline std::vector<std::string> character_lines(const CharacterPoly& chi) {
  std::vector<std::string> out;
  for (const auto& [w, m] : chi.terms) out.push_back(weight_to_string(w) + " : " + m.to_string());
  return out;
}

inline std::string finite_weight_to_string(const FiniteWeight& w) {
  // expressed through the affine embedding so the grammar stays uniform
  return weight_to_string(w.dat->embed_finite(w));
}

inline std::vector<std::string> character_lines(const FiniteCharacter& chi) {
  std::vector<std::string> out;
  for (const auto& [w, m] : chi.terms)
    out.push_back(finite_weight_to_string(w) + " : " + m.to_string());
  return out;
}

inline std::string path_to_json_string(const LSPath& p) {
  std::ostringstream os;
  os << '[';
  for (size_t j = 0; j < p.dirs.size(); ++j) {
    if (j) os << ',';
    os << "{\"dir\":\"" << weight_to_string(p.dirs[j]) << "\",\"len\":\"" << p.lens[j].to_string()
       << "\"}";
  }
  os << ']';
  return os.str();
}

} // namespace kacdem
