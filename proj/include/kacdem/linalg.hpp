#pragma once

#include "kacdem/rational.hpp"

#include <vector>
#include <stdexcept>
#include <optional>

namespace kacdem {

template <class T>
class Mat {
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> d_;

public:
  Mat() = default;
  Mat(size_t r, size_t c) : rows_(r), cols_(c), d_(r * c) {}
  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return d_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return d_[i * cols_ + j]; }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: size mismatch");
    Mat r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Mat::apply: size mismatch");
    std::vector<T> r(rows_, T(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Mat transposed() const {
    Mat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  size_t hash() const {
    size_t h = rows_ * 1000003 + cols_;
    for (const auto& x : d_) h ^= x.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

using QMat = Mat<Rational>;
using ZMat = Mat<Integer>;
using QVec = std::vector<Rational>;
using ZVec = std::vector<Integer>;

inline QMat to_rational(const ZMat& m) {
  QMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline QVec to_rational(const ZVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

inline ZMat to_integer(const QMat& m) {
  ZMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_integer();
  return r;
}

// Gauss-Jordan inverse; throws on singular input.
inline QMat inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  size_t n = m.rows();
  QMat a = m, inv = QMat::identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Rational p = a(col, col);
    for (size_t j = 0; j < n; ++j) { a(col, j) /= p; inv(col, j) /= p; }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      Rational f = a(i, col);
      for (size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Solve A x = b exactly; nullopt when inconsistent (A may be rectangular).
inline std::optional<QVec> solve(const QMat& A, const QVec& b) {
  size_t n = A.rows(), m = A.cols();
  if (b.size() != n) throw std::invalid_argument("solve: size mismatch");
  QMat a(n, m + 1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) a(i, j) = A(i, j);
    a(i, m) = b[i];
  }
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < m && row < n; ++col) {
    size_t piv = row;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) continue;
    if (piv != row)
      for (size_t j = 0; j <= m; ++j) std::swap(a(piv, j), a(row, j));
    Rational p = a(row, col);
    for (size_t j = 0; j <= m; ++j) a(row, j) /= p;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      Rational f = a(i, col);
      for (size_t j = 0; j <= m; ++j) a(i, j) -= f * a(row, j);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (size_t i = row; i < n; ++i)
    if (!a(i, m).is_zero()) return std::nullopt;
  QVec x(m, Rational(0));
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a(i, m);
  return x;
}

// Smith normal form: U * A * V = D with U, V unimodular and D diagonal,
// each diagonal entry dividing the next.
struct SmithForm {
  ZMat D, U, V;
};

inline SmithForm smith_form(const ZMat& A) {
  size_t n = A.rows(), m = A.cols();
  SmithForm s{A, ZMat::identity(n), ZMat::identity(m)};
  ZMat& D = s.D;
  ZMat& U = s.U;
  ZMat& V = s.V;

  auto swap_rows = [&](size_t i, size_t j) {
    for (size_t k = 0; k < m; ++k) std::swap(D(i, k), D(j, k));
    for (size_t k = 0; k < n; ++k) std::swap(U(i, k), U(j, k));
  };
  auto swap_cols = [&](size_t i, size_t j) {
    for (size_t k = 0; k < n; ++k) std::swap(D(k, i), D(k, j));
    for (size_t k = 0; k < m; ++k) std::swap(V(k, i), V(k, j));
  };
  auto add_row = [&](size_t dst, size_t src, const Integer& f) {
    for (size_t k = 0; k < m; ++k) D(dst, k) += f * D(src, k);
    for (size_t k = 0; k < n; ++k) U(dst, k) += f * U(src, k);
  };
  auto add_col = [&](size_t dst, size_t src, const Integer& f) {
    for (size_t k = 0; k < n; ++k) D(k, dst) += f * D(k, src);
    for (size_t k = 0; k < m; ++k) V(k, dst) += f * V(k, src);
  };
  auto neg_row = [&](size_t i) {
    for (size_t k = 0; k < m; ++k) D(i, k) = -D(i, k);
    for (size_t k = 0; k < n; ++k) U(i, k) = -U(i, k);
  };

  size_t t = 0;
  while (t < n && t < m) {
    // locate minimal nonzero |entry| in the trailing block
    size_t pi = t, pj = t;
    bool found = false;
    for (size_t i = t; i < n; ++i)
      for (size_t j = t; j < m; ++j)
        if (!D(i, j).is_zero() && (!found || cmp(D(i, j).abs(), D(pi, pj).abs()) < 0)) {
          pi = i; pj = j; found = true;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    bool dirty = false;
    for (size_t i = t + 1; i < n; ++i) {
      if (D(i, t).is_zero()) continue;
      add_row(i, t, -(D(i, t) / D(t, t)));
      if (!D(i, t).is_zero()) dirty = true;
    }
    for (size_t j = t + 1; j < m; ++j) {
      if (D(t, j).is_zero()) continue;
      add_col(j, t, -(D(t, j) / D(t, t)));
      if (!D(t, j).is_zero()) dirty = true;
    }
    if (dirty) continue;
    // enforce divisibility of the remaining block by D(t,t)
    bool restart = false;
    for (size_t i = t + 1; i < n && !restart; ++i)
      for (size_t j = t + 1; j < m && !restart; ++j)
        if (!(D(i, j) % D(t, t)).is_zero()) {
          add_row(t, i, Integer(1));
          restart = true;
        }
    if (restart) continue;
    if (D(t, t).sign() < 0) neg_row(t);
    ++t;
  }
  return s;
}

} // namespace kacdem
