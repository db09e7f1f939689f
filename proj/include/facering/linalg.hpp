#pragma once

// Exact dense linear algebra. Field entries go through ordinary Gaussian
// elimination; polynomial (and rational-function) matrices go through
// Bareiss fraction-free elimination after clearing row denominators.

#include <vector>

#include "facering/ratfunc.hpp"

namespace facering {

template <class F>
class Matrix {
public:
  Matrix(size_t rows, size_t cols, typename F::Field fld)
      : r_(rows), c_(cols), fld_(fld), a_(rows * cols, fld.zero()) {}

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  const typename F::Field& field() const { return fld_; }
  F& at(size_t i, size_t j) { return a_[i * c_ + j]; }
  const F& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

  static Matrix identity(size_t n, typename F::Field fld) {
    Matrix m(n, n, fld);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = fld.one();
    return m;
  }

private:
  size_t r_, c_;
  typename F::Field fld_;
  std::vector<F> a_;
};

// Rank over a field.
template <class F>
size_t gauss_rank(Matrix<F> m) {
  size_t rank = 0;
  for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    size_t piv = rank;
    while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(rank, j), m.at(piv, j));
    F inv = m.at(rank, col).inv();
    for (size_t i = rank + 1; i < m.rows(); ++i) {
      if (m.at(i, col).is_zero()) continue;
      F f = m.at(i, col) * inv;
      for (size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

template <class F>
F gauss_det(Matrix<F> m) {
  if (m.rows() != m.cols()) fail("DimensionMismatch", "determinant of non-square matrix");
  F det = m.field().one();
  size_t n = m.rows();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m.at(piv, col).is_zero()) ++piv;
    if (piv == n) return m.field().zero();
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
      det = -det;
    }
    det = det * m.at(col, col);
    F inv = m.at(col, col).inv();
    for (size_t i = col + 1; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      F f = m.at(i, col) * inv;
      for (size_t j = col; j < n; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
    }
  }
  return det;
}

// Kernel basis (column vectors) over a field.
template <class F>
std::vector<std::vector<F>> gauss_kernel(Matrix<F> m) {
  size_t rows = m.rows(), cols = m.cols();
  std::vector<int> pivot_of_col(cols, -1);
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && m.at(piv, col).is_zero()) ++piv;
    if (piv == rows) continue;
    for (size_t j = 0; j < cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
    F inv = m.at(rank, col).inv();
    for (size_t j = col; j < cols; ++j) m.at(rank, j) = m.at(rank, j) * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m.at(i, col).is_zero()) continue;
      F f = m.at(i, col);
      for (size_t j = col; j < cols; ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
    }
    pivot_of_col[col] = (int)rank;
    ++rank;
  }
  std::vector<std::vector<F>> basis;
  for (size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    std::vector<F> v(cols, m.field().zero());
    v[free_col] = m.field().one();
    for (size_t col = 0; col < cols; ++col) {
      int p = pivot_of_col[col];
      if (p >= 0) v[col] = -m.at((size_t)p, free_col);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Bareiss fraction-free elimination on polynomial matrices: exact rank and
// determinant without leaving the polynomial ring.
// ---------------------------------------------------------------------------
template <class K>
size_t bareiss_rank(Matrix<MultiPoly<K>> m) {
  using P = MultiPoly<K>;
  P prev = P::one(m.field());
  size_t rank = 0;
  for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    size_t piv = rank;
    while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(rank, j), m.at(piv, j));
    for (size_t i = rank + 1; i < m.rows(); ++i) {
      for (size_t j = col + 1; j < m.cols(); ++j) {
        P t = m.at(i, j) * m.at(rank, col) - m.at(i, col) * m.at(rank, j);
        m.at(i, j) = divide_exact(t, prev);
      }
      m.at(i, col) = P::zero(m.field());
    }
    prev = m.at(rank, col);
    ++rank;
  }
  return rank;
}

template <class K>
MultiPoly<K> bareiss_det(Matrix<MultiPoly<K>> m) {
  using P = MultiPoly<K>;
  if (m.rows() != m.cols()) fail("DimensionMismatch", "determinant of non-square matrix");
  size_t n = m.rows();
  P prev = P::one(m.field());
  bool neg = false;
  for (size_t col = 0; col + 1 < n; ++col) {
    size_t piv = col;
    while (piv < n && m.at(piv, col).is_zero()) ++piv;
    if (piv == n) return P::zero(m.field());
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
      neg = !neg;
    }
    for (size_t i = col + 1; i < n; ++i) {
      for (size_t j = col + 1; j < n; ++j) {
        P t = m.at(i, j) * m.at(col, col) - m.at(i, col) * m.at(col, j);
        m.at(i, j) = divide_exact(t, prev);
      }
      m.at(i, col) = P::zero(m.field());
    }
    prev = m.at(col, col);
  }
  P det = m.at(n - 1, n - 1);
  return neg ? -det : det;
}

// Rank of a rational-function matrix: clear each row's denominators (a
// nonzero row scaling preserves rank), then run Bareiss.
template <class K>
size_t exact_rank(const Matrix<RatFunc<K>>& m) {
  using P = MultiPoly<K>;
  auto base = m.field().base;
  Matrix<P> pm(m.rows(), m.cols(), base);
  for (size_t i = 0; i < m.rows(); ++i) {
    P lcm = P::one(base);
    for (size_t j = 0; j < m.cols(); ++j) {
      const P& d = m.at(i, j).den();
      lcm = divide_exact(lcm * d, poly_gcd(lcm, d));
    }
    for (size_t j = 0; j < m.cols(); ++j)
      pm.at(i, j) = m.at(i, j).num() * divide_exact(lcm, m.at(i, j).den());
  }
  return bareiss_rank(std::move(pm));
}

template <class F>
size_t exact_rank(const Matrix<F>& m) {
  return gauss_rank(m);
}

// Determinant by Laplace expansion along the sparsest column; effective on
// the small structured l.s.o.p. minors (d <= 6) this project manipulates.
template <class F>
F laplace_det(const Matrix<F>& m) {
  if (m.rows() != m.cols()) fail("DimensionMismatch", "determinant of non-square matrix");
  size_t n = m.rows();
  if (n == 0) return m.field().one();
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  size_t best = 0, best_nz = n + 1;
  for (size_t j = 0; j < n; ++j) {
    size_t nz = 0;
    for (size_t i = 0; i < n; ++i)
      if (!m.at(i, j).is_zero()) ++nz;
    if (nz < best_nz) {
      best_nz = nz;
      best = j;
    }
  }
  F det = m.field().zero();
  for (size_t i = 0; i < n; ++i) {
    if (m.at(i, best).is_zero()) continue;
    Matrix<F> sub(n - 1, n - 1, m.field());
    for (size_t r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (size_t c = 0, cc = 0; c < n; ++c) {
        if (c == best) continue;
        sub.at(rr, cc) = m.at(r, c);
        ++cc;
      }
      ++rr;
    }
    F term = m.at(i, best) * laplace_det(sub);
    det = ((i + best) % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace facering
