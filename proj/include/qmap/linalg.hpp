#pragma once

// Small dense linear algebra: just enough for metric Grams of dimension <= ~40.
// Eigenvalues via cyclic Jacobi (matrices are symmetric by construction),
// inverses via Gauss-Jordan with partial pivoting, least squares via normal
// equations on well-conditioned generator frames.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dual.hpp"

namespace qmap {

using Vec = std::vector<double>;

template <class T>
struct MatT {
  int rows = 0, cols = 0;
  std::vector<T> a;

  MatT() = default;
  MatT(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, T(0.0)) {}

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

using Mat = MatT<double>;

inline Mat identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

inline Mat matmul(const Mat& x, const Mat& y) {
  assert(x.cols == y.rows);
  Mat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline Mat transpose(const Mat& x) {
  Mat r(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

inline double max_abs(const Mat& x) {
  double m = 0.0;
  for (double v : x.a) m = std::max(m, std::fabs(v));
  return m;
}

inline Vec matvec(const Mat& x, const Vec& v) {
  assert(static_cast<int>(v.size()) == x.cols);
  Vec r(x.rows, 0.0);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
  return r;
}

// Gauss-Jordan inverse, templated on the scalar field (pivots chosen by the
// magnitude of the value part so it also works on duals).
template <class T>
MatT<T> gauss_inverse(MatT<T> m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  MatT<T> inv(n, n);
  for (int i = 0; i < n; ++i) inv(i, i) = T(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(value(m(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double w = std::fabs(value(m(r, col)));
      if (w > best) { best = w; piv = r; }
    }
    if (best == 0.0) throw std::runtime_error("gauss_inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    T p = m(col, col);
    for (int j = 0; j < n; ++j) { m(col, j) = m(col, j) / p; inv(col, j) = inv(col, j) / p; }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = m(r, col);
      if (value(f) == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

// Inverse of a symmetric matrix (contract: input symmetric; output symmetrized
// to kill roundoff skew).
inline Mat sym_invert(const Mat& m) {
  Mat inv = gauss_inverse(m);
  for (int i = 0; i < inv.rows; ++i)
    for (int j = i + 1; j < inv.cols; ++j) {
      double s = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = s;
    }
  return inv;
}

// All eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi.
inline Vec sym_eigvals(Mat m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    if (off < 1e-26 * (1.0 + max_abs(m))) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = m(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  Vec ev(n);
  for (int i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// det via LU with partial pivoting
inline double det(Mat m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  double d = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
    if (m(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      double f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return d;
}

// Least squares min ||A x - b|| via normal equations (frames are small and
// well conditioned here). Returns x; residual optionally reported.
inline Vec lstsq(const Mat& A, const Vec& b, double* residual = nullptr) {
  Mat At = transpose(A);
  Mat AtA = matmul(At, A);
  Vec Atb = matvec(At, b);
  Mat inv = gauss_inverse(AtA);
  Vec x = matvec(inv, Atb);
  if (residual) {
    Vec r = matvec(A, x);
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) s += (r[i] - b[i]) * (r[i] - b[i]);
    *residual = std::sqrt(s);
  }
  return x;
}

}  // namespace qmap
