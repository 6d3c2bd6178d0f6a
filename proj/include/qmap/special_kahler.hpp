#pragma once

// Projective special Kahler data of the r-map image: special coordinates
// z^0 = 1, z^a = b^a + i t^a, the matrices tau, N = -2 Im tau and the closed
// form of N^{-1}, the Kahler potential K = -log(8h), and the metric
// g = -(1/4) Hess(log h) (db db + dt dt).

#include <vector>

#include "cubic.hpp"
#include "dual.hpp"
#include "linalg.hpp"

namespace qmap {

struct PSKPoint {
  Vec b, t;
};

template <class T>
std::vector<cplx<T>> special_coords(const std::vector<T>& b, const std::vector<T>& t) {
  std::vector<cplx<T>> z(b.size() + 1);
  z[0] = cplx<T>(T(1.0), T(0.0));
  for (std::size_t a = 0; a < b.size(); ++a) z[a + 1] = cplx<T>(b[a], t[a]);
  return z;
}

template <class T>
struct SKMatrices {
  MatT<cplx<T>> tau;   // (n+1)x(n+1), tau_00 = -2 h(z), tau_0a = (1/2) k z z, tau_ab = -k z
  MatT<T> N;           // -2 Im tau, closed form
  MatT<T> Ninv;        // closed form via G^{-1}
  MatT<T> G, Ginv;     // G_ab = k_abc t^c / (2h)
  T h;                 // h(t)
  T K;                 // N_ij z^i zbar^j = 8 h(t), stored as 8h
};

template <class T>
SKMatrices<T> special_matrices(const CubicForm& f, const std::vector<T>& b,
                               const std::vector<T>& t) {
  int n = f.n();
  SKMatrices<T> out;
  out.h = f.h(t);
  out.K = T(8.0) * out.h;

  auto z = special_coords(b, t);
  out.tau = MatT<cplx<T>>(n + 1, n + 1);
  {
    std::vector<cplx<T>> za(z.begin() + 1, z.end());
    cplx<T> hz = f.h_c(za);
    out.tau(0, 0) = -(T(2.0) * hz);
    for (int a = 0; a < n; ++a) {
      cplx<T> s;
      for (int bb = 0; bb < n; ++bb)
        for (int cc = 0; cc < n; ++cc)
          if (f.k(a, bb, cc) != 0.0) s += T(f.k(a, bb, cc)) * (za[bb] * za[cc]);
      out.tau(0, a + 1) = out.tau(a + 1, 0) = s * T(0.5);
      for (int bb = a; bb < n; ++bb) {
        cplx<T> u;
        for (int cc = 0; cc < n; ++cc)
          if (f.k(a, bb, cc) != 0.0) u += T(f.k(a, bb, cc)) * za[cc];
        out.tau(a + 1, bb + 1) = out.tau(bb + 1, a + 1) = -u;
      }
    }
  }

  // N closed form
  out.N = MatT<T>(n + 1, n + 1);
  {
    T kbbt(0.0);
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c)
          if (f.k(a, bb, c) != 0.0) kbbt += T(f.k(a, bb, c)) * b[a] * b[bb] * t[c];
    out.N(0, 0) = T(-4.0) * out.h + T(2.0) * kbbt;
    for (int a = 0; a < n; ++a) {
      T s(0.0);
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c)
          if (f.k(a, bb, c) != 0.0) s += T(f.k(a, bb, c)) * b[bb] * t[c];
      out.N(0, a + 1) = out.N(a + 1, 0) = T(-2.0) * s;
      for (int bb = a; bb < n; ++bb) {
        T u(0.0);
        for (int c = 0; c < n; ++c)
          if (f.k(a, bb, c) != 0.0) u += T(f.k(a, bb, c)) * t[c];
        out.N(a + 1, bb + 1) = out.N(bb + 1, a + 1) = T(2.0) * u;
      }
    }
  }

  // G and its inverse
  out.G = MatT<T>(n, n);
  MatT<T> H = f.hess(t);
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) out.G(a, bb) = H(a, bb) / (T(2.0) * out.h);
  out.Ginv = gauss_inverse(out.G);

  // N^{-1} closed form: -(1/4h) [[1, b^b], [b^a, b^a b^b - (G^{-1})^{ab}]]
  out.Ninv = MatT<T>(n + 1, n + 1);
  T m4h = T(-1.0) / (T(4.0) * out.h);
  out.Ninv(0, 0) = m4h;
  for (int a = 0; a < n; ++a) {
    out.Ninv(0, a + 1) = out.Ninv(a + 1, 0) = m4h * b[a];
    for (int bb = 0; bb < n; ++bb)
      out.Ninv(a + 1, bb + 1) = m4h * (b[a] * b[bb] - out.Ginv(a, bb));
  }
  return out;
}

// g = -(1/4) Hess(log h)(t) on each of the b- and t-blocks; chart order
// (b^1..b^n, t^1..t^n).
template <class T>
MatT<T> psk_metric(const CubicForm& f, const std::vector<T>& b, const std::vector<T>& t) {
  int n = f.n();
  T h = f.h(t);
  auto grad = f.grad(t);
  MatT<T> H = f.hess(t);
  MatT<T> g(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) {
      T v = T(-0.25) * (H(a, bb) / h - grad[a] * grad[bb] / (h * h));
      g(a, bb) = v;          // db^a db^b
      g(n + a, n + bb) = v;  // dt^a dt^b
    }
  (void)b;  // the metric is independent of b; kept in the signature for chart clarity
  return g;
}

// d^c K = i (dbar - d) K = (h_a / h) db^a; returned over the (b,t) chart.
template <class T>
std::vector<T> dc_kahler_pot(const CubicForm& f, const std::vector<T>& t) {
  int n = f.n();
  T h = f.h(t);
  auto grad = f.grad(t);
  std::vector<T> w(2 * n, T(0.0));
  for (int a = 0; a < n; ++a) w[a] = grad[a] / h;
  return w;
}

/// Central charge vector Zt = (z^i, F_i): F_0 = -h(z), F_a = (1/2) k_abc z^b z^c.
template <class T>
struct CentralCharges {
  std::vector<cplx<T>> z;  // z^i, z^0 = 1
  std::vector<cplx<T>> F;  // F_i
};

template <class T>
CentralCharges<T> central_charges(const CubicForm& f, const std::vector<T>& b,
                                  const std::vector<T>& t) {
  int n = f.n();
  CentralCharges<T> cc;
  cc.z = special_coords(b, t);
  cc.F.resize(n + 1);
  std::vector<cplx<T>> za(cc.z.begin() + 1, cc.z.end());
  cc.F[0] = -f.h_c(za);
  for (int a = 0; a < n; ++a) {
    cplx<T> s;
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        if (f.k(a, bb, c) != 0.0) s += T(f.k(a, bb, c)) * (za[bb] * za[c]);
    cc.F[a + 1] = s * T(0.5);
  }
  return cc;
}

// Conic special geometry relation F_i = tau^tw_ij z^j with tau^tw = -tau;
// returns the max residual.
inline double cask_residual(const CubicForm& f, const Vec& b, const Vec& t) {
  auto sk = special_matrices(f, b, t);
  auto cc = central_charges(f, b, t);
  int n = f.n();
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    cplx<double> s;
    for (int j = 0; j <= n; ++j) s += (-sk.tau(i, j)) * cc.z[j];
    cplx<double> r = s - cc.F[i];
    worst = std::max(worst, std::sqrt(abs2(r)));
  }
  return worst;
}

}  // namespace qmap
