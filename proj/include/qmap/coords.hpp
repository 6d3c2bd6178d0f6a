#pragma once

// The classical mirror map between the IIB-side chart
// (tau1, tau2, t^a, b^a, c^a, c_a, c0, psi) and the IIA-side chart
// (t, b, rho, zeta^i, zt_i, sigma), together with its closed-form
// differential (column by column) and the explicit inverse.

#include <cmath>
#include <vector>

#include "cubic.hpp"
#include "linalg.hpp"
#include "qk_metric.hpp"

namespace qmap {

struct ChartIIB {
  int n;
  explicit ChartIIB(int nn) : n(nn) {}
  int dim() const { return 4 * n + 4; }
  int tau1() const { return 0; }
  int tau2() const { return 1; }
  int t(int a) const { return 2 + a; }
  int b(int a) const { return 2 + n + a; }
  int ca(int a) const { return 2 + 2 * n + a; }   // c^a
  int c_a(int a) const { return 2 + 3 * n + a; }  // c_a
  int c0() const { return 2 + 4 * n; }
  int psi() const { return 3 + 4 * n; }
};

struct IIBPoint {
  double tau1 = 0.0, tau2 = 1.0;
  Vec t, b, ca, c_a;  // n each
  double c0 = 0.0, psi = 0.0;

  Vec pack() const {
    ChartIIB ix(static_cast<int>(t.size()));
    Vec x(ix.dim());
    x[ix.tau1()] = tau1;
    x[ix.tau2()] = tau2;
    for (int a = 0; a < ix.n; ++a) {
      x[ix.t(a)] = t[a];
      x[ix.b(a)] = b[a];
      x[ix.ca(a)] = ca[a];
      x[ix.c_a(a)] = c_a[a];
    }
    x[ix.c0()] = c0;
    x[ix.psi()] = psi;
    return x;
  }
  static IIBPoint unpack(int n, const Vec& x) {
    ChartIIB ix(n);
    IIBPoint q;
    q.t.resize(n); q.b.resize(n); q.ca.resize(n); q.c_a.resize(n);
    q.tau1 = x[ix.tau1()];
    q.tau2 = x[ix.tau2()];
    for (int a = 0; a < n; ++a) {
      q.t[a] = x[ix.t(a)];
      q.b[a] = x[ix.b(a)];
      q.ca[a] = x[ix.ca(a)];
      q.c_a[a] = x[ix.c_a(a)];
    }
    q.c0 = x[ix.c0()];
    q.psi = x[ix.psi()];
    return q;
  }
};

inline IIAPoint iib_to_iia(const CubicForm& f, const IIBPoint& q) {
  int n = f.n();
  IIAPoint p;
  p.t = q.t;
  p.b = q.b;
  p.rho = 0.5 * q.tau2 * q.tau2 * f.h(q.t);
  p.zeta.assign(n + 1, 0.0);
  p.zetatilde.assign(n + 1, 0.0);
  p.zeta[0] = q.tau1;
  auto cmtb = [&](int c) { return q.ca[c] - q.tau1 * q.b[c]; };  // c^c - tau1 b^c
  for (int a = 0; a < n; ++a) p.zeta[a + 1] = -cmtb(a);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c) s += f.k(a, bb, c) * q.b[bb] * cmtb(c);
    p.zetatilde[a + 1] = q.c_a[a] + 0.5 * s;
  }
  {
    double s = 0.0;
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c) s += f.k(a, bb, c) * q.b[a] * q.b[bb] * cmtb(c);
    p.zetatilde[0] = q.c0 - s / 6.0;
  }
  {
    double s = -2.0 * (q.psi + 0.5 * q.tau1 * q.c0);
    for (int a = 0; a < n; ++a) s += q.c_a[a] * cmtb(a);
    double u = 0.0;
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c) u += f.k(a, bb, c) * q.b[a] * q.ca[bb] * cmtb(c);
    p.sigma = s - u / 6.0;
  }
  return p;
}

inline IIBPoint iia_to_iib(const CubicForm& f, const IIAPoint& p) {
  int n = f.n();
  IIBPoint q;
  q.t = p.t;
  q.b = p.b;
  q.tau2 = std::sqrt(2.0 * p.rho / f.h(p.t));
  q.tau1 = p.zeta[0];
  q.ca.resize(n);
  q.c_a.resize(n);
  for (int a = 0; a < n; ++a) q.ca[a] = -(p.zeta[a + 1] - p.zeta[0] * p.b[a]);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c) s += f.k(a, bb, c) * p.b[bb] * p.zeta[c + 1];
    q.c_a[a] = p.zetatilde[a + 1] + 0.5 * s;
  }
  double kbbz = 0.0;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c) kbbz += f.k(a, bb, c) * p.b[a] * p.b[bb] * p.zeta[c + 1];
  q.c0 = p.zetatilde[0] - kbbz / 6.0;
  {
    double s = -0.5 * p.sigma - 0.5 * p.zeta[0] * (p.zetatilde[0] - kbbz / 6.0);
    for (int a = 0; a < n; ++a) {
      double ca = 0.0;
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c) ca += f.k(a, bb, c) * p.b[bb] * p.zeta[c + 1];
      s -= 0.5 * p.zeta[a + 1] * (p.zetatilde[a + 1] + 0.5 * ca);
    }
    double u = 0.0;
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c)
          u += f.k(a, bb, c) * p.b[a] * p.zeta[bb + 1] * (p.zeta[c + 1] - p.zeta[0] * p.b[c]);
    q.psi = s - u / 12.0;
  }
  return q;
}

// Closed-form differential of iib_to_iia at q: rows in the IIA chart,
// columns in the IIB chart.
inline Mat mirror_differential(const CubicForm& f, const IIBPoint& q) {
  int n = f.n();
  ChartIIA ia(n);
  ChartIIB ib(n);
  Mat J(ia.dim(), ib.dim());
  double h = f.h(q.t);
  Vec ha = f.grad(q.t);
  double rho = 0.5 * q.tau2 * q.tau2 * h;

  // d/dtau2 -> tau2 e^{-K}/8 d/drho, e^{-K} = 8h
  J(ia.rho(), ib.tau2()) = q.tau2 * h;

  // d/dt^a -> d/dt^a - rho dK/dt^a d/drho, dK/dt^a = -h_a/h
  for (int a = 0; a < n; ++a) {
    J(ia.t(a), ib.t(a)) = 1.0;
    J(ia.rho(), ib.t(a)) = rho * ha[a] / h;
  }

  auto k3 = [&](const Vec& x, const Vec& y, const Vec& z) {
    double s = 0.0;
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb)
        for (int c = 0; c < n; ++c) s += f.k(a, bb, c) * x[a] * y[bb] * z[c];
    return s;
  };
  auto k2 = [&](int a, const Vec& y, const Vec& z) {
    double s = 0.0;
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c) s += f.k(a, bb, c) * y[bb] * z[c];
    return s;
  };
  auto k1 = [&](int a, int bb, const Vec& z) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += f.k(a, bb, c) * z[c];
    return s;
  };

  // d/dtau1
  {
    int col = ib.tau1();
    J(ia.zeta(0), col) = 1.0;
    for (int a = 0; a < n; ++a) J(ia.zeta(a + 1), col) = q.b[a];
    for (int a = 0; a < n; ++a) J(ia.zetatilde(a + 1), col) = -0.5 * k2(a, q.b, q.b);
    J(ia.zetatilde(0), col) = k3(q.b, q.b, q.b) / 6.0;
    double s = -q.c0;
    for (int a = 0; a < n; ++a) s -= q.c_a[a] * q.b[a];
    s += k3(q.b, q.b, q.ca) / 6.0;
    J(ia.sigma(), col) = s;
  }

  // d/db^a
  for (int a = 0; a < n; ++a) {
    int col = ib.b(a);
    J(ia.b(a), col) = 1.0;
    J(ia.zeta(a + 1), col) = q.tau1;
    for (int bb = 0; bb < n; ++bb)
      J(ia.zetatilde(bb + 1), col) = 0.5 * k1(a, bb, q.ca) - q.tau1 * k1(a, bb, q.b);
    J(ia.zetatilde(0), col) = -k2(a, q.b, q.ca) / 3.0 + 0.5 * q.tau1 * k2(a, q.b, q.b);
    J(ia.sigma(), col) =
        -q.c_a[a] * q.tau1 + q.tau1 * k2(a, q.b, q.ca) / 3.0 - k2(a, q.ca, q.ca) / 6.0;
  }

  // d/dc^a
  for (int a = 0; a < n; ++a) {
    int col = ib.ca(a);
    J(ia.zeta(a + 1), col) = -1.0;
    for (int bb = 0; bb < n; ++bb) J(ia.zetatilde(bb + 1), col) = 0.5 * k1(a, bb, q.b);
    J(ia.zetatilde(0), col) = -k2(a, q.b, q.b) / 6.0;
    J(ia.sigma(), col) =
        q.c_a[a] - k2(a, q.b, q.ca) / 3.0 + q.tau1 * k2(a, q.b, q.b) / 6.0;
  }

  // d/dc_a
  for (int a = 0; a < n; ++a) {
    J(ia.zetatilde(a + 1), ib.c_a(a)) = 1.0;
    J(ia.sigma(), ib.c_a(a)) = q.ca[a] - q.tau1 * q.b[a];
  }

  // d/dc0 and d/dpsi
  J(ia.zetatilde(0), ib.c0()) = 1.0;
  J(ia.sigma(), ib.c0()) = -q.tau1;
  J(ia.sigma(), ib.psi()) = -2.0;

  return J;
}

}  // namespace qmap
