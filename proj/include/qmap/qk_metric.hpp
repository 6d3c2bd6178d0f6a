#pragma once

// The one-parameter family of quaternionic Kahler metrics produced by the
// (1-loop deformed) c-map applied to the r-map image of a cubic cone:
//
//   g = (rho+c)/rho g_psk
//     + (rho+2c)/(4 rho^2 (rho+c)) d rho^2
//     - 1/(4 rho) (N^{ij} - 2(rho+c)/(rho K) z^i zbar^j) W_i Wbar_j
//     + (rho+c)/(64 rho^2 (rho+2c)) (d sigma + zt_i d z^i - z^i d zt_i - 4c d^c K)^2
//
// with W_i = d zt_i - tau_ij d z^j, assembled over the real chart
// (t^1..t^n, b^1..b^n, rho, z^0..z^n, zt_0..zt_n, sigma) of dimension 4n+4.
// c = 0 is the tree-level metric.

#include <vector>

#include "cubic.hpp"
#include "dual.hpp"
#include "linalg.hpp"
#include "special_kahler.hpp"

namespace qmap {

struct ChartIIA {
  int n;
  explicit ChartIIA(int nn) : n(nn) {}
  int dim() const { return 4 * n + 4; }
  int t(int a) const { return a; }
  int b(int a) const { return n + a; }
  int rho() const { return 2 * n; }
  int zeta(int i) const { return 2 * n + 1 + i; }
  int zetatilde(int i) const { return 3 * n + 2 + i; }
  int sigma() const { return 4 * n + 3; }
};

struct IIAPoint {
  Vec t, b;          // n each
  double rho = 1.0;
  Vec zeta, zetatilde;  // n+1 each
  double sigma = 0.0;

  Vec pack() const {
    ChartIIA ix(static_cast<int>(t.size()));
    Vec x(ix.dim());
    for (int a = 0; a < ix.n; ++a) { x[ix.t(a)] = t[a]; x[ix.b(a)] = b[a]; }
    x[ix.rho()] = rho;
    for (int i = 0; i <= ix.n; ++i) { x[ix.zeta(i)] = zeta[i]; x[ix.zetatilde(i)] = zetatilde[i]; }
    x[ix.sigma()] = sigma;
    return x;
  }
  static IIAPoint unpack(int n, const Vec& x) {
    ChartIIA ix(n);
    IIAPoint p;
    p.t.resize(n); p.b.resize(n);
    p.zeta.resize(n + 1); p.zetatilde.resize(n + 1);
    for (int a = 0; a < n; ++a) { p.t[a] = x[ix.t(a)]; p.b[a] = x[ix.b(a)]; }
    p.rho = x[ix.rho()];
    for (int i = 0; i <= n; ++i) { p.zeta[i] = x[ix.zeta(i)]; p.zetatilde[i] = x[ix.zetatilde(i)]; }
    p.sigma = x[ix.sigma()];
    return p;
  }
};

template <class T>
struct MetricResult {
  MatT<T> g;
  double imag_residue = 0.0;  // max |Im| of the symmetrized Hermitian W-term
};

template <class T>
MetricResult<T> metric_fs(const CubicForm& f, const std::vector<T>& x, double c) {
  int n = f.n();
  ChartIIA ix(n);
  std::vector<T> t(n), b(n), zeta(n + 1), zetatilde(n + 1);
  for (int a = 0; a < n; ++a) { t[a] = x[ix.t(a)]; b[a] = x[ix.b(a)]; }
  T rho = x[ix.rho()];
  for (int i = 0; i <= n; ++i) { zeta[i] = x[ix.zeta(i)]; zetatilde[i] = x[ix.zetatilde(i)]; }

  auto sk = special_matrices(f, b, t);
  auto z = special_coords(b, t);
  T cc(c);

  MetricResult<T> out;
  out.g = MatT<T>(ix.dim(), ix.dim());
  MatT<T>& g = out.g;

  // PSK block, scaled by (rho+c)/rho
  {
    T scale = (rho + cc) / rho;
    MatT<T> gp = psk_metric(f, b, t);  // (b-block, t-block), 2n x 2n
    for (int a = 0; a < n; ++a)
      for (int bb = 0; bb < n; ++bb) {
        g(ix.b(a), ix.b(bb)) += scale * gp(a, bb);
        g(ix.t(a), ix.t(bb)) += scale * gp(n + a, n + bb);
      }
  }

  // d rho^2
  g(ix.rho(), ix.rho()) += (rho + T(2.0) * cc) / (T(4.0) * rho * rho * (rho + cc));

  // W-term: -(1/4rho) A^{ij} W_i Wbar_j, A = N^{-1} - 2(rho+c)/(rho K) z zbar
  {
    int P = 2 * (n + 1);  // slots: zeta^0..zeta^n, zt_0..zt_n
    auto slot = [&](int s) { return s <= n ? ix.zeta(s) : ix.zetatilde(s - n - 1); };
    std::vector<std::vector<cplx<T>>> W(n + 1, std::vector<cplx<T>>(P));
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) W[i][j] = -sk.tau(i, j);  // d zeta^j component
      W[i][n + 1 + i] = cplx<T>(T(1.0), T(0.0));             // d zt_i component
    }
    T wcoef = T(2.0) * (rho + cc) / (rho * sk.K);
    std::vector<std::vector<cplx<T>>> A(n + 1, std::vector<cplx<T>>(n + 1));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        A[i][j] = cplx<T>(sk.Ninv(i, j), T(0.0)) - wcoef * (z[i] * conj(z[j]));
    // B[j][mu] = sum_i A[i][j] W[i][mu]  (A is Hermitian: A[i][j] = conj(A[j][i]))
    std::vector<std::vector<cplx<T>>> B(n + 1, std::vector<cplx<T>>(P));
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        for (int mu = 0; mu < P; ++mu) B[j][mu] += A[i][j] * W[i][mu];
    T mcoef = T(-1.0) / (T(4.0) * rho);
    for (int mu = 0; mu < P; ++mu)
      for (int nu = mu; nu < P; ++nu) {
        cplx<T> tmn, tnm;
        for (int j = 0; j <= n; ++j) {
          tmn += B[j][mu] * conj(W[j][nu]);
          tnm += B[j][nu] * conj(W[j][mu]);
        }
        cplx<T> sym = (tmn + tnm) * T(0.5);
        double imres = std::fabs(value(sym.im));
        if (imres > out.imag_residue) out.imag_residue = imres;
        g(slot(mu), slot(nu)) += mcoef * sym.re;
        if (nu != mu) g(slot(nu), slot(mu)) += mcoef * sym.re;
      }
  }

  // sigma-form: Theta = d sigma + zt_i d zeta^i - zeta^i d zt_i - 4c d^c K
  {
    std::vector<T> theta(ix.dim(), T(0.0));
    theta[ix.sigma()] = T(1.0);
    for (int i = 0; i <= n; ++i) {
      theta[ix.zeta(i)] = zetatilde[i];
      theta[ix.zetatilde(i)] = -zeta[i];
    }
    if (c != 0.0) {
      auto dck = dc_kahler_pot(f, t);  // (b,t) chart; only db components nonzero
      for (int a = 0; a < n; ++a) theta[ix.b(a)] = T(-4.0) * cc * dck[a];
    }
    T tcoef = (rho + cc) / (T(64.0) * rho * rho * (rho + T(2.0) * cc));
    for (int mu = 0; mu < ix.dim(); ++mu)
      for (int nu = mu; nu < ix.dim(); ++nu) {
        T v = tcoef * theta[mu] * theta[nu];
        g(mu, nu) += v;
        if (nu != mu) g(nu, mu) += v;
      }
  }

  return out;
}

// double-only convenience
inline MetricResult<double> metric_fs(const CubicForm& f, const IIAPoint& p, double c) {
  return metric_fs<double>(f, p.pack(), c);
}

struct ValidityInfo {
  bool ok = false;
  double min_eig = 0.0, trace = 0.0;
};

inline ValidityInfo metric_validity(const CubicForm& f, const IIAPoint& p, double c) {
  ValidityInfo v;
  if (!(p.rho > 0.0) || !(p.rho + c > 0.0) || !(p.rho + 2.0 * c > 0.0)) return v;
  if (!(f.h(p.t) > 0.0)) return v;
  Mat g = metric_fs(f, p, c).g;
  Vec ev = sym_eigvals(g);
  for (int i = 0; i < g.rows; ++i) v.trace += g(i, i);
  v.min_eig = ev.front();
  v.ok = v.min_eig > 1e-10 * v.trace && v.trace > 0.0;
  return v;
}

// Checks the q-map decomposition at a point: lifted H-tangents carry
// (1/4) g_H and are orthogonal to all fiber coordinate directions.
struct DecompositionReport {
  double metric_mismatch = 0.0;   // |g(u^,w^) - (1/4) g_H(u,w)| max
  double orthogonality = 0.0;     // |g(u^, fiber)| max
};

inline DecompositionReport decomposition_check(const CubicForm& f, const IIAPoint& pt) {
  int n = f.n();
  ChartIIA ix(n);
  Mat g = metric_fs(f, pt, 0.0).g;
  double r = std::pow(f.h(pt.t), 1.0 / 3.0);
  Vec p(pt.t);
  for (auto& v : p) v /= r;

  // tangent basis of {h=1} at p: complement of grad h via Gram-Schmidt
  Vec grad = f.grad(p);
  std::vector<Vec> tang;
  for (int a = 0; a < n && static_cast<int>(tang.size()) < n - 1; ++a) {
    Vec u(n, 0.0);
    u[a] = 1.0;
    double gg = 0.0, gu = 0.0;
    for (int i = 0; i < n; ++i) { gg += grad[i] * grad[i]; gu += grad[i] * u[i]; }
    for (int i = 0; i < n; ++i) u[i] -= gu / gg * grad[i];
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += u[i] * u[i];
    if (norm < 1e-12) continue;
    for (auto& prev : tang) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d += prev[i] * u[i];
      for (int i = 0; i < n; ++i) u[i] -= d * prev[i];
    }
    norm = 0.0;
    for (int i = 0; i < n; ++i) norm += u[i] * u[i];
    if (norm < 1e-12) continue;
    for (int i = 0; i < n; ++i) u[i] /= std::sqrt(norm);
    tang.push_back(u);
  }

  DecompositionReport rep;
  Mat H = f.hess(p);
  auto lift = [&](const Vec& u) {
    Vec v(ix.dim(), 0.0);
    for (int a = 0; a < n; ++a) v[ix.t(a)] = r * u[a];
    return v;
  };
  auto gdot = [&](const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int i = 0; i < ix.dim(); ++i)
      for (int j = 0; j < ix.dim(); ++j) s += x[i] * g(i, j) * y[j];
    return s;
  };

  for (const auto& u : tang)
    for (const auto& w : tang) {
      double ghw = 0.0;
      for (int a = 0; a < n; ++a)
        for (int bb = 0; bb < n; ++bb) ghw += u[a] * H(a, bb) * w[bb];
      double want = 0.25 * (-ghw);
      double got = gdot(lift(u), lift(w));
      rep.metric_mismatch = std::max(rep.metric_mismatch, std::fabs(got - want));
    }

  // fiber frame: d/dr (chain rule t = r p), d/drho, d/db, d/dzeta, d/dzt, d/dsigma
  std::vector<Vec> fiber;
  {
    Vec dr(ix.dim(), 0.0);
    for (int a = 0; a < n; ++a) dr[ix.t(a)] = p[a];
    fiber.push_back(dr);
    auto unit = [&](int idx) { Vec v(ix.dim(), 0.0); v[idx] = 1.0; return v; };
    fiber.push_back(unit(ix.rho()));
    for (int a = 0; a < n; ++a) fiber.push_back(unit(ix.b(a)));
    for (int i = 0; i <= n; ++i) fiber.push_back(unit(ix.zeta(i)));
    for (int i = 0; i <= n; ++i) fiber.push_back(unit(ix.zetatilde(i)));
    fiber.push_back(unit(ix.sigma()));
  }
  for (const auto& u : tang) {
    Vec lu = lift(u);
    for (const auto& fv : fiber)
      rep.orthogonality = std::max(rep.orthogonality, std::fabs(gdot(lu, fv)));
  }
  return rep;
}

}  // namespace qmap
