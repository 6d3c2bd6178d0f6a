#pragma once

// Fiber volume densities of the tree-level metrics over the projective
// special real base, the closed-form density law, and the exponential decay
// rates along the distinguished curves. The density is measured as the Gram
// determinant of the coordinate fiber frame; the closed form is
// Delta_h / (rho^{n+3} r^{n+1}) up to one overall constant.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cubic.hpp"
#include "linalg.hpp"
#include "qk_metric.hpp"

namespace qmap {

// gamma_ab(p) = -k_abc p^c + h_a(p) h_b(p) on the level set h = 1
inline Mat gamma_matrix(const CubicForm& f, const Vec& p) {
  int n = f.n();
  Mat H = f.hess(p);
  Vec g = f.grad(p);
  Mat gamma(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) gamma(a, b) = -H(a, b) + g[a] * g[b];
  return gamma;
}

// det gamma = (1/2) (-1)^{n-1} det Hess h on the level set, relative residual
inline double det_gamma_identity_residual(const CubicForm& f, const Vec& p) {
  if (std::fabs(f.h(p) - 1.0) > 1e-9)
    throw std::invalid_argument("det_gamma_identity_residual: point not on h = 1");
  double lhs = det(gamma_matrix(f, p));
  double sign = (f.n() % 2 == 1) ? 1.0 : -1.0;
  double rhs = 0.5 * sign * det(f.hess(p));
  return std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs));
}

// the cone metric -Hess log h evaluates to exactly 3 on the Euler field
inline double cone_radial_residual(const CubicForm& f, const Vec& t) {
  int n = f.n();
  double h = f.h(t);
  Mat H = f.hess(t);
  Vec g = f.grad(t);
  double q = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) q += t[a] * (H(a, b) / h - g[a] * g[b] / (h * h)) * t[b];
  return std::fabs(-q - 3.0);
}

struct DensitySample {
  double r = 0.0, rho = 0.0;
  Vec p;                       // normalized base point, h(p) = 1
  double delta_numeric = 0.0;  // sqrt det Gram of the fiber frame
  double delta_closed = 0.0;   // Delta_h(p) / (rho^{n+3} r^{n+1})
  double ratio = 0.0;          // delta_numeric / delta_closed
  double min_gram_eig = 0.0;
  double orthogonality = 0.0;  // worst fiber-vs-horizontal inner product
};

inline double density_closed(const CubicForm& f, const Vec& p, double rho, double r) {
  int n = f.n();
  return delta_h(f, p) / (std::pow(rho, n + 3) * std::pow(r, n + 1));
}

// Fiber frame at an arbitrary chart point: the radial direction p^a d/dt^a
// plus d/drho, d/db, d/dzeta, d/dzetatilde, d/dsigma (3n+5 vectors). The
// complement is the horizontal lift of the base directions, and the worst
// inner product against those is reported as the orthogonality defect.
inline DensitySample density_at(const CubicForm& f, const IIAPoint& x) {
  int n = f.n();
  ChartIIA ix(n);
  int d = ix.dim();
  DensitySample out;
  out.rho = x.rho;
  out.r = std::cbrt(f.h(x.t));
  out.p.assign(x.t.begin(), x.t.end());
  for (auto& v : out.p) v /= out.r;

  Mat g = metric_fs(f, x.pack(), 0.0).g;

  int m = 3 * n + 5;
  Mat E(d, m);
  int col = 0;
  for (int a = 0; a < n; ++a) E(ix.t(a), col) = out.p[a];
  ++col;
  E(ix.rho(), col++) = 1.0;
  for (int a = 0; a < n; ++a) E(ix.b(a), col++) = 1.0;
  for (int i = 0; i <= n; ++i) E(ix.zeta(i), col++) = 1.0;
  for (int i = 0; i <= n; ++i) E(ix.zetatilde(i), col++) = 1.0;
  E(ix.sigma(), col++) = 1.0;

  Mat gram = matmul(transpose(E), matmul(g, E));
  out.delta_numeric = std::sqrt(std::fabs(det(gram)));
  Vec eig = sym_eigvals(gram);
  out.min_gram_eig = eig.front();

  // horizontal directions: u tangent to {h=1} at p, lifted as dt = r u
  Vec grad = f.grad(out.p);
  std::vector<Vec> tangents;
  for (int a = 0; a < n && static_cast<int>(tangents.size()) < n - 1; ++a) {
    Vec u(n, 0.0);
    u[a] = 1.0;
    double gg = 0.0, ug = 0.0;
    for (int bb = 0; bb < n; ++bb) { gg += grad[bb] * grad[bb]; ug += u[bb] * grad[bb]; }
    for (int bb = 0; bb < n; ++bb) u[bb] -= ug / gg * grad[bb];
    for (const auto& w : tangents) {
      double ww = 0.0, uw = 0.0;
      for (int bb = 0; bb < n; ++bb) { ww += w[bb] * w[bb]; uw += u[bb] * w[bb]; }
      for (int bb = 0; bb < n; ++bb) u[bb] -= uw / ww * w[bb];
    }
    double norm = 0.0;
    for (int bb = 0; bb < n; ++bb) norm += u[bb] * u[bb];
    if (norm < 1e-20) continue;
    tangents.push_back(u);
  }
  double worst = 0.0;
  for (const auto& u : tangents) {
    Vec lift(d, 0.0);
    for (int a = 0; a < n; ++a) lift[ix.t(a)] = out.r * u[a];
    Vec gl = matvec(g, lift);
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += E(i, j) * gl[i];
      worst = std::max(worst, std::fabs(s));
    }
  }
  out.orthogonality = worst;

  out.delta_closed = density_closed(f, out.p, out.rho, out.r);
  out.ratio = out.delta_numeric / out.delta_closed;
  return out;
}

// least-squares slope of log density against arclength along a curve,
// at rho = r = 1 and vanishing fiber coordinates
struct RateFit {
  double slope = 0.0, intercept = 0.0;
  double max_fit_residual = 0.0;  // worst |log delta - (slope s + intercept)|
  std::vector<double> x1, s, logdelta;
};

inline RateFit density_rate_fit(const CubicForm& f, CurveId curve, double x1lo, double x1hi,
                                int m) {
  if (m < 2) throw std::invalid_argument("density_rate_fit: need at least 2 samples");
  int n = f.n();
  RateFit fit;
  Mat A(m, 2);
  Vec y(m);
  for (int j = 0; j < m; ++j) {
    double x1 = x1lo * std::pow(x1hi / x1lo, static_cast<double>(j) / (m - 1));
    Vec p = curve_point(curve, x1);
    IIAPoint pt;
    pt.t = p;
    pt.b.assign(n, 0.0);
    pt.rho = 1.0;
    pt.zeta.assign(n + 1, 0.0);
    pt.zetatilde.assign(n + 1, 0.0);
    pt.sigma = 0.0;
    auto ds = density_at(f, pt);
    double s = arclength(curve, x1);
    fit.x1.push_back(x1);
    fit.s.push_back(s);
    fit.logdelta.push_back(std::log(ds.delta_numeric));
    A(j, 0) = s;
    A(j, 1) = 1.0;
    y[j] = fit.logdelta.back();
  }
  Vec coef = lstsq(A, y);
  fit.slope = coef[0];
  fit.intercept = coef[1];
  for (int j = 0; j < m; ++j)
    fit.max_fit_residual =
        std::max(fit.max_fit_residual, std::fabs(y[j] - (coef[0] * A(j, 0) + coef[1])));
  return fit;
}

}  // namespace qmap
