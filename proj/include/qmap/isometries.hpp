#pragma once

// The universal isometry algebra of the q-map metrics: generator catalog on
// both charts, Lie derivatives of the metric via forward-mode duals, numeric
// Lie brackets with expansion in the generator frame, and the finite group
// actions (SL2, the solvable group L, Aut(H)) with pullback checks.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coords.hpp"
#include "cubic.hpp"
#include "dual.hpp"
#include "fd.hpp"
#include "linalg.hpp"
#include "qk_metric.hpp"

namespace qmap {

enum class Gen { D, D1, P, Xup, Z, V, Xe, Xf, Xh, Ye, Yf, Yh };

struct GeneratorId {
  Gen kind;
  int index = -1;  // P/Xup: 0..n, V: 1..n

  std::string name() const {
    switch (kind) {
      case Gen::D: return "D";
      case Gen::D1: return "D1";
      case Gen::P: return "P" + std::to_string(index);
      case Gen::Xup: return "X^" + std::to_string(index);
      case Gen::Z: return "Z";
      case Gen::V: return "V" + std::to_string(index);
      case Gen::Xe: return "Xe";
      case Gen::Xf: return "Xf";
      case Gen::Xh: return "Xh";
      case Gen::Ye: return "Ye";
      case Gen::Yf: return "Yf";
      case Gen::Yh: return "Yh";
    }
    return "?";
  }
};

// basis order shared with the abstract Lie algebra module:
// D, Xh, Xf, P_0..P_n (P_0 = Xe), X^0..X^n, V_1..V_n, Z
inline std::vector<GeneratorId> algebra_basis(int n) {
  std::vector<GeneratorId> g;
  g.push_back({Gen::D});
  g.push_back({Gen::Xh});
  g.push_back({Gen::Xf});
  for (int i = 0; i <= n; ++i) g.push_back({Gen::P, i});
  for (int i = 0; i <= n; ++i) g.push_back({Gen::Xup, i});
  for (int a = 1; a <= n; ++a) g.push_back({Gen::V, a});
  g.push_back({Gen::Z});
  return g;
}

namespace detail {
template <class T>
T kxy(const CubicForm& f, int a, const std::vector<T>& x, const std::vector<T>& y) {
  T s(0.0);
  for (int bb = 0; bb < f.n(); ++bb)
    for (int c = 0; c < f.n(); ++c)
      if (f.k(a, bb, c) != 0.0) s += T(f.k(a, bb, c)) * x[bb] * y[c];
  return s;
}
template <class T>
T kxyz(const CubicForm& f, const std::vector<T>& x, const std::vector<T>& y,
       const std::vector<T>& z) {
  T s(0.0);
  for (int a = 0; a < f.n(); ++a)
    for (int bb = 0; bb < f.n(); ++bb)
      for (int c = 0; c < f.n(); ++c)
        if (f.k(a, bb, c) != 0.0) s += T(f.k(a, bb, c)) * x[a] * y[bb] * z[c];
  return s;
}
}  // namespace detail

// Components of an IIA-chart Killing field at coordinates x.
template <class T>
std::vector<T> eval_field(const CubicForm& f, const GeneratorId& gen,
                          const std::vector<T>& x) {
  int n = f.n();
  ChartIIA ix(n);
  std::vector<T> v(ix.dim(), T(0.0));
  std::vector<T> t(n), b(n), zeta(n + 1), zetatilde(n + 1);
  for (int a = 0; a < n; ++a) { t[a] = x[ix.t(a)]; b[a] = x[ix.b(a)]; }
  T rho = x[ix.rho()];
  T sigma = x[ix.sigma()];
  for (int i = 0; i <= n; ++i) { zeta[i] = x[ix.zeta(i)]; zetatilde[i] = x[ix.zetatilde(i)]; }
  std::vector<T> zeta_a(zeta.begin() + 1, zeta.end());  // upper-index a-part

  switch (gen.kind) {
    case Gen::D:
      v[ix.rho()] = rho;
      for (int i = 0; i <= n; ++i) {
        v[ix.zeta(i)] = T(0.5) * zeta[i];
        v[ix.zetatilde(i)] = T(0.5) * zetatilde[i];
      }
      v[ix.sigma()] = sigma;
      break;
    case Gen::D1:
      for (int a = 0; a < n; ++a) { v[ix.t(a)] = t[a]; v[ix.b(a)] = b[a]; }
      v[ix.zeta(0)] = T(-1.5) * zeta[0];
      for (int a = 1; a <= n; ++a) v[ix.zeta(a)] = T(-0.5) * zeta[a];
      v[ix.zetatilde(0)] = T(1.5) * zetatilde[0];
      for (int a = 1; a <= n; ++a) v[ix.zetatilde(a)] = T(0.5) * zetatilde[a];
      break;
    case Gen::P:
    case Gen::Xe: {
      int i = gen.kind == Gen::Xe ? 0 : gen.index;
      v[ix.zeta(i)] = T(1.0);
      v[ix.sigma()] = zetatilde[i];
      break;
    }
    case Gen::Xup:
      v[ix.zetatilde(gen.index)] = T(1.0);
      v[ix.sigma()] = -zeta[gen.index];
      break;
    case Gen::Z:
      v[ix.sigma()] = T(1.0);
      break;
    case Gen::V: {
      int a = gen.index - 1;  // 0-based
      v[ix.b(a)] = T(1.0);
      v[ix.zeta(a + 1)] = zeta[0];
      v[ix.zetatilde(0)] = -zetatilde[a + 1];
      for (int bb = 0; bb < n; ++bb) {
        T s(0.0);
        for (int c = 0; c < n; ++c)
          if (f.k(a, bb, c) != 0.0) s += T(f.k(a, bb, c)) * zeta[c + 1];
        v[ix.zetatilde(bb + 1)] = v[ix.zetatilde(bb + 1)] - s;
      }
      break;
    }
    case Gen::Xh:
      v[ix.zeta(0)] = T(2.0) * zeta[0];
      for (int a = 1; a <= n; ++a) v[ix.zeta(a)] = zeta[a];
      v[ix.zetatilde(0)] = -zetatilde[0];
      v[ix.sigma()] = sigma;
      v[ix.rho()] = rho;
      for (int a = 0; a < n; ++a) { v[ix.t(a)] = -t[a]; v[ix.b(a)] = -b[a]; }
      break;
    case Gen::Xf: {
      T h = f.h(t);
      T roh = rho / h;
      v[ix.zeta(0)] = T(2.0) * roh - zeta[0] * zeta[0];
      for (int a = 0; a < n; ++a)
        v[ix.zeta(a + 1)] = T(2.0) * roh * b[a] - zeta[0] * zeta[a + 1];
      for (int a = 0; a < n; ++a)
        v[ix.zetatilde(a + 1)] =
            T(0.5) * detail::kxy(f, a, zeta_a, zeta_a) - roh * detail::kxy(f, a, b, b);
      {
        T zz(0.0);
        for (int i = 0; i <= n; ++i) zz += zeta[i] * zetatilde[i];
        v[ix.zetatilde(0)] = T(0.5) * (sigma + zz) + roh * detail::kxyz(f, b, b, b) / T(3.0);
      }
      for (int a = 0; a < n; ++a) {
        v[ix.t(a)] = zeta[0] * t[a];
        v[ix.b(a)] = zeta[0] * b[a] - zeta[a + 1];
      }
      v[ix.rho()] = -zeta[0] * rho;
      {
        T zz(0.0);
        for (int i = 0; i <= n; ++i) zz += zetatilde[i] * zeta[i];
        T bzt(0.0);
        for (int a = 0; a < n; ++a) bzt += b[a] * zetatilde[a + 1];
        T s = T(2.0) * roh *
              (-zetatilde[0] - bzt - T(0.5) * detail::kxyz(f, b, b, zeta_a) +
               zeta[0] * detail::kxyz(f, b, b, b) / T(6.0));
        s += T(-0.5) * zeta[0] * (sigma - zz);
        s += detail::kxyz(f, zeta_a, zeta_a, zeta_a) / T(6.0);
        v[ix.sigma()] = s;
      }
      break;
    }
    default:
      throw std::invalid_argument("eval_field: " + gen.name() + " lives on the IIB chart");
  }
  return v;
}

// Components of the IIB-side S-duality fields at IIB coordinates q.
template <class T>
std::vector<T> eval_field_iib(const CubicForm& f, const GeneratorId& gen,
                              const std::vector<T>& q) {
  int n = f.n();
  ChartIIB ix(n);
  std::vector<T> v(ix.dim(), T(0.0));
  T tau1 = q[ix.tau1()], tau2 = q[ix.tau2()];
  switch (gen.kind) {
    case Gen::Ye:
      v[ix.tau1()] = T(1.0);
      for (int a = 0; a < n; ++a) v[ix.ca(a)] = q[ix.b(a)];
      v[ix.psi()] = -q[ix.c0()];
      break;
    case Gen::Yf:
      v[ix.tau1()] = tau2 * tau2 - tau1 * tau1;
      v[ix.tau2()] = T(-2.0) * tau1 * tau2;
      for (int a = 0; a < n; ++a) {
        v[ix.t(a)] = tau1 * q[ix.t(a)];
        v[ix.b(a)] = q[ix.ca(a)];
      }
      v[ix.c0()] = -q[ix.psi()];
      break;
    case Gen::Yh:
      v[ix.tau1()] = T(2.0) * tau1;
      v[ix.tau2()] = T(2.0) * tau2;
      for (int a = 0; a < n; ++a) {
        v[ix.t(a)] = -q[ix.t(a)];
        v[ix.b(a)] = -q[ix.b(a)];
        v[ix.ca(a)] = q[ix.ca(a)];
      }
      v[ix.c0()] = -q[ix.c0()];
      v[ix.psi()] = q[ix.psi()];
      break;
    default:
      throw std::invalid_argument("eval_field_iib: " + gen.name() + " lives on the IIA chart");
  }
  (void)f;
  return v;
}

// (L_X g)_{mu nu} = X^k dg_{mu nu}/dx^k + g_{k nu} dX^k/dx^mu + g_{mu k} dX^k/dx^nu
inline Mat lie_derivative_metric(const CubicForm& f, const GeneratorId& gen,
                                 const IIAPoint& p, double c) {
  ChartIIA ix(f.n());
  int d = ix.dim();
  auto xd = seed_duals(p.pack());
  auto gd = metric_fs<Dual>(f, xd, c).g;
  auto Xd = eval_field<Dual>(f, gen, xd);
  Mat L(d, d);
  for (int mu = 0; mu < d; ++mu)
    for (int nu = mu; nu < d; ++nu) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) {
        s += Xd[k].v * gd(mu, nu).deriv(k);
        s += gd(k, nu).v * Xd[k].deriv(mu);
        s += gd(mu, k).v * Xd[k].deriv(nu);
      }
      L(mu, nu) = L(nu, mu) = s;
    }
  return L;
}

// [X,Y]^m = X^k dY^m/dx^k - Y^k dX^m/dx^k at p, via duals.
inline Vec lie_bracket(const CubicForm& f, const GeneratorId& a, const GeneratorId& b,
                       const IIAPoint& p) {
  ChartIIA ix(f.n());
  int d = ix.dim();
  auto xd = seed_duals(p.pack());
  auto A = eval_field<Dual>(f, a, xd);
  auto B = eval_field<Dual>(f, b, xd);
  Vec out(d, 0.0);
  for (int m = 0; m < d; ++m) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += A[k].v * B[m].deriv(k) - B[k].v * A[m].deriv(k);
    out[m] = s;
  }
  return out;
}

// Expand a vector field in the generator frame by least squares. The 3n+6
// generators are pointwise degenerate (a generic point has a one dimensional
// stabilizer, so their values at a single point only span a 3n+5 dimensional
// subspace), which makes a single-point expansion underdetermined. We sample
// the field at p and at a few deterministically jittered nearby points and
// solve the stacked system; for constant-coefficient combinations of the
// generators this pins the coefficients uniquely. frame_residual reports
// how well the expansion reproduces the sampled field values.
inline Vec expand_in_frame(const CubicForm& f, const std::function<Vec(const IIAPoint&)>& field,
                           const IIAPoint& p, double* frame_residual = nullptr) {
  auto basis = algebra_basis(f.n());
  ChartIIA ix(f.n());
  int d = ix.dim();
  int nb = static_cast<int>(basis.size());
  const int npts = 3;
  Mat A(npts * d, nb);
  Vec rhs(npts * d);
  Vec x0 = p.pack();
  for (int s = 0; s < npts; ++s) {
    Vec x = x0;
    if (s > 0)
      for (int k = 0; k < d; ++k) x[k] += 0.05 * std::cos(1.3 * s + 0.7 * k);
    Vec v = field(IIAPoint::unpack(f.n(), x));
    for (int i = 0; i < d; ++i) rhs[s * d + i] = v[i];
    for (int j = 0; j < nb; ++j) {
      auto col = eval_field<double>(f, basis[j], x);
      for (int i = 0; i < d; ++i) A(s * d + i, j) = col[i];
    }
  }
  return lstsq(A, rhs, frame_residual);
}

// ---------------------------------------------------------------------------
// finite actions

struct SL2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  SL2() = default;
  SL2(double aa, double bb, double cc, double dd) : a(aa), b(bb), c(cc), d(dd) {
    if (std::fabs(a * d - b * c - 1.0) > 1e-12)
      throw std::invalid_argument("SL2: determinant must be 1");
  }
  SL2 operator*(const SL2& o) const {
    return SL2(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
  }
};

// left action on the IIB chart: tau Mobius; t^a -> |c tau + d| t^a;
// (c^a, b^a) by the matrix; (c0, psi) by the contragredient; c_a fixed.
inline IIBPoint sl2_act_iib(const SL2& g, const IIBPoint& q) {
  IIBPoint out = q;
  cplx<double> tau(q.tau1, q.tau2);
  cplx<double> den = cplx<double>(g.c) * tau + cplx<double>(g.d);
  cplx<double> tp = (cplx<double>(g.a) * tau + cplx<double>(g.b)) / den;
  out.tau1 = tp.re;
  out.tau2 = tp.im;
  double mod = std::sqrt(abs2(den));
  for (std::size_t a = 0; a < q.t.size(); ++a) {
    out.t[a] = mod * q.t[a];
    out.ca[a] = g.a * q.ca[a] + g.b * q.b[a];
    out.b[a] = g.c * q.ca[a] + g.d * q.b[a];
  }
  out.c0 = g.d * q.c0 - g.c * q.psi;
  out.psi = -g.b * q.c0 + g.a * q.psi;
  return out;
}

// conjugated action on the IIA chart through the mirror map
inline IIAPoint sl2_act_iia(const CubicForm& f, const SL2& g, const IIAPoint& p) {
  return iib_to_iia(f, sl2_act_iib(g, iia_to_iib(f, p)));
}

// the group L2 = R_{>0} x R^{2n+3} with twisted product; zeta packs (zt, z^)
struct L2Element {
  double r = 1.0;
  Vec etat, eta;  // n+1 each
  double kappa = 0.0;
};

inline L2Element l2_compose(const L2Element& g1, const L2Element& g2) {
  L2Element g;
  double s = std::sqrt(g1.r);
  g.r = g1.r * g2.r;
  g.etat.resize(g1.etat.size());
  g.eta.resize(g1.eta.size());
  double pair = 0.0;
  for (std::size_t i = 0; i < g1.eta.size(); ++i) {
    g.etat[i] = g1.etat[i] + s * g2.etat[i];
    g.eta[i] = g1.eta[i] + s * g2.eta[i];
    pair += g1.eta[i] * g2.etat[i] - g1.etat[i] * g2.eta[i];
  }
  g.kappa = g1.kappa + g1.r * g2.kappa + s * pair;
  return g;
}

inline IIAPoint l2_act(const L2Element& g, const IIAPoint& p) {
  IIAPoint out = p;
  double s = std::sqrt(g.r);
  out.rho = g.r * p.rho;
  double pair = 0.0;
  for (std::size_t i = 0; i < p.zeta.size(); ++i) {
    out.zetatilde[i] = g.etat[i] + s * p.zetatilde[i];
    out.zeta[i] = g.eta[i] + s * p.zeta[i];
    pair += g.eta[i] * p.zetatilde[i] - g.etat[i] * p.zeta[i];
  }
  out.sigma = g.kappa + g.r * p.sigma + s * pair;
  return out;
}

// L1 = R_{>0} (lambda-rescaling) acting through phi_h
inline IIAPoint phi_h_lambda(double lambda, const IIAPoint& p) {
  IIAPoint out = p;
  double lm32 = std::pow(lambda, -1.5), lm12 = std::pow(lambda, -0.5);
  double lp32 = std::pow(lambda, 1.5), lp12 = std::pow(lambda, 0.5);
  for (std::size_t a = 0; a < p.t.size(); ++a) {
    out.t[a] = lambda * p.t[a];
    out.b[a] = lambda * p.b[a];
  }
  out.zeta[0] = lm32 * p.zeta[0];
  out.zetatilde[0] = lp32 * p.zetatilde[0];
  for (std::size_t a = 1; a < p.zeta.size(); ++a) {
    out.zeta[a] = lm12 * p.zeta[a];
    out.zetatilde[a] = lp12 * p.zetatilde[a];
  }
  return out;
}

// R^n translations b -> b + v with the induced zeta transformation
inline IIAPoint phi_h_v(const CubicForm& f, const Vec& v, const IIAPoint& p) {
  int n = f.n();
  IIAPoint out = p;
  for (int a = 0; a < n; ++a) out.b[a] = p.b[a] + v[a];
  Vec zeta_a(p.zeta.begin() + 1, p.zeta.end());
  double kvvv = detail::kxyz(f, v, v, v);
  double kvvz = detail::kxyz(f, v, v, zeta_a);
  for (int a = 0; a < n; ++a) out.zeta[a + 1] = p.zeta[a + 1] + p.zeta[0] * v[a];
  double bzt = 0.0;
  for (int a = 0; a < n; ++a) bzt += p.zetatilde[a + 1] * v[a];
  out.zetatilde[0] = p.zetatilde[0] + kvvv / 6.0 * p.zeta[0] + 0.5 * kvvz - bzt;
  for (int a = 0; a < n; ++a)
    out.zetatilde[a + 1] = p.zetatilde[a + 1] - 0.5 * p.zeta[0] * detail::kxy(f, a, v, v) -
                           detail::kxy(f, a, v, zeta_a);
  return out;
}

// phi_h((lambda, v)) = phi_h(v) o phi_h(lambda)
inline IIAPoint phi_h_act(const CubicForm& f, double lambda, const Vec& v, const IIAPoint& p) {
  return phi_h_v(f, v, phi_h_lambda(lambda, p));
}

// Aut(H) linear symmetries A with h o A = h: t -> At, b -> Ab, zeta^a -> A zeta,
// zt_a -> (A^T)^{-1} zt, the rest fixed.
inline IIAPoint auth_act(const CubicForm& f, const Mat& A, const IIAPoint& p) {
  int n = f.n();
  // spot-check invariance of h at this point
  Vec At(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) At[i] += A(i, j) * p.t[j];
  if (std::fabs(f.h(At) - f.h(p.t)) > 1e-10)
    throw std::invalid_argument("auth_act: matrix does not preserve h at this point");
  Mat AinvT = transpose(gauss_inverse(A));
  IIAPoint out = p;
  for (int i = 0; i < n; ++i) {
    out.t[i] = At[i];
    out.b[i] = 0.0;
    out.zeta[i + 1] = 0.0;
    out.zetatilde[i + 1] = 0.0;
    for (int j = 0; j < n; ++j) {
      out.b[i] += A(i, j) * p.b[j];
      out.zeta[i + 1] += A(i, j) * p.zeta[j + 1];
      out.zetatilde[i + 1] += AinvT(i, j) * p.zetatilde[j + 1];
    }
  }
  return out;
}

// exact chart Jacobian of auth_act (block linear map)
inline Mat auth_jacobian(const CubicForm& f, const Mat& A) {
  int n = f.n();
  ChartIIA ix(n);
  Mat J(ix.dim(), ix.dim());
  Mat AinvT = transpose(gauss_inverse(A));
  J(ix.rho(), ix.rho()) = 1.0;
  J(ix.sigma(), ix.sigma()) = 1.0;
  J(ix.zeta(0), ix.zeta(0)) = 1.0;
  J(ix.zetatilde(0), ix.zetatilde(0)) = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      J(ix.t(i), ix.t(j)) = A(i, j);
      J(ix.b(i), ix.b(j)) = A(i, j);
      J(ix.zeta(i + 1), ix.zeta(j + 1)) = A(i, j);
      J(ix.zetatilde(i + 1), ix.zetatilde(j + 1)) = AinvT(i, j);
    }
  return J;
}

// max |J^T g(F(p)) J - g(p)| with J the FD Jacobian of the chart map F
inline double pullback_metric_check(const CubicForm& f, const VecFn& F, const IIAPoint& p,
                                    double c, const Mat* analytic_jacobian = nullptr) {
  Vec x = p.pack();
  Vec y = F(x);
  Mat J = analytic_jacobian ? *analytic_jacobian : fd_jacobian(F, x);
  Mat gy = metric_fs<double>(f, y, c).g;
  Mat gx = metric_fs<double>(f, x, c).g;
  Mat JT = transpose(J);
  Mat pb = matmul(JT, matmul(gy, J));
  double worst = 0.0;
  for (int i = 0; i < gx.rows; ++i)
    for (int j = 0; j < gx.cols; ++j) worst = std::max(worst, std::fabs(pb(i, j) - gx(i, j)));
  return worst;
}

// dM(q) . Y(q) compared with X(M(q)): the mirror intertwines the IIB-side
// S-duality fields with the IIA-side ones.
inline double mirror_intertwine_residual(const CubicForm& f, const IIBPoint& q, Gen which) {
  GeneratorId yg{which}, xg{Gen::Xe};
  switch (which) {
    case Gen::Ye: xg = {Gen::Xe}; break;
    case Gen::Yf: xg = {Gen::Xf}; break;
    case Gen::Yh: xg = {Gen::Xh}; break;
    default: throw std::invalid_argument("mirror_intertwine_residual: need Ye/Yf/Yh");
  }
  Mat dM = mirror_differential(f, q);
  Vec Y = eval_field_iib<double>(f, yg, q.pack());
  Vec lhs = matvec(dM, Y);
  IIAPoint p = iib_to_iia(f, q);
  Vec rhs = eval_field<double>(f, xg, p.pack());
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    worst = std::max(worst, std::fabs(lhs[i] - rhs[i]));
  return worst;
}

}  // namespace qmap
