#pragma once

// Twistor-space Darboux data over the one-loop metrics: holomorphic Darboux
// coordinates on the fiber, the contact-form identity, the SL(2,R) lift to
// the twistor fiber with its Cayley/antipodal/cocycle structure, the induced
// action on Darboux coordinates, and the lifts of the solvable isometries.
//
// Two sign conventions for the Darboux coordinates appear: the "pinned" one
// used for the contact identity at arbitrary one-loop parameter, and the
// "physics" one (fiber coordinate rotated by -i) in which the S-duality
// square closes at tree level.

#include <stdexcept>
#include <vector>

#include "coords.hpp"
#include "cubic.hpp"
#include "dual.hpp"
#include "isometries.hpp"
#include "qk_metric.hpp"
#include "special_kahler.hpp"

namespace qmap {

enum class DarbouxConvention { Pinned, Physics };

template <class T>
struct DarbouxCoords {
  std::vector<cplx<T>> xi, xitilde;  // n+1 each
  cplx<T> alpha;
};

// <Ztilde, zeta> = F_i zeta^i - z^i zetatilde_i (lower-upper pairing)
template <class T>
cplx<T> charge_pairing(const CentralCharges<T>& cc, const std::vector<T>& zeta,
                       const std::vector<T>& zetatilde) {
  cplx<T> s;
  for (std::size_t i = 0; i < cc.z.size(); ++i)
    s += cc.F[i] * zeta[i] - cc.z[i] * zetatilde[i];
  return s;
}

// The lower charge leg entering the Darboux coordinates is G_i = tau_ij z^j
// = -F_i (tau as in special_kahler.hpp). With this leg the pairing
// G_i zeta^i - z^i zetatilde_i is invariant under the monodromy
// representation realized by phi_h_v, which is what makes the isometry
// lifts below close as maps of Darboux tuples alone.
template <class T>
DarbouxCoords<T> darboux_coords(const CubicForm& f, const std::vector<T>& x,
                                const cplx<T>& tf, double c, DarbouxConvention conv) {
  using std::sqrt;
  int n = f.n();
  ChartIIA ix(n);
  std::vector<T> t(n), b(n), zeta(n + 1), zetatilde(n + 1);
  for (int a = 0; a < n; ++a) { t[a] = x[ix.t(a)]; b[a] = x[ix.b(a)]; }
  for (int i = 0; i <= n; ++i) { zeta[i] = x[ix.zeta(i)]; zetatilde[i] = x[ix.zetatilde(i)]; }
  T rho = x[ix.rho()], sigma = x[ix.sigma()];

  auto cc = central_charges(f, b, t);
  std::vector<cplx<T>> G(n + 1);
  for (int i = 0; i <= n; ++i) G[i] = -cc.F[i];
  T tau2 = sqrt(T(2.0) * rho / f.h(t));
  cplx<T> tinv = cplx<T>(T(1.0)) / tf;
  cplx<T> P, Pbar;
  for (int i = 0; i <= n; ++i) {
    P += G[i] * zeta[i] - cc.z[i] * zetatilde[i];
    Pbar += conj(G[i]) * zeta[i] - conj(cc.z[i]) * zetatilde[i];
  }

  DarbouxCoords<T> dc;
  dc.xi.resize(n + 1);
  dc.xitilde.resize(n + 1);
  if (conv == DarbouxConvention::Pinned) {
    cplx<T> ihalf(T(0.0), tau2 * T(0.5));  // i tau2 / 2
    for (int i = 0; i <= n; ++i) {
      dc.xi[i] = cplx<T>(zeta[i]) - ihalf * (tinv * cc.z[i] + tf * conj(cc.z[i]));
      dc.xitilde[i] = cplx<T>(zetatilde[i]) - ihalf * (tinv * G[i] + tf * conj(G[i]));
    }
    dc.alpha = cplx<T>(sigma) - ihalf * (tinv * P + tf * Pbar);
    if (c != 0.0) dc.alpha = dc.alpha - cplx<T>(T(0.0), T(8.0 * c)) * log(tf);
  } else {
    if (c != 0.0)
      throw std::invalid_argument("darboux_coords: physics convention is tree-level only");
    T half = tau2 * T(0.5);
    for (int i = 0; i <= n; ++i) {
      dc.xi[i] = cplx<T>(zeta[i]) + half * (tinv * cc.z[i] - tf * conj(cc.z[i]));
      dc.xitilde[i] = cplx<T>(zetatilde[i]) + half * (tinv * G[i] - tf * conj(G[i]));
    }
    dc.alpha = cplx<T>(sigma) + half * (tinv * P - tf * Pbar);
  }
  return dc;
}

// ---------------------------------------------------------------------------
// contact identity: with the lower charge leg G_i = tau_ij z^j used by
// darboux_coords, the pinned coordinates obey, direction by direction,
//   (d alpha + xitilde d xi - xi d xitilde)(v) =
//     8i(rho - c) (dt/t)(v) + d sigma(v) + <zeta, d zeta>(v)
//     - i tau2 (t^{-1} (G_i dzeta^i - z^i dzetatilde_i) + t (conj legs))(v)
//     - 4 rho d^c K(v),
// where <zeta, d zeta> = zetatilde_i dzeta^i - zeta^i dzetatilde_i and
// d^c K = (h_a / h) db^a. Returns the worst per-direction residual
// normalized by 1 + |LHS|.
inline double contact_identity_residual(const CubicForm& f, const IIAPoint& p,
                                        const cplx<double>& tf, double c) {
  int n = f.n();
  ChartIIA ix(n);
  Vec base = p.pack();
  int nv = ix.dim() + 2;
  std::vector<Dual> xd(ix.dim());
  for (int i = 0; i < ix.dim(); ++i) xd[i] = Dual(base[i], nv, i);
  cplx<Dual> td(Dual(tf.re, nv, ix.dim()), Dual(tf.im, nv, ix.dim() + 1));

  auto dc = darboux_coords<Dual>(f, xd, td, c, DarbouxConvention::Pinned);

  // value-level data for the right-hand side
  auto cc = central_charges(f, p.b, p.t);
  double h = f.h(p.t);
  Vec grad = f.grad(p.t);
  double rho = p.rho;
  double tau2 = std::sqrt(2.0 * rho / h);
  cplx<double> tval = tf;
  cplx<double> tinv = cplx<double>(1.0) / tval;
  cplx<double> iunit(0.0, 1.0);

  double worst = 0.0;
  for (int k = 0; k < nv; ++k) {
    cplx<double> lhs(dc.alpha.re.deriv(k), dc.alpha.im.deriv(k));
    for (int i = 0; i <= n; ++i) {
      cplx<double> dxi(dc.xi[i].re.deriv(k), dc.xi[i].im.deriv(k));
      cplx<double> dxit(dc.xitilde[i].re.deriv(k), dc.xitilde[i].im.deriv(k));
      lhs += value(dc.xitilde[i]) * dxi - value(dc.xi[i]) * dxit;
    }

    // one-form coefficients in direction k
    cplx<double> dt_over_t;
    if (k == ix.dim()) dt_over_t = tinv;
    if (k == ix.dim() + 1) dt_over_t = iunit * tinv;
    cplx<double> dP, dPbar, dzz;  // G-pairing legs and <zeta,dzeta>
    double dsigma = (k == ix.sigma()) ? 1.0 : 0.0;
    double dck = 0.0;  // d^c K coefficient
    for (int i = 0; i <= n; ++i) {
      if (k == ix.zeta(i)) {
        dP -= cc.F[i];  // G_i = -F_i
        dPbar -= conj(cc.F[i]);
        dzz += cplx<double>(p.zetatilde[i]);
      }
      if (k == ix.zetatilde(i)) {
        dP -= cc.z[i];
        dPbar -= conj(cc.z[i]);
        dzz -= cplx<double>(p.zeta[i]);
      }
    }
    for (int a = 0; a < n; ++a)
      if (k == ix.b(a)) dck = grad[a] / h;

    cplx<double> lam0 = dt_over_t;
    lam0 -= (tau2 / (8.0 * rho)) * (tinv * dP);
    lam0 -= (tau2 / (8.0 * rho)) * (tval * dPbar);
    lam0 -= (2.0 * iunit) * (cplx<double>(dsigma / (16.0 * rho)) + dzz / (16.0 * rho) -
                             cplx<double>(dck / 4.0));
    cplx<double> rhs = (8.0 * rho) * (iunit * lam0) - (8.0 * c) * (iunit * dt_over_t);

    double num = std::sqrt(abs2(lhs - rhs));
    double den = 1.0 + std::sqrt(abs2(lhs));
    worst = std::max(worst, num / den);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// SL(2,R) on the twistor fiber

inline cplx<double> mobius(const SL2& g, const cplx<double>& tau) {
  return (cplx<double>(g.a) * tau + cplx<double>(g.b)) /
         (cplx<double>(g.c) * tau + cplx<double>(g.d));
}

// |B - A t| with A = c tau2, B = c tau1 + d + |c tau + d|; the lift is only
// usable away from its zero set.
inline double fiber_lift_denominator(const SL2& g, const cplx<double>& tau,
                                     const cplx<double>& t) {
  double mod = std::sqrt(abs2(cplx<double>(g.c) * tau + cplx<double>(g.d)));
  double A = g.c * tau.im;
  double B = g.c * tau.re + g.d + mod;
  return std::sqrt(abs2(cplx<double>(B) - cplx<double>(A) * t));
}

inline cplx<double> sduality_fiber_lift(const SL2& g, const cplx<double>& tau,
                                        const cplx<double>& t) {
  double mod = std::sqrt(abs2(cplx<double>(g.c) * tau + cplx<double>(g.d)));
  cplx<double> A(g.c * tau.im);
  cplx<double> B(g.c * tau.re + g.d + mod);
  return (A + B * t) / (B - A * t);
}

inline cplx<double> cayley(const cplx<double>& t) {
  cplx<double> i(0.0, 1.0);
  return (t + i) / (t - i);
}

// Under the Cayley transform the lift is the rigid rotation
// z -> z (c conj(tau) + d)/|c tau + d|.
inline double cayley_intertwine_residual(const SL2& g, const cplx<double>& tau,
                                         const cplx<double>& t) {
  cplx<double> lhs = cayley(sduality_fiber_lift(g, tau, t));
  cplx<double> w = cplx<double>(g.c) * conj(tau) + cplx<double>(g.d);
  double mod = std::sqrt(abs2(w));
  cplx<double> rhs = cayley(t) * w / cplx<double>(mod);
  return std::sqrt(abs2(lhs - rhs)) / (1.0 + std::sqrt(abs2(rhs)));
}

// the lift commutes with the antipodal map t -> -1/conj(t)
inline double antipodal_residual(const SL2& g, const cplx<double>& tau,
                                 const cplx<double>& t) {
  cplx<double> one(1.0);
  cplx<double> lhs = sduality_fiber_lift(g, tau, -(one / conj(t)));
  cplx<double> rhs = -(one / conj(sduality_fiber_lift(g, tau, t)));
  return std::sqrt(abs2(lhs - rhs));
}

// cocycle: lift(g1 g2, tau, t) = lift(g1, g2.tau, lift(g2, tau, t))
inline double fiber_composition_residual(const SL2& g1, const SL2& g2,
                                         const cplx<double>& tau, const cplx<double>& t) {
  cplx<double> lhs = sduality_fiber_lift(g1 * g2, tau, t);
  cplx<double> rhs = sduality_fiber_lift(g1, mobius(g2, tau), sduality_fiber_lift(g2, tau, t));
  return std::sqrt(abs2(lhs - rhs));
}

// ---------------------------------------------------------------------------
// S-duality on Darboux coordinates; divisor is {c xi^0 + d = 0}

template <class T>
DarbouxCoords<T> twistor_sduality(const CubicForm& f, const SL2& g,
                                  const DarbouxCoords<T>& in) {
  int n = static_cast<int>(in.xi.size()) - 1;
  std::vector<cplx<T>> xa(in.xi.begin() + 1, in.xi.end());
  cplx<T> alphat = -(in.alpha + [&] {
                      cplx<T> s;
                      for (int i = 0; i <= n; ++i) s += in.xi[i] * in.xitilde[i];
                      return s;
                    }()) /
                   T(2.0);
  cplx<T> den = cplx<T>(T(g.c)) * in.xi[0] + cplx<T>(T(g.d));
  cplx<T> num = cplx<T>(T(g.a)) * in.xi[0] + cplx<T>(T(g.b));
  cplx<T> L;
  for (int a = 0; a < n; ++a) L += detail::kxy(f, a, xa, xa) * xa[a];
  L = L / T(6.0);

  DarbouxCoords<T> out;
  out.xi.resize(n + 1);
  out.xitilde.resize(n + 1);
  out.xi[0] = num / den;
  for (int a = 0; a < n; ++a) out.xi[a + 1] = in.xi[a + 1] / den;
  for (int a = 0; a < n; ++a)
    out.xitilde[a + 1] =
        in.xitilde[a + 1] + (cplx<T>(T(0.5 * g.c)) / den) * detail::kxy(f, a, xa, xa);
  cplx<T> i1 = L * (cplx<T>(T(g.c * g.c)) / den);
  cplx<T> i2 = -L * ((cplx<T>(T(g.c * g.c)) * num + cplx<T>(T(2.0 * g.c))) / (den * den));
  out.xitilde[0] = T(g.d) * in.xitilde[0] - T(g.c) * alphat + i1;
  cplx<T> alphat_out = T(-g.b) * in.xitilde[0] + T(g.a) * alphat + i2;
  cplx<T> s;
  for (int i = 0; i <= n; ++i) s += out.xi[i] * out.xitilde[i];
  out.alpha = -(T(2.0) * alphat_out) - s;
  return out;
}

// ---------------------------------------------------------------------------
// lifts of the solvable isometries to Darboux coordinates (fiber fixed)

template <class T>
DarbouxCoords<T> twistor_l2(const L2Element& g, const DarbouxCoords<T>& in) {
  using std::sqrt;
  DarbouxCoords<T> out;
  int n = static_cast<int>(in.xi.size()) - 1;
  out.xi.resize(n + 1);
  out.xitilde.resize(n + 1);
  T s = sqrt(T(g.r));
  cplx<T> pair;
  for (int i = 0; i <= n; ++i) {
    out.xi[i] = s * in.xi[i] + cplx<T>(T(g.eta[i]));
    out.xitilde[i] = s * in.xitilde[i] + cplx<T>(T(g.etat[i]));
    pair += in.xitilde[i] * T(g.eta[i]) - in.xi[i] * T(g.etat[i]);
  }
  out.alpha = T(g.r) * in.alpha + s * pair + cplx<T>(T(g.kappa));
  return out;
}

template <class T>
DarbouxCoords<T> twistor_lambda(double lambda, const DarbouxCoords<T>& in) {
  DarbouxCoords<T> out = in;
  int n = static_cast<int>(in.xi.size()) - 1;
  out.xi[0] = in.xi[0] * T(std::pow(lambda, -1.5));
  out.xitilde[0] = in.xitilde[0] * T(std::pow(lambda, 1.5));
  for (int a = 1; a <= n; ++a) {
    out.xi[a] = in.xi[a] * T(std::pow(lambda, -0.5));
    out.xitilde[a] = in.xitilde[a] * T(std::pow(lambda, 0.5));
  }
  return out;
}

template <class T>
DarbouxCoords<T> twistor_v(const CubicForm& f, const Vec& v, const DarbouxCoords<T>& in) {
  int n = f.n();
  std::vector<cplx<T>> vc(n), xa(in.xi.begin() + 1, in.xi.end());
  for (int a = 0; a < n; ++a) vc[a] = cplx<T>(T(v[a]));
  DarbouxCoords<T> out = in;
  for (int a = 0; a < n; ++a) out.xi[a + 1] = in.xi[a + 1] + in.xi[0] * vc[a];
  cplx<T> kvvv = detail::kxyz(f, vc, vc, vc);
  cplx<T> kvvx = detail::kxyz(f, vc, vc, xa);
  cplx<T> bxt;
  for (int a = 0; a < n; ++a) bxt += in.xitilde[a + 1] * vc[a];
  out.xitilde[0] =
      in.xitilde[0] + kvvv / T(6.0) * in.xi[0] + cplx<T>(T(0.5)) * kvvx - bxt;
  for (int a = 0; a < n; ++a)
    out.xitilde[a + 1] = in.xitilde[a + 1] -
                         cplx<T>(T(0.5)) * in.xi[0] * detail::kxy(f, a, vc, vc) -
                         detail::kxy(f, a, vc, xa);
  return out;
}

// ---------------------------------------------------------------------------
// commuting squares (all components compared in sup norm)

template <class T>
double darboux_distance(const DarbouxCoords<T>& A, const DarbouxCoords<T>& B) {
  double worst = 0.0;
  for (std::size_t i = 0; i < A.xi.size(); ++i) {
    worst = std::max(worst, std::sqrt(abs2(value(A.xi[i]) - value(B.xi[i]))));
    worst = std::max(worst, std::sqrt(abs2(value(A.xitilde[i]) - value(B.xitilde[i]))));
  }
  worst = std::max(worst, std::sqrt(abs2(value(A.alpha) - value(B.alpha))));
  return worst;
}

inline cplx<double> tau_of_point(const CubicForm& f, const IIAPoint& p) {
  return {p.zeta[0], std::sqrt(2.0 * p.rho / f.h(p.t))};
}

// |c xi^0 + d| in the physics convention at tree level
inline double sduality_divisor(const CubicForm& f, const SL2& g, const IIAPoint& p,
                               const cplx<double>& tf) {
  auto dc = darboux_coords<double>(f, p.pack(), tf, 0.0, DarbouxConvention::Physics);
  return std::sqrt(abs2(cplx<double>(g.c) * dc.xi[0] + cplx<double>(g.d)));
}

// S-duality square at tree level, physics convention: transform the base
// point and the fiber, recompute Darboux data, compare with the direct
// action on Darboux coordinates.
inline double sduality_square_residual(const CubicForm& f, const SL2& g, const IIAPoint& p,
                                       const cplx<double>& tf) {
  cplx<double> tau = tau_of_point(f, p);
  IIAPoint p2 = sl2_act_iia(f, g, p);
  cplx<double> t2 = sduality_fiber_lift(g, tau, tf);
  auto direct = darboux_coords<double>(f, p2.pack(), t2, 0.0, DarbouxConvention::Physics);
  auto dc = darboux_coords<double>(f, p.pack(), tf, 0.0, DarbouxConvention::Physics);
  auto lifted = twistor_sduality(f, g, dc);
  return darboux_distance(direct, lifted);
}

// L2 square in the pinned convention. Valid for all g at tree level and for
// the r = 1 (Heisenberg) subgroup at one loop, matching which generators
// survive the deformation.
inline double l2_square_residual(const CubicForm& f, const L2Element& g, const IIAPoint& p,
                                 const cplx<double>& tf, double c) {
  auto direct =
      darboux_coords<double>(f, l2_act(g, p).pack(), tf, c, DarbouxConvention::Pinned);
  auto lifted = twistor_l2(g, darboux_coords<double>(f, p.pack(), tf, c, DarbouxConvention::Pinned));
  return darboux_distance(direct, lifted);
}

inline double lambda_square_residual(const CubicForm& f, double lambda, const IIAPoint& p,
                                     const cplx<double>& tf, double c) {
  auto direct = darboux_coords<double>(f, phi_h_lambda(lambda, p).pack(), tf, c,
                                       DarbouxConvention::Pinned);
  auto lifted =
      twistor_lambda(lambda, darboux_coords<double>(f, p.pack(), tf, c, DarbouxConvention::Pinned));
  return darboux_distance(direct, lifted);
}

inline double v_square_residual(const CubicForm& f, const Vec& v, const IIAPoint& p,
                                const cplx<double>& tf, double c) {
  auto direct =
      darboux_coords<double>(f, phi_h_v(f, v, p).pack(), tf, c, DarbouxConvention::Pinned);
  auto lifted =
      twistor_v(f, v, darboux_coords<double>(f, p.pack(), tf, c, DarbouxConvention::Pinned));
  return darboux_distance(direct, lifted);
}

// ---------------------------------------------------------------------------
// contact-form scaling under a finite map of Darboux coordinates.
// Coordinates are seeded as 4n+6 real variables; the residual compares the
// pulled-back form theta' = d alpha' + xitilde' d xi' - xi' d xitilde'
// against scale * theta direction by direction.

inline DarbouxCoords<Dual> seed_darboux(const DarbouxCoords<double>& dc) {
  int n = static_cast<int>(dc.xi.size()) - 1;
  std::size_t nv = static_cast<std::size_t>(4 * n + 6);
  DarbouxCoords<Dual> out;
  out.xi.resize(n + 1);
  out.xitilde.resize(n + 1);
  std::size_t k = 0;
  for (int i = 0; i <= n; ++i) {
    out.xi[i] = cplx<Dual>(Dual(dc.xi[i].re, nv, k), Dual(dc.xi[i].im, nv, k + 1));
    k += 2;
  }
  for (int i = 0; i <= n; ++i) {
    out.xitilde[i] =
        cplx<Dual>(Dual(dc.xitilde[i].re, nv, k), Dual(dc.xitilde[i].im, nv, k + 1));
    k += 2;
  }
  out.alpha = cplx<Dual>(Dual(dc.alpha.re, nv, k), Dual(dc.alpha.im, nv, k + 1));
  return out;
}

template <class MapFn>
double contact_scaling_residual(const MapFn& map, const DarbouxCoords<double>& dc,
                                const cplx<double>& scale) {
  int n = static_cast<int>(dc.xi.size()) - 1;
  int nv = 4 * n + 6;
  auto seeded = seed_darboux(dc);
  DarbouxCoords<Dual> img = map(seeded);
  double worst = 0.0;
  cplx<double> iunit(0.0, 1.0);
  for (int k = 0; k < nv; ++k) {
    cplx<double> pulled(img.alpha.re.deriv(k), img.alpha.im.deriv(k));
    for (int i = 0; i <= n; ++i) {
      cplx<double> dxi(img.xi[i].re.deriv(k), img.xi[i].im.deriv(k));
      cplx<double> dxit(img.xitilde[i].re.deriv(k), img.xitilde[i].im.deriv(k));
      pulled += value(img.xitilde[i]) * dxi - value(img.xi[i]) * dxit;
    }
    // theta at the base point in the seeded coordinates
    cplx<double> theta;
    if (k == 4 * n + 4) theta += cplx<double>(1.0);
    if (k == 4 * n + 5) theta += iunit;
    for (int i = 0; i <= n; ++i) {
      if (k == 2 * i) theta += dc.xitilde[i];
      if (k == 2 * i + 1) theta += iunit * dc.xitilde[i];
      if (k == 2 * (n + 1) + 2 * i) theta -= dc.xi[i];
      if (k == 2 * (n + 1) + 2 * i + 1) theta -= iunit * dc.xi[i];
    }
    worst = std::max(worst, std::sqrt(abs2(pulled - scale * theta)));
  }
  return worst;
}

}  // namespace qmap
