#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmap/cubic.hpp"
#include "qmap/isometries.hpp"

using namespace qmap;
using Catch::Matchers::WithinAbs;

namespace {
IIAPoint centered() {
  IIAPoint p;
  p.t = {1.0, 1.0};
  p.b = {0.0, 0.0};
  p.rho = 1.0;
  p.zeta = {0.0, 0.0, 0.0};
  p.zetatilde = {0.0, 0.0, 0.0};
  p.sigma = 0.0;
  return p;
}

IIAPoint generic() {
  IIAPoint p;
  p.t = {1.2, 0.8};
  p.b = {-0.4, 0.9};
  p.rho = 1.6;
  p.zeta = {0.5, -0.3, 0.7};
  p.zetatilde = {0.2, 1.1, -0.6};
  p.sigma = -1.3;
  return p;
}
}  // namespace

TEST_CASE("nilpotent raising field at the centered point") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p = centered();
  ChartIIA ix(2);
  Vec X = eval_field<double>(f, {Gen::Xf}, p.pack());
  for (int k = 0; k < ix.dim(); ++k) {
    double want = (k == ix.zeta(0)) ? 2.0 : 0.0;  // 2 rho / h at rho = h = 1
    REQUIRE_THAT(X[k], WithinAbs(want, 1e-14));
  }
}

TEST_CASE("every basis generator is Killing at tree level") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p = generic();
  for (const auto& gen : algebra_basis(2)) {
    Mat L = lie_derivative_metric(f, gen, p, 0.0);
    INFO(gen.name());
    REQUIRE(max_abs(L) < 1e-11);
  }
}

TEST_CASE("one-loop deformation keeps the nilpotent sector and breaks the sl2 part") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p = generic();
  double c = 0.3;
  for (Gen keep : {Gen::D1, Gen::Z}) {
    Mat L = lie_derivative_metric(f, {keep}, p, c);
    REQUIRE(max_abs(L) < 1e-11);
  }
  for (int i = 0; i <= 2; ++i) {
    REQUIRE(max_abs(lie_derivative_metric(f, {Gen::P, i}, p, c)) < 1e-11);
    REQUIRE(max_abs(lie_derivative_metric(f, {Gen::Xup, i}, p, c)) < 1e-11);
  }
  for (int a = 1; a <= 2; ++a)
    REQUIRE(max_abs(lie_derivative_metric(f, {Gen::V, a}, p, c)) < 1e-11);
  REQUIRE(max_abs(lie_derivative_metric(f, {Gen::Xh}, p, c)) > 1e-3);
  REQUIRE(max_abs(lie_derivative_metric(f, {Gen::D}, p, c)) > 1e-3);
  REQUIRE(max_abs(lie_derivative_metric(f, {Gen::Xf}, p, c)) > 1e-3);
}

TEST_CASE("numeric brackets reproduce the heisenberg center") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  IIAPoint p = generic();
  // [P_0, X^0] = -2 Z
  Vec br = lie_bracket(f, {Gen::P, 0}, {Gen::Xup, 0}, p);
  Vec Z = eval_field<double>(f, {Gen::Z}, p.pack());
  for (std::size_t k = 0; k < br.size(); ++k)
    REQUIRE_THAT(br[k], WithinAbs(-2.0 * Z[k], 1e-10));

  double resid = 0.0;
  auto bracket_field = [&](const IIAPoint& q) {
    return lie_bracket(f, {Gen::P, 0}, {Gen::Xup, 0}, q);
  };
  Vec coef = expand_in_frame(f, bracket_field, p, &resid);
  REQUIRE(resid < 1e-9);
  auto basis = algebra_basis(2);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double want = (basis[i].kind == Gen::Z) ? -2.0 : 0.0;
    REQUIRE_THAT(coef[i], WithinAbs(want, 1e-9));
  }
}

TEST_CASE("axion-dilaton action composes as a left action") {
  SL2 g1(1.2, 0.3, -0.4, 0.7333333333333334);
  SL2 g2(0.9, -0.5, 0.2, 1.0);
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIBPoint q;
  q.tau1 = 0.4;
  q.tau2 = 1.1;
  q.t = {1.0, 1.3};
  q.b = {0.2, -0.6};
  q.ca = {0.8, 0.1};
  q.c_a = {-0.9, 0.5};
  q.c0 = 0.7;
  q.psi = -0.2;
  Vec lhs = sl2_act_iib(g1 * g2, q).pack();
  Vec rhs = sl2_act_iib(g1, sl2_act_iib(g2, q)).pack();
  for (std::size_t i = 0; i < lhs.size(); ++i)
    REQUIRE_THAT(lhs[i], WithinAbs(rhs[i], 1e-12));
}

TEST_CASE("finite maps preserve the tree metric") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p = generic();
  Mat g = metric_fs(f, p, 0.0).g;
  double scale = 1.0 + max_abs(g);

  SL2 s(1.1, 0.2, 0.3, (1.0 + 0.2 * 0.3) / 1.1);
  VecFn Fs = [&](const Vec& x) {
    return sl2_act_iia(f, s, IIAPoint::unpack(2, x)).pack();
  };
  REQUIRE(pullback_metric_check(f, Fs, p, 0.0) / scale < 1e-7);

  L2Element l;
  l.r = 1.7;
  l.etat = {0.3, -0.2, 0.5};
  l.eta = {-0.8, 0.4, 0.1};
  l.kappa = 0.9;
  VecFn Fl = [&](const Vec& x) { return l2_act(l, IIAPoint::unpack(2, x)).pack(); };
  REQUIRE(pullback_metric_check(f, Fl, p, 0.0) / scale < 1e-7);

  VecFn Fm = [&](const Vec& x) {
    return phi_h_act(f, 1.35, {0.4, -0.7}, IIAPoint::unpack(2, x)).pack();
  };
  REQUIRE(pullback_metric_check(f, Fm, p, 0.0) / scale < 1e-7);
}

TEST_CASE("solvable group elements compose consistently with the action") {
  L2Element a, b;
  a.r = 2.0;
  a.etat = {0.1, 0.2, 0.3};
  a.eta = {-0.4, 0.5, -0.6};
  a.kappa = 1.1;
  b.r = 0.6;
  b.etat = {0.7, -0.8, 0.9};
  b.eta = {0.2, 0.3, -0.1};
  b.kappa = -0.5;
  IIAPoint p = generic();
  Vec lhs = l2_act(a, l2_act(b, p)).pack();
  Vec rhs = l2_act(l2_compose(a, b), p).pack();
  for (std::size_t i = 0; i < lhs.size(); ++i)
    REQUIRE_THAT(lhs[i], WithinAbs(rhs[i], 1e-13));
}

TEST_CASE("cone automorphism acts isometrically with its exact jacobian") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  Mat A(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = -1.0;
  IIAPoint p = generic();
  Mat J = auth_jacobian(f, A);
  VecFn F = [&](const Vec& x) {
    return auth_act(f, A, IIAPoint::unpack(2, x)).pack();
  };
  Mat g = metric_fs(f, p, 0.0).g;
  REQUIRE(pullback_metric_check(f, F, p, 0.0, &J) / (1.0 + max_abs(g)) < 1e-10);

  // the same matrix does not preserve the homogeneous cubic
  CubicForm fh = curve_form(CurveId::Homogeneous);
  REQUIRE_THROWS(auth_act(fh, A, p));
}
