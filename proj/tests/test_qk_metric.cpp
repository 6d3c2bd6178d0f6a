#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmap/cubic.hpp"
#include "qmap/qk_metric.hpp"

using namespace qmap;
using Catch::Matchers::WithinAbs;

namespace {
IIAPoint base_point() {
  IIAPoint p;
  p.t = {1.0, 1.0};
  p.b = {0.0, 0.0};
  p.rho = 1.0;
  p.zeta = {0.0, 0.0, 0.0};
  p.zetatilde = {0.0, 0.0, 0.0};
  p.sigma = 0.0;
  return p;
}
}  // namespace

TEST_CASE("metric entries at the centered unit point") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p = base_point();
  ChartIIA ix(2);
  auto res = metric_fs(f, p, 0.0);
  REQUIRE(res.imag_residue < 1e-14);
  const Mat& g = res.g;

  REQUIRE_THAT(g(ix.sigma(), ix.sigma()), WithinAbs(1.0 / 64.0, 1e-14));
  REQUIRE_THAT(g(ix.rho(), ix.rho()), WithinAbs(0.25, 1e-14));
  REQUIRE_THAT(g(ix.zetatilde(0), ix.zetatilde(0)), WithinAbs(0.125, 1e-13));
  REQUIRE_THAT(g(ix.zetatilde(1), ix.zetatilde(1)), WithinAbs(1.0 / 16.0, 1e-13));

  // no cross terms between rho, sigma and the rest at zeta = b = 0
  for (int k = 0; k < ix.dim(); ++k) {
    if (k != ix.rho()) REQUIRE_THAT(g(ix.rho(), k), WithinAbs(0.0, 1e-13));
    if (k != ix.sigma()) REQUIRE_THAT(g(ix.sigma(), k), WithinAbs(0.0, 1e-13));
  }

  // tangent (1,-2) to the level set {h=1} in the t-block has length^2 = 3/2
  double q = g(ix.t(0), ix.t(0)) - 4.0 * g(ix.t(0), ix.t(1)) + 4.0 * g(ix.t(1), ix.t(1));
  REQUIRE_THAT(q, WithinAbs(1.5, 1e-13));
}

TEST_CASE("metric is symmetric with tiny hermitian residue at a generic point") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  IIAPoint p;
  p.t = {1.3, 0.6};
  p.b = {0.4, -1.1};
  p.rho = 0.8;
  p.zeta = {0.2, -0.7, 1.1};
  p.zetatilde = {-0.5, 0.9, 0.3};
  p.sigma = 1.7;
  for (double c : {0.0, 0.25}) {
    auto res = metric_fs(f, p, c);
    REQUIRE(res.imag_residue < 1e-12);
    for (int i = 0; i < res.g.rows; ++i)
      for (int j = 0; j < i; ++j)
        REQUIRE_THAT(res.g(i, j), WithinAbs(res.g(j, i), 1e-13));
  }
}

TEST_CASE("validity check accepts the cone and rejects broken parameters") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p = base_point();
  auto ok = metric_validity(f, p, 0.0);
  REQUIRE(ok.ok);
  REQUIRE(ok.min_eig > 0.0);

  auto loop = metric_validity(f, p, 0.3);
  REQUIRE(loop.ok);

  IIAPoint bad = p;
  bad.rho = -0.5;
  REQUIRE_FALSE(metric_validity(f, bad, 0.0).ok);
  REQUIRE_FALSE(metric_validity(f, p, -0.6).ok);  // rho + 2c < 0

  IIAPoint outside = p;
  outside.t = {1.0, -1.0};  // h < 0
  REQUIRE_FALSE(metric_validity(f, outside, 0.0).ok);
}

TEST_CASE("lifted level-set tangents carry a quarter of the curve metric") {
  CubicForm f = curve_form(CurveId::IncompleteMaximal);
  IIAPoint p;
  p.t = {0.4 * 1.1, 1.52970585407783 * 1.1};
  p.b = {0.6, -0.2};
  p.rho = 1.4;
  p.zeta = {0.3, 0.1, -0.8};
  p.zetatilde = {0.0, -0.4, 0.5};
  p.sigma = -0.9;
  auto rep = decomposition_check(f, p);
  REQUIRE(rep.metric_mismatch < 1e-11);
  REQUIRE(rep.orthogonality < 1e-11);
}

TEST_CASE("one-loop term shifts the sigma-sigma entry as prescribed") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p = base_point();
  ChartIIA ix(2);
  double c = 0.2;
  Mat g = metric_fs(f, p, c).g;
  double want = (p.rho + c) / (64.0 * p.rho * p.rho * (p.rho + 2.0 * c));
  REQUIRE_THAT(g(ix.sigma(), ix.sigma()), WithinAbs(want, 1e-14));
  double wantrho = (p.rho + 2.0 * c) / (4.0 * p.rho * p.rho * (p.rho + c));
  REQUIRE_THAT(g(ix.rho(), ix.rho()), WithinAbs(wantrho, 1e-14));
}
