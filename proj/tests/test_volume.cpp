#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmap/cubic.hpp"
#include "qmap/volume.hpp"

using namespace qmap;
using Catch::Matchers::WithinAbs;

TEST_CASE("cross section gram determinant against the bare hessian") {
  CubicForm f = curve_form(CurveId::IncompleteMaximal);
  Vec p = curve_point(CurveId::IncompleteMaximal, 0.4);
  REQUIRE_THAT(f.h(p), WithinAbs(1.0, 1e-13));
  // det gamma = 4/x1 - 16 x1^2 over 2 = 3.72 at x1 = 0.4
  REQUIRE_THAT(det(gamma_matrix(f, p)), WithinAbs(3.72, 1e-12));
  REQUIRE(det_gamma_identity_residual(f, p) < 1e-13);

  CubicForm f2 = curve_form(CurveId::Homogeneous);
  Vec p2 = curve_point(CurveId::Homogeneous, 0.8);
  REQUIRE(det_gamma_identity_residual(f2, p2) < 1e-13);
}

TEST_CASE("radial direction of the hessian cone metric is rigid") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  REQUIRE(cone_radial_residual(f, {1.6, 1.1}) < 1e-12);
  REQUIRE(cone_radial_residual(f, {2.9, 0.4}) < 1e-12);
}

TEST_CASE("fiber volume scales like the closed density law") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  IIAPoint p1, p2;
  p1.t = {1.1, 0.9};
  p1.b = {0.3, -0.4};
  p1.rho = 0.7;
  p1.zeta = {0.2, -0.1, 0.5};
  p1.zetatilde = {0.6, 0.0, -0.3};
  p1.sigma = 1.4;

  p2.t = {2.3, 0.5};
  p2.b = {-1.2, 0.8};
  p2.rho = 2.6;
  p2.zeta = {-0.7, 0.4, 0.1};
  p2.zetatilde = {0.2, -0.9, 0.8};
  p2.sigma = -2.1;

  auto d1 = density_at(f, p1);
  auto d2 = density_at(f, p2);
  REQUIRE(d1.min_gram_eig > 0.0);
  REQUIRE(d2.min_gram_eig > 0.0);
  REQUIRE(d1.orthogonality < 1e-10);
  REQUIRE_THAT(d1.ratio / d2.ratio, WithinAbs(1.0, 1e-9));

  // the flat directions do not feed the density
  IIAPoint p3 = p1;
  p3.sigma = 0.0;
  auto d3 = density_at(f, p3);
  REQUIRE_THAT(d3.delta_numeric / d1.delta_numeric, WithinAbs(1.0, 1e-12));
}

TEST_CASE("decay rate along the homogeneous curve") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  auto fit = density_rate_fit(f, CurveId::Homogeneous, std::exp(-2.0), std::exp(2.0), 15);
  REQUIRE_THAT(fit.slope, WithinAbs(1.0 / std::sqrt(6.0), 1e-7));
  REQUIRE(fit.max_fit_residual < 1e-7);
}

TEST_CASE("decay rate at the complete end approaches the model value") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  // the window stops at x1 = 80: past roughly x1 = 100 the fiber Gram
  // determinant cancels catastrophically in double precision (matrix entries
  // grow like x1^4 while the smallest eigenvalue decays like 1/x1^2)
  auto fit = density_rate_fit(f, CurveId::InhomogeneousComplete, 10.0, 80.0, 12);
  REQUIRE_THAT(fit.slope, WithinAbs(1.0 / std::sqrt(6.0), 1e-4));
}

TEST_CASE("measured rate at the incomplete end of the maximal curve") {
  CubicForm f = curve_form(CurveId::IncompleteMaximal);
  auto fit = density_rate_fit(f, CurveId::IncompleteMaximal, 1e-6, 1e-4, 12);
  // the density grows toward the incomplete end at the universal rate; the
  // sign is positive, not the negative of it
  REQUIRE_THAT(fit.slope, WithinAbs(1.0 / std::sqrt(6.0), 1e-3));
  REQUIRE(fit.slope > 0.0);
}
