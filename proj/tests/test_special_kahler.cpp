#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmap/cubic.hpp"
#include "qmap/special_kahler.hpp"

using namespace qmap;
using Catch::Matchers::WithinAbs;

namespace {
const Vec b0 = {0.0, 0.0};
const Vec t0 = {1.0, 1.0};
}  // namespace

TEST_CASE("gauge coupling matrices at the unit point of x1^2 x2") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  auto sk = special_matrices(f, b0, t0);

  // G_ab = k_abc t^c / (2h) and its inverse
  REQUIRE_THAT(sk.G(0, 0), WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(sk.G(0, 1), WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(sk.G(1, 1), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(sk.Ginv(0, 0), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(sk.Ginv(0, 1), WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(sk.Ginv(1, 1), WithinAbs(-1.0, 1e-14));

  // N_ij and the closed-form inverse
  REQUIRE_THAT(sk.N(0, 0), WithinAbs(-4.0, 1e-14));
  REQUIRE_THAT(sk.N(0, 1), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(sk.N(1, 1), WithinAbs(4.0, 1e-14));
  REQUIRE_THAT(sk.N(1, 2), WithinAbs(4.0, 1e-14));
  REQUIRE_THAT(sk.N(2, 2), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(sk.Ninv(0, 0), WithinAbs(-0.25, 1e-14));
  REQUIRE_THAT(sk.Ninv(1, 1), WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(sk.Ninv(1, 2), WithinAbs(0.25, 1e-14));
  REQUIRE_THAT(sk.Ninv(2, 2), WithinAbs(-0.25, 1e-14));

  REQUIRE_THAT(sk.K, WithinAbs(8.0, 1e-14));
  REQUIRE_THAT(sk.h, WithinAbs(1.0, 1e-15));

  // tau at z = (1, i, i): tau_00 = -2 h(z) = 2i, tau_0a = F_a, tau_ab = -k z
  REQUIRE_THAT(sk.tau(0, 0).re, WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(sk.tau(0, 0).im, WithinAbs(2.0, 1e-14));
  REQUIRE_THAT(sk.tau(0, 1).re, WithinAbs(-2.0, 1e-14));
  REQUIRE_THAT(sk.tau(1, 2).im, WithinAbs(-2.0, 1e-14));
  REQUIRE_THAT(sk.tau(2, 2).re, WithinAbs(0.0, 1e-14));
}

TEST_CASE("N Ninv = identity away from the oracle point") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  Vec b = {0.3, -0.8};
  Vec t = {1.4, 0.9};
  auto sk = special_matrices(f, b, t);
  Mat prod = matmul(sk.N, sk.Ninv);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      REQUIRE_THAT(prod(i, j), WithinAbs(i == j ? 1.0 : 0.0, 1e-12));
  REQUIRE_THAT(sk.K, WithinAbs(8.0 * f.h(t), 1e-12));
}

TEST_CASE("projective metric block at the unit point") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  Mat g = psk_metric(f, b0, t0);
  REQUIRE(g.rows == 4);
  double want[4] = {0.5, 0.25, 0.5, 0.25};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      REQUIRE_THAT(g(i, j), WithinAbs(i == j ? want[i] : 0.0, 1e-14));
}

TEST_CASE("central charges and the conic relation") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  auto cc = central_charges(f, b0, t0);
  REQUIRE_THAT(cc.z[1].im, WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(cc.F[0].re, WithinAbs(0.0, 1e-14));
  REQUIRE_THAT(cc.F[0].im, WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(cc.F[1].re, WithinAbs(-2.0, 1e-14));
  REQUIRE_THAT(cc.F[2].re, WithinAbs(-1.0, 1e-14));

  // F_i = -tau_ij z^j at scattered points
  CubicForm f2 = curve_form(CurveId::IncompleteMaximal);
  REQUIRE(cask_residual(f2, {0.7, -1.1}, {0.35, 1.2}) < 1e-12);
  REQUIRE(cask_residual(f, {2.0, 1.5}, {0.8, 1.7}) < 1e-12);
}

TEST_CASE("one-form potential has only base components") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  auto w = dc_kahler_pot(f, t0);
  REQUIRE(w.size() == 4);
  REQUIRE_THAT(w[0], WithinAbs(2.0, 1e-14));
  REQUIRE_THAT(w[1], WithinAbs(1.0, 1e-14));
  REQUIRE_THAT(w[2], WithinAbs(0.0, 0.0));
  REQUIRE_THAT(w[3], WithinAbs(0.0, 0.0));
}
