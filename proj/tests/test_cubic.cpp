#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmap/cubic.hpp"

using namespace qmap;
using Catch::Matchers::WithinAbs;

TEST_CASE("symmetric coefficient storage and evaluation") {
  // h = x1^2 x2 stored as the single triple (1,1,2) with k_112 = 2
  CubicForm f = curve_form(CurveId::Homogeneous);
  REQUIRE(f.n() == 2);
  REQUIRE_THAT(f.k(0, 0, 1), WithinAbs(2.0, 0.0));
  REQUIRE_THAT(f.k(0, 1, 0), WithinAbs(2.0, 0.0));
  REQUIRE_THAT(f.k(1, 0, 0), WithinAbs(2.0, 0.0));
  REQUIRE_THAT(f.k(0, 0, 0), WithinAbs(0.0, 0.0));

  Vec t = {1.3, 0.7};
  REQUIRE_THAT(f.h(t), WithinAbs(1.3 * 1.3 * 0.7, 1e-15));
  Vec g = f.grad(t);
  REQUIRE_THAT(g[0], WithinAbs(2 * 1.3 * 0.7, 1e-14));
  REQUIRE_THAT(g[1], WithinAbs(1.3 * 1.3, 1e-14));
}

TEST_CASE("hessian of the homogeneous curve at the unit point") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  Vec unit = {1.0, 1.0};
  Mat H = f.hess(unit);
  REQUIRE_THAT(H(0, 0), WithinAbs(2.0, 1e-15));
  REQUIRE_THAT(H(0, 1), WithinAbs(2.0, 1e-15));
  REQUIRE_THAT(H(1, 0), WithinAbs(2.0, 1e-15));
  REQUIRE_THAT(H(1, 1), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(delta_h(f, {1.0, 1.0}), WithinAbs(2.0, 1e-14));
}

TEST_CASE("euler identities of a homogeneous cubic") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  Vec t = {1.7, 0.9};
  double h = f.h(t);
  Vec g = f.grad(t);
  Mat H = f.hess(t);
  double tg = t[0] * g[0] + t[1] * g[1];
  REQUIRE_THAT(tg, WithinAbs(3.0 * h, 1e-12));
  double tHt = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) tHt += t[a] * H(a, b) * t[b];
  REQUIRE_THAT(tHt, WithinAbs(6.0 * h, 1e-12));
}

TEST_CASE("curve parametrizations stay on the level set h = 1") {
  for (CurveId c : {CurveId::Homogeneous, CurveId::InhomogeneousComplete,
                    CurveId::IncompleteMaximal}) {
    CubicForm f = curve_form(c);
    double lo = (c == CurveId::InhomogeneousComplete) ? 1.05 : 0.3;
    double hi = (c == CurveId::IncompleteMaximal) ? 0.6 : 3.0;
    for (double x1 = lo; x1 <= hi; x1 += (hi - lo) / 7) {
      if (!curve_in_domain(c, x1)) continue;
      Vec p = curve_point(c, x1);
      REQUIRE_THAT(f.h(p), WithinAbs(1.0, 1e-12));
      REQUIRE(log_hess_negdef(f, p));
    }
  }
}

TEST_CASE("closed hessian density along the curves") {
  for (CurveId c : {CurveId::Homogeneous, CurveId::InhomogeneousComplete,
                    CurveId::IncompleteMaximal}) {
    CubicForm f = curve_form(c);
    double x1 = (c == CurveId::InhomogeneousComplete) ? 1.4 : 0.45;
    Vec p = curve_point(c, x1);
    REQUIRE_THAT(delta_h(f, p), WithinAbs(delta_h_closed(c, x1), 1e-12));
  }
}

TEST_CASE("arclength along the homogeneous curve is sqrt(6) log x1") {
  double s = arclength(CurveId::Homogeneous, std::exp(1.0));
  REQUIRE_THAT(s, WithinAbs(std::sqrt(6.0), 1e-8));
}

TEST_CASE("inhomogeneous curve metric approaches the model decay") {
  // g_H at x1 = 2 on the complete curve, precomputed independently
  REQUIRE_THAT(curve_gH(CurveId::InhomogeneousComplete, 2.0), WithinAbs(1.66071, 2e-5));
  // far out it decays like 6 / x1^2, the same constant as the homogeneous
  // curve (the off-diagonal direction stops mattering)
  double far = 1e4;
  REQUIRE_THAT(curve_gH(CurveId::InhomogeneousComplete, far) * far * far, WithinAbs(6.0, 1e-6));
  // the incomplete maximal curve blows up like 3 / (2 x1^2)
  double x1 = 1e-3;
  REQUIRE_THAT(curve_gH(CurveId::IncompleteMaximal, x1) * x1 * x1, WithinAbs(1.5, 1e-3));
}

TEST_CASE("random integer cubic has a valid base point") {
  Vec base;
  CubicForm f = random_integer_cubic(2026, &base);
  REQUIRE(f.n() == 3);
  REQUIRE(f.h(base) > 0.0);
  REQUIRE(log_hess_negdef(f, base));
  // coefficients are integers
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double k = f.k(a, b, c);
        REQUIRE_THAT(k, WithinAbs(std::llround(k), 1e-14));
      }
}

TEST_CASE("presets") {
  for (const char* name : {"homog", "complete", "incomplete", "n1", "rand3"}) {
    Preset pr = make_preset(name, 5);
    REQUIRE(pr.form.h(pr.base_t) > 0.0);
    REQUIRE(log_hess_negdef(pr.form, pr.base_t));
  }
  REQUIRE_THROWS(make_preset("nope"));
}

TEST_CASE("constructor rejects malformed coefficient tables") {
  REQUIRE_THROWS(CubicForm(2, {{{1, 2, 1, 1.0}}}));   // unsorted triple
  REQUIRE_THROWS(CubicForm(2, {{{1, 1, 3, 1.0}}}));   // index out of range
  REQUIRE_THROWS(CubicForm(2, {{{1, 1, 2, 1.0}}, {{1, 1, 2, 2.0}}}));  // duplicate
}
