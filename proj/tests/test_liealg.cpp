#include <catch2/catch_amalgamated.hpp>

#include "qmap/cubic.hpp"
#include "qmap/liealg.hpp"

using namespace qmap;

TEST_CASE("structure constants are antisymmetric and satisfy jacobi") {
  for (const char* name : {"homog", "complete", "incomplete", "n1", "rand3"}) {
    Preset pr = make_preset(name, 11);
    UniversalAlgebra alg(pr.form);
    INFO(name);
    REQUIRE(alg.antisymmetric());
    REQUIRE(alg.jacobi());
  }
}

TEST_CASE("dimension bookkeeping") {
  CubicForm f = make_preset("rand3", 7).form;
  UniversalAlgebra alg(f);
  int n = f.n();
  REQUIRE(alg.dim() == 3 * n + 6);
  REQUIRE(static_cast<int>(span_nilradical(alg).size()) == 3 * n + 2);
  REQUIRE(static_cast<int>(span_heisenberg(alg).size()) == 2 * n + 2);
  REQUIRE(static_cast<int>(span_sl2(alg).size()) == 3);
}

TEST_CASE("lower central series of the nilradical") {
  for (const char* name : {"homog", "rand3"}) {
    CubicForm f = make_preset(name, 3).form;
    int n = f.n();
    UniversalAlgebra alg(f);
    auto dims = lower_central_series_dims(alg, span_nilradical(alg));
    REQUIRE(dims.size() == 4);
    REQUIRE(dims[0] == 3 * n + 2);
    REQUIRE(dims[1] == n + 2);
    REQUIRE(dims[2] == 2);
    REQUIRE(dims[3] == 0);
    // translations alone are abelian
    auto vd = lower_central_series_dims(alg, span_v(alg));
    REQUIRE(vd.size() == 2);
    REQUIRE(vd[0] == n);
    REQUIRE(vd[1] == 0);
  }
}

TEST_CASE("ideal structure") {
  CubicForm f = curve_form(CurveId::InhomogeneousComplete);
  UniversalAlgebra alg(f);
  REQUIRE(bracket_into(alg, span_heisenberg(alg), span_heisenberg(alg)));
  REQUIRE(bracket_into(alg, span_nilradical(alg), span_heisenberg(alg)));
  REQUIRE(bracket_into(alg, span_full(alg), span_nilradical(alg)));
  REQUIRE(bracket_into(alg, span_sl2(alg), span_sl2(alg)));
  // the heisenberg part is not an ideal of the full algebra: [Xf, P_a] = V_a
  REQUIRE_FALSE(bracket_into(alg, span_full(alg), span_heisenberg(alg)));
}

TEST_CASE("grading element diagonalizes the nilradical with integer weights") {
  for (const char* name : {"homog", "rand3"}) {
    CubicForm f = make_preset(name, 3).form;
    int n = f.n();
    UniversalAlgebra alg(f);
    auto dprime = grading_element(alg);
    REQUIRE(alg.trace_ad(dprime) == Rat(-(4 * n + 6)));
    REQUIRE(eigen_multiplicity(alg, dprime, Rat(0)) == 4);
    REQUIRE(eigen_multiplicity(alg, dprime, Rat(-1)) == 2 * n);
    REQUIRE(eigen_multiplicity(alg, dprime, Rat(-2)) == n);
    REQUIRE(eigen_multiplicity(alg, dprime, Rat(-3)) == 2);
  }
}

TEST_CASE("trace form kernel picks out the unimodular part") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  int n = f.n();
  UniversalAlgebra alg(f);
  for (const auto& v : span_sl2(alg)) REQUIRE(alg.trace_ad(v) == Rat(0));
  for (const auto& v : span_nilradical(alg)) REQUIRE(alg.trace_ad(v) == Rat(0));
  REQUIRE(alg.trace_ad(alg.basis_vector(alg.iD())) == Rat(-(2 * n + 3), 2));
}

TEST_CASE("integral structure constants on the nilradical iff the cubic is integral") {
  REQUIRE(malcev_integral(UniversalAlgebra(curve_form(CurveId::Homogeneous))));
  REQUIRE(malcev_integral(UniversalAlgebra(make_preset("rand3", 19).form)));
  // scale a coefficient to something non-integral
  CubicForm frac(2, {{{1, 1, 2, 0.5}}});
  REQUIRE_FALSE(malcev_integral(UniversalAlgebra(frac)));
}

TEST_CASE("abstract brackets match a few table rows") {
  CubicForm f = curve_form(CurveId::Homogeneous);
  UniversalAlgebra alg(f);
  int n = f.n();
  // [Xe, Xf] = -Xh with Xe = P_0
  auto br = alg.bracket(alg.basis_vector(alg.iP(0)), alg.basis_vector(alg.iXf()));
  for (int m = 0; m < alg.dim(); ++m)
    REQUIRE(br[m] == (m == alg.iXh() ? Rat(-1) : Rat(0)));
  // [V_a, P_b] = k_ab. X^c for a, b >= 1
  auto br2 = alg.bracket(alg.basis_vector(alg.iV(1)), alg.basis_vector(alg.iP(1)));
  for (int m = 0; m < alg.dim(); ++m) {
    Rat want = Rat(0);
    for (int c = 1; c <= n; ++c)
      if (m == alg.iXup(c)) want = rat_from_double(f.k(0, 0, c - 1));
    REQUIRE(br2[m] == want);
  }
  // [Z, D] = Z
  auto br3 = alg.bracket(alg.basis_vector(alg.iZ()), alg.basis_vector(alg.iD()));
  for (int m = 0; m < alg.dim(); ++m)
    REQUIRE(br3[m] == (m == alg.iZ() ? Rat(1) : Rat(0)));
}
