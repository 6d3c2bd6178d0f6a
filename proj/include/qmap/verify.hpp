#pragma once

// Verification suites. Each suite draws deterministic samples (seeded,
// stream-split RNG), measures the worst residual of a family of identities,
// and reports named checks against pinned tolerances. Reports serialize to
// text, JSON, and CSV; serialized output contains no timing so a fixed seed
// reproduces byte-identical reports.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coords.hpp"
#include "cubic.hpp"
#include "isometries.hpp"
#include "liealg.hpp"
#include "qk_metric.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "special_kahler.hpp"
#include "twistor.hpp"
#include "volume.hpp"

namespace qmap {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool ge = false;  // pass iff value >= bound (breaking checks); default value <= bound
  bool pass = false;
  std::string note;
};

struct DensityRow {
  double x1 = 0.0, s = 0.0, delta_numeric = 0.0, delta_closed = 0.0, ratio = 0.0;
};

struct SuiteReport {
  std::string suite, cubic;
  std::uint64_t seed = 0;
  double c = 0.0;
  int samples = 0;
  std::vector<CheckResult> checks;
  SamplerStats sampler;
  std::vector<DensityRow> density_rows;

  bool pass() const {
    for (const auto& ch : checks)
      if (!ch.pass) return false;
    return true;
  }
};

struct VerifyContext {
  CubicForm f;
  std::string cubic_name;
  Vec base_t;
  bool has_curve = false;
  CurveId curve = CurveId::Homogeneous;
  double c = 0.0;
  std::uint64_t seed = 1;
  int samples = 0;  // 0 = per-suite default
  double tol_scale = 1.0;
};

namespace vdetail {

inline void add(SuiteReport& r, const std::string& name, double value, double bound,
                bool ge = false, const std::string& note = "") {
  CheckResult ch;
  ch.name = name;
  ch.value = value;
  ch.bound = bound;
  ch.ge = ge;
  ch.pass = ge ? (value >= bound) : (value <= bound);
  ch.note = note;
  r.checks.push_back(ch);
}

inline std::vector<IIAPoint> draw_points(const VerifyContext& ctx, int count, double c,
                                         SamplerStats& stats, std::uint64_t stream) {
  SamplerConfig cfg;
  cfg.base_t = ctx.base_t;
  cfg.c = c;
  Rng rng(ctx.seed, stream);
  std::vector<IIAPoint> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) pts.push_back(sample_point(ctx.f, cfg, rng, stats));
  return pts;
}

inline SL2 draw_sl2(Rng& rng) {
  double x = rng.uniform(-1.0, 1.0);
  double y = rng.uniform(0.5, 2.0);
  double th = rng.uniform(-3.1, 3.1);
  double sy = std::sqrt(y), cth = std::cos(th), sth = std::sin(th);
  return SL2(sy * cth + (x / sy) * sth, -sy * sth + (x / sy) * cth, sth / sy, cth / sy);
}

inline L2Element draw_l2(Rng& rng, int n, bool unit_r) {
  L2Element g;
  g.r = unit_r ? 1.0 : rng.uniform(0.5, 2.0);
  g.etat.resize(n + 1);
  g.eta.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    g.etat[i] = rng.uniform(-1.0, 1.0);
    g.eta[i] = rng.uniform(-1.0, 1.0);
  }
  g.kappa = rng.uniform(-1.0, 1.0);
  return g;
}

inline cplx<double> draw_fiber(Rng& rng) {
  double m = rng.uniform(0.5, 2.0);
  double th = rng.uniform(-3.1415926535897931 + 0.3, 3.1415926535897931 - 0.3);
  return {m * std::cos(th), m * std::sin(th)};
}

inline double fmt_slope_target(double measured, double target) {
  return std::fabs(measured - target);
}

}  // namespace vdetail

// ---------------------------------------------------------------------------
// killing: every generator of the universal algebra is a Killing field of
// the tree metric; at one loop the sl2 directions break while the rest stay.

inline SuiteReport run_killing(const VerifyContext& ctx) {
  using vdetail::add;
  SuiteReport R;
  R.suite = "killing";
  R.cubic = ctx.cubic_name;
  R.seed = ctx.seed;
  R.c = ctx.c;
  int n = ctx.f.n();
  int count = ctx.samples > 0 ? ctx.samples : 100;
  R.samples = count;
  auto pts = vdetail::draw_points(ctx, count, ctx.c, R.sampler, 11);

  std::vector<GeneratorId> survivors, broken;
  if (ctx.c == 0.0) {
    survivors = algebra_basis(n);
  } else {
    survivors.push_back({Gen::D1});
    for (int i = 0; i <= n; ++i) survivors.push_back({Gen::P, i});
    for (int i = 0; i <= n; ++i) survivors.push_back({Gen::Xup, i});
    for (int a = 1; a <= n; ++a) survivors.push_back({Gen::V, a});
    survivors.push_back({Gen::Z});
    broken = {{Gen::D}, {Gen::Xh}, {Gen::Xf}};
  }

  std::vector<double> worst_s(survivors.size(), 0.0), worst_b(broken.size(), 0.0);
  ChartIIA ix(n);
  for (const auto& p : pts) {
    auto xd = seed_duals(p.pack());
    auto gd = metric_fs<Dual>(ctx.f, xd, ctx.c).g;
    double gmax = 0.0;
    for (int i = 0; i < ix.dim(); ++i)
      for (int j = 0; j < ix.dim(); ++j) gmax = std::max(gmax, std::fabs(gd(i, j).v));
    auto lie_norm = [&](const GeneratorId& gen) {
      auto Xd = eval_field<Dual>(ctx.f, gen, xd);
      double worst = 0.0;
      for (int mu = 0; mu < ix.dim(); ++mu)
        for (int nu = mu; nu < ix.dim(); ++nu) {
          double s = 0.0;
          for (int k = 0; k < ix.dim(); ++k) {
            s += Xd[k].v * gd(mu, nu).deriv(k);
            s += gd(k, nu).v * Xd[k].deriv(mu);
            s += gd(mu, k).v * Xd[k].deriv(nu);
          }
          worst = std::max(worst, std::fabs(s));
        }
      return worst;
    };
    for (std::size_t gi = 0; gi < survivors.size(); ++gi)
      worst_s[gi] = std::max(worst_s[gi], lie_norm(survivors[gi]) / (1.0 + gmax));
    for (std::size_t gi = 0; gi < broken.size(); ++gi)
      worst_b[gi] = std::max(worst_b[gi], lie_norm(broken[gi]));
  }
  for (std::size_t gi = 0; gi < survivors.size(); ++gi)
    add(R, "killing." + survivors[gi].name(), worst_s[gi], 1e-9 * ctx.tol_scale);
  for (std::size_t gi = 0; gi < broken.size(); ++gi)
    add(R, "killing.broken." + broken[gi].name(), worst_b[gi], 1e-3, true,
        "one-loop deformation must break this direction");
  return R;
}

// ---------------------------------------------------------------------------
// brackets: numeric Lie brackets of the realized fields against the abstract
// structure constants, pointwise.

inline SuiteReport run_brackets(const VerifyContext& ctx) {
  using vdetail::add;
  SuiteReport R;
  R.suite = "brackets";
  R.cubic = ctx.cubic_name;
  R.seed = ctx.seed;
  R.c = 0.0;
  int n = ctx.f.n();
  int count = ctx.samples > 0 ? ctx.samples : 10;
  R.samples = count;
  auto pts = vdetail::draw_points(ctx, count, 0.0, R.sampler, 21);
  UniversalAlgebra alg(ctx.f);
  auto basis = algebra_basis(n);
  ChartIIA ix(n);
  int dim = ix.dim(), m = static_cast<int>(basis.size());

  double worst = 0.0;
  for (const auto& p : pts) {
    auto xd = seed_duals(p.pack());
    std::vector<std::vector<Dual>> X(m);
    for (int i = 0; i < m; ++i) X[i] = eval_field<Dual>(ctx.f, basis[i], xd);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double scale = 0.0;
        for (int mu = 0; mu < dim; ++mu) {
          double num = 0.0;
          for (int k = 0; k < dim; ++k)
            num += X[i][k].v * X[j][mu].deriv(k) - X[j][k].v * X[i][mu].deriv(k);
          double tab = 0.0;
          for (int s = 0; s < m; ++s) {
            const Rat& cs = alg.c(i, j, s);
            if (!(cs == Rat(0))) tab += cs.to_double() * X[s][mu].v;
          }
          scale = std::max(scale, std::fabs(num - tab) / (1.0 + std::fabs(tab)));
        }
        worst = std::max(worst, scale);
      }
  }
  add(R, "brackets.table", worst, 1e-9 * ctx.tol_scale,
      false, "numeric [X_i,X_j] vs structure constants, all pairs");
  return R;
}

// ---------------------------------------------------------------------------
// liealg: exact structure theory over the rationals.

inline SuiteReport run_liealg(const VerifyContext& ctx) {
  using vdetail::add;
  SuiteReport R;
  R.suite = "liealg";
  R.cubic = ctx.cubic_name;
  R.seed = ctx.seed;
  R.c = 0.0;
  R.samples = 0;
  int n = ctx.f.n();
  UniversalAlgebra alg(ctx.f);

  add(R, "liealg.antisymmetry", alg.antisymmetric() ? 0.0 : 1.0, 0.5);
  add(R, "liealg.jacobi", alg.jacobi() ? 0.0 : 1.0, 0.5);

  auto lcs_n = lower_central_series_dims(alg, span_nilradical(alg));
  std::vector<int> expect_n = {3 * n + 2, n + 2, 2, 0};
  double mism = 0.0;
  if (lcs_n.size() != expect_n.size()) mism = 1.0;
  else
    for (std::size_t i = 0; i < expect_n.size(); ++i)
      if (lcs_n[i] != expect_n[i]) mism += 1.0;
  {
    std::string got = "dims";
    for (int d : lcs_n) got += " " + std::to_string(d);
    add(R, "liealg.lcs.nilradical", mism, 0.5, false, got);
  }

  auto lcs_v = lower_central_series_dims(alg, span_v(alg));
  double mv = (lcs_v.size() == 2 && lcs_v[0] == n && lcs_v[1] == 0) ? 0.0 : 1.0;
  add(R, "liealg.lcs.vspan", mv, 0.5, false, "translations are abelian");

  add(R, "liealg.heisenberg.subalgebra",
      bracket_into(alg, span_heisenberg(alg), span_heisenberg(alg)) ? 0.0 : 1.0, 0.5);
  add(R, "liealg.heisenberg.ideal_in_nilradical",
      bracket_into(alg, span_nilradical(alg), span_heisenberg(alg)) ? 0.0 : 1.0, 0.5);
  add(R, "liealg.nilradical.ideal",
      bracket_into(alg, span_full(alg), span_nilradical(alg)) ? 0.0 : 1.0, 0.5);
  add(R, "liealg.sl2.subalgebra",
      bracket_into(alg, span_sl2(alg), span_sl2(alg)) ? 0.0 : 1.0, 0.5);

  auto dprime = grading_element(alg);
  Rat tr = alg.trace_ad(dprime);
  add(R, "liealg.grading.trace", (tr == Rat(-(4 * n + 6))) ? 0.0 : 1.0, 0.5, false,
      "tr ad(4D - Xh) = -(4n+6), exact");

  double em = 0.0;
  if (eigen_multiplicity(alg, dprime, Rat(-3)) != 2) em += 1.0;
  if (eigen_multiplicity(alg, dprime, Rat(-2)) != n) em += 1.0;
  if (eigen_multiplicity(alg, dprime, Rat(-1)) != 2 * n) em += 1.0;
  if (eigen_multiplicity(alg, dprime, Rat(0)) != 4) em += 1.0;
  add(R, "liealg.grading.multiplicities", em, 0.5, false,
      "ad(4D - Xh) eigenvalues -3,-2,-1,0 with multiplicities 2,n,2n,4");

  // the trace form tr ad vanishes exactly on sl2 + nilradical and not on D
  double lam = 0.0;
  for (const auto& v : span_sl2(alg))
    if (!(alg.trace_ad(v) == Rat(0))) lam += 1.0;
  for (const auto& v : span_nilradical(alg))
    if (!(alg.trace_ad(v) == Rat(0))) lam += 1.0;
  if (!(alg.trace_ad(alg.basis_vector(alg.iD())) == Rat(-(2 * n + 3), 2))) lam += 1.0;
  add(R, "liealg.traceform.kernel", lam, 0.5, false,
      "tr ad = 0 on sl2 + nilradical, -(2n+3)/2 on D");

  bool integral = true;
  for (int a = 0; a < n && integral; ++a)
    for (int b = 0; b < n && integral; ++b)
      for (int cc = 0; cc < n && integral; ++cc) {
        double k = ctx.f.k(a, b, cc);
        if (std::fabs(k - std::llround(k)) > 1e-12) integral = false;
      }
  add(R, "liealg.malcev.integral", (malcev_integral(alg) == integral) ? 0.0 : 1.0, 0.5,
      false, integral ? "integer coefficients, lattice exists" : "non-integral coefficients");

  {
    MatT<Rat> K(n * n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc)
          K(a * n + b, cc) = rat_from_double(ctx.f.k(a, b, cc));
    add(R, "liealg.xspan.full", (rat_rank(K) == n) ? 0.0 : 1.0, 0.5, false,
        "span{k_ab. X} = span{X^a}");
  }
  return R;
}

// ---------------------------------------------------------------------------
// mirror: round trips, the closed-form differential, field intertwining,
// and the conic special geometry identities.

inline SuiteReport run_mirror(const VerifyContext& ctx) {
  using vdetail::add;
  SuiteReport R;
  R.suite = "mirror";
  R.cubic = ctx.cubic_name;
  R.seed = ctx.seed;
  R.c = 0.0;
  int n = ctx.f.n();
  int count = ctx.samples > 0 ? ctx.samples : 100;
  R.samples = count;
  ChartIIB ib(n);

  Rng rng(ctx.seed, 31);
  std::vector<IIBPoint> qs;
  int guard = 0;
  while (static_cast<int>(qs.size()) < count && guard < 100 * count) {
    ++guard;
    IIBPoint q;
    q.tau1 = rng.uniform(-1.5, 1.5);
    q.tau2 = rng.uniform(0.5, 2.0);
    q.t.resize(n);
    q.b.resize(n);
    q.ca.resize(n);
    q.c_a.resize(n);
    for (int a = 0; a < n; ++a) {
      q.t[a] = ctx.base_t[a] * rng.uniform(0.6, 1.5);
      q.b[a] = rng.uniform(-2.0, 2.0);
      q.ca[a] = rng.uniform(-2.0, 2.0);
      q.c_a[a] = rng.uniform(-2.0, 2.0);
    }
    q.c0 = rng.uniform(-2.0, 2.0);
    q.psi = rng.uniform(-2.0, 2.0);
    if (ctx.f.h(q.t) <= 1e-8) continue;
    if (!log_hess_negdef(ctx.f, q.t)) continue;
    qs.push_back(q);
  }
  if (qs.empty()) throw std::runtime_error("run_mirror: no valid sample points");

  double rt_iib = 0.0, rt_iia = 0.0, dm_fd = 0.0, inter = 0.0;
  double k8h = 0.0, ninv = 0.0, cask = 0.0;
  for (const auto& q : qs) {
    Vec qv = q.pack();
    IIAPoint p = iib_to_iia(ctx.f, q);
    Vec back = iia_to_iib(ctx.f, p).pack();
    double qmax = 0.0;
    for (double v : qv) qmax = std::max(qmax, std::fabs(v));
    for (std::size_t i = 0; i < qv.size(); ++i)
      rt_iib = std::max(rt_iib, std::fabs(back[i] - qv[i]) / (1.0 + qmax));

    Vec pv = p.pack();
    Vec pback = iib_to_iia(ctx.f, iia_to_iib(ctx.f, p)).pack();
    double pmax = 0.0;
    for (double v : pv) pmax = std::max(pmax, std::fabs(v));
    for (std::size_t i = 0; i < pv.size(); ++i)
      rt_iia = std::max(rt_iia, std::fabs(pback[i] - pv[i]) / (1.0 + pmax));

    Mat dM = mirror_differential(ctx.f, q);
    VecFn map = [&](const Vec& x) {
      return iib_to_iia(ctx.f, IIBPoint::unpack(n, x)).pack();
    };
    Mat J = fd_jacobian(map, qv, 1e-6);
    double dmax = max_abs(dM);
    for (int i = 0; i < dM.rows; ++i)
      for (int j = 0; j < dM.cols; ++j)
        dm_fd = std::max(dm_fd, std::fabs(dM(i, j) - J(i, j)) / (1.0 + dmax));

    for (Gen gw : {Gen::Ye, Gen::Yf, Gen::Yh})
      inter = std::max(inter, mirror_intertwine_residual(ctx.f, q, gw));

    // special geometry at (b, t)
    auto sk = special_matrices(ctx.f, q.b, q.t);
    double h = ctx.f.h(q.t);
    k8h = std::max(k8h, std::fabs(sk.K - 8.0 * h) / (8.0 * h));
    Mat prod = matmul(sk.N, sk.Ninv);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        ninv = std::max(ninv, std::fabs(prod(i, j) - (i == j ? 1.0 : 0.0)));
    auto cc = central_charges(ctx.f, q.b, q.t);
    double fmax = 0.0;
    for (const auto& F : cc.F) fmax = std::max(fmax, std::sqrt(abs2(F)));
    cask = std::max(cask, cask_residual(ctx.f, q.b, q.t) / (1.0 + fmax));
  }
  add(R, "mirror.roundtrip.iib", rt_iib, 1e-12 * ctx.tol_scale);
  add(R, "mirror.roundtrip.iia", rt_iia, 1e-12 * ctx.tol_scale);
  add(R, "mirror.differential.fd", dm_fd, 1e-6 * ctx.tol_scale);
  add(R, "mirror.intertwine", inter, 1e-9 * ctx.tol_scale, false,
      "dM Y = X for the three S-duality fields");
  add(R, "mirror.sk.k8h", k8h, 1e-12 * ctx.tol_scale, false, "N z zbar = 8h");
  add(R, "mirror.sk.ninverse", ninv, 1e-11 * ctx.tol_scale);
  add(R, "mirror.sk.cask", cask, 1e-12 * ctx.tol_scale, false, "F_i = -tau_ij z^j");
  return R;
}

// ---------------------------------------------------------------------------
// sduality: finite group actions on the base (pullback isometry checks) and
// the modular structure of the fiber lift.

inline SuiteReport run_sduality(const VerifyContext& ctx) {
  using vdetail::add;
  SuiteReport R;
  R.suite = "sduality";
  R.cubic = ctx.cubic_name;
  R.seed = ctx.seed;
  R.c = 0.0;
  int n = ctx.f.n();
  int count = ctx.samples > 0 ? ctx.samples : 25;
  R.samples = count;
  auto pts = vdetail::draw_points(ctx, count, 0.0, R.sampler, 41);
  int nelem = 20;

  Rng grng(ctx.seed, 42);
  std::vector<SL2> sl2s;
  for (int i = 0; i < nelem; ++i) sl2s.push_back(vdetail::draw_sl2(grng));
  Rng lrng(ctx.seed, 43);
  std::vector<L2Element> l2s;
  for (int i = 0; i < nelem; ++i) l2s.push_back(vdetail::draw_l2(lrng, n, false));
  Rng prng(ctx.seed, 44);

  double sl2_pb = 0.0;
  int sl2_evals = 0;
  for (const auto& g : sl2s)
    for (const auto& p : pts) {
      cplx<double> tau = tau_of_point(ctx.f, p);
      cplx<double> den = cplx<double>(g.c) * tau + cplx<double>(g.d);
      if (std::sqrt(abs2(den)) < 0.05) continue;
      VecFn F = [&](const Vec& x) {
        return sl2_act_iia(ctx.f, g, IIAPoint::unpack(n, x)).pack();
      };
      Mat gx = metric_fs(ctx.f, p, 0.0).g;
      double resid = pullback_metric_check(ctx.f, F, p, 0.0) / (1.0 + max_abs(gx));
      sl2_pb = std::max(sl2_pb, resid);
      ++sl2_evals;
    }
  add(R, "sduality.sl2.pullback", sl2_pb, 1e-7 * ctx.tol_scale, false,
      std::to_string(sl2_evals) + " element-point pairs, FD Jacobian");

  double l2_pb = 0.0, lam_pb = 0.0, v_pb = 0.0, grp = 0.0;
  for (int i = 0; i < nelem; ++i) {
    const auto& g = l2s[i];
    double lambda = prng.uniform(0.5, 2.0);
    Vec vv(n);
    for (int a = 0; a < n; ++a) vv[a] = prng.uniform(-1.0, 1.0);
    for (const auto& p : pts) {
      VecFn Fl = [&](const Vec& x) { return l2_act(g, IIAPoint::unpack(n, x)).pack(); };
      VecFn Fm = [&](const Vec& x) {
        return phi_h_lambda(lambda, IIAPoint::unpack(n, x)).pack();
      };
      VecFn Fv = [&](const Vec& x) {
        return phi_h_v(ctx.f, vv, IIAPoint::unpack(n, x)).pack();
      };
      Mat gx = metric_fs(ctx.f, p, 0.0).g;
      double scale = 1.0 + max_abs(gx);
      l2_pb = std::max(l2_pb, pullback_metric_check(ctx.f, Fl, p, 0.0) / scale);
      lam_pb = std::max(lam_pb, pullback_metric_check(ctx.f, Fm, p, 0.0) / scale);
      v_pb = std::max(v_pb, pullback_metric_check(ctx.f, Fv, p, 0.0) / scale);
    }
    // group law of the solvable factor
    const auto& g2 = l2s[(i + 1) % nelem];
    const auto& p = pts[i % pts.size()];
    Vec lhs = l2_act(g, l2_act(g2, p)).pack();
    Vec rhs = l2_act(l2_compose(g, g2), p).pack();
    for (std::size_t k = 0; k < lhs.size(); ++k)
      grp = std::max(grp, std::fabs(lhs[k] - rhs[k]));
  }
  add(R, "sduality.l2.pullback", l2_pb, 1e-7 * ctx.tol_scale);
  add(R, "sduality.lambda.pullback", lam_pb, 1e-7 * ctx.tol_scale);
  add(R, "sduality.v.pullback", v_pb, 1e-7 * ctx.tol_scale);
  add(R, "sduality.l2.group_law", grp, 1e-12 * ctx.tol_scale);

  {
    Mat A(n, n);
    for (int i = 0; i < n; ++i) A(i, i) = (i == n - 1) ? -1.0 : 1.0;
    Vec At(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) At[i] += A(i, j) * ctx.base_t[j];
    if (std::fabs(ctx.f.h(At) - ctx.f.h(ctx.base_t)) < 1e-12) {
      double auth = 0.0;
      Mat J = auth_jacobian(ctx.f, A);
      for (const auto& p : pts) {
        VecFn F = [&](const Vec& x) {
          return auth_act(ctx.f, A, IIAPoint::unpack(n, x)).pack();
        };
        Mat gx = metric_fs(ctx.f, p, 0.0).g;
        auth = std::max(auth,
                        pullback_metric_check(ctx.f, F, p, 0.0, &J) / (1.0 + max_abs(gx)));
      }
      add(R, "sduality.auth.pullback", auth, 1e-9 * ctx.tol_scale, false,
          "sign flip automorphism, exact Jacobian");
    }
  }

  // fiber lift structure
  Rng frng(ctx.seed, 45);
  double cay = 0.0, anti = 0.0, comp = 0.0, parab = 0.0;
  int fiber_evals = 0;
  for (int i = 0; i < nelem; ++i) {
    const auto& g = sl2s[i];
    const auto& g2 = sl2s[(i + 1) % nelem];
    for (int j = 0; j < nelem; ++j) {
      cplx<double> tau(frng.uniform(-1.5, 1.5), frng.uniform(0.5, 2.0));
      cplx<double> t = vdetail::draw_fiber(frng);
      cplx<double> i1(0.0, 1.0);
      if (std::sqrt(abs2(t - i1)) < 0.3 || std::sqrt(abs2(t + i1)) < 0.3) continue;
      if (fiber_lift_denominator(g, tau, t) < 0.05) continue;
      cplx<double> anti_t = -(cplx<double>(1.0) / conj(t));
      if (fiber_lift_denominator(g, tau, anti_t) < 0.05) continue;
      if (fiber_lift_denominator(g2, tau, t) < 0.05) continue;
      if (fiber_lift_denominator(g * g2, tau, t) < 0.05) continue;
      cplx<double> t2 = sduality_fiber_lift(g2, tau, t);
      if (fiber_lift_denominator(g, mobius(g2, tau), t2) < 0.05) continue;
      cay = std::max(cay, cayley_intertwine_residual(g, tau, t));
      anti = std::max(anti, antipodal_residual(g, tau, t));
      comp = std::max(comp, fiber_composition_residual(g, g2, tau, t));
      double u = frng.uniform(0.7, 1.4), x = frng.uniform(-1.0, 1.0);
      SL2 up(u, x, 0.0, 1.0 / u);
      parab = std::max(parab, std::sqrt(abs2(sduality_fiber_lift(up, tau, t) - t)));
      ++fiber_evals;
    }
  }
  add(R, "sduality.fiber.cayley", cay, 1e-10 * ctx.tol_scale, false,
      std::to_string(fiber_evals) + " samples");
  add(R, "sduality.fiber.antipodal", anti, 1e-12 * ctx.tol_scale);
  add(R, "sduality.fiber.composition", comp, 1e-10 * ctx.tol_scale);
  add(R, "sduality.fiber.triangular_fixes", parab, 1e-14 * ctx.tol_scale);
  return R;
}

// ---------------------------------------------------------------------------
// twistor: contact identity and the lifted group actions on Darboux data.

inline SuiteReport run_twistor(const VerifyContext& ctx) {
  using vdetail::add;
  SuiteReport R;
  R.suite = "twistor";
  R.cubic = ctx.cubic_name;
  R.seed = ctx.seed;
  R.c = ctx.c;
  int n = ctx.f.n();
  int count = ctx.samples > 0 ? ctx.samples : 100;
  R.samples = count;
  double cloop = ctx.c != 0.0 ? ctx.c : 0.3;

  for (double cval : {0.0, cloop}) {
    auto pts = vdetail::draw_points(ctx, std::max(count / 4, 5), cval, R.sampler, 51);
    Rng frng(ctx.seed, 52);
    double worst = 0.0;
    int triples = 0;
    for (const auto& p : pts)
      for (int j = 0; j < 4 && triples < count; ++j) {
        cplx<double> t = vdetail::draw_fiber(frng);
        worst = std::max(worst, contact_identity_residual(ctx.f, p, t, cval));
        ++triples;
      }
    char name[64];
    std::snprintf(name, sizeof name, "twistor.contact.c%g", cval);
    add(R, name, worst, 1e-9 * ctx.tol_scale,
        false, std::to_string(triples) + " point-fiber pairs");
  }

  int squares = 20;
  auto pts0 = vdetail::draw_points(ctx, squares, 0.0, R.sampler, 53);
  Rng srng(ctx.seed, 54);

  double sq_sl2 = 0.0;
  int sl2_done = 0;
  for (int i = 0; i < squares; ++i) {
    const auto& p = pts0[i];
    for (int tries = 0; tries < 50; ++tries) {
      SL2 g = vdetail::draw_sl2(srng);
      cplx<double> t = vdetail::draw_fiber(srng);
      cplx<double> tau = tau_of_point(ctx.f, p);
      if (std::sqrt(abs2(cplx<double>(g.c) * tau + cplx<double>(g.d))) < 0.1) continue;
      if (fiber_lift_denominator(g, tau, t) < 0.1) continue;
      if (sduality_divisor(ctx.f, g, p, t) < 0.1) continue;
      sq_sl2 = std::max(sq_sl2, sduality_square_residual(ctx.f, g, p, t));
      ++sl2_done;
      break;
    }
  }
  add(R, "twistor.square.sl2", sq_sl2, 1e-8 * ctx.tol_scale, false,
      std::to_string(sl2_done) + " guarded squares, tree level");

  auto ptsc = vdetail::draw_points(ctx, squares, cloop, R.sampler, 55);
  Rng lrng(ctx.seed, 56);
  double sq_l2_tree = 0.0, sq_l2_loop = 0.0, sq_lam = 0.0, sq_v = 0.0;
  for (int i = 0; i < squares; ++i) {
    cplx<double> t = vdetail::draw_fiber(lrng);
    L2Element gfull = vdetail::draw_l2(lrng, n, false);
    L2Element gheis = vdetail::draw_l2(lrng, n, true);
    double lambda = lrng.uniform(0.5, 2.0);
    Vec vv(n);
    for (int a = 0; a < n; ++a) vv[a] = lrng.uniform(-1.0, 1.0);

    sq_l2_tree = std::max(sq_l2_tree, l2_square_residual(ctx.f, gfull, pts0[i], t, 0.0));
    sq_l2_loop = std::max(sq_l2_loop, l2_square_residual(ctx.f, gheis, ptsc[i], t, cloop));
    sq_lam = std::max(sq_lam, lambda_square_residual(ctx.f, lambda, pts0[i], t, 0.0));
    sq_lam = std::max(sq_lam, lambda_square_residual(ctx.f, lambda, ptsc[i], t, cloop));
    sq_v = std::max(sq_v, v_square_residual(ctx.f, vv, pts0[i], t, 0.0));
    sq_v = std::max(sq_v, v_square_residual(ctx.f, vv, ptsc[i], t, cloop));
  }
  add(R, "twistor.square.l2", sq_l2_tree, 1e-9 * ctx.tol_scale, false, "tree, full group");
  add(R, "twistor.square.l2_heisenberg", sq_l2_loop, 1e-9 * ctx.tol_scale, false,
      "one loop, unit dilation");
  add(R, "twistor.square.lambda", sq_lam, 1e-9 * ctx.tol_scale);
  add(R, "twistor.square.v", sq_v, 1e-9 * ctx.tol_scale);

  // contact form scaling under the lifted actions
  Rng crng(ctx.seed, 57);
  double sc_sl2 = 0.0, sc_l2 = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto& p = pts0[i % pts0.size()];
    cplx<double> t = vdetail::draw_fiber(crng);
    auto dc = darboux_coords<double>(ctx.f, p.pack(), t, 0.0, DarbouxConvention::Physics);
    for (int tries = 0; tries < 50; ++tries) {
      SL2 g = vdetail::draw_sl2(crng);
      cplx<double> den = cplx<double>(g.c) * dc.xi[0] + cplx<double>(g.d);
      if (std::sqrt(abs2(den)) < 0.1) continue;
      cplx<double> scale = cplx<double>(1.0) / den;
      auto map = [&](const DarbouxCoords<Dual>& in) { return twistor_sduality(ctx.f, g, in); };
      sc_sl2 = std::max(sc_sl2, contact_scaling_residual(map, dc, scale) /
                                    (1.0 + std::sqrt(abs2(scale))));
      break;
    }
    L2Element g2 = vdetail::draw_l2(crng, n, false);
    auto map2 = [&](const DarbouxCoords<Dual>& in) { return twistor_l2(g2, in); };
    sc_l2 = std::max(sc_l2, contact_scaling_residual(map2, dc, cplx<double>(g2.r)) /
                                (1.0 + g2.r));
  }
  add(R, "twistor.scaling.sl2", sc_sl2, 1e-9 * ctx.tol_scale, false,
      "contact form picks up 1/(c xi0 + d)");
  add(R, "twistor.scaling.l2", sc_l2, 1e-9 * ctx.tol_scale, false,
      "contact form picks up r");
  return R;
}

// ---------------------------------------------------------------------------
// density: fiber volume law, positivity, and decay rates along the curves.

inline SuiteReport run_density(const VerifyContext& ctx) {
  using vdetail::add;
  SuiteReport R;
  R.suite = "density";
  R.cubic = ctx.cubic_name;
  R.seed = ctx.seed;
  R.c = 0.0;
  int n = ctx.f.n();
  int count = ctx.samples > 0 ? ctx.samples : 50;
  R.samples = count;
  auto pts = vdetail::draw_points(ctx, count, 0.0, R.sampler, 61);

  double rmin = 1e300, rmax = -1e300, rsum = 0.0;
  double min_eig = 1e300, ortho = 0.0, dgam = 0.0, cone = 0.0;
  for (const auto& p : pts) {
    auto ds = density_at(ctx.f, p);
    rmin = std::min(rmin, ds.ratio);
    rmax = std::max(rmax, ds.ratio);
    rsum += ds.ratio;
    min_eig = std::min(min_eig, ds.min_gram_eig);
    ortho = std::max(ortho, ds.orthogonality);
    dgam = std::max(dgam, det_gamma_identity_residual(ctx.f, ds.p));
    cone = std::max(cone, cone_radial_residual(ctx.f, p.t));
  }
  double mean = rsum / count;
  add(R, "density.ratio.spread", (rmax - rmin) / std::fabs(mean), 1e-8 * ctx.tol_scale,
      false, "delta rho^{n+3} r^{n+1} / Delta_h constant across chart");
  add(R, "density.gram.positive", min_eig, 1e-30, true,
      "smallest fiber Gram eigenvalue over all accepted samples");
  add(R, "density.orthogonality", ortho, 1e-10 * ctx.tol_scale);
  add(R, "density.detgamma", dgam, 1e-12 * ctx.tol_scale, false,
      "det gamma = (1/2)(-1)^{n-1} det Hess h");
  add(R, "density.cone_radial", cone, 1e-12 * ctx.tol_scale, false,
      "-Hess log h on the Euler field equals 3");
  {
    IIAPoint p0 = pts.front(), p1 = pts.front();
    p1.sigma += 1.0;
    double d0 = density_at(ctx.f, p0).delta_numeric;
    double d1 = density_at(ctx.f, p1).delta_numeric;
    add(R, "density.sigma_independence", std::fabs(d0 - d1) / d0, 1e-13 * ctx.tol_scale);
  }
  add(R, "density.sampler.accepted", static_cast<double>(R.sampler.accepted),
      static_cast<double>(count), true,
      "rejections: " + std::to_string(R.sampler.rejected));

  if (ctx.has_curve) {
    double closed = 0.0;
    double lo = 0.0, hi = 0.0;
    switch (ctx.curve) {
      case CurveId::Homogeneous: lo = 0.2; hi = 5.0; break;
      case CurveId::InhomogeneousComplete: lo = 1.0; hi = 20.0; break;
      case CurveId::IncompleteMaximal: lo = 0.05; hi = 0.6; break;
    }
    for (int j = 0; j < 20; ++j) {
      double x1 = lo * std::pow(hi / lo, j / 19.0);
      if (!curve_in_domain(ctx.curve, x1)) continue;
      double dn = delta_h(ctx.f, curve_point(ctx.curve, x1));
      double dc = delta_h_closed(ctx.curve, x1);
      closed = std::max(closed, std::fabs(dn - dc) / (1.0 + dc));
    }
    add(R, "density.delta_closed", closed, 1e-12 * ctx.tol_scale, false,
        "curve Hessian density vs closed form");

    double wlo = 0.0, whi = 0.0;
    int m = 25;
    switch (ctx.curve) {
      case CurveId::Homogeneous: wlo = std::exp(-2.0); whi = std::exp(2.0); break;
      // the complete window ends at x1 = 80: past ~100 the fiber Gram
      // determinant loses all accuracy to cancellation in double precision
      case CurveId::InhomogeneousComplete: wlo = 10.0; whi = 80.0; break;
      case CurveId::IncompleteMaximal: wlo = 1e-6; whi = 1e-4; break;
    }
    auto fit = density_rate_fit(ctx.f, ctx.curve, wlo, whi, m);
    for (int j = 0; j < m; ++j) {
      DensityRow row;
      row.x1 = fit.x1[j];
      row.s = fit.s[j];
      row.delta_numeric = std::exp(fit.logdelta[j]);
      row.delta_closed = delta_h_closed(ctx.curve, fit.x1[j]);
      row.ratio = row.delta_numeric / row.delta_closed;
      R.density_rows.push_back(row);
    }
    char note[128];
    double invsqrt6 = 1.0 / std::sqrt(6.0);
    if (ctx.curve == CurveId::Homogeneous) {
      std::snprintf(note, sizeof note, "slope %.10f, target 6^{-1/2}", fit.slope);
      add(R, "density.rate.homogeneous", std::fabs(fit.slope - invsqrt6),
          1e-6 * ctx.tol_scale, false, note);
    } else if (ctx.curve == CurveId::InhomogeneousComplete) {
      std::snprintf(note, sizeof note, "slope %.10f at the complete end", fit.slope);
      add(R, "density.rate.complete", std::fabs(fit.slope - invsqrt6),
          1e-3 * ctx.tol_scale, false, note);
    } else {
      double target = -std::sqrt(2.0 / 3.0);
      std::snprintf(note, sizeof note,
                    "measured slope %.10f; stated rate -sqrt(2/3) conflicts with the "
                    "growth theorem, measured rate is +6^{-1/2}",
                    fit.slope);
      add(R, "density.rate.incomplete", std::fabs(fit.slope - target), 1e-3 * ctx.tol_scale,
          false, note);
      add(R, "density.rate.incomplete.measured", std::fabs(fit.slope - invsqrt6),
          1e-3 * ctx.tol_scale, false, "against the rate implied by the growth theorem");
    }
  }
  return R;
}

// ---------------------------------------------------------------------------

inline std::vector<std::string> suite_names() {
  return {"killing", "brackets", "liealg", "mirror", "sduality", "twistor", "density"};
}

inline SuiteReport run_suite(const std::string& suite, const VerifyContext& ctx) {
  if (suite == "killing") return run_killing(ctx);
  if (suite == "brackets") return run_brackets(ctx);
  if (suite == "liealg") return run_liealg(ctx);
  if (suite == "mirror") return run_mirror(ctx);
  if (suite == "sduality") return run_sduality(ctx);
  if (suite == "twistor") return run_twistor(ctx);
  if (suite == "density") return run_density(ctx);
  throw std::invalid_argument("unknown suite: " + suite);
}

inline std::vector<SuiteReport> run_suites(const std::string& suite, const VerifyContext& ctx) {
  std::vector<SuiteReport> out;
  if (suite == "all") {
    for (const auto& s : suite_names()) out.push_back(run_suite(s, ctx));
  } else {
    out.push_back(run_suite(suite, ctx));
  }
  return out;
}

// ---------------------------------------------------------------------------
// serialization (no timing anywhere: fixed seed means fixed bytes)

namespace vdetail {
inline std::string fnum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace vdetail

inline std::string to_text(const std::vector<SuiteReport>& reports) {
  std::string out;
  bool all = true;
  for (const auto& r : reports) {
    out += "suite " + r.suite + "  cubic " + r.cubic + "  seed " + std::to_string(r.seed) +
           "  c " + vdetail::fnum(r.c) + "  samples " + std::to_string(r.samples) + "\n";
    for (const auto& ch : r.checks) {
      out += std::string("  ") + (ch.pass ? "PASS " : "FAIL ") + ch.name;
      if (ch.name.size() < 40) out += std::string(40 - ch.name.size(), ' ');
      out += "  " + vdetail::fnum(ch.value) + (ch.ge ? " >= " : " <= ") +
             vdetail::fnum(ch.bound);
      if (!ch.note.empty()) out += "   (" + ch.note + ")";
      out += "\n";
      all = all && ch.pass;
    }
    if (r.sampler.accepted + r.sampler.rejected > 0)
      out += "  sampler: " + std::to_string(r.sampler.accepted) + " accepted, " +
             std::to_string(r.sampler.rejected) + " rejected\n";
  }
  out += std::string("overall: ") + (all ? "PASS" : "FAIL") + "\n";
  return out;
}

inline std::string to_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json root;
  root["schema"] = "qkverify/1";
  root["reports"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["suite"] = r.suite;
    jr["cubic"] = r.cubic;
    jr["seed"] = r.seed;
    jr["c"] = r.c;
    jr["samples"] = r.samples;
    jr["checks"] = nlohmann::ordered_json::array();
    for (const auto& ch : r.checks) {
      nlohmann::ordered_json jc;
      jc["name"] = ch.name;
      jc["value"] = ch.value;
      jc["bound"] = ch.bound;
      jc["kind"] = ch.ge ? "ge" : "le";
      jc["pass"] = ch.pass;
      if (!ch.note.empty()) jc["note"] = ch.note;
      jr["checks"].push_back(jc);
      all = all && ch.pass;
    }
    jr["sampler"] = {{"accepted", r.sampler.accepted}, {"rejected", r.sampler.rejected}};
    if (!r.density_rows.empty()) {
      jr["density_table"] = nlohmann::ordered_json::array();
      for (const auto& row : r.density_rows)
        jr["density_table"].push_back({{"x1", row.x1},
                                       {"s", row.s},
                                       {"delta_numeric", row.delta_numeric},
                                       {"delta_closed", row.delta_closed},
                                       {"ratio", row.ratio}});
    }
    jr["pass"] = r.pass();
    root["reports"].push_back(jr);
  }
  root["pass"] = all;
  return root.dump(2) + "\n";
}

inline std::string to_csv(const std::vector<SuiteReport>& reports) {
  std::string out = "suite,check,value,bound,kind,pass\n";
  char buf[160];
  for (const auto& r : reports)
    for (const auto& ch : r.checks) {
      std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%s,%d\n", r.suite.c_str(),
                    ch.name.c_str(), ch.value, ch.bound, ch.ge ? "ge" : "le",
                    ch.pass ? 1 : 0);
      out += buf;
    }
  bool have_rows = false;
  for (const auto& r : reports) have_rows = have_rows || !r.density_rows.empty();
  if (have_rows) {
    out += "\nx1,s,delta_numeric,delta_closed,ratio\n";
    for (const auto& r : reports)
      for (const auto& row : r.density_rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", row.x1, row.s,
                      row.delta_numeric, row.delta_closed, row.ratio);
        out += buf;
      }
  }
  return out;
}

}  // namespace qmap
