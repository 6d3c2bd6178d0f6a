#pragma once

// Cubic forms h(t) = (1/6) k_abc t^a t^b t^c, the projective special real (PSR)
// hypersurface H = {h = 1}, and the catalog of maximal PSR curves (n = 2).

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dual.hpp"
#include "linalg.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace qmap {

class CubicForm {
 public:
  CubicForm() = default;

  // entries: 1-based index triples with the tensor value for that combination;
  // the full symmetric tensor is filled from them. Duplicate (sorted) triples
  // are rejected.
  CubicForm(int n, const std::vector<std::array<double, 4>>& entries) : n_(n), k_(static_cast<std::size_t>(n) * n * n, 0.0) {
    if (n < 1) throw std::invalid_argument("CubicForm: n must be >= 1");
    std::map<std::array<int, 3>, double> seen;
    for (const auto& e : entries) {
      std::array<int, 3> idx = {static_cast<int>(e[0]), static_cast<int>(e[1]), static_cast<int>(e[2])};
      for (int i : idx)
        if (i < 1 || i > n) throw std::invalid_argument("CubicForm: index out of range");
      std::array<int, 3> s = idx;
      std::sort(s.begin(), s.end());
      if (s != idx) throw std::invalid_argument("CubicForm: index triple not sorted");
      if (seen.count(s)) throw std::invalid_argument("CubicForm: duplicate index triple");
      seen[s] = e[3];
    }
    for (const auto& [s, v] : seen) {
      int a = s[0] - 1, b = s[1] - 1, c = s[2] - 1;
      // all permutations share the value (symmetrize on read)
      std::array<std::array<int, 3>, 6> perms = {{{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
      for (const auto& p : perms) at(p[0], p[1], p[2]) = v;
    }
  }

  int n() const { return n_; }
  double k(int a, int b, int c) const { return k_[(static_cast<std::size_t>(a) * n_ + b) * n_ + c]; }

  template <class T>
  T h(const std::vector<T>& t) const {
    T s(0.0);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (k(a, b, c) != 0.0) s += T(k(a, b, c)) * t[a] * t[b] * t[c];
    return s / T(6.0);
  }

  // h_a = dh/dt^a = (1/2) k_abc t^b t^c
  template <class T>
  std::vector<T> grad(const std::vector<T>& t) const {
    std::vector<T> g(n_, T(0.0));
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (k(a, b, c) != 0.0) g[a] += T(k(a, b, c)) * t[b] * t[c];
    for (auto& v : g) v = v / T(2.0);
    return g;
  }

  // (hess)_ab = k_abc t^c
  template <class T>
  MatT<T> hess(const std::vector<T>& t) const {
    MatT<T> m(n_, n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        T s(0.0);
        for (int c = 0; c < n_; ++c)
          if (k(a, b, c) != 0.0) s += T(k(a, b, c)) * t[c];
        m(a, b) = s;
      }
    return m;
  }

  // complex versions over cplx<T> (holomorphic extension of h)
  template <class T>
  cplx<T> h_c(const std::vector<cplx<T>>& z) const {
    cplx<T> s;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (k(a, b, c) != 0.0) s += T(k(a, b, c)) * (z[a] * z[b] * z[c]);
    return s / T(6.0);
  }

 private:
  double& at(int a, int b, int c) { return k_[(static_cast<std::size_t>(a) * n_ + b) * n_ + c]; }
  int n_ = 0;
  std::vector<double> k_;
};

// sqrt(|det Hess h|) at a point
inline double delta_h(const CubicForm& f, const Vec& t) {
  return std::sqrt(std::fabs(det(f.hess(t))));
}

// A point on H = {h = 1}. Construction radially projects t -> t / h(t)^{1/3}.
struct PSRPoint {
  Vec p;

  PSRPoint(const CubicForm& f, const Vec& seed) {
    double hv = f.h(seed);
    if (!(hv > 0.0)) throw std::domain_error("PSRPoint: h(seed) must be positive");
    double s = std::pow(hv, -1.0 / 3.0);
    p = seed;
    for (auto& x : p) x *= s;
    if (std::fabs(f.h(p) - 1.0) > 1e-12) throw std::runtime_error("PSRPoint: projection failed");
  }
};

// g_H(u,w) = -Hess(h)(u,w) for u,w tangent to H at p (dh.u = 0).
inline double psr_metric(const CubicForm& f, const Vec& p, const Vec& u, const Vec& w) {
  Vec g = f.grad(p);
  double du = 0.0, dw = 0.0;
  for (int a = 0; a < f.n(); ++a) { du += g[a] * u[a]; dw += g[a] * w[a]; }
  if (std::fabs(du) > 1e-10 || std::fabs(dw) > 1e-10)
    throw std::domain_error("psr_metric: vector not tangent to {h=1}");
  Mat H = f.hess(p);
  double s = 0.0;
  for (int a = 0; a < f.n(); ++a)
    for (int b = 0; b < f.n(); ++b) s += u[a] * H(a, b) * w[b];
  return -s;
}

// ---------------------------------------------------------------------------
// the three maximal PSR curves (n = 2)

enum class CurveId { Homogeneous, InhomogeneousComplete, IncompleteMaximal };

inline CubicForm curve_form(CurveId c) {
  switch (c) {
    case CurveId::Homogeneous:           // h = x1^2 x2
      return CubicForm(2, {{{1, 1, 2, 2.0}}});
    case CurveId::InhomogeneousComplete: // h = x1^3 - x1 x2^2
      return CubicForm(2, {{1, 1, 1, 6.0}, {1, 2, 2, -2.0}});
    case CurveId::IncompleteMaximal:     // h = x1^3 + x1 x2^2
      return CubicForm(2, {{1, 1, 1, 6.0}, {1, 2, 2, 2.0}});
  }
  throw std::logic_error("curve_form: bad id");
}

// domain of the x1 parameter
inline bool curve_in_domain(CurveId c, double x1) {
  switch (c) {
    case CurveId::Homogeneous: return x1 > 0.0;
    case CurveId::InhomogeneousComplete: return x1 >= 1.0;
    case CurveId::IncompleteMaximal: return x1 > 0.0 && x1 < std::pow(4.0, -1.0 / 3.0);
  }
  return false;
}

inline Vec curve_point(CurveId c, double x1) {
  if (!curve_in_domain(c, x1)) throw std::domain_error("curve_point: x1 outside curve domain");
  switch (c) {
    case CurveId::Homogeneous: return {x1, 1.0 / (x1 * x1)};
    case CurveId::InhomogeneousComplete: return {x1, std::sqrt(x1 * x1 - 1.0 / x1)};
    case CurveId::IncompleteMaximal: return {x1, std::sqrt(1.0 / x1 - x1 * x1)};
  }
  throw std::logic_error("curve_point: bad id");
}

// induced metric coefficient: g_H = gH(x1) dx1^2 along the curve
inline double curve_gH(CurveId c, double x1) {
  if (c == CurveId::Homogeneous) return 6.0 / (x1 * x1);
  double x3 = x1 * x1 * x1;
  return 6.0 / (x1 * x1) * (1.0 - 1.0 / (4.0 * x3)) / (1.0 - 1.0 / x3);
}

inline double delta_h_closed(CurveId c, double x1) {
  switch (c) {
    case CurveId::Homogeneous: return 2.0 * x1;
    case CurveId::InhomogeneousComplete: return std::sqrt(16.0 * x1 * x1 - 4.0 / x1);
    case CurveId::IncompleteMaximal: return std::sqrt(4.0 / x1 - 16.0 * x1 * x1);
  }
  throw std::logic_error("delta_h_closed: bad id");
}

// Arc length from the curve's base point, oriented so that s -> +infinity
// along the complete end:
//   Homogeneous:            base x1=1, s increasing with x1 (s = sqrt6 log x1)
//   InhomogeneousComplete:  base x1=1, s increasing with x1
//   IncompleteMaximal:      base x1=0.4, s increasing as x1 -> 0
inline double arclength(CurveId c, double x1, double tol = 1e-10) {
  if (!curve_in_domain(c, x1)) throw std::domain_error("arclength: x1 outside curve domain");
  switch (c) {
    case CurveId::Homogeneous: {
      // integrand sqrt(6)/x: integrate in u = log x (constant integrand)
      return integrate([](double) { return std::sqrt(6.0); }, 0.0, std::log(x1), tol);
    }
    case CurveId::InhomogeneousComplete: {
      // sqrt(gH) has a 1/sqrt(x1-1) endpoint singularity; substitute x1 = 1+w^2
      if (x1 == 1.0) return 0.0;
      double wmax = std::sqrt(x1 - 1.0);
      return integrate(
          [](double w) {
            double x = 1.0 + w * w;
            double x3 = x * x * x;
            // gH * (dx/dw)^2 = gH * 4w^2, written to cancel the w=0 singularity
            double num = 6.0 / (x * x) * (1.0 - 1.0 / (4.0 * x3));
            // 1 - 1/x3 = (x-1)(x^2+x+1)/x3 = w^2 (x^2+x+1)/x3
            double den_over_w2 = (x * x + x + 1.0) / x3;
            return 2.0 * std::sqrt(num / den_over_w2);
          },
          0.0, wmax, tol);
    }
    case CurveId::IncompleteMaximal: {
      // integrate in u = log x1 from log 0.4; orientation: s grows as x1 -> 0
      double a = std::log(x1), b = std::log(0.4);
      return integrate(
          [](double u) {
            double x = std::exp(u);
            return std::sqrt(curve_gH(CurveId::IncompleteMaximal, x)) * x;
          },
          a, b, tol);
    }
  }
  throw std::logic_error("arclength: bad id");
}

// ---------------------------------------------------------------------------
// presets

struct Preset {
  CubicForm form;
  Vec base_t;  // a valid point of the PSR cone (h > 0, PSK metric positive)
  std::string name;
};

// Positive-definiteness of the projective special Kahler metric block
// -(1/4) Hess(log h)(t), the validity test for a cone point.
inline bool log_hess_negdef(const CubicForm& f, const Vec& t) {
  double hv = f.h(t);
  if (!(hv > 0.0)) return false;
  Mat H = f.hess(t);
  Vec g = f.grad(t);
  Mat m(f.n(), f.n());
  for (int a = 0; a < f.n(); ++a)
    for (int b = 0; b < f.n(); ++b)
      m(a, b) = -0.25 * (H(a, b) / hv - g[a] * g[b] / (hv * hv));
  Vec ev = sym_eigvals(m);
  double tr = 0.0;
  for (int a = 0; a < f.n(); ++a) tr += m(a, a);
  return ev.front() > 1e-10 * std::fabs(tr);
}

// seeded random integer cubic for n = 3, retried until a valid base point is
// found; falls back to x1 x2 x3 (always valid) if the search is unlucky.
inline CubicForm random_integer_cubic(std::uint64_t seed, Vec* base_out) {
  Rng rng(seed, 0xc3b1c);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::array<double, 4>> entries;
    for (int a = 1; a <= 3; ++a)
      for (int b = a; b <= 3; ++b)
        for (int c = b; c <= 3; ++c) {
          double v = static_cast<double>(rng.uniform_int(-3, 3));
          if (v != 0.0) entries.push_back({double(a), double(b), double(c), v});
        }
    if (entries.empty()) continue;
    CubicForm f(3, entries);
    for (int probe = 0; probe < 200; ++probe) {
      Vec t = {rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0)};
      if (log_hess_negdef(f, t)) {
        if (base_out) *base_out = t;
        return f;
      }
    }
  }
  CubicForm f(3, {{{1, 2, 3, 1.0}}});  // h = x1 x2 x3
  if (base_out) *base_out = {1.0, 1.0, 1.0};
  return f;
}

inline Preset make_preset(const std::string& name, std::uint64_t seed = 1) {
  if (name == "homog") return {curve_form(CurveId::Homogeneous), {1.0, 1.0}, name};
  if (name == "complete") return {curve_form(CurveId::InhomogeneousComplete), {1.2, std::sqrt(1.2 * 1.2 - 1.0 / 1.2)}, name};
  if (name == "incomplete") return {curve_form(CurveId::IncompleteMaximal), {0.4, std::sqrt(1.0 / 0.4 - 0.16)}, name};
  if (name == "n1") return {CubicForm(1, {{{1, 1, 1, 6.0}}}), {1.0}, name};
  if (name == "rand3") {
    Vec base;
    CubicForm f = random_integer_cubic(seed, &base);
    return {f, base, name};
  }
  throw std::invalid_argument("unknown cubic preset: " + name);
}

}  // namespace qmap
