#pragma once

// Forward-mode dual numbers with a dense vector of partial derivatives, plus a
// minimal complex-over-anything template (std::complex is UB for non-float types).
// Everything downstream is templated on the scalar, so the same geometry code
// runs on plain doubles and on duals carrying d/dx for every chart coordinate.

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace qmap {

struct Dual {
  double v = 0.0;
  std::vector<double> d;  // empty means "constant" (all partials zero)

  Dual() = default;
  Dual(double value) : v(value) {}
  Dual(double value, std::size_t nvars, std::size_t seed) : v(value), d(nvars, 0.0) {
    assert(seed < nvars);
    d[seed] = 1.0;
  }

  std::size_t nvars() const { return d.size(); }
  double deriv(std::size_t k) const { return k < d.size() ? d[k] : 0.0; }
};

// Seed a full coordinate vector: x[i] becomes the i-th active variable.
inline std::vector<Dual> seed_duals(const std::vector<double>& x) {
  std::vector<Dual> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = Dual(x[i], x.size(), i);
  return out;
}

namespace detail {
// Combine derivative vectors of a binary op: da*fa + db*fb.
inline std::vector<double> lincomb(const std::vector<double>& da, double fa,
                                   const std::vector<double>& db, double fb) {
  if (da.empty() && db.empty()) return {};
  std::size_t n = da.empty() ? db.size() : da.size();
  assert(da.empty() || db.empty() || da.size() == db.size());
  std::vector<double> r(n, 0.0);
  if (!da.empty())
    for (std::size_t i = 0; i < n; ++i) r[i] = fa * da[i];
  if (!db.empty())
    for (std::size_t i = 0; i < n; ++i) r[i] += fb * db[i];
  return r;
}
}  // namespace detail

inline Dual operator+(const Dual& a, const Dual& b) {
  Dual r(a.v + b.v);
  r.d = detail::lincomb(a.d, 1.0, b.d, 1.0);
  return r;
}
inline Dual operator-(const Dual& a, const Dual& b) {
  Dual r(a.v - b.v);
  r.d = detail::lincomb(a.d, 1.0, b.d, -1.0);
  return r;
}
inline Dual operator-(const Dual& a) {
  Dual r(-a.v);
  r.d = detail::lincomb(a.d, -1.0, {}, 0.0);
  return r;
}
inline Dual operator*(const Dual& a, const Dual& b) {
  Dual r(a.v * b.v);
  r.d = detail::lincomb(a.d, b.v, b.d, a.v);
  return r;
}
inline Dual operator/(const Dual& a, const Dual& b) {
  assert(b.v != 0.0);
  Dual r(a.v / b.v);
  r.d = detail::lincomb(a.d, 1.0 / b.v, b.d, -a.v / (b.v * b.v));
  return r;
}

inline Dual& operator+=(Dual& a, const Dual& b) { a = a + b; return a; }
inline Dual& operator-=(Dual& a, const Dual& b) { a = a - b; return a; }
inline Dual& operator*=(Dual& a, const Dual& b) { a = a * b; return a; }
inline Dual& operator/=(Dual& a, const Dual& b) { a = a / b; return a; }

inline bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
inline bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
inline bool operator==(const Dual& a, const Dual& b) { return a.v == b.v; }

inline Dual sqrt(const Dual& a) {
  assert(a.v > 0.0);
  double s = std::sqrt(a.v);
  Dual r(s);
  r.d = detail::lincomb(a.d, 0.5 / s, {}, 0.0);
  return r;
}
inline Dual log(const Dual& a) {
  assert(a.v > 0.0);
  Dual r(std::log(a.v));
  r.d = detail::lincomb(a.d, 1.0 / a.v, {}, 0.0);
  return r;
}
inline Dual exp(const Dual& a) {
  double e = std::exp(a.v);
  Dual r(e);
  r.d = detail::lincomb(a.d, e, {}, 0.0);
  return r;
}
inline Dual fabs(const Dual& a) {
  double s = a.v < 0.0 ? -1.0 : 1.0;
  Dual r(std::fabs(a.v));
  r.d = detail::lincomb(a.d, s, {}, 0.0);
  return r;
}
inline Dual atan2(const Dual& y, const Dual& x) {
  double q = x.v * x.v + y.v * y.v;
  assert(q > 0.0);
  Dual r(std::atan2(y.v, x.v));
  r.d = detail::lincomb(y.d, x.v / q, x.d, -y.v / q);
  return r;
}
inline Dual pow_int(Dual a, int k) {
  assert(k >= 0);
  Dual r(1.0);
  while (k-- > 0) r = r * a;
  return r;
}

// value() / pivot weight helpers so templated code can inspect magnitudes.
inline double value(double x) { return x; }
inline double value(const Dual& x) { return x.v; }

// ---------------------------------------------------------------------------
// complex over an arbitrary real scalar (double or Dual)

template <class T>
struct cplx {
  T re{}, im{};
  cplx() = default;
  cplx(const T& r) : re(r) {}
  cplx(const T& r, const T& i) : re(r), im(i) {}
};

template <class T> cplx<T> operator+(const cplx<T>& a, const cplx<T>& b) { return {a.re + b.re, a.im + b.im}; }
template <class T> cplx<T> operator-(const cplx<T>& a, const cplx<T>& b) { return {a.re - b.re, a.im - b.im}; }
template <class T> cplx<T> operator-(const cplx<T>& a) { return {-a.re, -a.im}; }
template <class T> cplx<T> operator*(const cplx<T>& a, const cplx<T>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T> cplx<T> operator/(const cplx<T>& a, const cplx<T>& b) {
  T q = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / q, (a.im * b.re - a.re * b.im) / q};
}
template <class T> cplx<T> operator*(const T& s, const cplx<T>& a) { return {s * a.re, s * a.im}; }
template <class T> cplx<T> operator*(const cplx<T>& a, const T& s) { return {a.re * s, a.im * s}; }
template <class T> cplx<T> operator/(const cplx<T>& a, const T& s) { return {a.re / s, a.im / s}; }
template <class T> cplx<T> operator+(const cplx<T>& a, const T& s) { return {a.re + s, a.im}; }
template <class T> cplx<T> operator+(const T& s, const cplx<T>& a) { return {s + a.re, a.im}; }
template <class T> cplx<T> operator-(const cplx<T>& a, const T& s) { return {a.re - s, a.im}; }
template <class T> cplx<T> conj(const cplx<T>& a) { return {a.re, -a.im}; }
template <class T> T abs2(const cplx<T>& a) { return a.re * a.re + a.im * a.im; }

template <class T> cplx<T>& operator+=(cplx<T>& a, const cplx<T>& b) { a = a + b; return a; }
template <class T> cplx<T>& operator-=(cplx<T>& a, const cplx<T>& b) { a = a - b; return a; }
template <class T> cplx<T>& operator*=(cplx<T>& a, const cplx<T>& b) { a = a * b; return a; }

// principal-branch log, cut along the negative real axis
template <class T> cplx<T> log(const cplx<T>& a) {
  using qmap::log;  // also finds ::log via ADL fallback below
  using std::log;
  using qmap::atan2;
  using std::atan2;
  return {log(abs2(a)) * T(0.5), atan2(a.im, a.re)};
}

template <class T> cplx<T> iu(const cplx<T>&) { return {T(0.0), T(1.0)}; }

inline std::complex<double> to_std(const cplx<double>& z) { return {z.re, z.im}; }
inline cplx<double> from_std(const std::complex<double>& z) { return {z.real(), z.imag()}; }
inline cplx<double> value(const cplx<Dual>& z) { return {z.re.v, z.im.v}; }
inline cplx<double> value(const cplx<double>& z) { return z; }

}  // namespace qmap
