#pragma once

// Exact rational arithmetic on 64-bit numerator/denominator with __int128
// intermediates. Enough for structure constants built from small dyadic
// cubic coefficients; overflow throws instead of wrapping.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qmap {

struct Rat {
  long long n = 0, d = 1;

  Rat() = default;
  Rat(long long num) : n(num), d(1) {}
  Rat(long long num, long long den) : n(num), d(den) { normalize(); }

  void normalize() {
    if (d == 0) throw std::runtime_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
  }
  bool is_zero() const { return n == 0; }
  double to_double() const { return static_cast<double>(n) / static_cast<double>(d); }
};

namespace detail {
inline long long narrow(__int128 v, const char* what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error(std::string("Rat overflow in ") + what);
  return static_cast<long long>(v);
}
inline Rat make(__int128 n, __int128 d, const char* what) {
  if (d < 0) { n = -n; d = -d; }
  __int128 a = n < 0 ? -n : n, b = d;
  while (b) { __int128 t = a % b; a = b; b = t; }
  if (a > 1) { n /= a; d /= a; }
  Rat r;
  r.n = narrow(n, what);
  r.d = narrow(d, what);
  if (r.d == 0) throw std::runtime_error("Rat: zero denominator");
  return r;
}
}  // namespace detail

inline Rat operator+(const Rat& a, const Rat& b) {
  return detail::make((__int128)a.n * b.d + (__int128)b.n * a.d, (__int128)a.d * b.d, "+");
}
inline Rat operator-(const Rat& a, const Rat& b) {
  return detail::make((__int128)a.n * b.d - (__int128)b.n * a.d, (__int128)a.d * b.d, "-");
}
inline Rat operator-(const Rat& a) { return Rat(-a.n, a.d); }
inline Rat operator*(const Rat& a, const Rat& b) {
  return detail::make((__int128)a.n * b.n, (__int128)a.d * b.d, "*");
}
inline Rat operator/(const Rat& a, const Rat& b) {
  if (b.n == 0) throw std::runtime_error("Rat: divide by zero");
  return detail::make((__int128)a.n * b.d, (__int128)a.d * b.n, "/");
}
inline bool operator==(const Rat& a, const Rat& b) { return a.n == b.n && a.d == b.d; }
inline bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

// Exact conversion: every finite double is a dyadic rational. Throws if the
// exact value does not fit in 64/64 bits (never the case for the presets).
inline Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::runtime_error("rat_from_double: not finite");
  if (x == 0.0) return Rat(0);
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  // scale mantissa to an integer (53 bits)
  long long num = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  while (num % 2 == 0 && e < 0) { num /= 2; ++e; }
  if (e >= 0) {
    if (e > 62) throw std::overflow_error("rat_from_double: exponent too large");
    return detail::make((__int128)num << e, 1, "from_double");
  }
  if (-e > 62) throw std::overflow_error("rat_from_double: exponent too small");
  return detail::make(num, (__int128)1 << (-e), "from_double");
}

}  // namespace qmap
