#pragma once

// Central-difference Jacobians, used as an independent oracle against the
// dual-number derivatives and the closed-form differentials.

#include <cmath>
#include <functional>

#include "linalg.hpp"

namespace qmap {

using VecFn = std::function<Vec(const Vec&)>;

// J_ij = d f_i / d x_j, second-order central differences.
// step is scaled per coordinate as step*(1+|x_j|).
inline Mat fd_jacobian(const VecFn& f, const Vec& x, double step = 1e-6) {
  Vec fx = f(x);
  Mat J(static_cast<int>(fx.size()), static_cast<int>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    double h = step * (1.0 + std::fabs(x[j]));
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    Vec fp = f(xp), fm = f(xm);
    for (std::size_t i = 0; i < fx.size(); ++i)
      J(static_cast<int>(i), static_cast<int>(j)) = (fp[i] - fm[i]) / (2.0 * h);
  }
  return J;
}

}  // namespace qmap
