#pragma once

// Rejection sampling of chart points. Boxes: t componentwise within +-50%
// of a base point, b / zeta / zetatilde in [-2,2], rho in [0.3,3], sigma in
// [-2,2]. A draw is accepted when the metric is positive definite there
// (and the chart denominators are safe); rejection counts are reported so
// a badly centered box is visible in the output.

#include <cstdint>
#include <stdexcept>

#include "cubic.hpp"
#include "qk_metric.hpp"
#include "rng.hpp"

namespace qmap {

struct SamplerConfig {
  Vec base_t;
  double c = 0.0;
  double t_spread = 0.5;
  double box = 2.0;
  double rho_lo = 0.3, rho_hi = 3.0;
  double sigma_box = 2.0;
  int max_attempts = 1000;
};

struct SamplerStats {
  long long accepted = 0, rejected = 0;
};

inline IIAPoint sample_point(const CubicForm& f, const SamplerConfig& cfg, Rng& rng,
                             SamplerStats& stats) {
  int n = f.n();
  if (static_cast<int>(cfg.base_t.size()) != n)
    throw std::invalid_argument("sample_point: base_t size mismatch");
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    IIAPoint p;
    p.t.resize(n);
    p.b.resize(n);
    p.zeta.resize(n + 1);
    p.zetatilde.resize(n + 1);
    for (int a = 0; a < n; ++a)
      p.t[a] = cfg.base_t[a] * rng.uniform(1.0 - cfg.t_spread, 1.0 + cfg.t_spread);
    for (int a = 0; a < n; ++a) p.b[a] = rng.uniform(-cfg.box, cfg.box);
    p.rho = rng.uniform(cfg.rho_lo, cfg.rho_hi);
    for (int i = 0; i <= n; ++i) {
      p.zeta[i] = rng.uniform(-cfg.box, cfg.box);
      p.zetatilde[i] = rng.uniform(-cfg.box, cfg.box);
    }
    p.sigma = rng.uniform(-cfg.sigma_box, cfg.sigma_box);
    if (f.h(p.t) > 1e-8 && metric_validity(f, p, cfg.c).ok) {
      ++stats.accepted;
      return p;
    }
    ++stats.rejected;
  }
  throw std::runtime_error("sample_point: no valid point found in the box");
}

}  // namespace qmap
