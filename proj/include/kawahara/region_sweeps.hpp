#pragma once

// Sampled checks of the frequency-region inequalities behind the bilinear
// estimates. Every sweep draws its points log-uniformly in |xi| up to 4/sqrt(eps)
// with a fixed seed, split into batches that can run in parallel and are merged
// by min/max, so results do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/parallel.hpp"
#include "kawahara/projectors.hpp"

namespace kawahara::dispersion {

struct SweepOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 20240101;
  unsigned threads = 1;
  std::size_t batch = 1u << 16;
};

/// Dyadic scale 2^round(log2 |x|) of a nonzero frequency.
inline double dyadic_scale(double x) { return std::exp2(std::round(std::log2(std::abs(x)))); }

/// Case "N1 < 2^-10 N2" (high x low interaction), |xi| outside J_eps.
struct HighLowSweep {
  std::size_t samples = 0;                        // accepted points
  double min_gamma = std::numeric_limits<double>::infinity();
  double min_sandwich = std::numeric_limits<double>::infinity();  // min (xi^2 - xi1 xi2) / xi^2
  double max_sandwich = 0.0;                                        // max of the same ratio
};

/// Case |xi| in [sqrt(17/(80 eps)), sqrt(2/(5 eps))], min(|xi1|, |xi2|) > sqrt(17/(80 eps)).
struct WindowSweep {
  std::size_t samples = 0;
  double min_gamma = std::numeric_limits<double>::infinity();
};

/// |Omega| / max(|xi xi1 xi2|, eps |xi^3 xi1 xi2|) on supp eta_A with |xi1| <= 2^-7 |xi|.
struct ModulationSweep {
  std::size_t samples = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
};

/// Range of Gamma over arbitrary pairs; for eps = 0 it is identically 3.
struct GammaRangeSweep {
  std::size_t samples = 0;
  double min_gamma = std::numeric_limits<double>::infinity();
  double max_gamma = 0.0;
};

/// eta_A(xi) - eta_A(xi - xi1) for |xi1| <= 4 on J_eps and outside [2^-3, 2^3]/sqrt(eps).
struct VanishingSweep {
  std::size_t samples = 0;
  double max_abs_difference = 0.0;
};

/// sup |eta_A(xi) - eta_A(xi - xi1)| / min(1, sqrt(eps) |xi1|).
struct LipschitzSweep {
  std::size_t samples = 0;
  double sup_ratio = 0.0;
  double bound = 0.0;  // max(1, 20 * max|psi'|)
};

namespace detail {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline double random_sign(std::mt19937_64& rng) {
  return (rng() & 1u) ? -1.0 : 1.0;
}

inline std::uint64_t batch_seed(std::uint64_t seed, std::size_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch), 0x6b617761u};
  std::vector<std::uint32_t> v(2);
  seq.generate(v.begin(), v.end());
  return (static_cast<std::uint64_t>(v[0]) << 32) | v[1];
}

// Runs `draw(rng, state)` until `opts.samples` points are accepted, in fixed batches.
template <class State, class Draw, class Merge>
State run_batches(const SweepOptions& opts, Draw&& draw, Merge&& merge) {
  const std::size_t batches = (opts.samples + opts.batch - 1) / opts.batch;
  std::vector<State> partial(batches);
  parallel_for(batches, opts.threads, [&](std::size_t b) {
    std::mt19937_64 rng(batch_seed(opts.seed, b));
    const std::size_t want = std::min(opts.batch, opts.samples - b * opts.batch);
    State st;
    while (st.samples < want) draw(rng, st);
    partial[b] = st;
  });
  State total;
  for (const auto& p : partial) merge(total, p);
  return total;
}

}  // namespace detail

inline HighLowSweep sweep_high_low(const DispersionParams& p, const SweepOptions& opts = {}) {
  const double top = 4.0 / std::sqrt(p.eps());
  const Interval J = j_eps(p);
  return detail::run_batches<HighLowSweep>(
      opts,
      [&](std::mt19937_64& rng, HighLowSweep& st) {
        const double xi2 = detail::random_sign(rng) * detail::log_uniform(rng, 1.0, top);
        const double xi1 = detail::random_sign(rng) * std::abs(xi2) * detail::log_uniform(rng, 0x1p-30, 0x1p-10);
        if (!(dyadic_scale(xi1) < 0x1p-10 * dyadic_scale(xi2))) return;
        const double xi = xi1 + xi2;
        if (J.contains(std::abs(xi))) return;
        ++st.samples;
        st.min_gamma = std::min(st.min_gamma, gamma(xi, xi1, p));
        const double ratio = (xi * xi - xi1 * xi2) / (xi * xi);
        st.min_sandwich = std::min(st.min_sandwich, ratio);
        st.max_sandwich = std::max(st.max_sandwich, ratio);
      },
      [](HighLowSweep& a, const HighLowSweep& b) {
        a.samples += b.samples;
        a.min_gamma = std::min(a.min_gamma, b.min_gamma);
        a.min_sandwich = std::min(a.min_sandwich, b.min_sandwich);
        a.max_sandwich = std::max(a.max_sandwich, b.max_sandwich);
      });
}

inline WindowSweep sweep_window(const DispersionParams& p, const SweepOptions& opts = {}) {
  const Interval W = window_interval(p);
  const double a = W.lo;
  const double top = 4.0 / std::sqrt(p.eps());
  return detail::run_batches<WindowSweep>(
      opts,
      [&](std::mt19937_64& rng, WindowSweep& st) {
        std::uniform_real_distribution<double> in_window(W.lo, W.hi);
        std::uniform_real_distribution<double> wide(-top, top);
        const double xi = detail::random_sign(rng) * in_window(rng);
        const double xi1 = wide(rng);
        if (!(std::min(std::abs(xi1), std::abs(xi - xi1)) > a)) return;
        ++st.samples;
        st.min_gamma = std::min(st.min_gamma, gamma(xi, xi1, p));
      },
      [](WindowSweep& x, const WindowSweep& y) {
        x.samples += y.samples;
        x.min_gamma = std::min(x.min_gamma, y.min_gamma);
      });
}

inline ModulationSweep sweep_modulation(const DispersionParams& p, const SweepOptions& opts = {}) {
  const double top = 4.0 / std::sqrt(p.eps());
  return detail::run_batches<ModulationSweep>(
      opts,
      [&](std::mt19937_64& rng, ModulationSweep& st) {
        const double xi = detail::random_sign(rng) * detail::log_uniform(rng, 1.0, top);
        if (!(projectors::eta_A(xi, p) > 0.0)) return;
        const double xi1 = detail::random_sign(rng) * std::abs(xi) * detail::log_uniform(rng, 0x1p-30, 0x1p-7);
        const double xi2 = xi - xi1;
        const double cubic = std::abs(xi * xi1 * xi2);
        const double scale = std::max(cubic, p.eps() * xi * xi * cubic);
        const double ratio = std::abs(resonance(xi, xi1, p)) / scale;
        ++st.samples;
        st.min_ratio = std::min(st.min_ratio, ratio);
        st.max_ratio = std::max(st.max_ratio, ratio);
      },
      [](ModulationSweep& a, const ModulationSweep& b) {
        a.samples += b.samples;
        a.min_ratio = std::min(a.min_ratio, b.min_ratio);
        a.max_ratio = std::max(a.max_ratio, b.max_ratio);
      });
}

/// Gamma at pairs with |xi|, |xi1| log-uniform in [1, top] and random signs.
inline GammaRangeSweep sweep_gamma_range(const DispersionParams& p, double top, const SweepOptions& opts = {}) {
  return detail::run_batches<GammaRangeSweep>(
      opts,
      [&](std::mt19937_64& rng, GammaRangeSweep& st) {
        const double xi = detail::random_sign(rng) * detail::log_uniform(rng, 1.0, top);
        const double xi1 = detail::random_sign(rng) * detail::log_uniform(rng, 1.0, top);
        const double g = gamma(xi, xi1, p);
        ++st.samples;
        st.min_gamma = std::min(st.min_gamma, g);
        st.max_gamma = std::max(st.max_gamma, g);
      },
      [](GammaRangeSweep& a, const GammaRangeSweep& b) {
        a.samples += b.samples;
        a.min_gamma = std::min(a.min_gamma, b.min_gamma);
        a.max_gamma = std::max(a.max_gamma, b.max_gamma);
      });
}

inline VanishingSweep sweep_eta_A_vanishing(const DispersionParams& p, const SweepOptions& opts = {}) {
  const double r = 1.0 / std::sqrt(p.eps());
  const Interval J = j_eps(p);
  return detail::run_batches<VanishingSweep>(
      opts,
      [&](std::mt19937_64& rng, VanishingSweep& st) {
        std::uniform_real_distribution<double> small(-4.0, 4.0);
        // Half the draws inside J_eps, half log-uniform over [1, 2^5 / sqrt(eps)].
        double mag;
        if (rng() & 1u) {
          std::uniform_real_distribution<double> inJ(J.lo, J.hi);
          mag = inJ(rng);
        } else {
          mag = detail::log_uniform(rng, 1.0, 32.0 * r);
        }
        const bool in_scope = J.contains(mag) || mag < 0.125 * r || mag > 8.0 * r;
        if (!in_scope) return;
        const double xi = detail::random_sign(rng) * mag;
        const double xi1 = small(rng);
        ++st.samples;
        st.max_abs_difference =
            std::max(st.max_abs_difference, std::abs(projectors::eta_A(xi, p) - projectors::eta_A(xi - xi1, p)));
      },
      [](VanishingSweep& a, const VanishingSweep& b) {
        a.samples += b.samples;
        a.max_abs_difference = std::max(a.max_abs_difference, b.max_abs_difference);
      });
}

inline LipschitzSweep sweep_eta_A_lipschitz(const DispersionParams& p, const SweepOptions& opts = {}) {
  const double root = std::sqrt(p.eps());
  const double center = stationary_points(p).xi_first;
  const double half = projectors::transition_half_width(p);
  auto out = detail::run_batches<LipschitzSweep>(
      opts,
      [&](std::mt19937_64& rng, LipschitzSweep& st) {
        double xi;
        if (rng() & 1u) {
          std::uniform_real_distribution<double> near(center - 2.0 * half, center + 2.0 * half);
          xi = detail::random_sign(rng) * near(rng);
        } else {
          xi = detail::random_sign(rng) * detail::log_uniform(rng, 1.0, 4.0 / root);
        }
        const double xi1 = detail::random_sign(rng) * detail::log_uniform(rng, 1e-3, 10.0 / root);
        const double diff = std::abs(projectors::eta_A(xi, p) - projectors::eta_A(xi - xi1, p));
        ++st.samples;
        st.sup_ratio = std::max(st.sup_ratio, diff / std::min(1.0, root * std::abs(xi1)));
      },
      [](LipschitzSweep& a, const LipschitzSweep& b) {
        a.samples += b.samples;
        a.sup_ratio = std::max(a.sup_ratio, b.sup_ratio);
      });
  out.bound = std::max(1.0, 20.0 * projectors::psi_max_slope());
  return out;
}

}  // namespace kawahara::dispersion
