#pragma once

// Phase function phi_eps(xi) = xi^3 - eps xi^5 of u_t + u_xxx + eps u_5x = 0,
// its stationary points, the quadratic resonance function and the frequency
// regions used by the bilinear analysis.

#include <cmath>
#include <complex>
#include <string>

#include "kawahara/error.hpp"
#include "kawahara/spectral_core.hpp"

namespace kawahara::dispersion {

/// Dispersion coefficient; eps == 0 is KdV.
class DispersionParams {
 public:
  explicit DispersionParams(double eps) : eps_(eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps))
      throw InvalidArgument("dispersion parameter must be finite and >= 0, got " + std::to_string(eps));
  }
  double eps() const noexcept { return eps_; }
  bool is_kdv() const noexcept { return eps_ == 0.0; }

  friend bool operator==(const DispersionParams&, const DispersionParams&) = default;

 private:
  double eps_;
};

inline double phase(double xi, const DispersionParams& p) noexcept {
  const double xi2 = xi * xi;
  return xi * xi2 * (1.0 - p.eps() * xi2);
}

inline double phase_prime(double xi, const DispersionParams& p) noexcept {
  const double xi2 = xi * xi;
  return 3.0 * xi2 - 5.0 * p.eps() * xi2 * xi2;
}

inline double phase_second(double xi, const DispersionParams& p) noexcept {
  return 6.0 * xi - 20.0 * p.eps() * xi * xi * xi;
}

/// |xi| where phi' and phi'' vanish. Only defined for eps > 0.
struct StationaryPoints {
  double xi_first;   // sqrt(3 / (5 eps)), phi' = 0
  double xi_second;  // sqrt(3 / (10 eps)), phi'' = 0
};

inline StationaryPoints stationary_points(const DispersionParams& p) {
  if (p.is_kdv()) throw InvalidArgument("stationary points are undefined for eps = 0");
  return {std::sqrt(3.0 / (5.0 * p.eps())), std::sqrt(3.0 / (10.0 * p.eps()))};
}

/// Omega(xi, xi1) = phi(xi) - phi(xi1) - phi(xi - xi1).
inline double resonance(double xi, double xi1, const DispersionParams& p) noexcept {
  return phase(xi, p) - phase(xi1, p) - phase(xi - xi1, p);
}

/// |3 - 5 eps (xi^2 - xi1 (xi - xi1))|, so that |Omega| = |xi xi1 (xi - xi1)| Gamma.
inline double gamma(double xi, double xi1, const DispersionParams& p) noexcept {
  return std::abs(3.0 - 5.0 * p.eps() * (xi * xi - xi1 * (xi - xi1)));
}

enum class RegionLabel { inside_J_eps, window_region, outside };

inline const char* to_string(RegionLabel r) noexcept {
  switch (r) {
    case RegionLabel::inside_J_eps: return "inside_J_eps";
    case RegionLabel::window_region: return "window_region";
    case RegionLabel::outside: return "outside";
  }
  return "?";
}

struct Interval {
  double lo;
  double hi;
  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

/// J_eps = [15/16, 17/16] * sqrt(3 / (5 eps)).
inline Interval j_eps(const DispersionParams& p) {
  const double c = stationary_points(p).xi_first;
  return {15.0 / 16.0 * c, 17.0 / 16.0 * c};
}

/// [sqrt(17 / (80 eps)), sqrt(2 / (5 eps))].
inline Interval window_interval(const DispersionParams& p) {
  if (p.is_kdv()) throw InvalidArgument("frequency regions are undefined for eps = 0");
  return {std::sqrt(17.0 / (80.0 * p.eps())), std::sqrt(2.0 / (5.0 * p.eps()))};
}

inline RegionLabel classify_region(double xi, const DispersionParams& p) {
  if (p.is_kdv()) throw InvalidArgument("frequency regions are undefined for eps = 0");
  const double a = std::abs(xi);
  if (j_eps(p).contains(a)) return RegionLabel::inside_J_eps;
  if (window_interval(p).contains(a)) return RegionLabel::window_region;
  return RegionLabel::outside;
}

/// Free evolution U_eps(t): multiplies u^_k by exp(i t phi(xi_k)).
/// phi is odd, so like odd derivatives the Nyquist mode is zeroed.
inline SpectralField propagator_apply(const SpectralField& s, double t, const DispersionParams& p) {
  if (t == 0.0) return s;
  const Grid& g = s.grid();
  return s.map([&](std::size_t slot) -> Complex {
    if (slot == g.nyquist_slot()) return 0.0;
    return std::polar(1.0, t * phase(g.wavenumber(slot), p));
  });
}

}  // namespace kawahara::dispersion
