#pragma once

// Littlewood-Paley multipliers built from one concrete smooth bump, plus the
// smooth cut-offs around the stationary points of the phase function.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/error.hpp"
#include "kawahara/spectral_core.hpp"

namespace kawahara::projectors {

namespace detail {

inline double glue(double t) noexcept { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = glue(t);
  return a / (a + glue(1.0 - t));
}

}  // namespace detail

inline constexpr double kPsiFlat = 1.25;     // psi == 1 on [-5/4, 5/4]
inline constexpr double kPsiSupport = 1.5;   // supp psi in [-3/2, 3/2]

/// Even C-infinity bump: 1 on |x| <= 5/4, 0 on |x| >= 3/2, monotone in between.
inline double psi(double x) noexcept {
  const double a = std::abs(x);
  if (a <= kPsiFlat) return 1.0;
  if (a >= kPsiSupport) return 0.0;
  return detail::smooth_step((kPsiSupport - a) / (kPsiSupport - kPsiFlat));
}

/// Largest |psi'|, attained in the gap (5/4, 3/2). Estimated on a fine mesh.
inline double psi_max_slope() {
  static const double slope = [] {
    constexpr int steps = 200000;
    const double h = (kPsiSupport - kPsiFlat) / steps;
    double m = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double a = kPsiFlat + i * h;
      m = std::max(m, std::abs(psi(a + h) - psi(a)) / h);
    }
    return m;
  }();
  return slope;
}

inline double eta_zero(double xi) noexcept { return psi(xi); }

/// eta_{2^k}(xi) = psi(2^-k xi) - psi(2^-k+1 xi), k >= 1. Level 0 is eta_zero.
inline double eta_dyadic(int k, double xi) {
  if (k < 0) throw InvalidArgument("dyadic level must be >= 0");
  if (k == 0) return eta_zero(xi);
  return psi(std::ldexp(xi, -k)) - psi(std::ldexp(xi, -k + 1));
}

/// eta_{<=2^k} = psi(2^-k .) = sum_{j<=k} eta_{2^j}.
inline double eta_low(int k, double xi) { return psi(std::ldexp(xi, -k)); }

/// eta_{>=2^k} = 1 - eta_{<=2^(k-1)}.
inline double eta_high(int k, double xi) {
  if (k < 1) throw InvalidArgument("eta_high needs level >= 1");
  return 1.0 - eta_low(k - 1, xi);
}

namespace detail {
inline void require_positive(const dispersion::DispersionParams& p) {
  if (p.is_kdv()) throw InvalidArgument("stationary-point projectors need eps > 0");
}
}  // namespace detail

/// Symbol of P_{A_eps}: removes a O(eps^-1/2) window around sqrt(3/(5 eps)).
inline double eta_A(double xi, const dispersion::DispersionParams& p) {
  detail::require_positive(p);
  const double c = std::sqrt(3.0 / (5.0 * p.eps()));
  return 1.0 - psi(20.0 * std::sqrt(p.eps()) * (std::abs(xi) - c));
}

/// Symbol of P_{B_eps}: same construction around sqrt(3/(10 eps)).
inline double eta_B(double xi, const dispersion::DispersionParams& p) {
  detail::require_positive(p);
  const double c = std::sqrt(3.0 / (10.0 * p.eps()));
  return 1.0 - psi(20.0 * std::sqrt(p.eps()) * (std::abs(xi) - c));
}

/// Half-width of the region where eta_A is not identically 1.
inline double transition_half_width(const dispersion::DispersionParams& p) {
  detail::require_positive(p);
  return kPsiSupport / (20.0 * std::sqrt(p.eps()));
}

/// Rejects grids on which the eta_A transition spans fewer than 4 lattice spacings.
inline void check_resolution(const Grid& g, const dispersion::DispersionParams& p) {
  if (p.is_kdv()) return;
  const double need = 4.0 * g.fundamental();
  const double have = transition_half_width(p);
  if (have < need)
    throw InvalidArgument("resolution guard: (3/2)/(20 sqrt(eps)) = " + std::to_string(have) +
                          " < 4 * 2pi/L = " + std::to_string(need) + " for eps = " +
                          std::to_string(p.eps()));
}

/// Fourier multiplier sampled on a grid's wavenumber lattice.
class Multiplier {
 public:
  Multiplier(Grid grid, std::vector<double> values, std::string name)
      : grid_(grid), values_(std::move(values)), name_(std::move(name)) {
    if (values_.size() != grid_.size()) throw InvalidArgument("multiplier size does not match grid");
    for (double v : values_)
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("multiplier values must lie in [0, 1]");
  }

  template <class F>
  static Multiplier from_symbol(const Grid& g, F&& symbol, std::string name) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = symbol(g.wavenumber(i));
    return Multiplier(g, std::move(v), std::move(name));
  }

  static Multiplier identity(const Grid& g) {
    return Multiplier(g, std::vector<double>(g.size(), 1.0), "id");
  }
  static Multiplier dyadic(const Grid& g, int k) {
    return from_symbol(g, [k](double xi) { return eta_dyadic(k, xi); },
                       "P_" + std::to_string(1L << k));
  }
  static Multiplier low(const Grid& g, int k) {
    return from_symbol(g, [k](double xi) { return eta_low(k, xi); },
                       "P_<=" + std::to_string(1L << k));
  }
  static Multiplier high(const Grid& g, int k) {
    return from_symbol(g, [k](double xi) { return eta_high(k, xi); },
                       "P_>=" + std::to_string(1L << k));
  }
  static Multiplier A(const Grid& g, const dispersion::DispersionParams& p) {
    return from_symbol(g, [&p](double xi) { return eta_A(xi, p); }, "P_A");
  }
  static Multiplier B(const Grid& g, const dispersion::DispersionParams& p) {
    return from_symbol(g, [&p](double xi) { return eta_B(xi, p); }, "P_B");
  }
  /// P_{cA_eps} = Id - P_{A_eps}; also the operator written with a bold A in the linear estimates.
  static Multiplier A_complement(const Grid& g, const dispersion::DispersionParams& p) {
    return A(g, p).complement();
  }

  Multiplier complement() const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 - values_[i];
    return Multiplier(grid_, std::move(v), "Id-" + name_);
  }

  /// Pointwise product (composition of the two projectors).
  Multiplier then(const Multiplier& other) const {
    if (!(grid_ == other.grid_)) throw InvalidArgument("multipliers live on different grids");
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * other.values_[i];
    return Multiplier(grid_, std::move(v), other.name_ + "*" + name_);
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t slot) const noexcept { return values_[slot]; }
  const std::string& name() const noexcept { return name_; }

 private:
  Grid grid_;
  std::vector<double> values_;
  std::string name_;
};

inline SpectralField apply(const Multiplier& m, const SpectralField& s) {
  if (!(m.grid() == s.grid())) throw InvalidArgument("multiplier and field live on different grids");
  return s.map([&m](std::size_t slot) { return m[slot]; });
}

}  // namespace kawahara::projectors
