#pragma once

// Periodic grid, real <-> spectral transforms, spectral calculus and static norms.
//
// Conventions
//   x_j  = -L/2 + j dx,           j = 0..n-1,   dx = L/n
//   xi_k = 2 pi k / L,            k in [-n/2, n/2)
//   u^_k = (1/n) sum_j u(x_j) exp(-i xi_k x_j)
// Spectral coefficients are stored in FFT order: slot i holds mode k = i for
// i < n/2 and k = i - n otherwise (slot n/2 is the Nyquist mode k = -n/2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "kawahara/error.hpp"
#include "kawahara/fft.hpp"

namespace kawahara {

using Complex = std::complex<double>;

class Grid {
 public:
  Grid(std::size_t n, double length) : n_(n), length_(length) {
    if (n < 16 || (n & (n - 1)) != 0)
      throw InvalidArgument("grid size must be a power of two >= 16, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
      throw InvalidArgument("grid length must be positive and finite");
  }

  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  // n is a power of two, so dx * n == L exactly.
  double dx() const noexcept { return length_ / static_cast<double>(n_); }
  double x(std::size_t j) const noexcept { return -0.5 * length_ + static_cast<double>(j) * dx(); }

  std::int64_t mode(std::size_t slot) const noexcept {
    const auto i = static_cast<std::int64_t>(slot);
    const auto n = static_cast<std::int64_t>(n_);
    return i < n / 2 ? i : i - n;
  }
  std::size_t slot(std::int64_t k) const noexcept {
    const auto n = static_cast<std::int64_t>(n_);
    return static_cast<std::size_t>(((k % n) + n) % n);
  }
  double wavenumber(std::size_t slot) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(mode(slot)) / length_;
  }
  double fundamental() const noexcept { return 2.0 * std::numbers::pi / length_; }
  std::size_t nyquist_slot() const noexcept { return n_ / 2; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t n_;
  double length_;
};

/// Samples u(x_j) of a real field. Always finite.
class RealField {
 public:
  RealField(Grid grid, std::vector<double> samples) : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size())
      throw InvalidArgument("sample count does not match grid size");
    for (double v : samples_)
      if (!std::isfinite(v)) throw InvalidArgument("real field contains a non-finite sample");
  }

  static RealField zeros(Grid grid) { return RealField(grid, std::vector<double>(grid.size(), 0.0)); }

  template <class F>
  static RealField sample(Grid grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
    return RealField(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return samples_; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  Grid grid_;
  std::vector<double> samples_;
};

/// Coefficients u^_k of a field, FFT-ordered.
class SpectralField {
 public:
  SpectralField(Grid grid, std::vector<Complex> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.size())
      throw InvalidArgument("coefficient count does not match grid size");
  }

  static SpectralField zeros(Grid grid) {
    return SpectralField(grid, std::vector<Complex>(grid.size(), Complex{}));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](std::size_t slot) const noexcept { return coeffs_[slot]; }
  Complex mode(std::int64_t k) const noexcept { return coeffs_[grid_.slot(k)]; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Returns a copy with every coefficient multiplied by f(slot).
  template <class F>
  SpectralField map(F&& f) const {
    std::vector<Complex> out(coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= f(i);
    return SpectralField(grid_, std::move(out));
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Largest |u^_{-k} - conj(u^_k)| relative to the largest coefficient.
  double hermitian_defect() const noexcept {
    const double scale = max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    const std::size_t n = coeffs_.size();
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(coeffs_[(n - i) % n] - std::conj(coeffs_[i])));
    return worst / scale;
  }

  friend SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    check_same_grid(a, b);
    std::vector<Complex> out(a.coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs_[i];
    return SpectralField(a.grid_, std::move(out));
  }
  friend SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    check_same_grid(a, b);
    std::vector<Complex> out(a.coeffs_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.coeffs_[i];
    return SpectralField(a.grid_, std::move(out));
  }
  friend SpectralField operator*(double alpha, const SpectralField& a) {
    return a.map([alpha](std::size_t) { return alpha; });
  }

 private:
  static void check_same_grid(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid_ == b.grid_)) throw InvalidArgument("spectral fields live on different grids");
  }

  Grid grid_;
  std::vector<Complex> coeffs_;
};

/// Sobolev index with the bracket <xi> := 1 + |xi|.
struct NormSpec {
  double s = 0.0;
};

inline double bracket(double x) noexcept { return 1.0 + std::abs(x); }

inline constexpr double kHermitianTolerance = 1e-12;

// (-1)^k accounts for the grid starting at x_0 = -L/2.
inline double shift_sign(const Grid& g, std::size_t slot) noexcept {
  return (g.mode(slot) & 1) ? -1.0 : 1.0;
}

inline SpectralField forward(const RealField& u) {
  const Grid& g = u.grid();
  const std::size_t n = g.size();
  std::vector<Complex> c(n);
  for (std::size_t j = 0; j < n; ++j) c[j] = Complex(u[j], 0.0);
  fft::transform_inplace(c, fft::Direction::forward);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) c[i] *= shift_sign(g, i) * inv_n;
  return SpectralField(g, std::move(c));
}

namespace detail {

// Inverse transform without the symmetry check; the imaginary part is dropped.
inline std::vector<double> inverse_samples(const Grid& g, std::span<const Complex> coeffs) {
  const std::size_t n = g.size();
  std::vector<Complex> c(coeffs.begin(), coeffs.end());
  for (std::size_t i = 0; i < n; ++i) c[i] *= shift_sign(g, i);
  fft::transform_inplace(c, fft::Direction::backward);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = c[j].real();
  return out;
}

}  // namespace detail

inline RealField inverse(const SpectralField& s) {
  const double defect = s.hermitian_defect();
  if (defect > kHermitianTolerance)
    throw InvalidArgument("spectral field is not Hermitian (relative defect " +
                          std::to_string(defect) + ")");
  return RealField(s.grid(), detail::inverse_samples(s.grid(), s.coeffs()));
}

/// Multiplies by (i xi)^order. Odd orders zero the Nyquist mode.
inline SpectralField derivative(const SpectralField& s, unsigned order) {
  const Grid& g = s.grid();
  const Complex i_unit(0.0, 1.0);
  return s.map([&](std::size_t slot) -> Complex {
    if (order % 2 == 1 && slot == g.nyquist_slot()) return 0.0;
    return std::pow(i_unit * g.wavenumber(slot), static_cast<int>(order));
  });
}

/// Multiplies by |xi|^r (D_x^r). For r < 0 the zero mode is removed.
inline SpectralField fractional_derivative(const SpectralField& s, double r) {
  const Grid& g = s.grid();
  if (r == 0.0) return s;
  return s.map([&](std::size_t slot) -> Complex {
    const double xi = std::abs(g.wavenumber(slot));
    if (xi == 0.0) return 0.0;
    return std::pow(xi, r);
  });
}

inline bool above_dealias_cutoff(const Grid& g, std::size_t slot) noexcept {
  return 3 * static_cast<std::uint64_t>(std::abs(g.mode(slot))) > g.size();
}

/// 2/3 rule: zero every mode with |k| > n/3.
inline SpectralField dealias(const SpectralField& s) {
  const Grid& g = s.grid();
  return s.map([&](std::size_t slot) { return above_dealias_cutoff(g, slot) ? 0.0 : 1.0; });
}

inline double sobolev_norm(const SpectralField& s, NormSpec spec) {
  const Grid& g = s.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    acc += std::pow(bracket(g.wavenumber(i)), 2.0 * spec.s) * std::norm(s[i]);
  return std::sqrt(g.length() * acc);
}

inline double sobolev_norm(const RealField& u, NormSpec spec) { return sobolev_norm(forward(u), spec); }

struct LebesgueNorms {
  double l2 = 0.0;
  double linf = 0.0;
  double mean = 0.0;  // dx-weighted sum of the samples, i.e. the integral of u
};

inline LebesgueNorms lebesgue_norms(const RealField& u) {
  const double dx = u.grid().dx();
  LebesgueNorms out;
  double sq = 0.0;
  for (double v : u.values()) {
    sq += v * v;
    out.linf = std::max(out.linf, std::abs(v));
    out.mean += v;
  }
  out.l2 = std::sqrt(dx * sq);
  out.mean *= dx;
  return out;
}

/// L2 norm of a - b on the common grid.
inline double l2_distance(const RealField& a, const RealField& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("fields live on different grids");
  double sq = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sq += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(a.grid().dx() * sq);
}

inline double max_abs_difference(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

inline double max_abs_difference(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace kawahara
