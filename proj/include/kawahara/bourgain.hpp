#pragma once

// Space-time (Bourgain) norm diagnostics on recorded trajectories.
//
// A record u(t_j, x) is windowed in time by psi rescaled to the record, then
// transformed in the interaction picture: for every spatial mode the profile
//   w_k(t) = exp(-i t phi_ref(xi_k)) u^_k(t) psi_T(t)
// is Fourier transformed in t. Coefficient (k, m) therefore sits at
//   tau = phi_ref(xi_k) + sigma_m,    sigma_m = 2 pi m / T_w,
// which keeps the modulation tau - phi(xi) free of temporal aliasing however
// large phi gets on the lattice. T_w = M * (sample spacing) is the period of
// the M-sample record.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/error.hpp"
#include "kawahara/evolve.hpp"
#include "kawahara/fft.hpp"
#include "kawahara/projectors.hpp"
#include "kawahara/spectral_core.hpp"

namespace kawahara::bourgain {

using dispersion::DispersionParams;

inline constexpr std::size_t kMinTimeSamples = 64;

/// Integer frequency of slot i in a length-M DFT, symmetric for odd M.
inline std::int64_t dft_mode(std::size_t i, std::size_t m_count) noexcept {
  const auto ii = static_cast<std::int64_t>(i);
  const auto mm = static_cast<std::int64_t>(m_count);
  return 2 * ii < mm ? ii : ii - mm;
}

/// The bump psi stretched so that it vanishes at both ends of a record.
struct WindowSpec {
  std::vector<double> samples;
  double dt = 0.0;

  static WindowSpec for_record(std::size_t count, double dt) {
    if (count < 2 || !(dt > 0.0)) throw InvalidArgument("window needs >= 2 samples and dt > 0");
    const double span = static_cast<double>(count - 1) * dt;
    WindowSpec w;
    w.dt = dt;
    w.samples.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
      const double t = static_cast<double>(j) * dt;
      w.samples[j] = projectors::psi(2.0 * projectors::kPsiSupport * (t - 0.5 * span) / span);
    }
    w.samples.front() = 0.0;
    w.samples.back() = 0.0;
    return w;
  }
  static WindowSpec for_trajectory(const evolve::Trajectory& traj) {
    return for_record(traj.size(), traj.config().sample_spacing());
  }

  std::size_t size() const noexcept { return samples.size(); }
  double period() const noexcept { return static_cast<double>(samples.size()) * dt; }
  double sigma(std::size_t m) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(dft_mode(m, size())) / period();
  }

  /// psi^_m = (1/M) sum_j psi_j exp(-i sigma_m t_j).
  std::vector<Complex> transform() const {
    std::vector<Complex> c(samples.begin(), samples.end());
    fft::transform_inplace(c, fft::Direction::forward);
    for (auto& v : c) v /= static_cast<double>(c.size());
    return c;
  }

  /// C_{window,b} = (T_w sum_m <sigma_m>^{2b} |psi^_m|^2)^{1/2}.
  double normalization(double b) const {
    const auto c = transform();
    double acc = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m) acc += std::pow(bracket(sigma(m)), 2.0 * b) * std::norm(c[m]);
    return std::sqrt(period() * acc);
  }
};

class SpaceTimeSpectrum {
 public:
  SpaceTimeSpectrum(Grid grid, std::size_t time_modes, double period, double frame_eps,
                    std::vector<Complex> coeffs, std::string provenance)
      : grid_(grid), m_(time_modes), period_(period), frame_(frame_eps), coeffs_(std::move(coeffs)),
        provenance_(std::move(provenance)) {
    if (coeffs_.size() != grid_.size() * m_) throw InvalidArgument("space-time coefficient count mismatch");
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t time_modes() const noexcept { return m_; }
  double period() const noexcept { return period_; }
  /// eps of the phase used to center the tau lattice of each spatial mode.
  DispersionParams frame() const { return DispersionParams{frame_}; }
  const std::string& provenance() const noexcept { return provenance_; }

  double sigma(std::size_t m) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(dft_mode(m, m_)) / period_;
  }
  double tau(std::size_t slot, std::size_t m) const {
    return dispersion::phase(grid_.wavenumber(slot), frame()) + sigma(m);
  }
  Complex at(std::size_t slot, std::size_t m) const noexcept { return coeffs_[slot * m_ + m]; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Quadrature weight turning sum |c|^2 into the space-time L2 norm squared.
  double cell_weight() const noexcept { return grid_.length() * period_; }

  /// |tau - phi_p(xi)| at coefficient (slot, m).
  double modulation(std::size_t slot, std::size_t m, const DispersionParams& p) const {
    const double xi = grid_.wavenumber(slot);
    return std::abs(sigma(m) + dispersion::phase(xi, frame()) - dispersion::phase(xi, p));
  }

 private:
  Grid grid_;
  std::size_t m_;
  double period_;
  double frame_;
  std::vector<Complex> coeffs_;
  std::string provenance_;
};

inline SpaceTimeSpectrum spacetime_transform(const evolve::Trajectory& traj, const WindowSpec& w,
                                             std::string provenance = "trajectory") {
  const std::size_t M = traj.size();
  if (M < kMinTimeSamples)
    throw InvalidArgument("space-time transform needs >= 64 time samples, got " + std::to_string(M));
  if (w.size() != M) throw InvalidArgument("window length does not match trajectory");
  const double spacing = traj.config().sample_spacing();
  if (std::abs(w.dt - spacing) > 1e-12 * spacing) throw InvalidArgument("window spacing does not match trajectory");

  const Grid& g = traj.grid();
  const std::size_t n = g.size();
  const DispersionParams p = traj.params();
  std::vector<Complex> coeffs(n * M);
  for (std::size_t j = 0; j < M; ++j) {
    const double t = traj.times()[j];
    const SpectralField s = forward(traj.state(j));
    for (std::size_t i = 0; i < n; ++i) {
      const Complex rot = i == g.nyquist_slot() ? Complex(1.0) : std::polar(1.0, -t * dispersion::phase(g.wavenumber(i), p));
      coeffs[i * M + j] = s[i] * rot * w.samples[j];
    }
  }
  const double inv_m = 1.0 / static_cast<double>(M);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<Complex> row(coeffs.data() + i * M, M);
    fft::transform_inplace(row, fft::Direction::forward);
    for (auto& c : row) c *= inv_m;
  }
  return SpaceTimeSpectrum(g, M, w.period(), p.eps(), std::move(coeffs), std::move(provenance));
}

/// (dx dt sum_j sum_x |psi_T(t_j) u(t_j, x)|^2)^{1/2}.
inline double windowed_l2(const evolve::Trajectory& traj, const WindowSpec& w) {
  double acc = 0.0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const double a = w.samples[j];
    for (double v : traj.state(j).values()) acc += a * a * v * v;
  }
  return std::sqrt(acc * traj.grid().dx() * w.dt);
}

/// ( sum <tau - phi_eps(xi)>^{2b} <xi>^{2s} |v^|^2 dxi dtau )^{1/2}.
inline double xsb_norm(const SpaceTimeSpectrum& sp, double s, double b, const DispersionParams& p) {
  const Grid& g = sp.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double wx = std::pow(bracket(g.wavenumber(i)), 2.0 * s);
    for (std::size_t m = 0; m < sp.time_modes(); ++m) {
      const double e = std::norm(sp.at(i, m));
      if (e == 0.0) continue;
      acc += wx * std::pow(1.0 + sp.modulation(i, m, p), 2.0 * b) * e;
    }
  }
  return std::sqrt(acc * sp.cell_weight());
}

/// Nonzero Littlewood-Paley weights eta_{2^l}(x) (level 0 is psi) at one point; at most three.
struct LevelWeight {
  int level;
  double weight;
};

inline std::vector<LevelWeight> dyadic_weights(double x) {
  std::vector<LevelWeight> out;
  const double a = std::abs(x);
  int top = 0;
  if (a > 0.0) top = std::max(0, static_cast<int>(std::floor(std::log2(a))) + 2);
  for (int l = std::max(0, top - 3); l <= top + 1; ++l) {
    const double w = projectors::eta_dyadic(l, a);
    if (w > 0.0) out.push_back({l, w});
  }
  return out;
}

namespace detail {

// Squared block norms ||eta_{2^k}(xi) eta_{2^j}(sigma) v^||^2 (or with unsquared
// weights when `squared_weights` is false, which turns blocks into a partition of energy).
inline std::vector<std::vector<double>> block_energies(const SpaceTimeSpectrum& sp, const DispersionParams& p,
                                                       bool squared_weights) {
  const Grid& g = sp.grid();
  std::vector<std::vector<double>> blocks;
  auto add = [&](int k, int j, double v) {
    if (blocks.size() <= static_cast<std::size_t>(k)) blocks.resize(k + 1);
    auto& row = blocks[k];
    if (row.size() <= static_cast<std::size_t>(j)) row.resize(j + 1, 0.0);
    row[j] += v;
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto xw = dyadic_weights(g.wavenumber(i));
    for (std::size_t m = 0; m < sp.time_modes(); ++m) {
      const double e = std::norm(sp.at(i, m));
      if (e == 0.0) continue;
      const auto sw = dyadic_weights(sp.modulation(i, m, p));
      for (const auto& a : xw)
        for (const auto& c : sw) {
          const double wt = squared_weights ? a.weight * a.weight * c.weight * c.weight : a.weight * c.weight;
          add(a.level, c.level, wt * e * sp.cell_weight());
        }
    }
  }
  return blocks;
}

}  // namespace detail

/// l^2 over dyadic xi-shells of l^q over dyadic sigma-shells, weights <2^k>^s <2^j>^b. q in {1, 2}.
inline double xsbq_norm(const SpaceTimeSpectrum& sp, double s, double b, int q, const DispersionParams& p) {
  if (q != 1 && q != 2) throw InvalidArgument("xsbq_norm supports q = 1 or q = 2");
  const auto blocks = detail::block_energies(sp, p, true);
  double outer = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const double wk = std::pow(bracket(std::ldexp(1.0, static_cast<int>(k))), s);
    double inner = 0.0;
    for (std::size_t j = 0; j < blocks[k].size(); ++j) {
      const double wj = std::pow(bracket(std::ldexp(1.0, static_cast<int>(j))), b);
      inner += std::pow(wk * wj * std::sqrt(blocks[k][j]), q);
    }
    outer += std::pow(inner, 2.0 / q);
  }
  return std::sqrt(outer);
}

struct ModulationBin {
  int xi_shell;
  int sigma_shell;
  double energy;
};

/// Energy |v^|^2 split over (dyadic |xi| shell, dyadic |tau - phi(xi)| shell).
struct ModulationProfile {
  std::vector<ModulationBin> bins;
  double total = 0.0;

  bool empty() const noexcept { return bins.empty(); }
  /// Fraction of the energy in sigma-shells <= level.
  double fraction_up_to(int level) const {
    if (total == 0.0) return 0.0;
    double acc = 0.0;
    for (const auto& b : bins)
      if (b.sigma_shell <= level) acc += b.energy;
    return acc / total;
  }
  int max_sigma_shell() const {
    int m = -1;
    for (const auto& b : bins) m = std::max(m, b.sigma_shell);
    return m;
  }
};

inline ModulationProfile nonlinear_modulation_profile(const SpaceTimeSpectrum& sp, const DispersionParams& p) {
  ModulationProfile out;
  const auto blocks = detail::block_energies(sp, p, false);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t j = 0; j < blocks[k].size(); ++j)
      if (blocks[k][j] > 0.0) {
        out.bins.push_back({static_cast<int>(k), static_cast<int>(j), blocks[k][j]});
        out.total += blocks[k][j];
      }
  return out;
}

inline ModulationProfile nonlinear_modulation_profile(const evolve::Trajectory& traj, const DispersionParams& p) {
  const auto w = WindowSpec::for_trajectory(traj);
  return nonlinear_modulation_profile(spacetime_transform(traj, w), p);
}

/// Smallest sigma-shell level holding `fraction` of the window's own spectral energy.
inline int window_bandwidth_shell(const WindowSpec& w, double fraction = 0.99) {
  const auto c = w.transform();
  std::vector<double> per_level;
  double total = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    const double e = std::norm(c[m]);
    total += e;
    for (const auto& lw : dyadic_weights(w.sigma(m))) {
      if (per_level.size() <= static_cast<std::size_t>(lw.level)) per_level.resize(lw.level + 1, 0.0);
      per_level[lw.level] += lw.weight * e;
    }
  }
  double acc = 0.0;
  for (std::size_t l = 0; l < per_level.size(); ++l) {
    acc += per_level[l];
    if (acc >= fraction * total) return static_cast<int>(l);
  }
  return static_cast<int>(per_level.size()) - 1;
}

}  // namespace kawahara::bourgain
