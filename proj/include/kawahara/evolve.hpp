#pragma once

// Time integration of u_t + u_xxx + eps u_5x + u u_x = 0 on the periodic grid.
//
// In Fourier variables  u^_t = i phi(xi) u^ + N(u^),  N(u^) = -(i xi / 2) dealias(F(u^2)).
// The linear part is integrated exactly through the factor exp(i h phi(xi)); the
// nonlinearity goes through the classical four-stage Runge-Kutta scheme in the
// interaction picture (integrating-factor RK4).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/error.hpp"
#include "kawahara/fft.hpp"
#include "kawahara/spectral_core.hpp"

namespace kawahara::evolve {

using dispersion::DispersionParams;

struct SolverConfig {
  double eps = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  std::size_t sample_every = 1;
  bool nonlinear = true;
  Grid grid{256, 2.0 * std::numbers::pi};

  void validate() const {
    DispersionParams{eps};
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be positive");
    if (!(dt > 0.0) || dt > t_end) throw InvalidArgument("dt must satisfy 0 < dt <= t_end");
    if (sample_every == 0) throw InvalidArgument("sample_every must be positive");
  }

  /// floor(t_end / (dt sample_every)) + 1, tolerant to representation error in the quotient.
  std::size_t sample_count() const {
    const double q = t_end / (dt * static_cast<double>(sample_every));
    return static_cast<std::size_t>(std::floor(q + 1e-9)) + 1;
  }
  double sample_spacing() const { return dt * static_cast<double>(sample_every); }
};

struct ConservedQuantities {
  double mass;
  double l2;
  double hamiltonian;
};

/// H_eps = int ( u_x^2 / 2 - eps u_xx^2 / 2 - u^3 / 6 ) dx with spectral derivatives.
inline double hamiltonian(const RealField& u, const DispersionParams& p) {
  const Grid& g = u.grid();
  const SpectralField s = forward(u);
  const auto ux = detail::inverse_samples(g, derivative(s, 1).coeffs());
  const auto uxx = detail::inverse_samples(g, derivative(s, 2).coeffs());
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double v = u[j];
    acc += 0.5 * ux[j] * ux[j] - 0.5 * p.eps() * uxx[j] * uxx[j] - v * v * v / 6.0;
  }
  return acc * g.dx();
}

inline ConservedQuantities conserved(const RealField& u, const DispersionParams& p) {
  const auto norms = lebesgue_norms(u);
  return {norms.mean, norms.l2, hamiltonian(u, p)};
}

/// Time-sampled solution: states[m] is u(m * dt * sample_every).
class Trajectory {
 public:
  Trajectory(SolverConfig config, std::vector<RealField> states) : config_(config), states_(std::move(states)) {
    const DispersionParams p{config_.eps};
    times_.reserve(states_.size());
    log_.reserve(states_.size());
    for (std::size_t m = 0; m < states_.size(); ++m) {
      if (!(states_[m].grid() == config_.grid)) throw InvalidArgument("trajectory state on wrong grid");
      times_.push_back(static_cast<double>(m) * config_.sample_spacing());
      log_.push_back(conserved(states_[m], p));
    }
  }

  const SolverConfig& config() const noexcept { return config_; }
  const Grid& grid() const noexcept { return config_.grid; }
  DispersionParams params() const { return DispersionParams{config_.eps}; }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const RealField> states() const noexcept { return states_; }
  const RealField& state(std::size_t m) const { return states_.at(m); }
  std::size_t size() const noexcept { return states_.size(); }
  std::span<const ConservedQuantities> conserved_log() const noexcept { return log_; }

  /// max_m |Q(t_m) - Q(0)| / |Q(0)| for the selected quantity.
  template <class Proj>
  double relative_drift(Proj&& quantity) const {
    const double q0 = quantity(log_.front());
    double worst = 0.0;
    for (const auto& q : log_) worst = std::max(worst, std::abs(quantity(q) - q0));
    return q0 == 0.0 ? worst : worst / std::abs(q0);
  }
  double mass_drift() const { return relative_drift([](const auto& q) { return q.mass; }); }
  double l2_drift() const { return relative_drift([](const auto& q) { return q.l2; }); }
  double hamiltonian_drift() const { return relative_drift([](const auto& q) { return q.hamiltonian; }); }

 private:
  SolverConfig config_;
  std::vector<double> times_;
  std::vector<RealField> states_;
  std::vector<ConservedQuantities> log_;
};

/// Reusable integrating-factor RK4 stepper for a fixed (grid, dt, eps).
class Stepper {
 public:
  Stepper(const Grid& grid, double dt, const DispersionParams& p, bool nonlinear = true)
      : grid_(grid), dt_(dt), nonlinear_(nonlinear), full_(grid.size()), half_(grid.size()),
        ik_half_(grid.size()), work_(grid.size()) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double xi = grid.wavenumber(i);
      const bool nyquist = i == grid.nyquist_slot();
      full_[i] = nyquist ? Complex{} : std::polar(1.0, dt * dispersion::phase(xi, p));
      half_[i] = nyquist ? Complex{} : std::polar(1.0, 0.5 * dt * dispersion::phase(xi, p));
      ik_half_[i] = above_dealias_cutoff(grid, i) ? Complex{} : Complex(0.0, -0.5 * xi);
    }
  }

  double dt() const noexcept { return dt_; }

  /// N(u^) = -(i xi / 2) dealias(F(u^2)), written into out.
  void nonlinear_term(std::span<const Complex> u, std::span<Complex> out) {
    const std::size_t n = grid_.size();
    for (std::size_t i = 0; i < n; ++i) work_[i] = u[i] * shift_sign(grid_, i);
    fft::transform_inplace(work_, fft::Direction::backward);
    for (auto& w : work_) w = Complex(w.real() * w.real(), 0.0);
    fft::transform_inplace(work_, fft::Direction::forward);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = ik_half_[i] * (work_[i] * shift_sign(grid_, i) * inv_n);
  }

  /// Advances u^ in place by one step.
  void advance(std::vector<Complex>& u) {
    const std::size_t n = u.size();
    if (!nonlinear_) {
      for (std::size_t i = 0; i < n; ++i) u[i] *= full_[i];
      return;
    }
    k1_.resize(n); k2_.resize(n); k3_.resize(n); k4_.resize(n); stage_.resize(n);
    const double h = dt_;
    nonlinear_term(u, k1_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = half_[i] * (u[i] + 0.5 * h * k1_[i]);
    nonlinear_term(stage_, k2_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = half_[i] * u[i] + 0.5 * h * k2_[i];
    nonlinear_term(stage_, k3_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = full_[i] * u[i] + h * half_[i] * k3_[i];
    nonlinear_term(stage_, k4_);
    for (std::size_t i = 0; i < n; ++i)
      u[i] = full_[i] * u[i] + h / 6.0 * (full_[i] * k1_[i] + 2.0 * half_[i] * (k2_[i] + k3_[i]) + k4_[i]);
  }

 private:
  Grid grid_;
  double dt_;
  bool nonlinear_;
  std::vector<Complex> full_, half_, ik_half_, work_;
  std::vector<Complex> k1_, k2_, k3_, k4_, stage_;
};

inline bool all_finite(std::span<const Complex> u) {
  for (const auto& c : u)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

/// One integrating-factor RK4 step. Negative dt integrates backward.
inline SpectralField step(const SpectralField& u, double dt, const DispersionParams& p, bool nonlinear = true) {
  Stepper stepper(u.grid(), dt, p, nonlinear);
  std::vector<Complex> c(u.coeffs().begin(), u.coeffs().end());
  stepper.advance(c);
  if (!all_finite(c)) throw SolverError("non-finite state after step", dt);
  return SpectralField(u.grid(), std::move(c));
}

inline constexpr double kBlowUpThreshold = 1e6;
inline constexpr double kResolvedTail = 1e-10;

/// Rejects data with spectral mass above the 2/3 cutoff (relative to the peak).
inline void check_resolved(const SpectralField& s) {
  const double peak = s.max_abs();
  if (peak == 0.0) return;
  double tail = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (above_dealias_cutoff(s.grid(), i)) tail = std::max(tail, std::abs(s[i]));
  if (tail > kResolvedTail * peak)
    throw InvalidArgument("initial data not resolved: spectral tail " + std::to_string(tail / peak) +
                          " of peak above the dealiasing cutoff");
}

/// Solution map phi -> u_eps sampled every sample_every steps.
inline Trajectory solve(const RealField& phi, const SolverConfig& cfg) {
  cfg.validate();
  if (!(phi.grid() == cfg.grid)) throw InvalidArgument("initial data not on the solver grid");
  const DispersionParams p{cfg.eps};
  const Grid& g = cfg.grid;

  SpectralField s0 = dealias(forward(phi));
  check_resolved(forward(phi));
  std::vector<Complex> u(s0.coeffs().begin(), s0.coeffs().end());

  const std::size_t samples = cfg.sample_count();
  std::vector<RealField> states;
  states.reserve(samples);
  states.emplace_back(g, detail::inverse_samples(g, u));

  Stepper stepper(g, cfg.dt, p, cfg.nonlinear);
  std::size_t steps_done = 0;
  for (std::size_t m = 1; m < samples; ++m) {
    for (std::size_t k = 0; k < cfg.sample_every; ++k) {
      stepper.advance(u);
      ++steps_done;
    }
    const double t = static_cast<double>(steps_done) * cfg.dt;
    if (!all_finite(u)) throw SolverError("non-finite state (eps = " + std::to_string(cfg.eps) + ")", t);
    auto samples_x = detail::inverse_samples(g, u);
    double linf = 0.0;
    for (double v : samples_x) linf = std::max(linf, std::abs(v));
    if (linf > kBlowUpThreshold)
      throw SolverError("blow-up: max|u| = " + std::to_string(linf) + " (eps = " + std::to_string(cfg.eps) + ")", t);
    states.emplace_back(g, std::move(samples_x));
  }
  return Trajectory(cfg, std::move(states));
}

/// min(1e-3, safety dx / max|phi|): a transport CFL bound once the linear part is exact.
inline double default_dt(const RealField& phi, double safety = 0.2) {
  const double linf = lebesgue_norms(phi).linf;
  const double cfl = linf > 0.0 ? safety * phi.grid().dx() / linf : 1e-3;
  return std::min(1e-3, cfl);
}

inline bool is_power_of_two(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) return false;
  int e = 0;
  return std::frexp(lambda, &e) == 0.5;
}

/// u_lambda(t, x) = lambda^-2 u(lambda^-3 t, lambda^-1 x), a solution for eps' = lambda^2 eps.
/// States are reused sample by sample on the dilated grid (length lambda L, spacing lambda^3 dt).
inline Trajectory scaling_map(const Trajectory& traj, double lambda) {
  if (!is_power_of_two(lambda)) throw InvalidArgument("scaling factor must be a power of two");
  const SolverConfig& c = traj.config();
  SolverConfig out = c;
  out.grid = Grid(c.grid.size(), lambda * c.grid.length());
  out.eps = lambda * lambda * c.eps;
  out.dt = lambda * lambda * lambda * c.dt;
  out.t_end = lambda * lambda * lambda * c.t_end;
  const double amp = 1.0 / (lambda * lambda);
  std::vector<RealField> states;
  states.reserve(traj.size());
  for (const auto& s : traj.states()) {
    std::vector<double> v(s.values().begin(), s.values().end());
    for (auto& x : v) x *= amp;
    states.emplace_back(out.grid, std::move(v));
  }
  return Trajectory(out, std::move(states));
}

/// lambda^-2 phi(lambda^-1 x) sampled on the dilated grid.
inline RealField scale_data(const RealField& phi, double lambda) {
  if (!is_power_of_two(lambda)) throw InvalidArgument("scaling factor must be a power of two");
  const Grid g(phi.grid().size(), lambda * phi.grid().length());
  std::vector<double> v(phi.values().begin(), phi.values().end());
  for (auto& x : v) x /= lambda * lambda;
  return RealField(g, std::move(v));
}

// Initial data.

inline RealField gaussian(const Grid& g, double amplitude, double width, double center = 0.0) {
  return RealField::sample(g, [&](double x) {
    const double z = (x - center) / width;
    return amplitude * std::exp(-z * z);
  });
}

/// KdV soliton 3c sech^2(sqrt(c)/2 (x - x0)), travelling at speed c when eps = 0.
inline RealField soliton(const Grid& g, double speed, double center = 0.0) {
  return RealField::sample(g, [&](double x) {
    const double s = 1.0 / std::cosh(0.5 * std::sqrt(speed) * (x - center));
    return 3.0 * speed * s * s;
  });
}

}  // namespace kawahara::evolve
