#pragma once

// Discrete probes of the three linear estimates for the free evolution:
//   kato        sup_x ( int |P d_x U(t) phi|^2 dt )^(1/2)
//   strichartz  ( int sup_x |D^(1/4) P U(t) phi|^4 dt )^(1/4)
//   maximal     ( int sup_t |P U(t) phi|^2 dx )^(1/2)
// each divided by ||phi||_L2. Rectangle rule in t, exact max over grid/time samples.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/error.hpp"
#include "kawahara/projectors.hpp"
#include "kawahara/spectral_core.hpp"

namespace kawahara::dispersion {

enum class ProbeKind { kato, strichartz, maximal };

inline const char* to_string(ProbeKind k) noexcept {
  switch (k) {
    case ProbeKind::kato: return "kato";
    case ProbeKind::strichartz: return "strichartz";
    case ProbeKind::maximal: return "maximal";
  }
  return "?";
}

/// Uniform samples t_m = m * step, m = 0..count-1, inside [0, 1].
struct TimeGrid {
  double step;
  std::size_t count;

  static TimeGrid unit_interval(std::size_t count) {
    return {1.0 / static_cast<double>(count - 1), count};
  }
  double at(std::size_t m) const noexcept { return static_cast<double>(m) * step; }
};

/// The projector each estimate is stated with: P_A for kato, P_B for strichartz, P_<=2 for maximal.
inline projectors::Multiplier default_projector(ProbeKind kind, const Grid& g, const DispersionParams& p) {
  switch (kind) {
    case ProbeKind::kato: return projectors::Multiplier::A(g, p);
    case ProbeKind::strichartz: return projectors::Multiplier::B(g, p);
    case ProbeKind::maximal: return projectors::Multiplier::low(g, 1);
  }
  throw InvalidArgument("unknown probe kind");
}

/// Pass std::nullopt as projector to probe the unprojected evolution.
inline double strichartz_probe(const RealField& phi, const DispersionParams& p, ProbeKind kind,
                               const TimeGrid& times, const std::optional<projectors::Multiplier>& projector) {
  if (times.count < 64) throw InvalidArgument("probe needs at least 64 time samples");
  if (!(times.step > 0.0) || times.at(times.count - 1) > 1.0 + 1e-12)
    throw InvalidArgument("probe time samples must be uniform inside [0, 1]");
  const double norm = lebesgue_norms(phi).l2;
  if (norm == 0.0) throw InvalidArgument("probe needs nonzero data");

  const Grid& g = phi.grid();
  SpectralField base = forward(phi);
  if (projector) base = projectors::apply(*projector, base);
  if (kind == ProbeKind::kato) base = derivative(base, 1);
  if (kind == ProbeKind::strichartz) base = fractional_derivative(base, 0.25);

  const std::size_t n = g.size();
  const double dt = times.step;
  const double dx = g.dx();
  std::vector<double> column(n, 0.0);  // per-x accumulator: sum of |v|^2 or running max
  double time_acc = 0.0;

  for (std::size_t m = 0; m < times.count; ++m) {
    const auto v = detail::inverse_samples(g, propagator_apply(base, times.at(m), p).coeffs());
    switch (kind) {
      case ProbeKind::kato:
        for (std::size_t j = 0; j < n; ++j) column[j] += v[j] * v[j] * dt;
        break;
      case ProbeKind::strichartz: {
        double sup = 0.0;
        for (double x : v) sup = std::max(sup, std::abs(x));
        time_acc += std::pow(sup, 4.0) * dt;
        break;
      }
      case ProbeKind::maximal:
        for (std::size_t j = 0; j < n; ++j) column[j] = std::max(column[j], std::abs(v[j]));
        break;
    }
  }

  double value = 0.0;
  switch (kind) {
    case ProbeKind::kato:
      value = std::sqrt(*std::max_element(column.begin(), column.end()));
      break;
    case ProbeKind::strichartz:
      value = std::pow(time_acc, 0.25);
      break;
    case ProbeKind::maximal: {
      double acc = 0.0;
      for (double c : column) acc += c * c * dx;
      value = std::sqrt(acc);
      break;
    }
  }
  return value / norm;
}

}  // namespace kawahara::dispersion
