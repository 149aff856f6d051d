#pragma once

// Experiment runners behind the CLI subcommands. Each returns a Report whose
// tables are merged in eps order, so output is independent of the thread count.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "kawahara/bourgain.hpp"
#include "kawahara/dispersion.hpp"
#include "kawahara/evolve.hpp"
#include "kawahara/harness/config.hpp"
#include "kawahara/harness/csv.hpp"
#include "kawahara/harness/report.hpp"
#include "kawahara/linear_estimates.hpp"
#include "kawahara/parallel.hpp"
#include "kawahara/projectors.hpp"
#include "kawahara/region_sweeps.hpp"
#include "kawahara/trajectory_io.hpp"

namespace kawahara::harness {

using dispersion::DispersionParams;

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  // trajectory artifacts are written only when set
  unsigned threads = 1;
};

// Drift tolerances on mass, L2 and the Hamiltonian (relative).
inline constexpr double kMassDriftTolerance = 1e-10;
inline constexpr double kL2DriftTolerance = 1e-8;
inline constexpr double kHamiltonianDriftTolerance = 1e-6;

inline RealField make_data(const ExperimentConfig& c, const Grid& g) {
  if (c.data == "soliton") return evolve::soliton(g, c.speed, c.center);
  return evolve::gaussian(g, c.amplitude, c.width, c.center);
}

inline evolve::SolverConfig solver_config(const ExperimentConfig& c, double eps, bool nonlinear = true) {
  evolve::SolverConfig s;
  s.grid = c.grid();
  s.eps = eps;
  s.t_end = c.t_end;
  s.dt = c.dt;
  s.sample_every = c.sample_every;
  s.nonlinear = nonlinear;
  return s;
}

/// The eps = 0 reference: half the step on the same grid, sampled at the same times.
inline evolve::SolverConfig reference_config(const ExperimentConfig& c) {
  auto s = solver_config(c, 0.0);
  s.dt = 0.5 * c.dt;
  s.sample_every = 2 * c.sample_every;
  return s;
}

/// sup over sampled times of ||a(t) - b(t)||_{H^s}.
inline double sup_distance(const evolve::Trajectory& a, const evolve::Trajectory& b, double s) {
  if (a.size() != b.size()) throw InvalidArgument("trajectories have different sample counts");
  double out = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m)
    out = std::max(out, sobolev_norm(forward(a.state(m)) - forward(b.state(m)), {s}));
  return out;
}

inline double sup_norm(const evolve::Trajectory& a, double s) {
  double out = 0.0;
  for (const auto& u : a.states()) out = std::max(out, sobolev_norm(u, {s}));
  return out;
}

/// Least-squares slope of log(y) against log(x); NaN when any y <= 0 or fewer than two points.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

namespace detail {

inline std::string eps_tag(std::size_t i) { return "eps" + std::to_string(i); }

inline void save_artifact(const RunOptions& o, Report& r, const std::string& name, const evolve::Trajectory& t) {
  if (!o.out_dir) return;
  std::filesystem::create_directories(*o.out_dir);
  io::save_trajectory(*o.out_dir / name, t);
  r.artifacts.push_back(name);
}

inline bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

inline bool norm_is_nonzero(const RealField& u) { return lebesgue_norms(u).l2 > 0.0; }

inline double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

}  // namespace detail

// ---------------------------------------------------------------- simulate

inline Report run_simulate(const ExperimentConfig& c, const RunOptions& o = {}) {
  validate(c);
  Report r{Experiment::simulate, config_hash(c, Experiment::simulate), {}, {}, {}};
  const Grid g = c.grid();
  const RealField phi = make_data(c, g);
  std::vector<std::optional<evolve::Trajectory>> runs(c.eps.size());
  parallel_for(c.eps.size(), o.threads, [&](std::size_t i) { runs[i] = evolve::solve(phi, solver_config(c, c.eps[i])); });

  CsvTable t({"eps", "t", "mass", "l2", "hamiltonian", "artifact", "config_hash"});
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& tr = *runs[i];
    const std::string name = "simulate_" + detail::eps_tag(i) + ".kwt";
    detail::save_artifact(o, r, name, tr);
    for (std::size_t m = 0; m < tr.size(); ++m) {
      const auto& q = tr.conserved_log()[m];
      t.add_row({c.eps[i], tr.times()[m], q.mass, q.l2, q.hamiltonian, name, r.config_hash});
    }
  }
  r.tables.emplace_back("simulate_conserved", std::move(t));
  return r;
}

// ---------------------------------------------------------------- converge (+ uniform bound)

inline Report run_converge(const ExperimentConfig& c, const RunOptions& o = {}) {
  validate(c);
  Report r{Experiment::converge, config_hash(c, Experiment::converge), {}, {}, {}};
  const Grid g = c.grid();
  const RealField phi = make_data(c, g);
  const std::size_t E = c.eps.size();

  // Slot E holds the reference run.
  std::vector<std::optional<evolve::Trajectory>> runs(E + 1);
  parallel_for(E + 1, o.threads, [&](std::size_t i) {
    try {
      runs[i] = evolve::solve(phi, i < E ? solver_config(c, c.eps[i]) : reference_config(c));
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " [eps = " + format_real(i < E ? c.eps[i] : 0.0) + "]", e.time());
    }
  });
  const auto& ref = *runs[E];
  detail::save_artifact(o, r, "converge_ref.kwt", ref);

  CsvTable rows({"eps", "s", "sup_error", "endpoint_norm", "uniform_ratio", "mass_drift", "l2_drift",
                 "hamiltonian_drift", "artifact", "reference", "config_hash"});
  std::vector<std::vector<double>> errors(c.s_list.size(), std::vector<double>(E));
  std::vector<double> max_ratio(c.s_list.size(), 0.0);
  for (std::size_t i = 0; i < E; ++i) {
    const auto& tr = *runs[i];
    const std::string name = "converge_" + detail::eps_tag(i) + ".kwt";
    detail::save_artifact(o, r, name, tr);
    for (std::size_t k = 0; k < c.s_list.size(); ++k) {
      const double s = c.s_list[k];
      const double err = sup_distance(tr, ref, s);
      const double norm0 = sobolev_norm(phi, {s});
      const double ratio = norm0 > 0.0 ? sup_norm(tr, s) / norm0 : 0.0;
      errors[k][i] = err;
      max_ratio[k] = std::max(max_ratio[k], ratio);
      rows.add_row({c.eps[i], s, err, sobolev_norm(tr.states().back(), {s}), ratio, tr.mass_drift(), tr.l2_drift(),
                    tr.hamiltonian_drift(), name, std::string("converge_ref.kwt"), r.config_hash});
    }
    const std::string tag = "eps=" + format_real(c.eps[i]);
    if (detail::norm_is_nonzero(phi)) {
      r.checks.push_back(check_le("mass_drift " + tag, tr.mass_drift(), kMassDriftTolerance));
      r.checks.push_back(check_le("l2_drift " + tag, tr.l2_drift(), kL2DriftTolerance));
      r.checks.push_back(check_le("hamiltonian_drift " + tag, tr.hamiltonian_drift(), kHamiltonianDriftTolerance));
    }
  }

  CsvTable slopes({"s", "slope", "strictly_decreasing", "max_uniform_ratio", "config_hash"});
  for (std::size_t k = 0; k < c.s_list.size(); ++k) {
    const auto& e = errors[k];
    const bool all_zero = std::all_of(e.begin(), e.end(), [](double v) { return v == 0.0; });
    const bool decreasing = all_zero || detail::strictly_decreasing(e);
    const double slope = loglog_slope(c.eps, e);
    slopes.add_row({c.s_list[k], slope, std::string(decreasing ? "true" : "false"), max_ratio[k], r.config_hash});
    const std::string tag = "s=" + format_real(c.s_list[k]);
    if (E > 1) r.checks.push_back(check_true("errors_strictly_decreasing " + tag, decreasing));
    if (all_zero) {
      r.checks.push_back(check_le("sup_error_zero_data " + tag, *std::max_element(e.begin(), e.end()), 0.0));
    } else if (c.assert_slope && E > 1) {
      r.checks.push_back(check_ge("loglog_slope_min " + tag, slope, c.slope_min));
      r.checks.push_back(check_le("loglog_slope_max " + tag, slope, c.slope_max));
    }
    r.checks.push_back(check_le("uniform_bound " + tag, max_ratio[k], c.uniform_bound));
  }

  // Sampled sup against a 2x denser sampling, once per scenario on the largest eps.
  if (c.sample_every % 2 == 0 && detail::norm_is_nonzero(phi)) {
    auto dense_cfg = solver_config(c, c.eps.front());
    dense_cfg.sample_every = c.sample_every / 2;
    auto dense_ref_cfg = reference_config(c);
    dense_ref_cfg.sample_every = c.sample_every;
    std::optional<evolve::Trajectory> dense, dense_ref;
    parallel_for(2, o.threads, [&](std::size_t i) {
      if (i == 0) dense = evolve::solve(phi, dense_cfg);
      else dense_ref = evolve::solve(phi, dense_ref_cfg);
    });
    const double s = c.s_list.back();
    const double coarse = errors.back().front();
    const double fine = sup_distance(*dense, *dense_ref, s);
    r.checks.push_back(check_le("sampled_sup_vs_2x_denser", std::abs(fine - coarse) / fine, 0.01));
  }

  r.tables.emplace_back("converge", std::move(rows));
  r.tables.emplace_back("converge_slopes", std::move(slopes));
  return r;
}

// ---------------------------------------------------------------- equicontinuity

inline Report run_equicontinuity(const ExperimentConfig& c, const RunOptions& o = {}) {
  validate(c);
  Report r{Experiment::equicont, config_hash(c, Experiment::equicont), {}, {}, {}};
  const Grid g = c.grid();
  const RealField phi = make_data(c, g);
  const RealField bump = evolve::gaussian(g, 1.0, c.bump_width, c.bump_center);
  const std::size_t E = c.eps.size(), D = c.deltas.size();

  std::vector<std::optional<evolve::Trajectory>> base(E);
  parallel_for(E, o.threads, [&](std::size_t i) { base[i] = evolve::solve(phi, solver_config(c, c.eps[i])); });

  struct Cell {
    double h1 = 0.0, l2 = 0.0, ratio = 0.0;
  };
  std::vector<Cell> cells(D * E);
  parallel_for(D * E, o.threads, [&](std::size_t idx) {
    const std::size_t d = idx / E, i = idx % E;
    std::vector<double> v(phi.values().begin(), phi.values().end());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] += c.deltas[d] * bump[j];
    const auto pert = evolve::solve(RealField(g, std::move(v)), solver_config(c, c.eps[i]));
    const auto& b = *base[i];
    Cell out;
    const double w0 = l2_distance(b.state(0), pert.state(0));
    for (std::size_t m = 0; m < b.size(); ++m) {
      const auto w = forward(b.state(m)) - forward(pert.state(m));
      out.h1 = std::max(out.h1, sobolev_norm(w, {1.0}));
      out.l2 = std::max(out.l2, sobolev_norm(w, {0.0}));
    }
    out.ratio = w0 > 0.0 ? out.l2 / w0 : 0.0;
    cells[idx] = out;
  });

  CsvTable rows({"delta", "eps", "sup_h1", "sup_l2", "lipschitz_ratio", "config_hash"});
  CsvTable summary({"delta", "sup_eps_h1", "max_lipschitz_ratio", "config_hash"});
  std::vector<std::pair<double, double>> response;  // (delta, sup over eps of H1 response)
  double max_ratio = 0.0;
  for (std::size_t d = 0; d < D; ++d) {
    double sup_h1 = 0.0, ratio = 0.0;
    for (std::size_t i = 0; i < E; ++i) {
      const auto& cell = cells[d * E + i];
      rows.add_row({c.deltas[d], c.eps[i], cell.h1, cell.l2, cell.ratio, r.config_hash});
      sup_h1 = std::max(sup_h1, cell.h1);
      ratio = std::max(ratio, cell.ratio);
    }
    summary.add_row({c.deltas[d], sup_h1, ratio, r.config_hash});
    response.emplace_back(c.deltas[d], sup_h1);
    max_ratio = std::max(max_ratio, ratio);
    if (c.deltas[d] == 0.0) r.checks.push_back(check_le("zero_perturbation_response", sup_h1, 0.0));
  }
  std::sort(response.begin(), response.end(), [](auto a, auto b) { return a.first > b.first; });
  bool monotone = true;
  for (std::size_t k = 1; k < response.size(); ++k)
    if (response[k].first < response[k - 1].first && !(response[k].second < response[k - 1].second)) monotone = false;
  if (response.size() > 1) r.checks.push_back(check_true("response_decreases_with_delta", monotone));
  r.checks.push_back(check_le("l2_lipschitz_ratio", max_ratio, c.lipschitz_bound));

  r.tables.emplace_back("equicont", std::move(rows));
  r.tables.emplace_back("equicont_summary", std::move(summary));
  return r;
}

// ---------------------------------------------------------------- scaling

inline Report run_scaling(const ExperimentConfig& c, const RunOptions& o = {}) {
  validate(c);
  if (!evolve::is_power_of_two(c.lambda)) throw ConfigError("lambda must be a power of two");
  Report r{Experiment::scaling, config_hash(c, Experiment::scaling), {}, {}, {}};
  const Grid g = c.grid();
  const RealField phi = make_data(c, g);
  const std::size_t E = c.eps.size();
  std::vector<double> mismatch(E, 0.0), mapped_eps(E, 0.0);
  parallel_for(E, o.threads, [&](std::size_t i) {
    const auto tr = evolve::solve(phi, solver_config(c, c.eps[i]));
    const auto mapped = evolve::scaling_map(tr, c.lambda);
    const auto direct = evolve::solve(evolve::scale_data(phi, c.lambda), mapped.config());
    double worst = 0.0;
    for (std::size_t m = 0; m < direct.size(); ++m)
      worst = std::max(worst, l2_distance(direct.state(m), mapped.state(m)));
    mismatch[i] = worst;
    mapped_eps[i] = mapped.config().eps;
  });
  CsvTable rows({"eps", "lambda", "scaled_eps", "l2_mismatch", "config_hash"});
  for (std::size_t i = 0; i < E; ++i) {
    rows.add_row({c.eps[i], c.lambda, mapped_eps[i], mismatch[i], r.config_hash});
    r.checks.push_back(check_le("scaling_mismatch eps=" + format_real(c.eps[i]), mismatch[i], c.scaling_tolerance));
  }
  r.tables.emplace_back("scaling", std::move(rows));
  return r;
}

// ---------------------------------------------------------------- strichartz probes

inline Report run_strichartz(const ExperimentConfig& c, const RunOptions& o = {}) {
  validate(c);
  Report r{Experiment::strichartz, config_hash(c, Experiment::strichartz), {}, {}, {}};
  using dispersion::ProbeKind;
  const Grid g = c.grid();
  const auto times = dispersion::TimeGrid::unit_interval(c.probe_times);
  const RealField narrow = evolve::gaussian(g, 1.0, c.probe_width);
  const double k1 = std::max(1.0, std::round(g.length() / (2.0 * std::numbers::pi))) * g.fundamental();
  const RealField wave = RealField::sample(g, [&](double x) { return std::cos(k1 * x); });
  const std::array<ProbeKind, 3> kinds{ProbeKind::kato, ProbeKind::strichartz, ProbeKind::maximal};
  const std::size_t E = c.eps.size();

  std::vector<double> values(3 * E);
  parallel_for(3 * E, o.threads, [&](std::size_t idx) {
    const auto kind = kinds[idx / E];
    const DispersionParams p(c.eps[idx % E]);
    values[idx] = dispersion::strichartz_probe(kind == ProbeKind::maximal ? wave : narrow, p, kind, times,
                                               dispersion::default_projector(kind, g, p));
  });

  CsvTable rows({"probe", "eps", "projected", "constant", "config_hash"});
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<double> v(values.begin() + k * E, values.begin() + (k + 1) * E);
    for (std::size_t i = 0; i < E; ++i)
      rows.add_row({std::string(to_string(kinds[k])), c.eps[i], std::string("true"), v[i], r.config_hash});
    r.checks.push_back(check_lt(std::string("spread_over_eps ") + to_string(kinds[k]), detail::spread(v), c.probe_spread));
  }

  // Packet sitting on the first stationary point: the smoothing gain is lost without P_A.
  const DispersionParams pp(c.packet_eps);
  const double xi0 = dispersion::stationary_points(pp).xi_first;
  const RealField packet = RealField::sample(g, [&](double x) { return std::exp(-x * x / 16.0) * std::cos(xi0 * x); });
  const double bare = dispersion::strichartz_probe(packet, pp, ProbeKind::kato, times, std::nullopt);
  const double proj = dispersion::strichartz_probe(packet, pp, ProbeKind::kato, times,
                                                   dispersion::default_projector(ProbeKind::kato, g, pp));
  rows.add_row({std::string("kato_stationary_packet"), c.packet_eps, std::string("false"), bare, r.config_hash});
  rows.add_row({std::string("kato_stationary_packet"), c.packet_eps, std::string("true"), proj, r.config_hash});
  const double gain = proj > 0.0 ? bare / proj : std::numeric_limits<double>::infinity();
  r.checks.push_back(check_gt("unprojected_over_projected_kato", gain, c.packet_gain));

  r.tables.emplace_back("strichartz", std::move(rows));
  return r;
}

// ---------------------------------------------------------------- region sweeps

inline Report run_regions(const ExperimentConfig& c, const RunOptions& o = {}) {
  validate(c);
  Report r{Experiment::regions, config_hash(c, Experiment::regions), {}, {}, {}};
  dispersion::SweepOptions opts;
  opts.samples = c.region_samples;
  opts.seed = c.seed;
  opts.threads = o.threads;

  CsvTable rows({"eps", "sweep", "samples", "measured_min", "measured_max", "bound", "pass", "config_hash"});
  auto add = [&](double eps, const std::string& sweep, std::size_t n, double lo, double hi, double bound, bool ok) {
    rows.add_row({eps, sweep, static_cast<std::int64_t>(n), lo, hi, bound, std::string(ok ? "PASS" : "FAIL"), r.config_hash});
  };

  {
    const auto kdv = dispersion::sweep_gamma_range(DispersionParams(0.0), 1e4, opts);
    const bool ok = kdv.min_gamma == 3.0 && kdv.max_gamma == 3.0;
    add(0.0, "gamma_kdv", kdv.samples, kdv.min_gamma, kdv.max_gamma, 3.0, ok);
    r.checks.push_back({"gamma_kdv eps=0", kdv.min_gamma, "==", 3.0, ok});
  }
  for (double eps : c.eps) {
    const DispersionParams p(eps);
    const std::string tag = " eps=" + format_real(eps);
    const auto hl = dispersion::sweep_high_low(p, opts);
    add(eps, "gamma_high_low", hl.samples, hl.min_gamma, std::numeric_limits<double>::quiet_NaN(), 1.0 / 32.0,
        hl.min_gamma >= 1.0 / 32.0);
    add(eps, "sandwich_high_low", hl.samples, hl.min_sandwich, hl.max_sandwich, std::numeric_limits<double>::quiet_NaN(),
        true);
    r.checks.push_back(check_ge("gamma_high_low" + tag, hl.min_gamma, 1.0 / 32.0));

    const auto win = dispersion::sweep_window(p, opts);
    add(eps, "gamma_window", win.samples, win.min_gamma, std::numeric_limits<double>::quiet_NaN(), 3.0 / 16.0,
        win.min_gamma >= 3.0 / 16.0);
    r.checks.push_back(check_ge("gamma_window" + tag, win.min_gamma, 3.0 / 16.0));

    const auto mod = dispersion::sweep_modulation(p, opts);
    const bool mod_ok = mod.min_ratio > 0.0 && std::isfinite(mod.max_ratio);
    add(eps, "modulation_ratio", mod.samples, mod.min_ratio, mod.max_ratio, std::numeric_limits<double>::quiet_NaN(),
        mod_ok);
    r.checks.push_back(check_true("modulation_ratio_bounded" + tag, mod_ok));

    const auto lip = dispersion::sweep_eta_A_lipschitz(p, opts);
    add(eps, "eta_A_lipschitz", lip.samples, std::numeric_limits<double>::quiet_NaN(), lip.sup_ratio, lip.bound,
        lip.sup_ratio <= lip.bound);
    r.checks.push_back(check_le("eta_A_lipschitz" + tag, lip.sup_ratio, lip.bound));
  }
  {
    const DispersionParams p(c.vanishing_eps);
    const std::string tag = " eps=" + format_real(c.vanishing_eps);
    const auto van = dispersion::sweep_eta_A_vanishing(p, opts);
    add(c.vanishing_eps, "eta_A_vanishing", van.samples, 0.0, van.max_abs_difference, 0.0, van.max_abs_difference == 0.0);
    r.checks.push_back(check_le("eta_A_vanishing" + tag, van.max_abs_difference, 0.0));
    const auto lip = dispersion::sweep_eta_A_lipschitz(p, opts);
    add(c.vanishing_eps, "eta_A_lipschitz", lip.samples, std::numeric_limits<double>::quiet_NaN(), lip.sup_ratio,
        lip.bound, lip.sup_ratio <= lip.bound);
    r.checks.push_back(check_le("eta_A_lipschitz" + tag, lip.sup_ratio, lip.bound));
  }
  r.tables.emplace_back("regions", std::move(rows));
  return r;
}

// ---------------------------------------------------------------- space-time norms

inline Report run_xsb(const ExperimentConfig& c, const RunOptions& o = {}) {
  validate(c);
  Report r{Experiment::xsb, config_hash(c, Experiment::xsb), {}, {}, {}};
  const Grid g = c.grid();
  // The configured data and a second, differently shaped profile.
  const RealField shapes[2] = {make_data(c, g), c.data == "soliton" ? evolve::gaussian(g, c.amplitude, c.width, c.center)
                                                                     : evolve::soliton(g, c.speed, c.center)};
  const std::string shape_names[2] = {c.data, c.data == "soliton" ? "gaussian" : "soliton"};
  const std::size_t E = c.eps.size();

  struct Cell {
    std::vector<double> xsb;       // per (s, b) in s_list x b_list
    std::vector<double> xsbq;      // per (s, b, q) with q in {1, 2}
    std::vector<double> factor;    // xsb(0, b) / ||phi||_L2 per b (linear runs only)
    std::vector<double> window;    // C_{window,b} per b
    double low_fraction = 0.0;     // energy in sigma-shells <= bandwidth + 1
    bourgain::ModulationProfile profile;
  };
  // Cells: shape-major linear runs, then nonlinear runs of shape 0.
  const std::size_t lin = 2 * E;
  std::vector<Cell> cells(lin + E);
  std::vector<int> bandwidth(lin + E, 0);

  parallel_for(lin + E, o.threads, [&](std::size_t idx) {
    const bool linear = idx < lin;
    const std::size_t shape = linear ? idx / E : 0;
    const double eps = c.eps[idx % E];
    const auto tr = evolve::solve(shapes[shape], solver_config(c, eps, !linear));
    const auto w = bourgain::WindowSpec::for_trajectory(tr);
    const auto sp = bourgain::spacetime_transform(tr, w, linear ? "linear" : "nonlinear");
    const DispersionParams p(eps);
    Cell cell;
    for (double s : c.s_list)
      for (double b : c.b_list) {
        cell.xsb.push_back(bourgain::xsb_norm(sp, s, b, p));
        for (int q : {1, 2}) cell.xsbq.push_back(bourgain::xsbq_norm(sp, s, b, q, p));
      }
    const double l2 = lebesgue_norms(tr.state(0)).l2;
    for (double b : c.b_list) {
      cell.factor.push_back(bourgain::xsb_norm(sp, 0.0, b, p) / l2);
      cell.window.push_back(w.normalization(b));
    }
    cell.profile = bourgain::nonlinear_modulation_profile(sp, p);
    bandwidth[idx] = bourgain::window_bandwidth_shell(w);
    cell.low_fraction = cell.profile.fraction_up_to(bandwidth[idx] + 1);
    cells[idx] = std::move(cell);
  });

  CsvTable norms({"norm", "s", "b", "q", "eps", "run", "shape", "value", "config_hash"});
  CsvTable factor({"eps", "shape", "b", "ratio_to_l2", "window_normalization", "config_hash"});
  CsvTable hist({"eps", "run", "xi_shell", "sigma_shell", "energy_fraction", "config_hash"});
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const bool linear = idx < lin;
    const std::size_t shape = linear ? idx / E : 0;
    const double eps = c.eps[idx % E];
    const std::string run = linear ? "linear" : "nonlinear";
    const auto& cell = cells[idx];
    std::size_t a = 0, bq = 0;
    for (double s : c.s_list)
      for (double b : c.b_list) {
        norms.add_row({std::string("xsb"), s, b, std::int64_t{0}, eps, run, shape_names[shape], cell.xsb[a++], r.config_hash});
        for (int q : {1, 2})
          norms.add_row({std::string("xsbq"), s, b, std::int64_t{q}, eps, run, shape_names[shape], cell.xsbq[bq++],
                         r.config_hash});
      }
    if (linear) {
      for (std::size_t k = 0; k < c.b_list.size(); ++k)
        factor.add_row({eps, shape_names[shape], c.b_list[k], cell.factor[k], cell.window[k], r.config_hash});
      r.checks.push_back(check_ge("free_flow_low_modulation_fraction eps=" + format_real(eps) + " " + shape_names[shape],
                                  cell.low_fraction, 0.99));
    } else {
      for (const auto& bin : cell.profile.bins)
        hist.add_row({eps, run, std::int64_t{bin.xi_shell}, std::int64_t{bin.sigma_shell},
                      bin.energy / cell.profile.total, r.config_hash});
    }
  }
  for (std::size_t k = 0; k < c.b_list.size(); ++k) {
    std::vector<double> v;
    for (std::size_t idx = 0; idx < lin; ++idx) v.push_back(cells[idx].factor[k]);
    r.checks.push_back(check_le("factorization_spread b=" + format_real(c.b_list[k]), detail::spread(v) - 1.0,
                                c.factorization_tolerance));
  }

  // Report-only: a KdV soliton keeps its energy near the characteristic surface.
  {
    const auto tr = evolve::solve(evolve::soliton(g, c.speed, c.center), solver_config(c, 0.0));
    const auto w = bourgain::WindowSpec::for_trajectory(tr);
    const auto prof = bourgain::nonlinear_modulation_profile(bourgain::spacetime_transform(tr, w, "soliton"),
                                                             DispersionParams(0.0));
    for (const auto& bin : prof.bins)
      hist.add_row({0.0, std::string("soliton"), std::int64_t{bin.xi_shell}, std::int64_t{bin.sigma_shell},
                    bin.energy / prof.total, r.config_hash});
  }

  r.tables.emplace_back("xsb_norms", std::move(norms));
  r.tables.emplace_back("xsb_factorization", std::move(factor));
  r.tables.emplace_back("xsb_modulation", std::move(hist));
  return r;
}

inline Report run(Experiment e, const ExperimentConfig& c, const RunOptions& o = {}) {
  switch (e) {
    case Experiment::simulate: return run_simulate(c, o);
    case Experiment::converge: return run_converge(c, o);
    case Experiment::equicont: return run_equicontinuity(c, o);
    case Experiment::scaling: return run_scaling(c, o);
    case Experiment::strichartz: return run_strichartz(c, o);
    case Experiment::regions: return run_regions(c, o);
    case Experiment::xsb: return run_xsb(c, o);
  }
  throw ConfigError("unknown experiment");
}

/// Re-reads the trajectory artifacts of a converge report in `dir` and recomputes
/// the first row's sup error; returns |recomputed - reported|.
inline double reverify_converge(const std::filesystem::path& dir) {
  const auto rows = read_csv(dir / "converge.csv");
  if (rows.size() < 2) throw FormatError("converge.csv has no data rows");
  const auto& h = rows.front();
  auto col = [&](std::string_view name) {
    for (std::size_t i = 0; i < h.size(); ++i)
      if (h[i] == name) return i;
    throw FormatError("converge.csv lacks column " + std::string(name));
  };
  const auto& row = rows[1];
  const double s = detail::parse_real("s", row[col("s")]);
  const double reported = detail::parse_real("sup_error", row[col("sup_error")]);
  const auto tr = io::load_trajectory(dir / row[col("artifact")]);
  const auto ref = io::load_trajectory(dir / row[col("reference")]);
  return std::abs(sup_distance(tr, ref, s) - reported);
}

}  // namespace kawahara::harness
