// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kawahara/dispersion.hpp"
#include "kawahara/evolve.hpp"
#include "kawahara/harness/config.hpp"
#include "kawahara/harness/experiments.hpp"
#include "kawahara/projectors.hpp"

using namespace kawahara;
namespace kh = kawahara::harness;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

kh::ExperimentConfig config(const char* name) {
  return kh::load_config(std::string(KAWAHARA_SOURCE_DIR) + "/configs/" + name + ".cfg");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Largest measured value among checks whose name starts with `prefix`.
double measured(const kh::Report& r, const std::string& prefix) {
  double out = -INFINITY;
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) out = std::max(out, c.measured);
  return out;
}

double measured_min(const kh::Report& r, const std::string& prefix) {
  double out = INFINITY;
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) out = std::min(out, c.measured);
  return out;
}

bool checks_pass(const kh::Report& r, const std::string& prefix) {
  bool any = false;
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) {
      any = true;
      if (!c.passed) return false;
    }
  return any;
}

void print_failures(const kh::Report& r) {
  for (const auto& c : r.checks)
    if (!c.passed)
      std::printf("      failed check %s: %s %s %s\n", c.name.c_str(), fmt(c.measured).c_str(), c.relation.c_str(),
                  fmt(c.bound).c_str());
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = o.passed && secs < limit_s;
  if (!ok) ++failures;
  std::printf("criterion %2d %s  %s  [%s]  %.2f s (limit %g s)\n", id, ok ? "PASS" : "FAIL", title, o.detail.c_str(),
              secs, limit_s);
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "resonance identity", 1.0, [] {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> xs(-100.0, 100.0), es(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double xi = xs(rng), xi1 = xs(rng), eps = es(rng);
      const dispersion::DispersionParams p(eps);
      const double xi2 = xi - xi1;
      const double closed = xi * xi1 * xi2 * (3.0 - 5.0 * eps * (xi * xi - xi1 * xi2));
      const double direct = dispersion::resonance(xi, xi1, p);
      const double terms =
          std::abs(dispersion::phase(xi, p)) + std::abs(dispersion::phase(xi1, p)) + std::abs(dispersion::phase(xi2, p));
      worst = std::max(worst, std::abs(direct - closed) / std::max(std::abs(closed), 1e-6 * terms));
    }
    return Outcome{worst <= 1e-10, "max relative deviation " + fmt(worst)};
  });

  criterion(2, "frequency-region constants", 30.0, [] {
    const auto r = kh::run_regions(config("regions"));
    print_failures(r);
    return Outcome{r.passed(), "min gamma high-low " + fmt(measured_min(r, "gamma_high_low")) +
                                   ", window " + fmt(measured_min(r, "gamma_window")) + ", sup eta_A Lipschitz ratio " +
                                   fmt(measured(r, "eta_A_lipschitz"))};
  });

  criterion(3, "projector identities", 5.0, [] {
    const Grid g(2048, 64.0 * std::numbers::pi);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (double eps : {1e-2, 1e-3}) {
      const dispersion::DispersionParams p(eps);
      const auto A = projectors::Multiplier::A(g, p), cA = projectors::Multiplier::A_complement(g, p),
                 B = projectors::Multiplier::B(g, p);
      for (int f = 0; f < 50; ++f) {
        std::vector<double> v(g.size());
        for (auto& x : v) x = normal(rng);
        const auto s = forward(RealField(g, std::move(v)));
        const double scale = s.max_abs();
        worst = std::max(worst, max_abs_difference(apply(A, s) + apply(cA, s), s) / scale);
        worst = std::max(worst, max_abs_difference(apply(B, apply(cA, s)), apply(cA, s)) / scale);
      }
    }
    return Outcome{worst <= 1e-14, "100 fields, max relative deviation " + fmt(worst)};
  });

  // Criteria 4 (drift part), 5 and 6 share the pinned-scenario runs.
  const auto reference = config("reference");
  std::optional<kh::Report> converge;
  double converge_secs = 0.0;
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      converge = kh::run_converge(reference);
    } catch (const std::exception& e) {
      std::printf("      converge run failed: %s\n", e.what());
    }
    converge_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  criterion(4, "solver validation", 300.0 - converge_secs, [&] {
    const Grid gs(1024, 64.0 * std::numbers::pi);
    evolve::SolverConfig sc;
    sc.grid = gs;
    sc.eps = 0.0;
    sc.t_end = 1.0;
    sc.dt = 1e-3;
    sc.sample_every = 100;
    const auto sol = evolve::solve(evolve::soliton(gs, 1.0), sc);
    const double soliton_err = l2_distance(sol.states().back(), evolve::soliton(gs, 1.0, 1.0));

    const Grid g(256, 16.0 * std::numbers::pi);
    const auto phi = evolve::gaussian(g, 1.0, 2.0);
    double lo = INFINITY, hi = -INFINITY;
    for (double eps : {0.0, 1e-2}) {
      evolve::SolverConfig c;
      c.grid = g;
      c.eps = eps;
      c.t_end = 1.0;
      c.sample_every = 1;
      c.dt = 1.0 / 4096;
      const auto ref = evolve::solve(phi, c).states().back();
      std::vector<double> err;
      for (double dt : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
        c.dt = dt;
        err.push_back(l2_distance(evolve::solve(phi, c).states().back(), ref));
      }
      for (std::size_t i = 1; i < err.size(); ++i) {
        const double order = std::log2(err[i - 1] / err[i]);
        lo = std::min(lo, order);
        hi = std::max(hi, order);
      }
    }
    const bool drifts = converge && checks_pass(*converge, "mass_drift") && checks_pass(*converge, "l2_drift") &&
                        checks_pass(*converge, "hamiltonian_drift");
    const bool ok = soliton_err <= 1e-6 && lo >= 3.7 && hi <= 4.3 && drifts;
    std::string d = "soliton L2 error " + fmt(soliton_err) + ", order in [" + fmt(lo) + ", " + fmt(hi) + "]";
    if (converge)
      d += ", drifts mass/L2/H " + fmt(measured(*converge, "mass_drift")) + "/" + fmt(measured(*converge, "l2_drift")) +
           "/" + fmt(measured(*converge, "hamiltonian_drift"));
    return Outcome{ok, d};
  });

  criterion(5, "dispersive limit", 600.0 - converge_secs, [&] {
    if (!converge) return Outcome{false, "no converge report"};
    print_failures(*converge);
    const bool ok = checks_pass(*converge, "errors_strictly_decreasing s=1") &&
                    checks_pass(*converge, "loglog_slope_min s=1") && checks_pass(*converge, "loglog_slope_max s=1") &&
                    checks_pass(*converge, "sampled_sup_vs_2x_denser");
    const auto& t = converge->table("converge");
    const auto s = t.column("s"), e = t.column("sup_error");
    std::string errs;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] == 1.0) errs += (errs.empty() ? "" : " ") + fmt(e[i]);
    return Outcome{ok, "H1 errors " + errs + ", slope " + fmt(measured(*converge, "loglog_slope_min s=1")) +
                           ", shared pinned runs " + fmt(converge_secs) + " s"};
  });

  criterion(6, "uniform H1 bound", 600.0, [&] {
    if (!converge) return Outcome{false, "no converge report"};
    return Outcome{checks_pass(*converge, "uniform_bound s=1"),
                   "max ratio " + fmt(measured(*converge, "uniform_bound s=1")) + " (bound 2)"};
  });

  criterion(7, "equi-continuity", 600.0, [&] {
    const auto r = kh::run_equicontinuity(reference);
    print_failures(r);
    const auto& t = r.table("equicont_summary");
    const auto h1 = t.column("sup_eps_h1");
    std::string resp;
    for (double v : h1) resp += (resp.empty() ? "" : " ") + fmt(v);
    return Outcome{r.passed(), "sup-eps H1 response " + resp + ", L2 Lipschitz ratio " +
                                   fmt(measured(r, "l2_lipschitz_ratio"))};
  });

  criterion(8, "scaling symmetry", 120.0, [&] {
    const auto r = kh::run_scaling(reference);
    print_failures(r);
    return Outcome{r.passed(), "lambda 2, max L2 mismatch " + fmt(measured(r, "scaling_mismatch"))};
  });

  criterion(9, "Strichartz uniformity", 300.0, [] {
    const auto r = kh::run_strichartz(config("strichartz"));
    print_failures(r);
    return Outcome{r.passed(), "spreads kato " + fmt(measured(r, "spread_over_eps kato")) + " strichartz " +
                                   fmt(measured(r, "spread_over_eps strichartz")) + " maximal " +
                                   fmt(measured(r, "spread_over_eps maximal")) + ", packet gain " +
                                   fmt(measured(r, "unprojected_over_projected_kato"))};
  });

  criterion(10, "Bourgain factorization", 120.0, [&] {
    const auto r = kh::run_xsb(reference);
    print_failures(r);
    return Outcome{r.passed(), "max spread-1 " + fmt(measured(r, "factorization_spread")) + " (tolerance 0.05)"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
