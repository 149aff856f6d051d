// Propagates a KdV soliton and a Kawahara perturbation of it, printing the
// distance between the two and the conserved quantities every tenth of a time unit.

#include <cstdio>
#include <numbers>

#include "kawahara/evolve.hpp"

using namespace kawahara;

int main() {
  const Grid g(1024, 64.0 * std::numbers::pi);
  const auto phi = evolve::soliton(g, 1.0);

  evolve::SolverConfig cfg;
  cfg.grid = g;
  cfg.t_end = 1.0;
  cfg.dt = 1e-3;
  cfg.sample_every = 100;

  const auto kdv = evolve::solve(phi, cfg);
  cfg.eps = 1e-3;
  const auto kaw = evolve::solve(phi, cfg);

  std::printf("%6s %14s %14s %14s %14s\n", "t", "|u_eps-u_0|_H1", "exact err", "mass", "H_eps");
  for (std::size_t m = 0; m < kdv.size(); ++m) {
    const double t = kdv.times()[m];
    const double h1 = sobolev_norm(forward(kaw.state(m)) - forward(kdv.state(m)), {1.0});
    const double exact = l2_distance(kdv.state(m), evolve::soliton(g, 1.0, t));
    const auto q = evolve::conserved(kaw.state(m), dispersion::DispersionParams(cfg.eps));
    std::printf("%6.2f %14.6e %14.6e %14.10f %14.10f\n", t, h1, exact, q.mass, q.hamiltonian);
  }
}
