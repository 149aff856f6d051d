// Where the stationary points of the Kawahara phase sit, and how the bracket
// Gamma behaves across them, for a few eps.

#include <cstdio>

#include "kawahara/dispersion.hpp"
#include "kawahara/projectors.hpp"
#include "kawahara/region_sweeps.hpp"

using namespace kawahara;
using namespace kawahara::dispersion;

int main() {
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const DispersionParams p(eps);
    const auto sp = stationary_points(p);
    const auto J = j_eps(p);
    const auto W = window_interval(p);
    std::printf("eps = %g\n", eps);
    std::printf("  phi' = 0 at |xi| = %.4f, phi'' = 0 at |xi| = %.4f\n", sp.xi_first, sp.xi_second);
    std::printf("  J_eps = [%.4f, %.4f], window = [%.4f, %.4f]\n", J.lo, J.hi, W.lo, W.hi);
    std::printf("  eta_A transition half-width %.4f\n", projectors::transition_half_width(p));

    SweepOptions o;
    o.samples = 200000;
    std::printf("  min Gamma high-low %.4f, window %.4f\n", sweep_high_low(p, o).min_gamma,
                sweep_window(p, o).min_gamma);
    for (double xi : {0.5 * sp.xi_first, sp.xi_first, 2.0 * sp.xi_first})
      std::printf("  xi = %9.4f  eta_A = %.6f  region %s\n", xi, projectors::eta_A(xi, p), to_string(classify_region(xi, p)));
  }
}
