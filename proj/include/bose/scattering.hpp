#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bose/potential.hpp"

namespace bose {

enum class ScatteringMethod { ode, variational, closed_form };

struct ScatteringSolution {
  double a = 0.0;
  // sampled u(r) = r * phi_v(r), zero inside a hard core
  std::vector<double> profile_r;
  std::vector<double> profile_u;
  double tail_fit_residual = 0.0;
  ScatteringMethod method = ScatteringMethod::ode;
  double tail_slope = 0.0;  // c in the affine tail u = c (r - a)
};

// Radial zero-energy problem u'' = q(r) u. The interaction kernel q is the
// potential itself for the public entry points below; operator-inequality
// checks that need the pair (relative-coordinate) scattering length pass
// q = v/2 through this hook instead.
struct RadialKernel {
  std::function<double(double)> q;
  std::vector<double> breakpoints;
  double range_R0 = 0.0;
  double core_radius = 0.0;  // integration starts here with u = 0
};

RadialKernel kernel_of(const RadialPotential& p, double scale = 1.0);
RadialKernel kernel_of(const TruncatedPotential& p, double scale = 1.0);

ScatteringSolution scattering_length_ode_kernel(const RadialKernel& k,
                                                double r_max, int steps = 512);

// Shooting method: integrate u outward from u = 0 (at the origin, or at the
// core radius for a hard core) and extract a from the affine tail by least
// squares over [R0, r_max]. Rejects negative potentials; the attractive well
// is served by its closed form only.
ScatteringSolution scattering_length_ode(const RadialPotential& p,
                                         double r_max = 0.0, int steps = 512);
ScatteringSolution scattering_length_ode(const TruncatedPotential& p,
                                         double r_max = 0.0, int steps = 512);

// Minimize integral_{|x|<=R} (|grad phi|^2 + v phi^2) over phi(R) = 1 on a
// uniform radial mesh and invert 4 pi a / (1 - a/R) for a. Converges at
// O(mesh^-2).
ScatteringSolution scattering_length_variational(const RadialPotential& p,
                                                 double R, int mesh);
ScatteringSolution scattering_length_variational(const TruncatedPotential& p,
                                                 double R, int mesh);

// a-tilde of the truncated hard sphere of core a at budget scale phi:
// a (1 - sqrt(a/(6 phi)) tanh sqrt(6 phi / a)).
double hard_sphere_truncated_a(double a, double phi);

// Scattering length R0 (1 - tan(lambda)/lambda) of the attractive test well;
// lambda = 0 returns the limit 0, lambda >= pi/2 is past the bound-state
// threshold and rejected.
double attractive_well_a(double lambda, double R0);

}  // namespace bose
