#pragma once

#include <functional>
#include <vector>

namespace bose {

// Adaptive 15-point Gauss-Kronrod quadrature over [a, b]. Subdivides until
// the embedded error estimate meets rel_tol * |result| + abs_tol on every
// panel. Throws numerical_error when the panel budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 1e-14);

// Same, but splits [a, b] at the given interior breakpoints first (for
// integrands with known kinks or jumps).
double integrate_segmented(const std::function<double(double)>& f, double a,
                           double b, const std::vector<double>& breakpoints,
                           double rel_tol = 1e-12, double abs_tol = 1e-14);

// Integral over [a, inf) via the map r = a + u/(1-u). The integrand must
// decay fast enough to be integrable under this substitution.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double rel_tol = 1e-12, double abs_tol = 1e-14);

}  // namespace bose
