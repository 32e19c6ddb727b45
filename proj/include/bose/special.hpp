#pragma once

#include <functional>

namespace bose {

// Riemann zeta for real s != 1. Euler-Maclaurin for s > -1, the functional
// equation for s <= -1. Accurate to ~1e-15 relative over the range used here
// (s = 5/2 - k for the polylog expansions).
double riemann_zeta(double s);

// Bisection to floating-point interval collapse; f(lo) and f(hi) must have
// opposite signs. Returns the final midpoint.
double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi);

}  // namespace bose
