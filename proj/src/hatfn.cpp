#include "bose/hatfn.hpp"

#include <algorithm>
#include <cmath>

#include "bose/errors.hpp"
#include "bose/quadrature.hpp"

namespace bose {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double hat_j(double t) {
  if (t < 0.0) throw domain_error("hat_j: t must be >= 0");
  const double m = std::max(1.0 - t, 0.0);
  return 12.0 * (t + 2.0) * m * m;
}

double hat_moment() {
  return integrate([](double t) { return t * t * hat_j(t); }, 0.0, 1.0, 1e-14,
                   1e-16);
}

double hat_j_overlap(double t) {
  if (t < 0.0) throw domain_error("hat_j_overlap: t must be >= 0");
  if (t >= 1.0) return 0.0;
  // lens = two symmetric caps; the cross-section at height z along the axis
  // is a disc of radius^2 = 1/4 - z^2
  const double volume =
      2.0 * kPi *
      integrate([](double z) { return 0.25 - z * z; }, t / 2.0, 0.5, 1e-14,
                1e-16);
  return 144.0 / kPi * volume;
}

}  // namespace bose
