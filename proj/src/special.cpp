#include "bose/special.hpp"

#include <cmath>

#include "bose/errors.hpp"

namespace bose {
namespace {

constexpr double kPi = 3.14159265358979323846;

// B_{2m}/(2m)! for m = 1..5
constexpr double kBernFact[5] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                 -1.0 / 1209600.0, 1.0 / 47900160.0};

double zeta_euler_maclaurin(double s) {
  const int n = 24;
  double sum = 0.0;
  for (int l = 1; l < n; ++l) sum += std::pow(static_cast<double>(l), -s);
  const double nd = static_cast<double>(n);
  sum += std::pow(nd, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(nd, -s);
  double rising = s;  // (s)_{2m-1}
  double npow = std::pow(nd, -s - 1.0);
  for (int m = 1; m <= 5; ++m) {
    sum += kBernFact[m - 1] * rising * npow;
    rising *= (s + 2.0 * m - 1.0) * (s + 2.0 * m);
    npow /= nd * nd;
  }
  return sum;
}

}  // namespace

double riemann_zeta(double s) {
  if (s == 1.0) throw domain_error("riemann_zeta: pole at s = 1");
  if (s > -1.0) return zeta_euler_maclaurin(s);
  const double t = 1.0 - s;  // t >= 2
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(0.5 * kPi * s) *
         std::tgamma(t) * zeta_euler_maclaurin(t);
}

double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw numerical_error("bisect_root: endpoints do not bracket a root");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bose
