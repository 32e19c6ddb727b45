#include "bose/ball_decomp.hpp"

#include <cmath>

#include "bose/errors.hpp"
#include "bose/hatfn.hpp"
#include "bose/quadrature.hpp"

namespace bose {

SmoothRadial gaussian_radial() {
  SmoothRadial f;
  f.g = [](double t) { return std::exp(-t * t); };
  f.d2 = [](double t) { return (4.0 * t * t - 2.0) * std::exp(-t * t); };
  f.d3 = [](double t) { return (12.0 * t - 8.0 * t * t * t) * std::exp(-t * t); };
  return f;
}

SmoothRadial fd_radial(std::function<double(double)> g, double h,
                       double noise_tol) {
  auto even = [g](double t) { return g(std::fabs(t)); };
  auto d2_at = [even](double x, double hh) {
    return (-even(x - 2 * hh) + 16.0 * even(x - hh) - 30.0 * even(x) +
            16.0 * even(x + hh) - even(x + 2 * hh)) /
           (12.0 * hh * hh);
  };
  auto d3_at = [even](double x, double hh) {
    return (even(x - 3 * hh) - 8.0 * even(x - 2 * hh) + 13.0 * even(x - hh) -
            13.0 * even(x + hh) + 8.0 * even(x + 2 * hh) - even(x + 3 * hh)) /
           (8.0 * hh * hh * hh);
  };
  // step-halving noise probe
  double scale = 0.0, worst = 0.0;
  for (double x : {0.3, 0.7, 1.3, 2.1}) {
    const double a = d3_at(x, h);
    const double b = d3_at(x, h / 2.0);
    scale = std::max({scale, std::fabs(a), std::fabs(b)});
    worst = std::max(worst, std::fabs(a - b));
  }
  if (scale > 0.0 && worst > noise_tol * scale)
    throw numerical_error("fd_radial: derivative noise exceeds tolerance");
  SmoothRadial f;
  f.g = even;
  f.d2 = [d2_at, h](double t) { return d2_at(t, h); };
  f.d3 = [d3_at, h](double t) { return d3_at(t, h); };
  return f;
}

double ball_m(const SmoothRadial& f, double r) {
  return r * (f.d2(r) - r * f.d3(r)) / 72.0;
}

std::vector<std::pair<double, double>> ball_m_samples(const SmoothRadial& f,
                                                      double r_min, double r_max,
                                                      int count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || count < 2)
    throw domain_error("ball_m_samples: bad grid");
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  const double ratio = std::log(r_max / r_min);
  for (int i = 0; i < count; ++i) {
    const double r = r_min * std::exp(ratio * i / (count - 1));
    out.emplace_back(r, ball_m(f, r));
  }
  return out;
}

double ball_reconstruct(const SmoothRadial& f, double t, double r_max) {
  if (t < 0.0) throw domain_error("ball_reconstruct: t must be >= 0");
  if (r_max <= t) throw domain_error("ball_reconstruct: r_max must exceed t");
  auto integrand = [&](double r) { return ball_m(f, r) * hat_j(t / r); };
  // j(t/r) vanishes for r < t, so only [t, r_max] contributes
  return integrate(integrand, std::max(t, 1e-12), r_max, 1e-10, 1e-13);
}

double ball_abs_m_integral(const SmoothRadial& f, double a, double b) {
  return integrate([&](double r) { return std::fabs(ball_m(f, r)); }, a, b,
                   1e-9, 1e-13);
}

double ball_weighted_tail(const SmoothRadial& f, double a, double r_cut) {
  if (r_cut <= a) return 0.0;
  return integrate(
      [&](double r) {
        const double r2 = r * r;
        return r2 * r2 * r2 * std::fabs(ball_m(f, r));
      },
      a, r_cut, 1e-9, 1e-13);
}

}  // namespace bose
