#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace bose {

// Smooth radial function with the second and third derivatives needed by the
// ball decomposition. Supply them analytically when available; the FD factory
// builds them from g alone.
struct SmoothRadial {
  std::function<double(double)> g;
  std::function<double(double)> d2;
  std::function<double(double)> d3;
};

SmoothRadial gaussian_radial();  // g(t) = e^{-t^2}

// High-order central finite differences on the even extension g(|t|).
// Throws numerical_error when halving the step moves the third derivative by
// more than noise_tol relative at the probe radii.
SmoothRadial fd_radial(std::function<double(double)> g, double h,
                       double noise_tol = 0.05);

// m(r) = r (g''(r) - r g'''(r)) / 72
double ball_m(const SmoothRadial& f, double r);

// m on a log-spaced grid of [r_min, r_max]
std::vector<std::pair<double, double>> ball_m_samples(const SmoothRadial& f,
                                                      double r_min, double r_max,
                                                      int count);

// integral_0^inf m(r) j(t/r) dr, which reproduces g(t); the integrand is
// supported on r >= t and cut at r_max where g has decayed.
double ball_reconstruct(const SmoothRadial& f, double t, double r_max);

// integral_a^b |m(r)| dr
double ball_abs_m_integral(const SmoothRadial& f, double a, double b);

// integral_a^inf r^6 |m(r)| dr (the rapid-decay remainder), cut at r_cut
double ball_weighted_tail(const SmoothRadial& f, double a, double r_cut);

}  // namespace bose
