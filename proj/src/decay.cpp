#include "bose/decay.hpp"

#include <algorithm>
#include <cmath>

#include "bose/errors.hpp"

namespace bose {
namespace {
constexpr double kPi = 3.14159265358979323846;
}

MomentumBump::MomentumBump(std::vector<double> coeff_u)
    : coeff_(std::move(coeff_u)) {
  if (coeff_.empty()) throw domain_error("MomentumBump: empty coefficients");
}

MomentumBump MomentumBump::stock() {
  // (u/4) (1 - u/4)^8 expanded in u, then normalized to sup norm 1
  std::vector<double> c(10, 0.0);
  double binom = 1.0;
  for (int k = 0; k <= 8; ++k) {
    c[k + 1] = 0.25 * binom * std::pow(-0.25, k);
    binom = binom * (8 - k) / (k + 1);
  }
  MomentumBump bump(std::move(c));
  const double sup = bump.sup_norm();
  for (double& v : bump.coeff_) v /= sup;
  return bump;
}

double MomentumBump::operator()(double q_norm) const {
  const double u = q_norm * q_norm;
  if (u >= 4.0) return 0.0;
  double acc = 0.0;
  for (std::size_t k = coeff_.size(); k-- > 0;) acc = acc * u + coeff_[k];
  return acc;
}

MomentumBump MomentumBump::laplacian() const {
  std::vector<double> out(std::max<std::size_t>(coeff_.size() - 1, 1), 0.0);
  for (std::size_t k = 1; k < coeff_.size(); ++k)
    out[k - 1] += coeff_[k] * 2.0 * k * (2.0 * k + 1.0);
  return MomentumBump(std::move(out));
}

double MomentumBump::sup_norm() const {
  double m = 0.0;
  const int samples = 200000;
  for (int i = 0; i <= samples; ++i)
    m = std::max(m, std::fabs((*this)(2.0 * i / samples)));
  return m;
}

double MomentumBump::laplacian_power_sup(int n) const {
  MomentumBump cur = *this;
  for (int i = 0; i < n; ++i) cur = cur.laplacian();
  return cur.sup_norm();
}

DecayCheck decay_bound_check(const MomentumBump& o, double s,
                             const Lattice& lat, int order_n) {
  if (order_n < 0 || order_n > 3)
    throw domain_error("decay_bound_check: n must lie in {0,1,2,3}");
  if (!(s > 0.0)) throw domain_error("decay_bound_check: s must be > 0");
  if (lat.max_momentum() < 2.0 / s)
    throw domain_error("decay_bound_check: profile not resolved by the lattice");

  Field mom(lat, Space::momentum);
  for (std::size_t i = 0; i < lat.sites(); ++i)
    mom.values[i] = o(s * lat.momentum_norm(i));
  Field u = fourier_inverse(mom);

  const double sup_n = o.laplacian_power_sup(order_n);
  const double L = lat.box();
  const double box_factor =
      std::pow(2.0 / (kPi * s) + 2.0 * (order_n + 1) / L, 3.0);
  // distance prefactor (pi s / (2 d))^{2n}: the chain
  //   |u| (16 d^2)^n <= |u| (2 L^2 sum_i (1 - cos(2 pi x_i / L)))^n
  // against mode-spacing (2 pi / L) second differences of o(s p) gives
  // (4 pi^2 s^2)^n on the transform side.
  const double dist_scale = kPi * s / 2.0;

  DecayCheck out;
  out.order_n = order_n;
  out.holds = true;
  out.min_margin = 1.0;
  for (std::size_t i = 0; i < lat.sites(); ++i)
    out.max_u = std::max(out.max_u, std::fabs(u.values[i]));

  // log-spaced shells for the envelope fit
  const int bins = 30;
  const double d_lo = s * 1.02, d_hi = 0.48 * L;
  std::vector<double> env(bins, 0.0);

  for (std::size_t i = 0; i < lat.sites(); ++i) {
    const double d = lat.distance_to_origin(i);
    if (d <= s) continue;
    const double lhs = std::fabs(u.values[i]);
    const double rhs =
        std::pow(dist_scale / d, 2.0 * order_n) * sup_n * box_factor;
    const double margin = (rhs - lhs) / rhs;
    if (margin < out.min_margin) out.min_margin = margin;
    if (lhs > rhs) out.holds = false;
    if (d >= d_lo && d <= d_hi) {
      const int b = std::min(
          bins - 1, static_cast<int>(std::log(d / d_lo) / std::log(d_hi / d_lo) * bins));
      env[b] = std::max(env[b], lhs);
    }
  }

  // least-squares slope of ln(env) vs ln(d), skipping empty or noise bins
  double sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = 0;
  for (int b = 0; b < bins; ++b) {
    if (env[b] <= 1e-10 * out.max_u) continue;
    const double d_mid =
        d_lo * std::exp(std::log(d_hi / d_lo) * (b + 0.5) / bins);
    const double x = std::log(d_mid), y = std::log(env[b]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    cnt += 1;
  }
  out.slope = cnt > 1 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  return out;
}

}  // namespace bose
