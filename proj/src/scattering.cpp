#include "bose/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "bose/errors.hpp"

namespace bose {
namespace {

constexpr double kPiHalf = 1.5707963267948966;

struct State {
  double u, du;
};

// Dormand-Prince 5(4) pair.
State rk45_segment(const std::function<double(double)>& q, double r0, double r1,
                   State y, double rel_tol) {
  if (r1 <= r0) return y;
  auto rhs = [&](double r, const State& s) -> State {
    return {s.du, q(r) * s.u};
  };
  double h = (r1 - r0) / 16.0;
  double r = r0;
  int accepted = 0;
  while (r < r1) {
    if (accepted > 2000000) throw numerical_error("scattering ode: step control stalled");
    h = std::min(h, r1 - r);
    const State k1 = rhs(r, y);
    State y2{y.u + h * (1.0 / 5) * k1.u, y.du + h * (1.0 / 5) * k1.du};
    const State k2 = rhs(r + h / 5, y2);
    State y3{y.u + h * (3.0 / 40 * k1.u + 9.0 / 40 * k2.u),
             y.du + h * (3.0 / 40 * k1.du + 9.0 / 40 * k2.du)};
    const State k3 = rhs(r + 3.0 / 10 * h, y3);
    State y4{y.u + h * (44.0 / 45 * k1.u - 56.0 / 15 * k2.u + 32.0 / 9 * k3.u),
             y.du + h * (44.0 / 45 * k1.du - 56.0 / 15 * k2.du + 32.0 / 9 * k3.du)};
    const State k4 = rhs(r + 4.0 / 5 * h, y4);
    State y5{y.u + h * (19372.0 / 6561 * k1.u - 25360.0 / 2187 * k2.u +
                        64448.0 / 6561 * k3.u - 212.0 / 729 * k4.u),
             y.du + h * (19372.0 / 6561 * k1.du - 25360.0 / 2187 * k2.du +
                         64448.0 / 6561 * k3.du - 212.0 / 729 * k4.du)};
    const State k5 = rhs(r + 8.0 / 9 * h, y5);
    State y6{y.u + h * (9017.0 / 3168 * k1.u - 355.0 / 33 * k2.u +
                        46732.0 / 5247 * k3.u + 49.0 / 176 * k4.u -
                        5103.0 / 18656 * k5.u),
             y.du + h * (9017.0 / 3168 * k1.du - 355.0 / 33 * k2.du +
                         46732.0 / 5247 * k3.du + 49.0 / 176 * k4.du -
                         5103.0 / 18656 * k5.du)};
    const State k6 = rhs(r + h, y6);
    State y7{y.u + h * (35.0 / 384 * k1.u + 500.0 / 1113 * k3.u +
                        125.0 / 192 * k4.u - 2187.0 / 6784 * k5.u +
                        11.0 / 84 * k6.u),
             y.du + h * (35.0 / 384 * k1.du + 500.0 / 1113 * k3.du +
                         125.0 / 192 * k4.du - 2187.0 / 6784 * k5.du +
                         11.0 / 84 * k6.du)};
    const State k7 = rhs(r + h, y7);
    const double e_u =
        h * ((35.0 / 384 - 5179.0 / 57600) * k1.u +
             (500.0 / 1113 - 7571.0 / 16695) * k3.u +
             (125.0 / 192 - 393.0 / 640) * k4.u +
             (-2187.0 / 6784 + 92097.0 / 339200) * k5.u +
             (11.0 / 84 - 187.0 / 2100) * k6.u - 1.0 / 40 * k7.u);
    const double e_du =
        h * ((35.0 / 384 - 5179.0 / 57600) * k1.du +
             (500.0 / 1113 - 7571.0 / 16695) * k3.du +
             (125.0 / 192 - 393.0 / 640) * k4.du +
             (-2187.0 / 6784 + 92097.0 / 339200) * k5.du +
             (11.0 / 84 - 187.0 / 2100) * k6.du - 1.0 / 40 * k7.du);
    const double scale_u = std::max({1e-30, std::fabs(y.u), std::fabs(y7.u)});
    const double scale_du = std::max({1e-30, std::fabs(y.du), std::fabs(y7.du)});
    const double err = std::max(std::fabs(e_u) / scale_u, std::fabs(e_du) / scale_du);
    if (err <= rel_tol || h <= 1e-14 * (r1 - r0)) {
      r += h;
      y = y7;
      ++accepted;
    }
    const double factor =
        (err > 0.0) ? 0.9 * std::pow(rel_tol / err, 0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return y;
}

ScatteringSolution solve_kernel(const RadialKernel& k, double r_max, int steps,
                                bool reject_negative) {
  if (!(r_max > k.range_R0))
    throw domain_error("scattering ode: r_max must exceed the range R0");
  if (steps < 8) throw domain_error("scattering ode: steps must be >= 8");
  if (reject_negative) {
    for (double r = k.core_radius; r <= k.range_R0;
         r += std::max(1e-4, k.range_R0 / 4096.0))
      if (k.q(r) < 0.0)
        throw domain_error("scattering ode: negative potentials not supported");
  }

  // sample grid; breakpoints folded in so every segment is smooth
  std::vector<double> stops;
  stops.reserve(static_cast<std::size_t>(steps) + k.breakpoints.size() + 2);
  for (int i = 0; i <= steps; ++i)
    stops.push_back(r_max * static_cast<double>(i) / steps);
  for (double b : k.breakpoints)
    if (b > 0.0 && b < r_max) stops.push_back(b);
  stops.push_back(k.core_radius);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  ScatteringSolution sol;
  sol.method = ScatteringMethod::ode;
  State y{0.0, 1.0};
  double r_prev = k.core_radius;
  const double rel_tol = 1e-10;
  for (double r : stops) {
    if (r < k.core_radius) {
      sol.profile_r.push_back(r);
      sol.profile_u.push_back(0.0);
      continue;
    }
    y = rk45_segment(k.q, r_prev, r, y, rel_tol);
    r_prev = r;
    sol.profile_r.push_back(r);
    sol.profile_u.push_back(y.u);
  }

  // affine tail u = alpha + beta r over [R0, r_max], least squares
  double sw = 0, sr = 0, su = 0, srr = 0, sru = 0;
  for (std::size_t i = 0; i < sol.profile_r.size(); ++i) {
    const double r = sol.profile_r[i];
    if (r < k.range_R0) continue;
    sw += 1.0;
    sr += r;
    su += sol.profile_u[i];
    srr += r * r;
    sru += r * sol.profile_u[i];
  }
  const double det = sw * srr - sr * sr;
  if (sw < 2.0 || det == 0.0)
    throw numerical_error("scattering ode: degenerate tail window");
  const double beta = (sw * sru - sr * su) / det;
  const double alpha = (su - beta * sr) / sw;
  if (beta == 0.0) throw numerical_error("scattering ode: flat tail");
  sol.a = -alpha / beta;
  sol.tail_slope = beta;
  double ss_res = 0, ss_tot = 0;
  for (std::size_t i = 0; i < sol.profile_r.size(); ++i) {
    const double r = sol.profile_r[i];
    if (r < k.range_R0) continue;
    const double fit = alpha + beta * r;
    ss_res += (sol.profile_u[i] - fit) * (sol.profile_u[i] - fit);
    ss_tot += sol.profile_u[i] * sol.profile_u[i];
  }
  sol.tail_fit_residual = ss_tot > 0.0 ? std::sqrt(ss_res / ss_tot) : 0.0;
  return sol;
}

template <class P>
ScatteringSolution variational_impl(const P& p, double core, double R,
                                    int mesh) {
  if (mesh < 16) throw domain_error("variational: mesh must be >= 16");
  if (R < p.range()) throw domain_error("variational: R must be >= R0");
  if (core >= R) throw domain_error("variational: hard core covers R");
  const int m = mesh;
  const double dr = R / m;
  // per-cell geometric weight integral r^2 dr and potential weight
  // integral r^2 v dr (mid-sampled on a fine sub-grid; cells are small)
  std::vector<double> w2(m), pv(m);
  for (int i = 0; i < m; ++i) {
    const double r1 = i * dr, r2 = (i + 1) * dr;
    w2[i] = (r2 * r2 * r2 - r1 * r1 * r1) / 3.0;
    double acc = 0.0;
    const int sub = 8;
    for (int ssub = 0; ssub < sub; ++ssub) {
      const double rm = r1 + (ssub + 0.5) * (r2 - r1) / sub;
      const double v = (rm <= core) ? 0.0 : p(rm);
      acc += rm * rm * v * (r2 - r1) / sub;
    }
    pv[i] = acc;
  }
  // unknowns phi_0..phi_{m-1}; phi_m = 1; nodes at r <= core pinned to 0
  std::vector<double> diag(m, 0.0), lower(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
  for (int j = 0; j < m; ++j) {
    double d = w2[j] / (dr * dr) + pv[j] / 4.0;
    if (j > 0) d += w2[j - 1] / (dr * dr) + pv[j - 1] / 4.0;
    diag[j] = d;
    if (j > 0) lower[j] = -w2[j - 1] / (dr * dr) + pv[j - 1] / 4.0;
    if (j < m - 1) upper[j] = -w2[j] / (dr * dr) + pv[j] / 4.0;
  }
  rhs[m - 1] = w2[m - 1] / (dr * dr) - pv[m - 1] / 4.0;
  // Dirichlet rows for hard-core nodes
  for (int j = 0; j < m; ++j) {
    if (core > 0.0 && j * dr <= core) {
      diag[j] = 1.0;
      lower[j] = upper[j] = rhs[j] = 0.0;
      if (j + 1 < m) lower[j + 1] = 0.0;
    }
  }
  // Thomas solve
  std::vector<double> cp(m), dp(m);
  cp[0] = upper[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (int j = 1; j < m; ++j) {
    const double denom = diag[j] - lower[j] * cp[j - 1];
    if (denom == 0.0) throw numerical_error("variational: singular tridiagonal");
    cp[j] = upper[j] / denom;
    dp[j] = (rhs[j] - lower[j] * dp[j - 1]) / denom;
  }
  std::vector<double> phi(m + 1);
  phi[m] = 1.0;
  phi[m - 1] = dp[m - 1];
  for (int j = m - 2; j >= 0; --j) phi[j] = dp[j] - cp[j] * phi[j + 1];

  double e = 0.0;  // radial energy integral (full value is 4 pi e)
  for (int i = 0; i < m; ++i) {
    const double g = (phi[i + 1] - phi[i]) / dr;
    const double mid = 0.5 * (phi[i] + phi[i + 1]);
    e += g * g * w2[i] + pv[i] * mid * mid;
  }
  ScatteringSolution sol;
  sol.method = ScatteringMethod::variational;
  sol.a = e / (1.0 + e / R);
  sol.profile_r.resize(m + 1);
  sol.profile_u.resize(m + 1);
  for (int j = 0; j <= m; ++j) {
    sol.profile_r[j] = j * dr;
    sol.profile_u[j] = j * dr * phi[j];
  }
  return sol;
}

}  // namespace

RadialKernel kernel_of(const RadialPotential& p, double scale) {
  RadialKernel k;
  k.range_R0 = p.range();
  k.core_radius = p.core_radius();
  k.breakpoints = p.breakpoints();
  k.q = [p, scale](double r) {
    return r <= p.core_radius() ? 0.0 : scale * p(r);
  };
  return k;
}

RadialKernel kernel_of(const TruncatedPotential& p, double scale) {
  RadialKernel k;
  k.range_R0 = p.range();
  k.core_radius = 0.0;  // a truncated potential is finite everywhere
  k.breakpoints = p.breakpoints();
  k.q = [p, scale](double r) { return scale * p(r); };
  return k;
}

ScatteringSolution scattering_length_ode_kernel(const RadialKernel& k,
                                                double r_max, int steps) {
  return solve_kernel(k, r_max, steps, /*reject_negative=*/false);
}

ScatteringSolution scattering_length_ode(const RadialPotential& p,
                                         double r_max, int steps) {
  if (p.kind() == PotentialKind::attractive_well)
    throw domain_error("scattering ode: negative potentials not supported");
  if (r_max <= 0.0) r_max = 5.0 * std::max(p.range(), 1.0);
  return solve_kernel(kernel_of(p), r_max, steps, /*reject_negative=*/true);
}

ScatteringSolution scattering_length_ode(const TruncatedPotential& p,
                                         double r_max, int steps) {
  if (r_max <= 0.0) r_max = 5.0 * std::max(p.range(), 1.0);
  return solve_kernel(kernel_of(p), r_max, steps, /*reject_negative=*/true);
}

ScatteringSolution scattering_length_variational(const RadialPotential& p,
                                                 double R, int mesh) {
  if (p.kind() == PotentialKind::attractive_well)
    throw domain_error("variational: negative potentials not supported");
  return variational_impl(p, p.core_radius(), R, mesh);
}

ScatteringSolution scattering_length_variational(const TruncatedPotential& p,
                                                 double R, int mesh) {
  return variational_impl(p, 0.0, R, mesh);
}

double hard_sphere_truncated_a(double a, double phi) {
  if (!(a > 0.0)) throw domain_error("hard_sphere_truncated_a: a must be > 0");
  if (!(phi > 0.0)) throw domain_error("hard_sphere_truncated_a: phi must be > 0");
  return a * (1.0 - std::sqrt(a / (6.0 * phi)) * std::tanh(std::sqrt(6.0 * phi / a)));
}

double attractive_well_a(double lambda, double R0) {
  if (!(R0 > 0.0)) throw domain_error("attractive_well_a: R0 must be > 0");
  if (lambda < 0.0 || lambda >= kPiHalf)
    throw domain_error("attractive_well_a: lambda must lie in [0, pi/2)");
  if (lambda == 0.0) return 0.0;
  return R0 * (1.0 - std::tan(lambda) / lambda);
}

}  // namespace bose
