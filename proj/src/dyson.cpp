#include "bose/dyson.hpp"

#include <fftw3.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "bose/errors.hpp"
#include "bose/hatfn.hpp"
#include "bose/lanczos.hpp"
#include "bose/scattering.hpp"
#include "bose/simd.hpp"

namespace bose {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPiHalf = 1.5707963267948966;

std::array<double, 3> snap_to_lattice(const Lattice& lat,
                                      const std::array<double, 3>& p) {
  const double dr = lat.spacing();
  std::array<double, 3> out;
  for (int axis = 0; axis < 3; ++axis) {
    double cell = std::round(p[axis] / dr);
    cell = std::fmod(cell, static_cast<double>(lat.n()));
    if (cell < 0) cell += lat.n();
    out[axis] = cell * dr;
  }
  return out;
}

// kinetic multiplier applied in momentum space through an FFT round trip
struct SpectralOperator {
  const Lattice& lat;
  std::vector<double> kin;   // multiplier per mode
  std::vector<double> vpos;  // position-diagonal part
  mutable std::vector<std::complex<double>> buf_in, buf_out;
  fftw_plan fwd = nullptr, bwd = nullptr;

  SpectralOperator(const Lattice& l, std::vector<double> k, std::vector<double> v)
      : lat(l), kin(std::move(k)), vpos(std::move(v)),
        buf_in(l.sites()), buf_out(l.sites()) {
    const int n = lat.n();
    fwd = fftw_plan_dft_3d(n, n, n,
                           reinterpret_cast<fftw_complex*>(buf_in.data()),
                           reinterpret_cast<fftw_complex*>(buf_out.data()),
                           FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_3d(n, n, n,
                           reinterpret_cast<fftw_complex*>(buf_out.data()),
                           reinterpret_cast<fftw_complex*>(buf_in.data()),
                           FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~SpectralOperator() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  SpectralOperator(const SpectralOperator&) = delete;
  SpectralOperator& operator=(const SpectralOperator&) = delete;

  void apply(const double* in, double* out) const {
    const std::size_t n = lat.sites();
    for (std::size_t i = 0; i < n; ++i) buf_in[i] = in[i];
    fftw_execute(fwd);
    for (std::size_t i = 0; i < n; ++i) buf_out[i] *= kin[i];
    fftw_execute(bwd);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = buf_in[i].real() * scale;
    simd::active().mul_add(vpos.data(), in, out, n);
  }
};

}  // namespace

nlohmann::json DysonCheckConfig::to_json() const {
  nlohmann::json sc = nlohmann::json::array();
  for (const auto& y : scatterers) sc.push_back({y[0], y[1], y[2]});
  return {{"scatterers", sc},
          {"R", R},
          {"epsilon", epsilon},
          {"kappa", kappa},
          {"u_choice", u_choice == UChoice::hat ? "hat" : "hat_with_hole"},
          {"seed", seed}};
}

std::vector<std::array<double, 3>> sample_scatterers(double box_L, int count,
                                                     double min_dist,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, box_L);
  std::vector<std::array<double, 3>> pts;
  auto min_image = [box_L](double d) {
    d = std::fabs(std::fmod(d, box_L));
    return std::min(d, box_L - d);
  };
  int attempts = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > 100000)
      throw numerical_error("sample_scatterers: rejection sampling stalled");
    std::array<double, 3> p{uni(rng), uni(rng), uni(rng)};
    bool ok = true;
    for (const auto& q : pts) {
      double d2 = 0.0;
      for (int axis = 0; axis < 3; ++axis) {
        const double d = min_image(p[axis] - q[axis]);
        d2 += d * d;
      }
      if (d2 < min_dist * min_dist) {
        ok = false;
        break;
      }
    }
    if (ok) pts.push_back(p);
  }
  return pts;
}

std::vector<std::size_t> separated_subset(
    const std::vector<std::array<double, 3>>& points, double box_L,
    double min_dist) {
  auto dist = [box_L](const std::array<double, 3>& p,
                      const std::array<double, 3>& q) {
    double d2 = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      double d = std::fabs(std::fmod(p[axis] - q[axis], box_L));
      d = std::min(d, box_L - d);
      d2 += d * d;
    }
    return std::sqrt(d2);
  };
  const std::size_t n = points.size();
  std::vector<bool> selected(n, false);
  // pass 1: points already isolated from everything else
  for (std::size_t i = 0; i < n; ++i) {
    double nn = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) nn = std::min(nn, dist(points[i], points[k]));
    if (nn >= min_dist) selected[i] = true;
  }
  // pass 2: index-order scan keeping the selection separated
  for (std::size_t i = 0; i < n; ++i) {
    if (selected[i]) continue;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k)
      if (selected[k] && dist(points[i], points[k]) < min_dist) ok = false;
    if (ok) selected[i] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (selected[i]) out.push_back(i);
  return out;
}

DysonVerdict verify_dyson(const DysonCheckConfig& config,
                          const TruncatedPotential& potential,
                          const CutoffProfile& cutoff, const Lattice& lat) {
  const double r0 = potential.range();
  const double dr = lat.spacing();
  if (!(config.R > 0.0) || config.R >= lat.box() / 2.0)
    throw domain_error("verify_dyson: need 0 < R < box/2");
  if (config.R <= r0) throw domain_error("verify_dyson: need R > R0");
  if (!(config.epsilon > 0.0)) throw domain_error("verify_dyson: epsilon must be > 0");
  DysonVerdict verdict;
  verdict.coarse_grid = r0 < 4.0 * dr;
  if (config.enforce_resolution && r0 < 2.0 * dr)
    throw domain_error("verify_dyson: interaction range under 2 cells");

  // pair (relative-coordinate) scattering length of tilde-v: u'' = (v/2) u
  const RadialKernel pair_kernel = kernel_of(potential, 0.5);
  const double r_max = 5.0 * std::max(r0, 1.0);
  verdict.a_pair = scattering_length_ode_kernel(pair_kernel, r_max).a;

  double coupling = verdict.a_pair;  // coefficient of the hat term
  verdict.a_prime = verdict.a_pair;
  verdict.kappa_prime = config.kappa;
  if (config.u_choice == UChoice::hat) {
    // hole-filled variant: softened coupling a' and kinetic floor kappa'.
    // Only meaningful when R0 < R/10; a' may go negative otherwise (the
    // resulting inequality is then vacuous but still well defined).
    const double rten = config.R / 10.0;
    const double denom = rten * rten * rten - r0 * r0 * r0;
    if (denom <= 0.0)
      throw domain_error("verify_dyson: hat variant needs R0 < R/10");
    const double hole_corr = 18.0 / std::pow(kPi / 4.0, 3.0) * (4.0 - kPi) *
                             (r0 * r0 * r0) / denom / hat_j(0.1);
    verdict.kappa_prime =
        config.kappa - 24.0 * verdict.a_pair / (kPi * kPi) * (4.0 * r0) *
                           (4.0 * r0) / (config.R * config.R * config.R);
    verdict.a_prime = verdict.a_pair * (1.0 - config.epsilon) *
                      (1.0 - config.kappa) * (1.0 - hole_corr);
    coupling = verdict.a_prime;
  }

  Field h = build_h(lat, cutoff);
  Field fR = build_fR(h, config.R);
  Field wR = build_wR(fR);

  std::vector<std::array<double, 3>> sites;
  sites.reserve(config.scatterers.size());
  for (const auto& y : config.scatterers) sites.push_back(snap_to_lattice(lat, y));

  std::vector<double> vpos(lat.sites(), 0.0);
  const double r3 = config.R * config.R * config.R;
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    double vsum = 0.0;
    double tmin = std::numeric_limits<double>::infinity();
    for (const auto& y : sites) {
      const double d = lat.site_distance(i, y);
      vsum += potential(d);
      tmin = std::min(tmin, d);
    }
    double u = 0.0;
    if (!sites.empty() && tmin <= config.R) {
      const bool outside_hole =
          config.u_choice == UChoice::hat || tmin >= r0;
      if (outside_hole) u = hat_j(tmin / config.R) / r3;
    }
    double hat_coef = (config.u_choice == UChoice::hat)
                          ? coupling
                          : (1.0 - config.epsilon) * coupling;
    vpos[i] = 0.5 * vsum - hat_coef * u;
  }
  // + (a_pair / epsilon) sum_i w_R(x - y_i)
  const int n = lat.n();
  for (const auto& y : sites) {
    const auto c = std::array<int, 3>{
        static_cast<int>(std::round(y[0] / dr)),
        static_cast<int>(std::round(y[1] / dr)),
        static_cast<int>(std::round(y[2] / dr))};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          vpos[lat.index(i, j, k)] +=
              verdict.a_pair / config.epsilon *
              wR.values[lat.index(i - c[0], j - c[1], k - c[2])];
  }

  std::vector<double> kin(lat.sites());
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    const double p = lat.momentum_norm(i);
    const double chi = cutoff.chi(p);
    if (config.u_choice == UChoice::hat) {
      kin[i] = p * p * ((1.0 - config.kappa + verdict.kappa_prime) -
                        (1.0 - config.kappa) * chi * chi);
    } else {
      kin[i] = p * p * chi * chi;
    }
  }

  SpectralOperator op(lat, std::move(kin), std::move(vpos));
  auto apply = [&op](const double* in, double* out) { op.apply(in, out); };
  EigenResult eig;
  if (lat.n() < 16)
    eig = dense_smallest(apply, lat.sites());
  else
    eig = lanczos_smallest(apply, lat.sites(), 500, 1e-9);
  if (!eig.converged)
    throw numerical_error("verify_dyson: eigensolver did not converge");
  verdict.min_eigenvalue = eig.eigenvalue;
  verdict.residual = eig.residual;
  verdict.iterations = eig.iterations;
  verdict.converged = eig.converged;
  return verdict;
}

nlohmann::json DysonVerdict::to_json(double tol_disc) const {
  return {{"inequality", "dyson"},
          {"eigenvalue", min_eigenvalue},
          {"residual", residual},
          {"tol_disc", tol_disc},
          {"a_pair", a_pair},
          {"a_prime", a_prime},
          {"kappa_prime", kappa_prime},
          {"iterations", iterations},
          {"converged", converged},
          {"coarse_grid", coarse_grid}};
}

HoleVerdict verify_hole_lemma(double R0, double R, double lambda, int mesh) {
  if (lambda < 0.0 || lambda >= kPiHalf)
    throw domain_error("verify_hole_lemma: lambda must lie in [0, pi/2)");
  if (!(R0 > 0.0) || !(R0 < R / 10.0))
    throw domain_error("verify_hole_lemma: need 0 < R0 < R/10");
  if (mesh < 256) throw domain_error("verify_hole_lemma: mesh must be >= 256");

  const double rten = R / 10.0;
  const double dr = rten / mesh;
  const double well = lambda * lambda / (R0 * R0);
  const double tl = lambda == 0.0 ? 0.0 : std::tan(lambda) / lambda - 1.0;
  const double c = 3.0 * R0 / (rten * rten * rten - R0 * R0 * R0) * tl;

  // finite-volume cells with exact third-moment masses; free ends
  std::vector<double> mass(mesh), wellw(mesh), flux(mesh - 1);
  for (int i = 0; i < mesh; ++i) {
    const double rl = i * dr, ru = (i + 1) * dr;
    mass[i] = (ru * ru * ru - rl * rl * rl) / 3.0;
    const double rw = std::min(ru, R0), lw = std::min(rl, R0);
    wellw[i] = rw > lw ? (rw * rw * rw - lw * lw * lw) / 3.0 : 0.0;
  }
  for (int i = 0; i + 1 < mesh; ++i) {
    const double rf = (i + 1) * dr;
    flux[i] = rf * rf / dr;
  }
  Eigen::VectorXd diag(mesh), off(mesh - 1);
  for (int i = 0; i < mesh; ++i) {
    double k = 0.0;
    if (i > 0) k += flux[i - 1];
    if (i + 1 < mesh) k += flux[i];
    diag[i] = (k - well * wellw[i] + c * mass[i]) / mass[i];
  }
  for (int i = 0; i + 1 < mesh; ++i)
    off[i] = -flux[i] / std::sqrt(mass[i] * mass[i + 1]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw numerical_error("verify_hole_lemma: eigensolve failed");
  int which = 0;
  solver.eigenvalues().minCoeff(&which);

  HoleVerdict verdict;
  verdict.min_eigenvalue = solver.eigenvalues()[which];
  verdict.bound_constant = c;
  verdict.minimizer.resize(mesh);
  verdict.cell_centers.resize(mesh);
  for (int i = 0; i < mesh; ++i) {
    verdict.cell_centers[i] = (i + 0.5) * dr;
    // undo the mass scaling to recover the radial profile
    verdict.minimizer[i] = solver.eigenvectors()(i, which) / std::sqrt(mass[i]);
  }
  return verdict;
}

nlohmann::json HoleVerdict::to_json(double tol_disc) const {
  return {{"inequality", "hole_filling"},
          {"eigenvalue", min_eigenvalue},
          {"tol_disc", tol_disc},
          {"bound_constant", bound_constant}};
}

}  // namespace bose
