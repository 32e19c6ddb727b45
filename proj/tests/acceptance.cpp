// Acceptance suite: one pass/fail line per criterion, every tolerance pinned.
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bose/ball_decomp.hpp"
#include "bose/bound.hpp"
#include "bose/decay.hpp"
#include "bose/dyson.hpp"
#include "bose/hatfn.hpp"
#include "bose/ideal_gas.hpp"
#include "bose/lattice.hpp"
#include "bose/potential.hpp"
#include "bose/scattering.hpp"
#include "bose/simd.hpp"

using namespace bose;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool note(int num, const char* what, bool ok) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, what);
  std::fflush(stdout);
  return ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("1. hard-sphere scattering length") {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (double r0 : {0.5, 1.0, 2.0}) {
    const auto sol = scattering_length_ode(RadialPotential::hard_core(r0));
    ok = ok && std::fabs(sol.a - r0) <= 1e-9 * r0;
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 1.0;
  CHECK(note(1, "ode a = R0 to 1e-9 for R0 in {0.5,1,2}, under 1 s", ok));
}

TEST_CASE("2. truncated hard sphere vs closed form and lemma bound") {
  bool ok = true;
  const double a = 1.0;
  for (double phi : {2.0, 10.0, 100.0}) {
    const auto tv = truncate(RadialPotential::hard_core(a), phi);
    const double ode = scattering_length_ode(tv).a;
    const double closed = hard_sphere_truncated_a(a, phi);
    ok = ok && std::fabs(ode - closed) <= 1e-6 * closed;
    const double eps = std::sqrt(a / phi);
    ok = ok && closed >= a * (1.0 - std::sqrt(a / phi)) * (1.0 - eps);
  }
  CHECK(note(2, "ode matches a(1-sqrt(a/6phi)tanh sqrt(6phi/a)) to 1e-6; lemma bound holds", ok));
}

TEST_CASE("3. variational route agrees and is R-independent") {
  bool ok = true;
  const auto hc = RadialPotential::hard_core(1.0);
  const auto tv = truncate(hc, 10.0);
  const double ode_hc = scattering_length_ode(hc).a;
  const double ode_tv = scattering_length_ode(tv).a;
  const double var_hc = scattering_length_variational(hc, 4.0, 4096).a;
  const double var_tv = scattering_length_variational(tv, 4.0, 4096).a;
  ok = ok && std::fabs(var_hc - ode_hc) <= 1e-4;
  ok = ok && std::fabs(var_tv - ode_tv) <= 1e-4;
  const double var_hc2 = scattering_length_variational(hc, 8.0, 4096).a;
  const double var_tv2 = scattering_length_variational(tv, 8.0, 4096).a;
  ok = ok && std::fabs(var_hc - var_hc2) <= 2e-4;
  ok = ok && std::fabs(var_tv - var_tv2) <= 2e-4;
  CHECK(note(3, "variational vs ode within 1e-4 at mesh 4096; R vs 2R within 2e-4", ok));
}

TEST_CASE("4. critical density: two routes and a series bracket") {
  bool ok = true;
  const double series = critical_density(1.0);
  const double quad = critical_density_quadrature(1.0);
  ok = ok && std::fabs(series - quad) <= 1e-8 * series;
  // independent bracket of g_{3/2}(1): partial sum + integral tail
  const std::uint64_t n = 10'000'000;
  const double s = simd::active().power_series(1.0, 3, n);
  const double lo = s + 2.0 / std::sqrt(double(n + 1));
  const double hi = s + 2.0 / std::sqrt(double(n));
  const double g = bose_fn(BoseIndex::three_half, 1.0);
  ok = ok && (hi - lo) <= 1e-10 && lo <= g && g <= hi;
  CHECK(note(4, "rho_c(1) routes agree to 1e-8; g_{3/2}(1) bracketed to 1e-10", ok));
}

TEST_CASE("5. mu0 residual at twenty sub-critical points") {
  bool ok = true;
  const double rc = critical_density(1.0);
  for (int i = 1; i <= 20; ++i) {
    const double rho = rc * i / 21.0;
    const double mu = mu0(1.0, rho);
    const double back = std::pow(4.0 * kPi, -1.5) *
                        bose_fn(BoseIndex::three_half, std::exp(mu));
    ok = ok && std::fabs(back - rho) <= 1e-10 * rho;
  }
  CHECK(note(5, "density equation residual <= 1e-10 relative at 20 points", ok));
}

TEST_CASE("6. scaling relation and df0/drho = mu0") {
  bool ok = true;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double beta = 0.5 * std::pow(2.0, i);
      const double rho = 0.02 * std::pow(2.5, j);
      const double lhs = f0(beta, rho);
      const double rhs =
          std::pow(rho, 5.0 / 3.0) * f0(beta * std::pow(rho, 2.0 / 3.0), 1.0);
      ok = ok && std::fabs(lhs - rhs) <= 1e-10 * std::fabs(lhs);
    }
  const double rc = critical_density(1.0);
  for (double rho : {0.4 * rc, 0.9 * rc, 2.0 * rc}) {
    const double h = 1e-5 * rho;
    const double d = (f0(1.0, rho + h) - f0(1.0, rho - h)) / (2.0 * h);
    ok = ok && std::fabs(d - mu0(1.0, rho)) <= 1e-6;
  }
  CHECK(note(6, "f0 scaling to 1e-10 on a 5x5 grid; df0/drho = mu0 to 1e-6", ok));
}

TEST_CASE("7. third rho-derivative discontinuity at rho_c") {
  const double rc = critical_density(1.0);
  auto f = [](double r) { return f0(1.0, r); };
  const double h = 5e-4 * rc;
  auto jump3 = [&](double c) {
    const double m = (f(c) - 3 * f(c - h) + 3 * f(c - 2 * h) - f(c - 3 * h)) / (h * h * h);
    const double p = (f(c + 3 * h) - 3 * f(c + 2 * h) + 3 * f(c + h) - f(c)) / (h * h * h);
    return p - m;
  };
  auto jump2 = [&](double c, double hh) {
    const double m = (f(c) - 2 * f(c - hh) + f(c - 2 * hh)) / (hh * hh);
    const double p = (f(c + 2 * hh) - 2 * f(c + hh) + f(c)) / (hh * hh);
    return p - m;
  };
  const double gap = std::fabs(jump3(rc));
  const double noise = std::fabs(jump3(0.5 * rc));
  bool ok = gap > 10.0 * noise;
  // second derivative jump is O(h): shrinks under step halving
  const double j2 = std::fabs(jump2(rc, h));
  ok = ok && j2 <= 5.0 * h * gap;
  ok = ok && std::fabs(jump2(rc, h / 2)) <= 0.7 * j2;
  CHECK(note(7, "d3f0/drho3 gap exceeds 10x noise floor; d2 continuous within O(h)", ok));
}

TEST_CASE("8a. correction equals 8 pi a rho^2 below rho_c") {
  bool ok = true;
  const double rc = critical_density(1.0);
  for (double rho : {0.2 * rc, 0.6 * rc, rc})
    ok = ok && correction_term(0.01, 1.0, rho) ==
                   doctest::Approx(8.0 * kPi * 0.01 * rho * rho).epsilon(1e-14);
  CHECK(note(8, "correction = 8 pi a rho^2 for rho <= rho_c (exact)", ok));
}

// The exact Theorem-1 correction 4 pi a (2 rho^2 - [rho - rho_c]_+^2) sits
// 2 rho_c/rho - (rho_c/rho)^2 = 1.99% above 4 pi a rho^2 at rho = 100 rho_c,
// so the stated 1% tolerance is analytically unreachable there (it is first
// met near rho = 199.5 rho_c). Implemented as stated and allowed to fail.
TEST_CASE("8b. correction within 1% of 4 pi a rho^2 at rho = 100 rho_c"
          * doctest::may_fail()) {
  const double rc = critical_density(1.0);
  const double rho = 100.0 * rc;
  const double c = correction_term(0.01, 1.0, rho);
  const double deviation = std::fabs(c / (4.0 * kPi * 0.01 * rho * rho) - 1.0);
  std::printf("        criterion 8 limit clause: measured deviation %.4f%% "
              "(exact value 10199/10000 - 1), pinned tolerance 1%%\n",
              100.0 * deviation);
  const bool ok = deviation <= 0.01;
  note(8, "correction -> 4 pi a rho^2 within 1% at rho = 100 rho_c", ok);
  CHECK(ok);
}

TEST_CASE("9. alpha exponent") {
  bool ok = std::fabs(alpha_exponent(1e-12) - 2.0 / 2295.0) <= 1e-9;
  ok = ok && 2.0 / 2295.0 > 0.00087 && 2.0 / 2295.0 < 0.000872;
  // exact rational arithmetic: 2/2295 < 3/17 iff 2*17 < 3*2295
  ok = ok && (2LL * 17LL < 3LL * 2295LL);
  CHECK(note(9, "alpha(delta->0) = 2/2295 ~ 0.0008714 < 3/17 (exact rationals)", ok));
}

TEST_CASE("10. hat function moment and geometric overlap") {
  bool ok = std::fabs(hat_moment() - 1.0) <= 1e-12;
  for (double t : {0.0, 0.3, 0.9})
    ok = ok && std::fabs(hat_j_overlap(t) - hat_j(t)) <= 1e-8 * hat_j(0.0);
  CHECK(note(10, "hat moment = 1 to 1e-12; overlap vs polynomial to 1e-8", ok));
}

TEST_CASE("11. ball decomposition reconstructs the Gaussian") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = gaussian_radial();
  bool ok = true;
  for (double t : {0.1, 0.5, 1.0, 2.0, 4.0})
    ok = ok && std::fabs(ball_reconstruct(g, t, t + 14.0) - std::exp(-t * t)) <= 1e-6;
  ok = ok && seconds_since(t0) < 10.0;
  CHECK(note(11, "Gaussian rebuilt from m(r) within 1e-6 at 5 probes, under 10 s", ok));
}

TEST_CASE("12. Dyson inequality certification") {
  const auto pot = truncate(RadialPotential::hard_core(4.0), 40.0);
  const CutoffProfile cutoff{8.0};
  const Lattice fine(32.0, 32);
  auto config = [&](int n_sc, std::uint64_t seed, bool coarse_ok) {
    DysonCheckConfig cfg;
    cfg.R = 8.0;
    cfg.epsilon = 0.3;
    cfg.seed = seed;
    cfg.enforce_resolution = !coarse_ok;
    if (n_sc > 0) cfg.scatterers = sample_scatterers(32.0, n_sc, 1.6, seed);
    return cfg;
  };

  // calibration: kinetic-only floor plus the refinement trend across
  // grid_n in {16, 24, 32} at the stock single-scatterer configuration
  const double floor =
      std::fabs(verify_dyson(config(0, 0, false), pot, cutoff, fine).min_eigenvalue);
  double neg16 = 0.0, neg24 = 0.0, neg32 = 0.0;
  {
    const Lattice l16(32.0, 16), l24(32.0, 24);
    neg16 = std::max(-verify_dyson(config(1, 1, true), pot, cutoff, l16).min_eigenvalue, 0.0);
    neg24 = std::max(-verify_dyson(config(1, 1, true), pot, cutoff, l24).min_eigenvalue, 0.0);
    neg32 = std::max(-verify_dyson(config(1, 1, false), pot, cutoff, fine).min_eigenvalue, 0.0);
  }
  const double trend = std::max(neg16 - neg32, 0.0);
  const double tol_disc = 4.0 * floor + trend + 1e-12;
  std::printf("        tol_disc = %.3e (floor %.3e, trend %.3e)\n", tol_disc,
              floor, trend);

  bool ok = true;
  // refinement: the negative part shrinks at least 2x per step (or stays at
  // the numerical floor)
  ok = ok && neg24 <= std::max(neg16 / 2.0, 4.0 * floor);
  ok = ok && neg32 <= std::max(neg24 / 2.0, 4.0 * floor);

  double worst_time = 0.0;
  for (int n_sc : {0, 1, 5}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto v = verify_dyson(config(n_sc, seed, false), pot, cutoff, fine);
      worst_time = std::max(worst_time, seconds_since(t0));
      ok = ok && v.converged && v.min_eigenvalue >= -tol_disc;
      if (n_sc == 0) break;  // seed-independent
    }
  }
  ok = ok && worst_time < 120.0;
  std::printf("        worst per-configuration time %.1f s\n", worst_time);
  CHECK(note(12, "smallest eigenvalue >= -tol_disc for n in {0,1,5} x 3 seeds; 2x refinement shrink; under 2 min each", ok));
}

TEST_CASE("13. hole-filling lemma certification") {
  const auto t0 = std::chrono::steady_clock::now();
  const double lambdas[] = {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0};
  const double ratios[] = {0.01, 0.05, 0.09};
  const double floor =
      std::fabs(verify_hole_lemma(0.05, 1.0, 0.0, 1024).min_eigenvalue);
  double trend = 0.0;
  for (double l : lambdas)
    for (double r : ratios)
      trend = std::max(trend,
                       std::fabs(verify_hole_lemma(r, 1.0, l, 512).min_eigenvalue -
                                 verify_hole_lemma(r, 1.0, l, 1024).min_eigenvalue));
  const double tol_disc = 4.0 * floor + trend;
  bool ok = true;
  for (double l : lambdas)
    for (double r : ratios)
      ok = ok && verify_hole_lemma(r, 1.0, l, 1024).min_eigenvalue >= -tol_disc;
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 30.0;
  std::printf("        tol_disc = %.3e, total %.1f s\n", tol_disc, elapsed);
  CHECK(note(13, "radial form eigenvalue >= -tol_disc across the (lambda, R0/R) grid, under 30 s", ok));
}

TEST_CASE("14. decay lemma margins and envelope slope") {
  const Lattice lat(48.0, 48);
  const auto o = MomentumBump::stock();
  bool ok = true;
  for (int n : {0, 1, 2}) {
    const auto chk = decay_bound_check(o, 1.0, lat, n);
    ok = ok && chk.holds && chk.min_margin > 0.0;
    ok = ok && chk.slope <= -2.0 * n + 0.3;
  }
  CHECK(note(14, "positive margin at n in {0,1,2}; log-log slope <= -2n + 0.3", ok));
}

TEST_CASE("15. error budget sanity along the x sweep") {
  bool ok = true;
  double prev_ef = 1e300;
  double prev_ratio[4] = {1e300, 1e300, 1e300, 1e300};
  for (double x : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const auto p = high_t_parameters(x, 1.0, 1.0, 1e-4);
    const auto z = error_budget(p, x, 1.0, 1.0);
    ok = ok && z.error_factor < prev_ef;
    prev_ef = z.error_factor;
    const double ref = 4.0 * kPi * x;
    const double ratio[4] = {z.z1 / ref, z.z2 / ref, z.z3 / ref, z.z4 / ref};
    for (int i = 0; i < 4; ++i) {
      ok = ok && ratio[i] < prev_ratio[i];
      prev_ratio[i] = ratio[i];
    }
  }
  CHECK(note(15, "error_factor and every Z_i/(4 pi a rho^2) decrease along x = 1e-2..1e-8", ok));
}

TEST_CASE("16. CLI determinism: byte-identical artifacts") {
#ifndef BOSE_CLI_PATH
  CHECK(note(16, "CLI path not wired into the build", false));
#else
  const std::string cli = BOSE_CLI_PATH;
  auto run_twice = [&](const std::string& args, const std::string& stem) {
    const std::string a = "/tmp/acc_" + stem + "_a";
    const std::string b = "/tmp/acc_" + stem + "_b";
    for (const std::string& out : {a, b}) {
      const std::string cmd =
          cli + " " + args + " --out " + out + " > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) return false;
    }
    const std::string va = slurp(a), vb = slurp(b);
    return !va.empty() && va == vb;
  };
  bool ok = true;
  ok = ok && run_twice("bound --a 1e-3 --beta 10 --rho 1 --delta 1e-4", "bound");
  ok = ok && run_twice("ideal --beta 1 --rho-grid 0.01:0.2:40", "ideal");
  ok = ok && run_twice("sweep --x-grid 1e-6:1e-2:5 --beta 1 --rho 1 --jobs 2", "sweep");
  ok = ok && run_twice(
                 "kernels-verify --check dyson --grid-n 16 --box 16 --R 6 "
                 "--r0 2 --phi 20 --s-cutoff 6 --scatterers 2 --seed 7 "
                 "--allow-coarse",
                 "dyson");
  CHECK(note(16, "same seed, same bytes for bound/ideal/sweep/kernels-verify", ok));
#endif
}
