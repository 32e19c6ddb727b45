#include <doctest.h>

#include <cmath>
#include <vector>

#include "bose/errors.hpp"
#include "bose/ideal_gas.hpp"
#include "bose/simd.hpp"
#include "bose/special.hpp"

using namespace bose;

namespace {
constexpr double kZeta32 = 2.6123753486854883;
constexpr double kZeta52 = 1.3414872572509172;
constexpr double kRhoC1 = 0.058643621347644422;   // (4 pi)^{-3/2} zeta(3/2)
constexpr double kF0AtRc = -0.030114229487159399;  // -(4 pi)^{-3/2} zeta(5/2)
}  // namespace

TEST_CASE("riemann zeta spot values") {
  CHECK(riemann_zeta(1.5) == doctest::Approx(kZeta32).epsilon(1e-14));
  CHECK(riemann_zeta(2.5) == doctest::Approx(kZeta52).epsilon(1e-14));
  CHECK(riemann_zeta(2.0) == doctest::Approx(1.6449340668482264).epsilon(1e-14));
  CHECK(riemann_zeta(0.5) == doctest::Approx(-1.4603545088095868).epsilon(1e-13));
  CHECK(riemann_zeta(-0.5) == doctest::Approx(-0.20788622497735457).epsilon(1e-13));
  CHECK(riemann_zeta(-1.5) == doctest::Approx(-0.025485201889833036).epsilon(1e-12));
  CHECK_THROWS_AS(riemann_zeta(1.0), domain_error);
}

TEST_CASE("bose functions: series, boundary, and expansion regimes") {
  CHECK(bose_fn(BoseIndex::five_half, 0.0) == 0.0);
  CHECK(bose_fn(BoseIndex::three_half, 1.0) == doctest::Approx(kZeta32).epsilon(1e-13));
  CHECK(bose_fn(BoseIndex::five_half, 1.0) == doctest::Approx(kZeta52).epsilon(1e-13));
  // direct-series regime
  CHECK(bose_fn(BoseIndex::three_half, 0.5) ==
        doctest::Approx(0.6248370208199139).epsilon(1e-12));
  CHECK(bose_fn(BoseIndex::five_half, 0.5) ==
        doctest::Approx(0.5549972787175123).epsilon(1e-12));
  CHECK(bose_fn(BoseIndex::three_half, 0.99) ==
        doctest::Approx(2.2716600770079993).epsilon(1e-11));
  CHECK(bose_fn(BoseIndex::one_half, 0.9) ==
        doctest::Approx(4.0219504274733607).epsilon(1e-11));
  // near-one expansion regime
  CHECK(bose_fn(BoseIndex::three_half, 0.9996) ==
        doctest::Approx(2.542054345323091).epsilon(1e-11));
  CHECK(bose_fn(BoseIndex::five_half, 0.999) ==
        doctest::Approx(1.3389476332802495).epsilon(1e-11));
  CHECK(bose_fn(BoseIndex::one_half, 0.9999) ==
        doctest::Approx(175.78062010740096).epsilon(1e-10));

  CHECK_THROWS_AS(bose_fn(BoseIndex::three_half, -0.1), domain_error);
  CHECK_THROWS_AS(bose_fn(BoseIndex::three_half, 1.1), domain_error);
  CHECK_THROWS_AS(bose_fn(BoseIndex::one_half, 1.0), domain_error);
}

TEST_CASE("g_{3/2}(1) bracketed by partial sums plus integral tail") {
  const std::uint64_t n = 10'000'000;
  const double s = simd::active().power_series(1.0, 3, n);
  const double lo = s + 2.0 / std::sqrt(double(n + 1));
  const double hi = s + 2.0 / std::sqrt(double(n));
  CHECK(hi - lo <= 1e-10);
  CHECK(lo <= bose_fn(BoseIndex::three_half, 1.0));
  CHECK(bose_fn(BoseIndex::three_half, 1.0) <= hi);
}

TEST_CASE("critical density: series and quadrature routes agree") {
  CHECK(critical_density(1.0) == doctest::Approx(kRhoC1).epsilon(1e-13));
  const double q = critical_density_quadrature(1.0);
  CHECK(std::fabs(q - critical_density(1.0)) <= 1e-8 * critical_density(1.0));
  // beta^{-3/2} scaling and monotone decrease
  CHECK(critical_density(4.0) == doctest::Approx(kRhoC1 / 8.0).epsilon(1e-13));
  CHECK(critical_density(16.0) < critical_density(4.0));
  CHECK_THROWS_AS(critical_density(0.0), domain_error);
}

TEST_CASE("mu0: pinned at zero in the condensed phase, root below") {
  const double rc = critical_density(1.0);
  CHECK(mu0(1.0, rc) == 0.0);
  CHECK(mu0(1.0, 2.0 * rc) == 0.0);
  const double mu = mu0(1.0, 0.5 * rc);
  CHECK(mu == doctest::Approx(-0.20348378398413007).epsilon(1e-10));
  // residual of the density equation at 20 sub-critical points
  for (int i = 1; i <= 20; ++i) {
    const double rho = rc * i / 21.0;
    const double m = mu0(1.0, rho);
    const double back = std::pow(4.0 * M_PI, -1.5) *
                        bose_fn(BoseIndex::three_half, std::exp(m));
    CHECK(std::fabs(back - rho) <= 1e-10 * rho);
  }
  CHECK_THROWS_AS(mu0(0.0, 1.0), domain_error);
  CHECK_THROWS_AS(mu0(1.0, 0.0), domain_error);
}

TEST_CASE("mu0 is continuous and non-decreasing up to rho_c") {
  const double rc = critical_density(1.0);
  double prev = -1e300;
  for (double frac : {0.05, 0.2, 0.5, 0.8, 0.95, 0.999, 0.999999, 1.0, 1.5}) {
    const double m = mu0(1.0, frac * rc);
    CHECK(m >= prev - 1e-14);
    CHECK(m <= 0.0);
    prev = m;
  }
  CHECK(std::fabs(mu0(1.0, 0.999999 * rc)) < 1e-8);
}

TEST_CASE("f0 value, sign, and sup-property") {
  CHECK(f0(1.0, kRhoC1) == doctest::Approx(kF0AtRc).epsilon(1e-12));
  // brute-force sup over a mu grid never beats the maximizer
  const double beta = 1.0, rho = 0.5 * kRhoC1;
  const double f = f0(beta, rho);
  const double pf = std::pow(4.0 * M_PI * beta, -1.5);
  double grid_max = -1e300;
  for (int i = 0; i <= 100000; ++i) {
    const double mu = -10.0 + 10.0 * i / 100000.0;
    const double val =
        mu * rho - pf / beta * bose_fn(BoseIndex::five_half, std::exp(beta * mu));
    grid_max = std::max(grid_max, val);
  }
  CHECK(f >= grid_max - 1e-13);
  CHECK(f - grid_max <= 1e-6);
  // f0 < 0 across both phases
  for (double b : {0.5, 1.0, 2.0, 4.0, 8.0})
    for (double frac : {0.25, 0.5, 1.0, 2.0, 4.0})
      CHECK(f0(b, frac * critical_density(b)) < 0.0);
}

TEST_CASE("f0 agrees with the direct log-integrand quadrature") {
  for (double rho : {0.3 * kRhoC1, kRhoC1, 3.0 * kRhoC1}) {
    const double a = f0(1.0, rho), b = f0_quadrature(1.0, rho);
    CHECK(std::fabs(a - b) <= 1e-8 * std::fabs(a));
  }
  const double a2 = f0(2.0, 0.05), b2 = f0_quadrature(2.0, 0.05);
  CHECK(std::fabs(a2 - b2) <= 1e-8 * std::fabs(a2));
}

TEST_CASE("scaling relation f0(beta, rho) = rho^{5/3} f0(beta rho^{2/3}, 1)") {
  const double beta = 2.0, rho = 0.3;
  const double lhs = f0(beta, rho);
  const double rhs = std::pow(rho, 5.0 / 3.0) * f0(beta * std::pow(rho, 2.0 / 3.0), 1.0);
  CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::fabs(lhs));
}

TEST_CASE("df0/drho recovers mu0 by central differences") {
  for (double rho : {0.4 * kRhoC1, 0.8 * kRhoC1, 2.0 * kRhoC1}) {
    const double h = 1e-5 * rho;
    const double d = (f0(1.0, rho + h) - f0(1.0, rho - h)) / (2.0 * h);
    CHECK(std::fabs(d - mu0(1.0, rho)) <= 1e-6);
  }
}

TEST_CASE("specific heat: condensed closed form and step consistency") {
  const double beta = 2.0, rho = 10.0 * critical_density(2.0);
  const double T = 0.5;
  const double expect = 15.0 / 4.0 * std::pow(4.0 * M_PI, -1.5) * kZeta52 *
                        std::pow(T, 1.5);  // 0.03992620477608431
  const double cv = specific_heat(beta, rho, 1e-3 * T);
  CHECK(cv == doctest::Approx(expect).epsilon(1e-6));
  // central-difference order: h vs h/2 agree to O(h^2)
  const double c1 = specific_heat(beta, rho, 2e-3);
  const double c2 = specific_heat(beta, rho, 1e-3);
  CHECK(std::fabs(c1 - c2) <= 4.0 * std::fabs(c2) * 4e-6 + 1e-10);
  // T -> 0 at fixed rho: c_V ~ T^{3/2} -> 0
  const double cv10 = specific_heat(10.0, 1.0, 1e-3 * 0.1);
  const double cv100 = specific_heat(100.0, 1.0, 1e-3 * 0.01);
  CHECK(cv100 < cv10);
  CHECK(cv100 == doctest::Approx(expect / std::pow(T, 1.5) * std::pow(0.01, 1.5))
                     .epsilon(1e-4));
  CHECK_THROWS_AS(specific_heat(1.0, 1.0, 0.0), domain_error);
  CHECK_THROWS_AS(specific_heat(1.0, 1.0, 1e-12), numerical_error);
}

TEST_CASE("condensate density positive part") {
  const double rc = critical_density(1.0);
  CHECK(condensate_density(1.0, rc) == 0.0);
  CHECK(condensate_density(1.0, 2.0 * rc) == doctest::Approx(rc).epsilon(1e-14));
  CHECK(condensate_density(1.0, 0.5 * rc) == 0.0);
}

TEST_CASE("third rho-derivative jumps at rho_c while the second stays continuous") {
  const double rc = critical_density(1.0);
  auto f = [](double r) { return f0(1.0, r); };
  auto jump3 = [&](double centre, double h) {
    const double d3m = (f(centre) - 3 * f(centre - h) + 3 * f(centre - 2 * h) -
                        f(centre - 3 * h)) /
                       (h * h * h);
    const double d3p = (f(centre + 3 * h) - 3 * f(centre + 2 * h) +
                        3 * f(centre + h) - f(centre)) /
                       (h * h * h);
    return d3p - d3m;
  };
  auto jump2 = [&](double centre, double h) {
    const double d2m = (f(centre) - 2 * f(centre - h) + f(centre - 2 * h)) / (h * h);
    const double d2p = (f(centre + 2 * h) - 2 * f(centre + h) + f(centre)) / (h * h);
    return d2p - d2m;
  };
  const double h = 5e-4 * rc;
  const double gap = std::fabs(jump3(rc, h));
  const double noise = std::fabs(jump3(0.5 * rc, h));
  CHECK(gap > 10.0 * noise);
  CHECK(gap == doctest::Approx(32.0 * M_PI * M_PI).epsilon(0.05));
  // second derivative: jump is O(h) (vanishes under refinement)
  const double j2 = std::fabs(jump2(rc, h));
  CHECK(j2 <= 5.0 * h * gap);
  CHECK(std::fabs(jump2(rc, h / 2.0)) <= 0.7 * j2);
}

TEST_CASE("ideal gas point assembly") {
  const auto pt = ideal_gas_point(1.0, 2.0 * kRhoC1);
  CHECK(pt.phase == Phase::condensed);
  CHECK(pt.mu0 == 0.0);
  CHECK(pt.condensate == doctest::Approx(kRhoC1).epsilon(1e-12));
  const auto pn = ideal_gas_point(1.0, 0.5 * kRhoC1);
  CHECK(pn.phase == Phase::normal);
  CHECK(pn.mu0 < 0.0);
  CHECK(pn.condensate == 0.0);
}
