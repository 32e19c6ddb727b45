#include "bose/ideal_gas.hpp"

#include <cmath>
#include <cstdint>

#include "bose/errors.hpp"
#include "bose/quadrature.hpp"
#include "bose/simd.hpp"
#include "bose/special.hpp"

namespace bose {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSeriesSwitch = 0.9995;
constexpr double kAbsTarget = 1e-12;

double nu_of(BoseIndex s) {
  switch (s) {
    case BoseIndex::one_half: return 0.5;
    case BoseIndex::three_half: return 1.5;
    case BoseIndex::five_half: return 2.5;
  }
  return 1.5;
}

int twice_of(BoseIndex s) {
  switch (s) {
    case BoseIndex::one_half: return 1;
    case BoseIndex::three_half: return 3;
    case BoseIndex::five_half: return 5;
  }
  return 3;
}

// truncation point from the tail estimate z^{N} * (bound on sum l^{-s} tail)
std::uint64_t series_terms(double z, BoseIndex s) {
  std::uint64_t n = 64;
  const double lz = std::log(z);
  for (int it = 0; it < 64; ++it) {
    const double nd = static_cast<double>(n);
    double tail;
    if (s == BoseIndex::one_half)
      tail = std::exp(nd * lz) / ((1.0 - z) * std::sqrt(nd));
    else
      tail = std::exp(nd * lz) * 2.0 / std::sqrt(nd);
    if (tail <= kAbsTarget || n > (1u << 26)) break;
    n *= 2;
  }
  return n;
}

// expansion in alpha = -ln z around z = 1 (valid for alpha < 2 pi):
// g_nu(e^-alpha) = Gamma(1-nu) alpha^(nu-1) + sum_k zeta(nu-k) (-alpha)^k / k!
double bose_near_one(double nu, double alpha) {
  double acc = std::tgamma(1.0 - nu) * std::pow(alpha, nu - 1.0);
  double pow_term = 1.0;  // (-alpha)^k / k!
  for (int k = 0; k <= 40; ++k) {
    const double term = riemann_zeta(nu - k) * pow_term;
    acc += term;
    if (k > 2 && std::fabs(term) < 1e-18 * std::fabs(acc)) break;
    pow_term *= -alpha / (k + 1);
  }
  return acc;
}

double prefactor(double beta) { return std::pow(4.0 * kPi * beta, -1.5); }

}  // namespace

double bose_fn(BoseIndex s, double z) {
  if (z < 0.0 || z > 1.0) throw domain_error("bose_fn: z must lie in [0, 1]");
  if (z == 0.0) return 0.0;
  if (z == 1.0) {
    if (s == BoseIndex::one_half) throw domain_error("bose_fn: g_{1/2}(1) diverges");
    return riemann_zeta(nu_of(s));
  }
  if (z > kSeriesSwitch) return bose_near_one(nu_of(s), -std::log(z));
  return simd::active().power_series(z, twice_of(s), series_terms(z, s));
}

double critical_density(double beta) {
  if (!(beta > 0.0)) throw domain_error("critical_density: beta must be > 0");
  return prefactor(beta) * riemann_zeta(1.5);
}

double critical_density_quadrature(double beta) {
  if (!(beta > 0.0)) throw domain_error("critical_density: beta must be > 0");
  auto f = [beta](double p) {
    const double e = std::expm1(beta * p * p);
    return e > 0.0 ? p * p / e : 1.0 / beta;
  };
  return integrate_to_inf(f, 0.0, 1e-11, 1e-16) / (2.0 * kPi * kPi);
}

double mu0(double beta, double rho) {
  if (!(beta > 0.0) || !(rho > 0.0))
    throw domain_error("mu0: beta and rho must be > 0");
  const double rc = critical_density(beta);
  if (rho >= rc) return 0.0;
  const double pf = prefactor(beta);
  auto density_gap = [&](double y) {  // y = beta mu
    return pf * bose_fn(BoseIndex::three_half, std::exp(y)) - rho;
  };
  double lo = -50.0;
  while (density_gap(lo) > 0.0 && lo > -700.0) lo *= 2.0;
  if (density_gap(lo) > 0.0) throw numerical_error("mu0: bracket not found");
  double y = bisect_root(density_gap, lo, 0.0);
  // Newton polish: d/dy g_{3/2}(e^y) = g_{1/2}(e^y)
  for (int it = 0; it < 2; ++it) {
    const double z = std::exp(y);
    const double deriv = pf * bose_fn(BoseIndex::one_half, std::min(z, 1.0 - 1e-16));
    if (deriv <= 0.0) break;
    const double step = density_gap(y) / deriv;
    const double y_new = y - step;
    if (y_new >= 0.0 || !std::isfinite(y_new)) break;
    y = y_new;
  }
  return y / beta;
}

double f0(double beta, double rho) {
  const double mu = mu0(beta, rho);
  const double z = std::exp(beta * mu);
  return mu * rho -
         prefactor(beta) / beta * bose_fn(BoseIndex::five_half, z);
}

double f0_quadrature(double beta, double rho) {
  const double mu = mu0(beta, rho);
  const double z = std::exp(beta * mu);
  auto f = [&](double p) {
    const double w = z * std::exp(-beta * p * p);
    return w < 1.0 ? p * p * std::log1p(-w) : 0.0;
  };
  const double integral = integrate_to_inf(f, 0.0, 1e-11, 1e-16);
  return mu * rho + integral / (2.0 * kPi * kPi * beta);
}

double specific_heat(double beta, double rho, double h) {
  if (!(beta > 0.0) || !(rho > 0.0))
    throw domain_error("specific_heat: beta and rho must be > 0");
  const double T = 1.0 / beta;
  if (!(h > 0.0) || h >= T) throw domain_error("specific_heat: step must lie in (0, T)");
  if (h <= 1e-8 * T) throw numerical_error("specific_heat: step underflow");
  auto f_of_T = [rho](double temp) { return f0(1.0 / temp, rho); };
  const double d2 = (f_of_T(T + h) - 2.0 * f_of_T(T) + f_of_T(T - h)) / (h * h);
  return -T * d2;
}

double condensate_density(double beta, double rho) {
  if (!(beta > 0.0) || rho < 0.0)
    throw domain_error("condensate_density: beta > 0, rho >= 0 required");
  return std::max(rho - critical_density(beta), 0.0);
}

IdealGasPoint ideal_gas_point(double beta, double rho) {
  IdealGasPoint pt;
  pt.beta = beta;
  pt.rho = rho;
  pt.rho_c = critical_density(beta);
  pt.mu0 = mu0(beta, rho);
  pt.f0 = f0(beta, rho);
  pt.condensate = condensate_density(beta, rho);
  pt.c_v = specific_heat(beta, rho, 1e-3 / beta);
  pt.phase = rho >= pt.rho_c ? Phase::condensed : Phase::normal;
  return pt;
}

}  // namespace bose
