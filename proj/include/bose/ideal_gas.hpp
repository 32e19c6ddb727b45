#pragma once

namespace bose {

// Bose function index: g_s(z) = sum_{l>=1} z^l / l^s.
enum class BoseIndex { one_half, three_half, five_half };

// g_s(z) for z in [0, 1]. Direct series with a tail-bound-chosen truncation
// away from z = 1; an expansion in alpha = -ln z takes over for z > 0.9995
// where the series truncation point becomes impractical. Absolute accuracy
// target 1e-12. g_{1/2}(1) diverges and is rejected.
double bose_fn(BoseIndex s, double z);

// rho_c(beta) = (4 pi beta)^{-3/2} g_{3/2}(1)
double critical_density(double beta);
// same quantity by radial quadrature of the momentum integral
double critical_density_quadrature(double beta);

// chemical potential of the ideal gas: exactly 0 for rho >= rho_c, otherwise
// the root of (4 pi beta)^{-3/2} g_{3/2}(e^{beta mu}) = rho.
double mu0(double beta, double rho);

// free energy density evaluated at mu0:
// f0 = mu0 rho - beta^{-1} (4 pi beta)^{-3/2} g_{5/2}(e^{beta mu0})
double f0(double beta, double rho);
// cross-check route: direct quadrature of the log-integrand at mu = mu0
double f0_quadrature(double beta, double rho);

// c_V = -T d^2 f0 / dT^2 at fixed rho, central differences with step h in T.
double specific_heat(double beta, double rho, double h);

// [rho - rho_c]_+
double condensate_density(double beta, double rho);

enum class Phase { condensed, normal };

struct IdealGasPoint {
  double beta = 0.0;
  double rho = 0.0;
  double mu0 = 0.0;
  double rho_c = 0.0;
  double f0 = 0.0;
  double condensate = 0.0;
  double c_v = 0.0;
  Phase phase = Phase::normal;
};

IdealGasPoint ideal_gas_point(double beta, double rho);

}  // namespace bose
