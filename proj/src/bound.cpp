#include "bose/bound.hpp"

#include <algorithm>
#include <cmath>

#include "bose/errors.hpp"
#include "bose/ideal_gas.hpp"

namespace bose {
namespace {

constexpr double kPi = 3.14159265358979323846;

double small_x_high(double a, double beta, double rho) {
  return a * rho * rho * std::pow(beta, 2.5);
}

void check_point(double a, double beta, double rho) {
  if (!(a > 0.0) || !(beta > 0.0) || !(rho > 0.0))
    throw domain_error("bound: a, beta, rho must be > 0");
}

}  // namespace

const char* branch_name(Branch b) {
  return b == Branch::high_t ? "high_T" : "low_T";
}

nlohmann::json ParameterSet::to_json() const {
  return {{"branch", branch_name(branch)},
          {"R", R},
          {"b", b},
          {"s", s},
          {"p_c", p_c},
          {"kappa", kappa},
          {"epsilon", epsilon},
          {"delta", delta},
          {"phi", phi},
          {"C", C},
          {"small_x", small_x}};
}

ParameterSet high_t_parameters(double a, double beta, double rho, double delta,
                               double A, double B) {
  check_point(a, beta, rho);
  if (!(delta > 0.0)) throw domain_error("high_t_parameters: delta must be > 0");
  if (A < 4.0 / 403.0 || A > 79.0 / 403.0)
    throw domain_error("high_t_parameters: A out of [4/403, 79/403]");
  if (B < 2.0 / 403.0 || B > 161.0 / 403.0)
    throw domain_error("high_t_parameters: B out of [2/403, 161/403]");
  const double x = small_x_high(a, beta, rho);
  ParameterSet p;
  p.branch = Branch::high_t;
  p.small_x = x;
  p.delta = delta;
  p.R = std::pow(rho, -1.0 / 3.0) * std::pow(x, 3.0 / 403.0);
  p.b = std::sqrt(beta) * std::pow(x, -121.0 / 403.0);
  p.s = std::cbrt(beta * std::pow(rho, -1.0 / 3.0)) * std::pow(x, 1.0 / 403.0);
  p.kappa = p.s * p.s / beta * std::pow(x, -delta);
  p.epsilon = p.R / p.s;
  p.phi = a * std::pow(x, -A);
  p.C = std::pow(x, -B);
  const double mu = mu0(beta, rho);
  p.p_c = (beta * std::fabs(mu) <= std::pow(x, 162.0 / 403.0))
              ? std::pow(x, 81.0 / 403.0) / std::sqrt(beta)
              : 0.0;
  return p;
}

ParameterSet low_t_parameters(double a, double beta, double rho, double delta) {
  check_point(a, beta, rho);
  if (!(delta > 0.0)) throw domain_error("low_t_parameters: delta must be > 0");
  const double y = a * a * a * rho;
  ParameterSet p;
  p.branch = Branch::low_t;
  p.small_x = y;
  p.delta = delta;
  p.kappa = std::pow(y, 1.0 / 17.0);
  p.R = a * std::pow(y, -5.0 / 17.0);
  p.s = std::sqrt(beta * std::pow(y, 1.0 / 17.0 + delta));
  const double x = small_x_high(a, beta, rho);
  p.epsilon = std::pow(y, 3.0 / 170.0) / std::pow(x, 0.2);
  // b, p_c, phi, C play no role in this branch
  p.b = 0.0;
  p.p_c = 0.0;
  p.phi = 0.0;
  p.C = 0.0;
  return p;
}

std::pair<ParameterSet, ParameterSet> choose_parameters(double a, double beta,
                                                        double rho, double delta,
                                                        double A, double B) {
  return {high_t_parameters(a, beta, rho, delta, A, B),
          low_t_parameters(a, beta, rho, delta)};
}

double correction_term(double a, double beta, double rho) {
  if (!(a >= 0.0) || !(beta > 0.0) || rho < 0.0)
    throw domain_error("correction_term: a >= 0, beta > 0, rho >= 0 required");
  const double cond = std::max(rho - critical_density(beta), 0.0);
  return 4.0 * kPi * a * (2.0 * rho * rho - cond * cond);
}

double kappa_prime(const ParameterSet& params, double a_tilde, double R0) {
  return params.kappa -
         24.0 * a_tilde / (kPi * kPi) * (4.0 * R0) * (4.0 * R0) /
             (params.R * params.R * params.R);
}

ZBudget error_budget(const ParameterSet& p, double a, double beta, double rho,
                     const BudgetOptions& opts) {
  check_point(a, beta, rho);
  const double at = opts.a_tilde.value_or(a);
  const double r0 = opts.R0.value_or(a);
  ZBudget z;
  const double headline_ref = 4.0 * kPi * a * rho * rho;

  if (p.branch == Branch::low_t) {
    const double y = p.small_x;
    const double x = small_x_high(a, beta, rho);
    const double o_fint =
        std::pow(y, 1.0 / 17.0) * (1.0 + 1.0 / x) +
        std::pow(y, 3.0 / 170.0 - 2.0 * p.delta) / std::pow(x, 0.2);
    // bridging term a (rho^2 - [rho-rho_c]_+^2) <= a rho beta^{-3/2}
    const double bridge = rho * std::pow(beta, -1.5);
    const double cond = std::max(rho - critical_density(beta), 0.0);
    const double corr_density = 2.0 * rho * rho - cond * cond;
    z.error_factor = (rho * rho * o_fint + bridge) / corr_density;
    return z;
  }

  const double mu = mu0(beta, rho);
  const double rho_omega = std::min(rho, critical_density(beta));
  const double m = p.p_c * p.p_c * p.p_c / (6.0 * kPi * kPi);  // M / V
  const double pv = p.p_c / beta;                              // P / V

  z.z1 = m * (p.p_c * p.p_c - mu) + 16.0 * kPi * rho * p.phi * m +
         32.0 * kPi * at * p.C * m * m *
             std::pow(1.0 + 2.0 * p.phi / (at * p.C), 2.0);
  z.z2 = 8.0 * kPi * p.phi * pv * pv +
         16.0 * kPi * pv * p.phi * rho * (1.0 + 2.0 / std::sqrt(p.C));
  z.z3 = rho * std::pow(at, 1.5) / std::sqrt(beta) /
         std::sqrt(p.p_c + std::sqrt(-mu)) *
         (1.0 / (p.R * p.R * p.R) +
          p.C * (rho * (1.0 + 2.0 / std::sqrt(p.C)) + rho_omega));
  const double tau = beta * (p.p_c * p.p_c - mu);
  const double decay_remainder =
      opts.decay_remainder.value_or(std::exp(-p.b / p.s));
  z.z4 = at * (rho * rho *
                   (p.kappa + p.R / p.s + p.R * p.p_c +
                    std::cbrt(p.R * p.R * p.R * rho) +
                    std::pow(r0 / p.R, 3.0)) +
               rho / (p.R * p.R * p.s) * decay_remainder +
               1.0 / std::pow(p.R, 6.0) *
                   std::sqrt(p.b * p.b * p.b * at * beta * rho * rho +
                             std::sqrt(beta) / (std::sqrt(tau) * p.b)));
  z.error_factor = std::pow(p.small_x, 2.0 / 403.0 - p.delta) +
                   (z.z1 + z.z2 + z.z3 + z.z4) / headline_ref;
  return z;
}

double alpha_exponent(double delta) {
  const double cap = 2.0 / 2295.0;
  if (!(delta > 0.0) || !(delta < cap))
    throw domain_error("alpha_exponent: delta must lie in (0, 2/2295)");
  return cap - delta;
}

double ground_state_energy(double a, double rho) {
  if (a < 0.0 || rho < 0.0)
    throw domain_error("ground_state_energy: a, rho must be >= 0");
  return 4.0 * kPi * a * rho * rho;
}

nlohmann::json BoundReport::to_json() const {
  return {{"f0_term", f0_term},
          {"correction", correction},
          {"error_factor", error_factor},
          {"error_factor_note", "illustrative, not rigorous (unit constants)"},
          {"branch", branch_name(branch)},
          {"branch_note", "pointwise max of the two branch bounds"},
          {"parameters", parameters.to_json()},
          {"z_budget",
           {{"z1_per_volume", z_budget.z1},
            {"z2_per_volume", z_budget.z2},
            {"z3_per_volume", z_budget.z3},
            {"z4_per_volume", z_budget.z4}}},
          {"branch_value_high", branch_value_high},
          {"branch_value_low", branch_value_low},
          {"lower_bound", lower_bound}};
}

BoundReport lower_bound(double a, double beta, double rho, double delta,
                        double A, double B) {
  check_point(a, beta, rho);
  if (!(delta > 0.0) || !(delta < 2.0 / 403.0))
    throw domain_error("lower_bound: delta must lie in (0, 2/403)");
  auto [hi, lo] = choose_parameters(a, beta, rho, delta, A, B);
  const ZBudget zb_hi = error_budget(hi, a, beta, rho);
  const ZBudget zb_lo = error_budget(lo, a, beta, rho);
  BoundReport rep;
  rep.f0_term = f0(beta, rho);
  rep.correction = correction_term(a, beta, rho);
  rep.branch_value_high = rep.f0_term + rep.correction * (1.0 - zb_hi.error_factor);
  rep.branch_value_low = rep.f0_term + rep.correction * (1.0 - zb_lo.error_factor);
  if (rep.branch_value_high >= rep.branch_value_low) {
    rep.branch = Branch::high_t;
    rep.parameters = hi;
    rep.z_budget = zb_hi;
    rep.error_factor = zb_hi.error_factor;
    rep.lower_bound = rep.branch_value_high;
  } else {
    rep.branch = Branch::low_t;
    rep.parameters = lo;
    rep.z_budget = zb_lo;
    rep.error_factor = zb_lo.error_factor;
    rep.lower_bound = rep.branch_value_low;
  }
  return rep;
}

}  // namespace bose
