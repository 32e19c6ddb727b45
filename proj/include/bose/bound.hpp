#pragma once

#include <optional>
#include <utility>

#include <json.hpp>

namespace bose {

enum class Branch { high_t, low_t };

const char* branch_name(Branch b);

// Closed-form power-law parameter choices. The driving small parameter is
// x = a rho^2 beta^{5/2} for the high-temperature branch and a^3 rho for the
// low-temperature one.
struct ParameterSet {
  Branch branch = Branch::high_t;
  double R = 0.0;
  double b = 0.0;
  double s = 0.0;
  double p_c = 0.0;
  double kappa = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double phi = 0.0;
  double C = 0.0;
  double small_x = 0.0;

  nlohmann::json to_json() const;
};

ParameterSet high_t_parameters(double a, double beta, double rho, double delta,
                               double A = 4.0 / 403.0, double B = 2.0 / 403.0);
ParameterSet low_t_parameters(double a, double beta, double rho, double delta);

// Both branches' sets: {high_t, low_t}.
std::pair<ParameterSet, ParameterSet> choose_parameters(
    double a, double beta, double rho, double delta, double A = 4.0 / 403.0,
    double B = 2.0 / 403.0);

// Per-unit-volume error densities with every unnamed constant set to 1 and
// the thermodynamic-limit substitutions M/V = p_c^3/(6 pi^2), P/V = p_c/beta,
// rho_omega = min(rho, rho_c). The rapid-decay remainder integral is modeled
// as exp(-b/s). error_factor combines the branch's headline power law with
// the summed budget relative to 4 pi a rho^2. Illustrative, not rigorous:
// the budget tracks exponents, not sharp constants.
struct ZBudget {
  double z1 = 0.0, z2 = 0.0, z3 = 0.0, z4 = 0.0;
  double error_factor = 0.0;
};

struct BudgetOptions {
  std::optional<double> a_tilde;  // defaults to a
  std::optional<double> R0;       // defaults to a
  // exact integral_{b/s}^inf r^6 |m(r)| dr for a concrete envelope g
  // (see ball_decomp); replaces the exp(-b/s) model when supplied
  std::optional<double> decay_remainder;
};

ZBudget error_budget(const ParameterSet& params, double a, double beta,
                     double rho, const BudgetOptions& opts = {});

// 4 pi a (2 rho^2 - [rho - rho_c]_+^2)
double correction_term(double a, double beta, double rho);

// kappa' = kappa - (24 a_tilde / pi^2) (4 R0)^2 / R^3
double kappa_prime(const ParameterSet& params, double a_tilde, double R0);

// 2/2295 - delta, for 0 < delta < 2/2295
double alpha_exponent(double delta);

// leading-order ground state energy density 4 pi a rho^2
double ground_state_energy(double a, double rho);

struct BoundReport {
  double f0_term = 0.0;
  double correction = 0.0;
  double error_factor = 0.0;
  Branch branch = Branch::high_t;
  ParameterSet parameters;
  ZBudget z_budget;
  double lower_bound = 0.0;
  double branch_value_high = 0.0;
  double branch_value_low = 0.0;

  nlohmann::json to_json() const;
};

// Evaluate both branch bounds and return the larger one. Each branch value is
// f0 + correction (1 - error_factor) with that branch's error factor.
BoundReport lower_bound(double a, double beta, double rho, double delta,
                        double A = 4.0 / 403.0, double B = 2.0 / 403.0);

}  // namespace bose
