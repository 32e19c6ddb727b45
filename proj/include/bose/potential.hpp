#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace bose {

enum class PotentialKind { hard_core, step, tabulated, attractive_well };

std::string kind_name(PotentialKind k);

// Radial pair potential with finite range R0. Non-negative for all kinds
// except attractive_well, which exists only to exercise the closed-form
// negative-well scattering length. A hard core is reported as +infinity.
class RadialPotential {
public:
  RadialPotential() = default;  // zero potential of zero range

  static RadialPotential hard_core(double core_radius);
  static RadialPotential step(double height, double width);
  static RadialPotential tabulated(std::vector<double> r, std::vector<double> v);
  // v(r) = -(lambda/range)^2 inside [0, range]; the zero-energy solution is
  // sin(lambda r / range), so its scattering length is range (1 - tan l / l).
  static RadialPotential attractive_well(double lambda, double range);

  PotentialKind kind() const { return kind_; }
  double range() const { return range_; }
  bool has_hard_core() const { return kind_ == PotentialKind::hard_core; }
  double core_radius() const { return kind_ == PotentialKind::hard_core ? range_ : 0.0; }
  bool non_negative() const { return kind_ != PotentialKind::attractive_well; }

  // v(r); +infinity inside a hard core, 0 beyond range. r < 0 is a domain error.
  double operator()(double r) const;

  // Radii where v is discontinuous or non-smooth (integrator split points).
  std::vector<double> breakpoints() const;

  // kind-specific parameters
  double step_height() const { return height_; }
  double well_lambda() const { return lambda_; }
  const std::vector<double>& table_r() const { return table_r_; }
  const std::vector<double>& table_v() const { return table_v_; }

  static RadialPotential from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

private:
  PotentialKind kind_ = PotentialKind::step;
  double range_ = 0.0;
  double height_ = 0.0;
  double lambda_ = 0.0;
  std::vector<double> table_r_, table_v_;
};

// tilde-v: a pointwise-reduced potential whose second radial moment
// integral r^2 v dr is capped at 2 phi.
class TruncatedPotential {
public:
  enum class Mode {
    unchanged,       // integral already under budget
    tail_cut,        // v(r) theta(r - s), s chosen to saturate the budget
    explicit_step,   // hard core replaced by the step 6 phi a^-3 theta(a - r)
  };

  const RadialPotential& base() const { return base_; }
  Mode mode() const { return mode_; }
  double phi() const { return phi_; }
  double cut_radius_s() const { return s_; }
  double epsilon() const { return epsilon_; }
  std::optional<double> tau() const { return tau_; }
  double range() const;

  // tilde-v(r); never exceeds base(r), never infinite.
  double operator()(double r) const;
  std::vector<double> breakpoints() const;

  // integral_0^inf r^2 tilde-v dr, by adaptive quadrature.
  double budget() const;

  nlohmann::json to_json() const;

  friend TruncatedPotential truncate(const RadialPotential&, double,
                                     std::optional<double>);

private:
  RadialPotential base_;
  Mode mode_ = Mode::unchanged;
  double phi_ = 0.0;
  double s_ = 0.0;
  double epsilon_ = 0.0;
  double explicit_height_ = 0.0;
  std::optional<double> tau_;
};

// integral_s^inf r^2 v dr; +infinity if a hard core intersects [s, inf).
double cumulative_tail(const RadialPotential& p, double s);

// Cap the second-moment budget at 2 phi. Hard cores take the explicit step
// construction; finite potentials either get their inner part cut away at a
// radius s saturating the budget, or pass through unchanged when already
// under it. a_estimate defaults to the range (an upper bound on the
// scattering length for non-negative potentials) and only feeds the recorded
// epsilon = sqrt(a_est / phi).
TruncatedPotential truncate(const RadialPotential& p, double phi,
                            std::optional<double> a_estimate = std::nullopt);

}  // namespace bose
