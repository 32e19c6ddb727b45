#pragma once

#include <vector>

#include "bose/lattice.hpp"

namespace bose {

// Smooth radial momentum profile, an even polynomial in u = |q|^2 supported
// in |q| <= 2 (inside the cube of side 4). Iterated Laplacians stay in the
// same family: Delta u^k = 2k(2k+1) u^{k-1}.
class MomentumBump {
public:
  explicit MomentumBump(std::vector<double> coeff_u);

  // c (|q|^2/4)(1 - |q|^2/4)^8, normalized to unit sup norm. The |q|^2
  // factor removes the zero mode so the built field decays cleanly.
  static MomentumBump stock();

  double operator()(double q_norm) const;
  MomentumBump laplacian() const;
  double laplacian_power_sup(int n) const;  // || (-Delta)^n o ||_inf
  double sup_norm() const;

private:
  std::vector<double> coeff_;  // polynomial in u on [0, 4]
};

struct DecayCheck {
  bool holds = false;
  double min_margin = 0.0;  // min over checked sites of (rhs - lhs)/rhs
  double slope = 0.0;       // log-log envelope slope of |u| vs distance
  double max_u = 0.0;
  int order_n = 0;
};

// Builds u(x) = L^-3 sum_p o(s p) e^{-ipx} and checks, at every site with
// d(x,0) > s, that |u(x)| <= (pi s/(2 d))^{2n} ||(-Delta)^n o||_inf
// (2/(pi s) + 2(n+1)/L)^3. The slope is fitted on shell maxima of |u| over
// s < d <= 0.48 L.
DecayCheck decay_bound_check(const MomentumBump& o, double s,
                             const Lattice& lat, int order_n);

}  // namespace bose
