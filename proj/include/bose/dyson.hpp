#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "bose/lattice.hpp"
#include "bose/potential.hpp"

namespace bose {

enum class UChoice { hat, hat_with_hole };

// One-particle inequality check: kinetic high-momentum part plus half the
// truncated interaction against the softened hat potential at the nearest
// scatterer minus the error potentials w_R. The assembled operator
// (LHS - RHS) is expected non-negative up to discretization.
struct DysonCheckConfig {
  std::vector<std::array<double, 3>> scatterers;
  double R = 0.0;
  double epsilon = 0.3;
  double kappa = 0.0;  // used by the hole-filled (hat) variant only
  UChoice u_choice = UChoice::hat_with_hole;
  std::uint64_t seed = 0;  // recorded provenance of the scatterer draw
  bool enforce_resolution = true;

  nlohmann::json to_json() const;
};

// Uniform draw over the box, snapped to lattice sites later, with min-image
// pairwise distance >= min_dist. Deterministic in the seed.
std::vector<std::array<double, 3>> sample_scatterers(double box_L, int count,
                                                     double min_dist,
                                                     std::uint64_t seed);

// Two-pass maximal min_dist-separated subset (indices into points): first all
// points whose nearest neighbor is at least min_dist away, then a scan in
// index order adding whatever stays separated from the selection. The result
// depends on the ordering, which is fixed to the index order, so the
// selection is deterministic. Every excluded point sits within min_dist of a
// selected one.
std::vector<std::size_t> separated_subset(
    const std::vector<std::array<double, 3>>& points, double box_L,
    double min_dist);

struct DysonVerdict {
  double min_eigenvalue = 0.0;
  double residual = 0.0;  // eigensolver residual bound at exit
  double a_pair = 0.0;   // pair scattering length of tilde-v entering the bound
  double a_prime = 0.0;  // hat variant's softened coupling (= a_pair otherwise)
  double kappa_prime = 0.0;
  int iterations = 0;
  bool converged = false;
  bool coarse_grid = false;  // interaction range under 4 cells

  nlohmann::json to_json(double tol_disc) const;
};

DysonVerdict verify_dyson(const DysonCheckConfig& config,
                          const TruncatedPotential& potential,
                          const CutoffProfile& cutoff, const Lattice& lat);

// Radial quadratic-form check of the hole-filling inequality on [0, R/10]:
// Dirichlet energy minus the square-well term, plus the closed-form bound
// constant times the mass, must be positive semi-definite.
struct HoleVerdict {
  double min_eigenvalue = 0.0;
  double bound_constant = 0.0;            // 3 R0 ((R/10)^3 - R0^3)^-1 (tan l / l - 1)
  std::vector<double> minimizer;          // radial profile at cell centers
  std::vector<double> cell_centers;

  nlohmann::json to_json(double tol_disc) const;
};

HoleVerdict verify_hole_lemma(double R0, double R, double lambda, int mesh);

}  // namespace bose
