#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace bose {

// L-periodic cubic lattice with n sites per axis. Sites live at x = j L/n,
// dual modes at p = (2 pi / L) k with k in [-n/2, n/2) per axis.
class Lattice {
public:
  Lattice(double box_L, int grid_n);

  double box() const { return box_L_; }
  int n() const { return n_; }
  double spacing() const { return box_L_ / n_; }
  std::size_t sites() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  double cell_volume() const { return spacing() * spacing() * spacing(); }
  double volume() const { return box_L_ * box_L_ * box_L_; }

  std::size_t index(int i, int j, int k) const;
  std::array<int, 3> coords(std::size_t idx) const;

  // minimum-image distance between two sites (periodic torus metric)
  double site_distance(std::size_t idx, const std::array<double, 3>& point) const;
  double distance_to_origin(std::size_t idx) const;

  // |p| of the mode stored at idx (centered integer wavevector)
  double momentum_norm(std::size_t idx) const;
  double max_momentum() const;  // pi n / L per axis

private:
  double box_L_;
  int n_;
};

enum class Space { position, momentum };

struct Field {
  Field() : lattice(1.0, 2) {}
  Field(const Lattice& lat, Space sp)
      : lattice(lat), space(sp), values(lat.sites(), 0.0) {}
  Lattice lattice;
  Space space = Space::position;
  std::vector<double> values;
};

// Lattice Fourier pair mimicking the continuum normalization:
//   forward: F(p) = sum_x f(x) e^{-i p x} (L/n)^3
//   inverse: f(x) = L^-3 sum_p F(p) e^{+i p x}
// Fields are real in both spaces, so these are exact inverses only for
// even-symmetric data (f(x) = f(-x mod L)); everything built here is even.
Field fourier_forward(const Field& position_field);
Field fourier_inverse(const Field& momentum_field);

// max |Im| / max |value| left behind by the complex transform; a symmetry
// diagnostic for fields that are supposed to be even.
double inverse_imag_residual(const Field& momentum_field);

// Smooth radial momentum cutoff: nu = 0 below 1, 1 above 2, degree-7
// smoothstep (C^3) between; chi(p) = nu(s p). s = 0 means chi identically 0.
struct CutoffProfile {
  double s = 0.0;
  static double nu(double t);
  double chi(double p_norm) const { return nu(s * p_norm); }
  static constexpr int smooth_order = 3;
};

// h(x) = L^-3 sum_p (1 - chi(p)) e^{-i p x}. Requires the transition band
// [1/s, 2/s] to fit under the lattice momentum max when s > 0.
Field build_h(const Lattice& lat, const CutoffProfile& cutoff);

// f_R(x) = sup_{|y| <= R} |h(x - y) - h(x)| over lattice offsets.
// R must span at least 4 cells and stay below half the box.
Field build_fR(const Field& h, double R);

// w_R(x) = (2/pi^2) f_R(x) * integral of f_R over the box.
Field build_wR(const Field& fR);

// Localization mollifier: self-convolution of a smooth bump supported in
// radius b/2, normalized to eta(0) = 1. Vanishes for |x| >= b and has a
// non-negative lattice transform by construction.
Field build_eta(double b, const Lattice& lat);

// binary row-major dump with a JSON sidecar {box_L, grid_n, space}
void write_field(const Field& f, const std::string& path_prefix);
Field read_field(const std::string& path_prefix);

}  // namespace bose
