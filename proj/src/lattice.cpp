#include "bose/lattice.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <fstream>

#include "bose/errors.hpp"
#include "bose/simd.hpp"

namespace bose {
namespace {

constexpr double kPi = 3.14159265358979323846;

// FFTW buffer with plan-once-per-call semantics (FFTW_ESTIMATE planning is
// deterministic and leaves the input untouched).
std::vector<std::complex<double>> fft3(const std::vector<std::complex<double>>& in,
                                       int n, int sign) {
  std::vector<std::complex<double>> out(in.size());
  std::vector<std::complex<double>> work(in);
  fftw_plan plan = fftw_plan_dft_3d(
      n, n, n, reinterpret_cast<fftw_complex*>(work.data()),
      reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace

Lattice::Lattice(double box_L, int grid_n) : box_L_(box_L), n_(grid_n) {
  if (!(box_L > 0.0)) throw domain_error("lattice: box must be > 0");
  if (grid_n < 2 || grid_n > 4096) throw domain_error("lattice: grid_n out of range");
}

std::size_t Lattice::index(int i, int j, int k) const {
  auto wrap = [this](int v) {
    v %= n_;
    return v < 0 ? v + n_ : v;
  };
  return (static_cast<std::size_t>(wrap(i)) * n_ + wrap(j)) * n_ + wrap(k);
}

std::array<int, 3> Lattice::coords(std::size_t idx) const {
  const int k = static_cast<int>(idx % n_);
  const int j = static_cast<int>((idx / n_) % n_);
  const int i = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
  return {i, j, k};
}

double Lattice::site_distance(std::size_t idx,
                              const std::array<double, 3>& point) const {
  const auto c = coords(idx);
  double d2 = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    double d = c[axis] * spacing() - point[axis];
    d -= box_L_ * std::round(d / box_L_);
    d2 += d * d;
  }
  return std::sqrt(d2);
}

double Lattice::distance_to_origin(std::size_t idx) const {
  return site_distance(idx, {0.0, 0.0, 0.0});
}

double Lattice::momentum_norm(std::size_t idx) const {
  const auto c = coords(idx);
  double p2 = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    int k = c[axis];
    if (k >= n_ / 2) k -= n_;
    const double p = 2.0 * kPi / box_L_ * k;
    p2 += p * p;
  }
  return std::sqrt(p2);
}

double Lattice::max_momentum() const { return kPi * n_ / box_L_; }

Field fourier_forward(const Field& f) {
  if (f.space != Space::position)
    throw domain_error("fourier_forward: expected a position-space field");
  const int n = f.lattice.n();
  std::vector<std::complex<double>> in(f.values.begin(), f.values.end());
  auto out = fft3(in, n, FFTW_FORWARD);
  Field g(f.lattice, Space::momentum);
  const double scale = f.lattice.cell_volume();
  for (std::size_t i = 0; i < out.size(); ++i) g.values[i] = out[i].real() * scale;
  return g;
}

Field fourier_inverse(const Field& f) {
  if (f.space != Space::momentum)
    throw domain_error("fourier_inverse: expected a momentum-space field");
  const int n = f.lattice.n();
  std::vector<std::complex<double>> in(f.values.begin(), f.values.end());
  auto out = fft3(in, n, FFTW_BACKWARD);
  Field g(f.lattice, Space::position);
  const double scale = 1.0 / f.lattice.volume();
  for (std::size_t i = 0; i < out.size(); ++i) g.values[i] = out[i].real() * scale;
  return g;
}

double inverse_imag_residual(const Field& f) {
  if (f.space != Space::momentum)
    throw domain_error("inverse_imag_residual: expected momentum space");
  const int n = f.lattice.n();
  std::vector<std::complex<double>> in(f.values.begin(), f.values.end());
  auto out = fft3(in, n, FFTW_BACKWARD);
  double max_im = 0.0, max_abs = 0.0;
  for (const auto& c : out) {
    max_im = std::max(max_im, std::fabs(c.imag()));
    max_abs = std::max(max_abs, std::abs(c));
  }
  return max_abs > 0.0 ? max_im / max_abs : 0.0;
}

double CutoffProfile::nu(double t) {
  if (t <= 1.0) return 0.0;
  if (t >= 2.0) return 1.0;
  const double x = t - 1.0;
  return x * x * x * x * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)));
}

Field build_h(const Lattice& lat, const CutoffProfile& cutoff) {
  if (cutoff.s > 0.0 && lat.max_momentum() < 2.0 / cutoff.s)
    throw domain_error("build_h: cutoff transition band not resolved");
  Field mom(lat, Space::momentum);
  for (std::size_t i = 0; i < lat.sites(); ++i)
    mom.values[i] = 1.0 - cutoff.chi(lat.momentum_norm(i));
  return fourier_inverse(mom);
}

Field build_fR(const Field& h, double R) {
  if (h.space != Space::position)
    throw domain_error("build_fR: expected position-space h");
  const Lattice& lat = h.lattice;
  const int n = lat.n();
  const double dr = lat.spacing();
  if (R < 4.0 * dr) throw domain_error("build_fR: R below 4-cell resolution");
  if (R >= lat.box() / 2.0) throw domain_error("build_fR: R must be < box/2");

  // offsets with min-image norm <= R
  const int reach = static_cast<int>(R / dr) + 1;
  std::vector<std::array<int, 3>> offsets;
  for (int ox = -reach; ox <= reach; ++ox)
    for (int oy = -reach; oy <= reach; ++oy)
      for (int oz = -reach; oz <= reach; ++oz) {
        const double norm = dr * std::sqrt(double(ox) * ox + double(oy) * oy +
                                           double(oz) * oz);
        if (norm <= R && !(ox == 0 && oy == 0 && oz == 0))
          offsets.push_back({ox, oy, oz});
      }

  Field out(lat, Space::position);
  const auto& kern = simd::active();
  std::vector<double> shifted(static_cast<std::size_t>(n));
  for (const auto& off : offsets) {
    const int sx = ((off[0] % n) + n) % n;
    const int sy = ((off[1] % n) + n) % n;
    const int sz = ((off[2] % n) + n) % n;
    for (int i = 0; i < n; ++i) {
      const int si = (i - sx + n) % n;
      for (int j = 0; j < n; ++j) {
        const int sj = (j - sy + n) % n;
        const double* src_row = &h.values[lat.index(si, sj, 0)];
        const double* base_row = &h.values[lat.index(i, j, 0)];
        double* out_row = &out.values[lat.index(i, j, 0)];
        // shifted row split into its two contiguous chunks
        const int head = n - sz;
        for (int k = 0; k < head; ++k) shifted[static_cast<std::size_t>(k) + sz] = src_row[k];
        for (int k = head; k < n; ++k) shifted[static_cast<std::size_t>(k) - head] = src_row[k];
        kern.max_absdiff_update(out_row, shifted.data(), base_row,
                                static_cast<std::size_t>(n));
      }
    }
  }
  return out;
}

Field build_wR(const Field& fR) {
  if (fR.space != Space::position)
    throw domain_error("build_wR: expected position-space f_R");
  const auto& kern = simd::active();
  const double integral =
      kern.sum(fR.values.data(), fR.values.size()) * fR.lattice.cell_volume();
  Field out = fR;
  kern.scal(2.0 / (kPi * kPi) * integral, out.values.data(), out.values.size());
  return out;
}

Field build_eta(double b, const Lattice& lat) {
  if (!(b > 0.0) || b > lat.box() / 2.0)
    throw domain_error("build_eta: need 0 < b <= box/2");
  Field bump(lat, Space::position);
  const double half = b / 2.0;
  for (std::size_t i = 0; i < lat.sites(); ++i) {
    const double d = lat.distance_to_origin(i);
    if (d < half) {
      const double t = d / half;
      bump.values[i] = std::exp(-1.0 / (1.0 - t * t));
    }
  }
  Field hat = fourier_forward(bump);
  for (double& v : hat.values) v = v * v;
  Field eta = fourier_inverse(hat);
  const double center = eta.values[0];
  if (!(center > 0.0)) throw numerical_error("build_eta: degenerate bump");
  simd::active().scal(1.0 / center, eta.values.data(), eta.values.size());
  return eta;
}

void write_field(const Field& f, const std::string& path_prefix) {
  {
    std::ofstream bin(path_prefix + ".f64", std::ios::binary);
    if (!bin) throw domain_error("write_field: cannot open " + path_prefix + ".f64");
    bin.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  }
  nlohmann::json side = {
      {"box_L", f.lattice.box()},
      {"grid_n", f.lattice.n()},
      {"space", f.space == Space::position ? "position" : "momentum"}};
  std::ofstream js(path_prefix + ".json");
  js << side.dump(2) << "\n";
}

Field read_field(const std::string& path_prefix) {
  std::ifstream js(path_prefix + ".json");
  if (!js) throw domain_error("read_field: missing sidecar for " + path_prefix);
  nlohmann::json side;
  js >> side;
  Lattice lat(side.at("box_L").get<double>(), side.at("grid_n").get<int>());
  Field f(lat, side.at("space").get<std::string>() == "momentum"
                   ? Space::momentum
                   : Space::position);
  std::ifstream bin(path_prefix + ".f64", std::ios::binary);
  if (!bin) throw domain_error("read_field: missing data for " + path_prefix);
  bin.read(reinterpret_cast<char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (static_cast<std::size_t>(bin.gcount()) != f.values.size() * sizeof(double))
    throw domain_error("read_field: truncated data file");
  return f;
}

}  // namespace bose
