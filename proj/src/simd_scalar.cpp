#include <cmath>
#include <cstddef>
#include <cstdint>

#include "bose/simd.hpp"

namespace bose::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void mul_add_scalar(const double* v, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += v[i] * x[i];
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void max_absdiff_update_scalar(double* out, const double* a, const double* b,
                               std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::max(out[i], std::fabs(a[i] - b[i]));
}

inline double inv_pow_half(double l, int twice_s) {
  const double r = std::sqrt(l);
  switch (twice_s) {
    case 1: return 1.0 / r;
    case 3: return 1.0 / (l * r);
    default: return 1.0 / (l * l * r);
  }
}

constexpr std::uint64_t kBlock = 4096;

double power_series_scalar(double z, int twice_s, std::uint64_t n) {
  double total = 0.0, comp = 0.0;  // Kahan across blocks
  for (std::uint64_t l0 = 1; l0 <= n; l0 += kBlock) {
    const std::uint64_t l1 = std::min(n, l0 + kBlock - 1);
    double zp = (z == 1.0) ? 1.0 : std::pow(z, static_cast<double>(l0));
    double block = 0.0;
    for (std::uint64_t l = l0; l <= l1; ++l) {
      block += zp * inv_pow_half(static_cast<double>(l), twice_s);
      if (z != 1.0) zp *= z;
    }
    const double t = total + block;
    comp += (std::fabs(total) >= std::fabs(block)) ? (total - t) + block
                                                   : (block - t) + total;
    total = t;
  }
  return total + comp;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {
      dot_scalar,     sum_scalar,     axpy_scalar,
      scal_scalar,    mul_add_scalar, max_abs_scalar,
      max_absdiff_update_scalar, power_series_scalar,
  };
  return k;
}

}  // namespace bose::simd
