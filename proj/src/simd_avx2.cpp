#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "bose/simd.hpp"

// AVX2/FMA variants of the dispatch table. This TU is compiled with
// -mavx2 -mfma and is only entered after a cpuid check in simd_dispatch.cpp.

namespace bose::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_avx2(double a, double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void mul_add_avx2(const double* v, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(_mm256_loadu_pd(v + i), _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += v[i] * x[i];
}

double max_abs_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void max_absdiff_update_avx2(double* out, const double* a, const double* b,
                             std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(out + i), d));
  }
  for (; i < n; ++i) out[i] = std::max(out[i], std::fabs(a[i] - b[i]));
}

constexpr std::uint64_t kBlock = 4096;

double power_series_avx2(double z, int twice_s, std::uint64_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d z4 = _mm256_set1_pd(z * z * z * z);
  const __m256d four = _mm256_set1_pd(4.0);
  double total = 0.0, comp = 0.0;
  for (std::uint64_t l0 = 1; l0 <= n; l0 += kBlock) {
    const std::uint64_t l1 = std::min(n, l0 + kBlock - 1);
    const double zp0 = (z == 1.0) ? 1.0 : std::pow(z, static_cast<double>(l0));
    __m256d zp = _mm256_set_pd(zp0 * z * z * z, zp0 * z * z, zp0 * z, zp0);
    __m256d lv = _mm256_set_pd(static_cast<double>(l0) + 3.0,
                               static_cast<double>(l0) + 2.0,
                               static_cast<double>(l0) + 1.0,
                               static_cast<double>(l0));
    __m256d acc = _mm256_setzero_pd();
    std::uint64_t l = l0;
    for (; l + 4 <= l1 + 1; l += 4) {
      const __m256d r = _mm256_sqrt_pd(lv);
      __m256d denom;
      if (twice_s == 1) denom = r;
      else if (twice_s == 3) denom = _mm256_mul_pd(lv, r);
      else denom = _mm256_mul_pd(_mm256_mul_pd(lv, lv), r);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(zp, _mm256_div_pd(one, denom)));
      zp = _mm256_mul_pd(zp, z4);
      lv = _mm256_add_pd(lv, four);
    }
    double block = hsum(acc);
    double zps = (z == 1.0) ? 1.0 : std::pow(z, static_cast<double>(l));
    for (; l <= l1; ++l) {
      const double ld = static_cast<double>(l);
      const double r = std::sqrt(ld);
      const double denom = (twice_s == 1) ? r : (twice_s == 3) ? ld * r : ld * ld * r;
      block += zps / denom;
      zps *= z;
    }
    const double t = total + block;
    comp += (std::fabs(total) >= std::fabs(block)) ? (total - t) + block
                                                   : (block - t) + total;
    total = t;
  }
  return total + comp;
}

}  // namespace

const Kernels* avx2_kernels_table() {
  static const Kernels k = {
      dot_avx2,     sum_avx2,     axpy_avx2,
      scal_avx2,    mul_add_avx2, max_abs_avx2,
      max_absdiff_update_avx2, power_series_avx2,
  };
  return &k;
}

}  // namespace bose::simd
