#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bose::simd {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

// Dispatch table of the hot inner loops. Every entry has a scalar reference
// implementation; wider variants must agree with it to rounding.
struct Kernels {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scal)(double a, double* x, std::size_t n);
  // y[i] += v[i] * x[i]
  void (*mul_add)(const double* v, const double* x, double* y, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  // out[i] = max(out[i], |a[i] - b[i]|)
  void (*max_absdiff_update)(double* out, const double* a, const double* b,
                             std::size_t n);
  // sum_{l=1}^{n} z^l * l^{-s} with s = twice_s/2, twice_s in {1,3,5}.
  // Powers of z are re-anchored with std::pow at block boundaries and blocks
  // are combined with compensated summation, so the result stays accurate to
  // ~1e-15 relative even for n ~ 1e7.
  double (*power_series)(double z, int twice_s, std::uint64_t n);
};

const Kernels& scalar_kernels();

// Table for a given ISA, or nullptr when that variant was not compiled in or
// the CPU lacks it. scalar is always available.
const Kernels* kernels_for(Isa isa);

std::vector<Isa> available_isas();

// Resolved once per process. BOSE_THERMO_SIMD=scalar|avx2|auto overrides the
// cpuid-based choice (unsupported requests fall back to scalar).
Isa active_isa();
const Kernels& active();

}  // namespace bose::simd
