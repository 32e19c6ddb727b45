#include <cstdlib>
#include <string>

#include "bose/simd.hpp"

namespace bose::simd {

#if defined(BOSE_HAVE_AVX2_TU)
const Kernels* avx2_kernels_table();  // defined in simd_avx2.cpp
#endif

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

namespace {

bool cpu_has_avx2() {
#if defined(BOSE_HAVE_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa resolve_isa() {
  const char* env = std::getenv("BOSE_THERMO_SIMD");
  const std::string req = env ? env : "auto";
  if (req == "scalar") return Isa::scalar;
  if (req == "avx2") return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

const Kernels* kernels_for(Isa isa) {
  if (isa == Isa::scalar) return &scalar_kernels();
#if defined(BOSE_HAVE_AVX2_TU)
  if (isa == Isa::avx2 && cpu_has_avx2()) return avx2_kernels_table();
#endif
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (kernels_for(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

Isa active_isa() {
  static const Isa isa = resolve_isa();
  return isa;
}

const Kernels& active() {
  static const Kernels& k = *kernels_for(active_isa());
  return k;
}

}  // namespace bose::simd
