#include <cstdlib>
#include <cstring>

#include "hcoh/modp.hpp"

namespace hcoh::modp {
namespace {

bool forced_scalar() {
  const char* env = std::getenv("HCOH_SIMD");
  return env != nullptr && std::strcmp(env, "scalar") == 0;
}

bool cpu_has_simd() {
#if HCOH_X86
  return __builtin_cpu_supports("avx2");
#elif HCOH_NEON
  return true;
#else
  return false;
#endif
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{axpy_scalar, scale_scalar, "scalar"};
  return k;
}

bool simd_available() { return cpu_has_simd(); }

const Kernels& select_kernels(std::uint32_t p) {
  static const bool has_simd = cpu_has_simd();
  if (!has_simd || forced_scalar() || p >= kMaxKernelPrime) return scalar_kernels();
#if HCOH_X86
  static const Kernels k{axpy_avx2, scale_avx2, "avx2"};
  return k;
#elif HCOH_NEON
  static const Kernels k{axpy_neon, scale_neon, "neon"};
  return k;
#else
  return scalar_kernels();
#endif
}

}  // namespace hcoh::modp
