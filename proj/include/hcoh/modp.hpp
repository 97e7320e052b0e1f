#pragma once
// Dense row kernels over Z/p for p < 2^15.
// Entries are canonical residues in [0, p).

#include <cstddef>
#include <cstdint>
#include <string>

#if defined(__x86_64__) || defined(_M_X64)
#define HCOH_X86 1
#else
#define HCOH_X86 0
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define HCOH_NEON 1
#else
#define HCOH_NEON 0
#endif

namespace hcoh::modp {

constexpr std::uint32_t kMaxKernelPrime = 1u << 15;

// dst[i] = (dst[i] + s * src[i]) mod p
void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t s, std::uint32_t p,
                 std::size_t n);
// dst[i] = (s * dst[i]) mod p
void scale_scalar(std::uint32_t* dst, std::uint32_t s, std::uint32_t p, std::size_t n);

#if HCOH_X86
void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t s, std::uint32_t p,
               std::size_t n);
void scale_avx2(std::uint32_t* dst, std::uint32_t s, std::uint32_t p, std::size_t n);
#endif
#if HCOH_NEON
void axpy_neon(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t s, std::uint32_t p,
               std::size_t n);
void scale_neon(std::uint32_t* dst, std::uint32_t s, std::uint32_t p, std::size_t n);
#endif

struct Kernels {
  void (*axpy)(std::uint32_t*, const std::uint32_t*, std::uint32_t, std::uint32_t, std::size_t);
  void (*scale)(std::uint32_t*, std::uint32_t, std::uint32_t, std::size_t);
  const char* name;
};

const Kernels& scalar_kernels();
// Best kernel set for this CPU and prime. HCOH_SIMD=scalar in the environment forces the
// reference path.
const Kernels& select_kernels(std::uint32_t p);
bool simd_available();

std::uint32_t inverse(std::uint32_t a, std::uint32_t p);

}  // namespace hcoh::modp
