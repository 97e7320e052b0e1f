#include "hcoh/modp.hpp"

#if HCOH_NEON
#include <arm_neon.h>

namespace hcoh::modp {
namespace {

// Same Barrett scheme as the AVX2 path, four lanes at a time.
inline uint32x4_t reduce(uint32x4_t t, std::uint32_t m, uint32x4_t pv) {
  uint64x2_t lo = vmull_n_u32(vget_low_u32(t), m);
  uint64x2_t hi = vmull_n_u32(vget_high_u32(t), m);
  uint32x4_t q = vcombine_u32(vshrn_n_u64(lo, 32), vshrn_n_u64(hi, 32));
  uint32x4_t r = vmlsq_u32(t, q, pv);
  return vminq_u32(r, vsubq_u32(r, pv));
}

}  // namespace

void axpy_neon(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t s, std::uint32_t p,
               std::size_t n) {
  const uint32x4_t pv = vdupq_n_u32(p);
  const auto m = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / p);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32x4_t t = vmlaq_n_u32(vld1q_u32(dst + i), vld1q_u32(src + i), s);
    vst1q_u32(dst + i, reduce(t, m, pv));
  }
  axpy_scalar(dst + i, src + i, s, p, n - i);
}

void scale_neon(std::uint32_t* dst, std::uint32_t s, std::uint32_t p, std::size_t n) {
  const uint32x4_t pv = vdupq_n_u32(p);
  const auto m = static_cast<std::uint32_t>((std::uint64_t{1} << 32) / p);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vst1q_u32(dst + i, reduce(vmulq_n_u32(vld1q_u32(dst + i), s), m, pv));
  }
  scale_scalar(dst + i, s, p, n - i);
}

}  // namespace hcoh::modp
#endif
