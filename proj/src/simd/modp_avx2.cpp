// Compiled with -mavx2; only called after a runtime CPU check.
#include "hcoh/modp.hpp"

#if HCOH_X86
#include <immintrin.h>

namespace hcoh::modp {
namespace {

// Barrett reduction of eight lanes t < 2^30 with m = floor(2^32 / p).
// The quotient estimate is q or q-1, so one conditional subtraction finishes.
inline __m256i reduce(__m256i t, __m256i m, __m256i pv) {
  __m256i q_even = _mm256_srli_epi64(_mm256_mul_epu32(t, m), 32);
  __m256i q_odd = _mm256_mul_epu32(_mm256_srli_epi64(t, 32), m);
  __m256i q = _mm256_blend_epi32(q_even, q_odd, 0xAA);
  __m256i r = _mm256_sub_epi32(t, _mm256_mullo_epi32(q, pv));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, pv));
}

}  // namespace

void axpy_avx2(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t s, std::uint32_t p,
               std::size_t n) {
  const __m256i sv = _mm256_set1_epi32(static_cast<int>(s));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i m = _mm256_set1_epi32(static_cast<int>((std::uint64_t{1} << 32) / p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i t = _mm256_add_epi32(d, _mm256_mullo_epi32(x, sv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce(t, m, pv));
  }
  axpy_scalar(dst + i, src + i, s, p, n - i);
}

void scale_avx2(std::uint32_t* dst, std::uint32_t s, std::uint32_t p, std::size_t n) {
  const __m256i sv = _mm256_set1_epi32(static_cast<int>(s));
  const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
  const __m256i m = _mm256_set1_epi32(static_cast<int>((std::uint64_t{1} << 32) / p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), reduce(_mm256_mullo_epi32(d, sv), m, pv));
  }
  scale_scalar(dst + i, s, p, n - i);
}

}  // namespace hcoh::modp
#endif
