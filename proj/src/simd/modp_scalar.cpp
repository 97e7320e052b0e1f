#include "hcoh/modp.hpp"

namespace hcoh::modp {

void axpy_scalar(std::uint32_t* dst, const std::uint32_t* src, std::uint32_t s, std::uint32_t p,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint32_t>((dst[i] + static_cast<std::uint64_t>(s) * src[i]) % p);
  }
}

void scale_scalar(std::uint32_t* dst, std::uint32_t s, std::uint32_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(s) * dst[i] % p);
  }
}

std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace hcoh::modp
