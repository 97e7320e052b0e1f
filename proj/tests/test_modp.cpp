#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "hcoh/modp.hpp"

using namespace hcoh::modp;

namespace {

std::vector<const Kernels*> variants(std::uint32_t p) {
  std::vector<const Kernels*> v{&scalar_kernels()};
  const Kernels& best = select_kernels(p);
  if (&best != &scalar_kernels()) v.push_back(&best);
#if HCOH_X86
  // exercise the AVX2 variant directly even when dispatch would not pick it
  static const Kernels avx2{axpy_avx2, scale_avx2, "avx2-direct"};
  if (simd_available()) v.push_back(&avx2);
#endif
#if HCOH_NEON
  static const Kernels neon{axpy_neon, scale_neon, "neon-direct"};
  v.push_back(&neon);
#endif
  (void)p;
  return v;
}

}  // namespace

TEST_CASE("kernels match the naive formula") {
  std::mt19937_64 rng(1);
  for (std::uint32_t p : {2u, 3u, 101u, 32717u, 32719u, 32749u}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 1000u}) {
      std::vector<std::uint32_t> a(n), b(n);
      for (auto& x : a) x = static_cast<std::uint32_t>(rng() % p);
      for (auto& x : b) x = static_cast<std::uint32_t>(rng() % p);
      std::uint32_t s = static_cast<std::uint32_t>(rng() % p);
      std::vector<std::uint32_t> expect(n), scaled(n);
      for (std::size_t i = 0; i < n; ++i) {
        expect[i] = static_cast<std::uint32_t>((a[i] + std::uint64_t{s} * b[i]) % p);
        scaled[i] = static_cast<std::uint32_t>(std::uint64_t{s} * a[i] % p);
      }
      for (const Kernels* k : variants(p)) {
        CAPTURE(k->name);
        auto d = a;
        k->axpy(d.data(), b.data(), s, p, n);
        CHECK(d == expect);
        d = a;
        k->scale(d.data(), s, p, n);
        CHECK(d == scaled);
      }
    }
  }
}

TEST_CASE("SIMD and scalar kernels agree at boundary residues") {
  for (std::uint32_t p : {32749u, 32717u}) {
    const std::size_t n = 257;
    std::vector<std::uint32_t> a(n, p - 1), b(n, p - 1);
    auto d1 = a, d2 = a;
    scalar_kernels().axpy(d1.data(), b.data(), p - 1, p, n);
    select_kernels(p).axpy(d2.data(), b.data(), p - 1, p, n);
    CHECK(d1 == d2);
    CHECK(d1[0] == static_cast<std::uint32_t>((p - 1 + std::uint64_t{p - 1} * (p - 1)) % p));
  }
}

TEST_CASE("environment override forces the scalar path") {
  setenv("HCOH_SIMD", "scalar", 1);
  CHECK(&select_kernels(32749) == &scalar_kernels());
  unsetenv("HCOH_SIMD");
}

TEST_CASE("modular inverse") {
  for (std::uint32_t p : {2u, 3u, 7u, 32749u}) {
    for (std::uint32_t a = 1; a < std::min(p, 200u); ++a) CHECK(std::uint64_t{a} * inverse(a, p) % p == 1);
  }
}
