#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hcoh/coeffring.hpp"
#include "hcoh/error.hpp"
#include "oracles.hpp"

using namespace hcoh;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi, double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::uniform_real_distribution<double> u(0, 1);
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) < density) m.set(i, j, val(rng));
  return m;
}

oracle::Dense dense(const ExactMatrix& m) {
  oracle::Dense d(m.rows(), std::vector<Rational>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) d[i][j] = v;
  return d;
}

std::vector<std::vector<Integer>> dense_z(const ExactMatrix& m) {
  std::vector<std::vector<Integer>> d(m.rows(), std::vector<Integer>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) d[i][j] = v.get_num();
  return d;
}

}  // namespace

TEST_CASE("ring parsing and predicates") {
  CHECK(CoefficientRing::parse("Q") == CoefficientRing::rationals());
  CHECK(CoefficientRing::parse("F7").characteristic() == 7);
  CHECK(CoefficientRing::parse("Z").characteristic() == 0);
  CHECK(CoefficientRing::parse("Z-inv2") == CoefficientRing::localized(2));
  CHECK_THROWS_AS(CoefficientRing::parse("F6"), Error);
  CHECK_THROWS_AS(CoefficientRing::localized(1), Error);
  CHECK(CoefficientRing::rationals().two_is_unit());
  CHECK(CoefficientRing::prime_field(3).two_is_unit());
  CHECK_FALSE(CoefficientRing::prime_field(2).two_is_unit());
  CHECK_FALSE(CoefficientRing::integers().two_is_unit());
  CHECK(CoefficientRing::localized(6).two_is_unit());
  CHECK_FALSE(CoefficientRing::localized(3).two_is_unit());
  CHECK(CoefficientRing::localized(2).contains(Rational(3, 8)));
  CHECK_FALSE(CoefficientRing::localized(2).contains(Rational(1, 3)));
  CHECK(CoefficientRing::prime_field(5).normalize(Rational(-1)) == 4);
  CHECK(CoefficientRing::prime_field(5).normalize(Rational(1, 2)) == 3);
}

TEST_CASE("rank and kernel examples") {
  const auto Qr = CoefficientRing::rationals();
  auto z = rank_and_kernel(ExactMatrix(3, 3), Qr);
  CHECK(z.rank == 0);
  CHECK(z.kernel.size() == 3);
  auto id = rank_and_kernel(ExactMatrix::identity(4), Qr);
  CHECK(id.rank == 4);
  CHECK(id.kernel.empty());
  // over F2 the 1x2 matrix (1 1): enumerate all four vectors for the kernel
  ExactMatrix ones(1, 2);
  ones.set(0, 0, 1);
  ones.set(0, 1, 1);
  auto f2 = rank_and_kernel(ones, CoefficientRing::prime_field(2));
  CHECK(f2.rank == 1);
  REQUIRE(f2.kernel.size() == 1);
  int zeros = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if ((a + b) % 2 == 0 && (a || b)) {
        ++zeros;
        CHECK(f2.kernel[0] == std::vector<Rational>{a, b});
      }
  CHECK(zeros == 1);
  CHECK_THROWS_WITH(rank_and_kernel(ones, CoefficientRing::integers()), doctest::Contains("field required"));
}

TEST_CASE("rank agrees with the dense oracle and kernels annihilate") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    ExactMatrix m = random_matrix(rng, r, c, -3, 3, 0.5);
    for (unsigned p : {0u, 2u, 3u, 7u}) {
      auto ring = p ? CoefficientRing::prime_field(p) : CoefficientRing::rationals();
      ExactMatrix mm(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (const auto& [j, v] : m.row(i)) mm.set(i, j, ring.normalize(v));
      auto rk = rank_and_kernel(mm, ring);
      CHECK(rk.rank == oracle::rank(dense(m), p));
      CHECK(rk.rank + rk.kernel.size() == c);
      for (const auto& v : rk.kernel) {
        for (const auto& x : mm.apply(v)) CHECK(ring.normalize(x) == 0);
      }
    }
  }
}

TEST_CASE("multimodular rank matches exact rank") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    ExactMatrix m = random_matrix(rng, 20 + rng() % 20, 20 + rng() % 20, -50, 50, 0.3);
    CHECK(rank_multimodular(m) == rank(m, CoefficientRing::rationals()));
  }
  // rank one with large entries
  ExactMatrix big(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) big.set(i, j, Integer(1000003) * (i + 1) * (j + 2));
  CHECK(rank_multimodular(big) == 1);
  CHECK(rank_mod_p(big, 1000003 % 32749 == 0 ? 3 : 32749) == 1);
}

TEST_CASE("Smith normal form examples") {
  auto snf = [](std::vector<std::vector<Rational>> rows) {
    return smith_normal_form(ExactMatrix::from_dense(rows)).invariants;
  };
  CHECK(snf({{2, 0}, {0, 6}}) == std::vector<Integer>{2, 6});
  CHECK(snf({{2, 4}, {6, 8}}) == std::vector<Integer>{2, 4});
  CHECK(snf({{0, 0, 0}, {0, 0, 0}}).empty());
}

TEST_CASE("Smith normal form against determinant divisors") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    ExactMatrix m = random_matrix(rng, r, c, -6, 6, 0.7);
    SmithForm s = smith_normal_form(m);
    CHECK(s.invariants == oracle::invariant_factors(dense_z(m)));
    for (std::size_t k = 0; k + 1 < s.invariants.size(); ++k) {
      CHECK(s.invariants[k + 1] % s.invariants[k] == 0);
    }
    // U m V = diag
    auto mz = dense_z(m);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        Integer acc = 0;
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < c; ++b) acc += s.left[i][a] * mz[a][b] * s.right[b][j];
        Integer expect = (i == j && i < s.invariants.size()) ? s.invariants[i] : Integer(0);
        CHECK(abs(acc) == abs(expect));
      }
    }
    if (r == c) {
      Integer prod = 1;
      for (const auto& d : s.invariants) prod *= d;
      if (s.invariants.size() < r) prod = 0;
      CHECK(prod == abs(oracle::det(mz)));
    }
  }
}

TEST_CASE("rational arithmetic is exact") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Rational a(static_cast<long>(rng() % 100000) + 1, static_cast<long>(rng() % 999) + 1);
    a.canonicalize();
    Rational b = 1 / a;
    CHECK(a * b == 1);
  }
}

TEST_CASE("subspace reduction tracks tags") {
  Subspace s(CoefficientRing::rationals());
  CHECK(s.insert({{0, 1}, {1, 1}}, 0));
  CHECK(s.insert({{1, 1}}, 1));
  CHECK_FALSE(s.insert({{0, 2}}, 2));
  SparseVec coords;
  SparseVec rest = s.reduce({{0, 3}, {1, 5}, {2, 1}}, &coords);
  CHECK(rest == SparseVec{{2, 1}});
  CHECK(coords[0] == 3);
  CHECK(coords[1] == 2);
}

TEST_CASE("sparse mod-p rank on large scattered blocks") {
  // a small random block, an identity block and scaled copies of rows, scattered through a
  // large sparse matrix: the rank is the oracle rank of the block plus the identity size
  std::mt19937_64 rng(11);
  const std::uint32_t p = 32749;
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t R = 1400, C = 1200, k = 12 + trial * 5, id = 300;
    ExactMatrix small = random_matrix(rng, k, k + 3, -9, 9, 0.35);
    std::vector<std::size_t> rows(R), cols(C);
    for (std::size_t i = 0; i < R; ++i) rows[i] = i;
    for (std::size_t i = 0; i < C; ++i) cols[i] = i;
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    ExactMatrix m(R, C);
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& [j, v] : small.row(i)) m.set(rows[i], cols[j], v);
    for (std::size_t i = 0; i < id; ++i) m.set(rows[k + i], cols[k + 3 + i], 1);
    // scaled copies of block rows
    for (std::size_t i = 0; i < 50; ++i) {
      const std::size_t src = rng() % k, dst = rows[k + id + i];
      for (const auto& [j, v] : small.row(src)) m.set(dst, cols[j], v * Rational(static_cast<long>(2 + i % 7)));
    }
    REQUIRE(m.nonzeros() < R * C / 50);
    const std::size_t expect = oracle::rank(dense(small), p) + id;
    CHECK(rank_mod_p(m, p) == expect);
    CHECK(rank_multimodular(m) == oracle::rank(dense(small), 0) + id);
  }
}
