#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hcoh/catalog.hpp"
#include "hcoh/cdga.hpp"
#include "hcoh/error.hpp"
#include "hcoh/models.hpp"
#include "oracles.hpp"

using namespace hcoh;

namespace {

const auto Qr = CoefficientRing::rationals();

// Cohomology dimensions from dense differential matrices and the oracle rank.
std::vector<long> oracle_betti(const Cdga& C, int cap, unsigned p = 0) {
  const FreeCga& A = C.algebra();
  std::vector<long> rk(static_cast<std::size_t>(cap) + 2, 0);
  for (int n = 0; n <= cap; ++n) {
    auto from = A.basis_of_degree(n), to = A.basis_of_degree(n + 1);
    oracle::Dense m(to.size(), std::vector<Rational>(from.size(), 0));
    for (std::size_t j = 0; j < from.size(); ++j) {
      GradedElement d = C.differential(from[j]);
      for (std::size_t i = 0; i < to.size(); ++i) m[i][j] = d.coefficient(to[i]);
    }
    rk[n] = to.empty() || from.empty() ? 0 : static_cast<long>(oracle::rank(m, p));
  }
  std::vector<long> b;
  for (int n = 0; n <= cap; ++n) {
    long dim = static_cast<long>(A.basis_of_degree(n).size());
    b.push_back(dim - rk[n] - (n ? rk[n - 1] : 0));
  }
  return b;
}

Cdga koszul_x_z1(const CoefficientRing& r, int coefficient) {
  FreeCga A(r, {{"x", 2, Sort::polynomial}, {"z", 1, Sort::exterior}});
  return Cdga::from_named(A, {{"z", Rational(coefficient) * A.generator("x")}});
}

Cdga random_pure(std::mt19937_64& rng, const CoefficientRing& r) {
  FreeCga A(r, {{"x", 2, Sort::polynomial}, {"y", 2, Sort::polynomial}, {"z", 3, Sort::exterior}, {"w", 5, Sort::exterior}});
  auto c = [&] { return Rational(static_cast<long>(rng() % 5) - 2); };
  GradedElement dz = c() * A.parse("x^2") + c() * A.parse("x*y") + c() * A.parse("y^2");
  GradedElement dw = c() * A.parse("x^3") + c() * A.parse("x*y^2") + c() * A.parse("y^3");
  return Cdga::from_named(A, {{"z", dz}, {"w", dw}});
}

}  // namespace

TEST_CASE("differential examples") {
  Cdga K = koszul_x_z1(Qr, 1);
  const FreeCga& A = K.algebra();
  CHECK(K.differential(A.parse("x*z")) == A.parse("x^2"));
  CHECK(K.differential(A.generator("x")).is_zero());
  // Leibniz on a product with an odd factor
  FreeCga B(Qr, {{"x", 2, Sort::polynomial}, {"a", 3, Sort::exterior}, {"b", 5, Sort::exterior}});
  Cdga D = Cdga::from_named(B, {{"a", B.parse("x^2")}, {"b", B.parse("x^3")}});
  CHECK(D.differential(B.parse("a*b")) == B.parse("x^2*b - x^3*a"));
}

TEST_CASE("d squared must vanish") {
  FreeCga A(Qr, {{"x", 2, Sort::polynomial}, {"a", 1, Sort::exterior}, {"b", 3, Sort::exterior}});
  // d a = x, d b = a x gives d^2 b = x^2 != 0
  CHECK_THROWS_AS(Cdga::from_named(A, {{"a", A.parse("x")}, {"b", A.parse("a*x")}}), Error);
}

TEST_CASE("cohomology examples") {
  Cdga K = koszul_x_z1(Qr, 1);
  auto b = Cohomology(K, 10).betti();
  CHECK(b[0] == 1);
  for (int n = 1; n <= 10; ++n) CHECK(b[n] == 0);
  FreeCga L(Qr, {{"z", 3, Sort::exterior}});
  CHECK(Cohomology(Cdga(L, {L.zero()}), 3).betti() == std::vector<std::size_t>{1, 0, 0, 1});
  auto recipe = two_sided_recipe(lookup("U(2)"), named_embedding("1", lookup("U(2)")),
                                 named_embedding("diag-circle", lookup("U(2)")), CoefficientRing::prime_field(2));
  CHECK(Cohomology(kapovitch_model(recipe).cdga, 3).betti() == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("integral cohomology examples") {
  FreeCga L(CoefficientRing::integers(), {{"z", 3, Sort::exterior}});
  auto z = cohomology_over_Z(Cdga(L, {L.zero()}), 4);
  CHECK(z[0].free_rank == 1);
  CHECK(z[3].free_rank == 1);
  CHECK(z[1].free_rank + z[2].free_rank + z[4].free_rank == 0);
  auto k = cohomology_over_Z(koszul_x_z1(CoefficientRing::integers(), 2), 6);
  CHECK(k[2].free_rank == 0);
  CHECK(k[2].torsion == std::vector<Integer>{2});
  CHECK(k[4].torsion == std::vector<Integer>{2});
  // over Z[1/2] the 2-torsion is invisible
  auto k2 = cohomology_over_Z(koszul_x_z1(CoefficientRing::localized(2), 2), 6);
  CHECK(k2[2].torsion.empty());
  auto su4 = one_sided_recipe(lookup("SU(4)"), named_embedding("circle:-3,1,1,1", lookup("SU(4)")),
                              CoefficientRing::localized(2));
  auto zs = cohomology_over_Z(cartan_model(su4).cdga, 6);
  CHECK(zs[4].torsion == std::vector<Integer>{3});
  CHECK(zs[4].free_rank == 0);
}

TEST_CASE("cohomology matches the dense oracle on random pure algebras") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 15; ++t) {
    for (unsigned p : {0u, 3u}) {
      auto ring = p ? CoefficientRing::prime_field(p) : Qr;
      Cdga C = random_pure(rng, ring);
      const int cap = 14;
      CHECK_FALSE(C.find_d_squared_failure(cap));
      Cohomology h(C, cap, 1 + t % 3);
      auto expect = oracle_betti(C, cap, p);
      for (int n = 0; n <= cap; ++n) CHECK(static_cast<long>(h.slice(n).dimension) == expect[n]);
      // representatives are cocycles and independent modulo coboundaries
      for (int n = 0; n <= cap; ++n) {
        const auto& s = h.slice(n);
        for (std::size_t k = 0; k < s.representatives.size(); ++k) {
          CHECK(C.differential(s.representatives[k]).is_zero());
          auto c = h.class_coordinates(s.representatives[k]);
          for (std::size_t j = 0; j < c.size(); ++j) CHECK(c[j] == (j == k ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("Euler characteristic is conserved") {
  FreeCga B(Qr, {{"a", 3, Sort::exterior}, {"b", 5, Sort::exterior}, {"c", 7, Sort::exterior}});
  Cdga E(B, {B.zero(), B.zero(), B.zero()});
  long chain = 0, hom = 0;
  auto bet = Cohomology(E, 15).betti();
  for (int n = 0; n <= 15; ++n) {
    long dim = static_cast<long>(B.basis_of_degree(n).size());
    chain += n % 2 ? -dim : dim;
    hom += n % 2 ? -static_cast<long>(bet[n]) : static_cast<long>(bet[n]);
  }
  CHECK(chain == hom);
  CHECK(chain == 0);
}

TEST_CASE("coboundary test and class coordinates") {
  Cdga K = koszul_x_z1(Qr, 1);
  Cohomology h(K, 6);
  const FreeCga& A = K.algebra();
  CHECK(h.is_coboundary(A.parse("x^2")));
  CHECK_THROWS_AS(h.class_coordinates(A.parse("z")), Error);
}
