#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hcoh/error.hpp"
#include "hcoh/gca.hpp"
#include "oracles.hpp"

using namespace hcoh;

namespace {

const auto Qr = CoefficientRing::rationals();

FreeCga alg(std::vector<GeneratorSpec> g, CoefficientRing r = Qr) { return FreeCga(r, std::move(g)); }

GradedElement random_homogeneous(const FreeCga& A, std::mt19937_64& rng, int deg) {
  GradedElement x = A.zero();
  for (const auto& m : A.basis_of_degree(deg)) {
    long c = static_cast<long>(rng() % 7) - 3;
    if (c) x += A.monomial(m, c);
  }
  return x;
}

std::vector<FreeCga> corpus() {
  return {
      alg({{"x", 2, Sort::polynomial}}),
      alg({{"x", 4, Sort::polynomial}}),
      alg({{"z3", 3, Sort::exterior}, {"z5", 5, Sort::exterior}}),
      alg({{"s", 2, Sort::polynomial}, {"t", 2, Sort::polynomial}}),
      alg({{"x", 2, Sort::polynomial}, {"z", 3, Sort::exterior}}),
      alg({{"x", 2, Sort::polynomial}, {"z", 1, Sort::exterior}}),
      alg({{"a", 1, Sort::exterior}, {"b", 1, Sort::exterior}, {"c", 3, Sort::exterior}}),
      alg({{"c1", 2, Sort::polynomial}, {"c2", 4, Sort::polynomial}, {"c3", 6, Sort::polynomial}}),
      alg({{"p", 4, Sort::polynomial}, {"e", 2, Sort::polynomial}, {"z", 7, Sort::exterior}}),
      alg({{"y", 1, Sort::polynomial}, {"w", 3, Sort::polynomial}}, CoefficientRing::prime_field(2)),
      alg({{"u", 2, Sort::polynomial}, {"v", 2, Sort::polynomial}, {"z1", 1, Sort::exterior}, {"z3", 3, Sort::exterior}},
          CoefficientRing::prime_field(3)),
  };
}

}  // namespace

TEST_CASE("generator sort rules") {
  CHECK_THROWS_AS(alg({{"z", 3, Sort::polynomial}}), Error);
  CHECK_THROWS_AS(alg({{"x", 2, Sort::exterior}}), Error);
  CHECK_NOTHROW(alg({{"y", 1, Sort::polynomial}}, CoefficientRing::prime_field(2)));
  CHECK_THROWS_AS(alg({{"x", 2, Sort::polynomial}, {"x", 4, Sort::polynomial}}), Error);
}

TEST_CASE("multiplication examples") {
  FreeCga L = alg({{"z3", 3, Sort::exterior}, {"z5", 5, Sort::exterior}});
  CHECK(L.generator("z5") * L.generator("z3") == -(L.generator("z3") * L.generator("z5")));
  FreeCga L3 = alg({{"z", 3, Sort::exterior}});
  CHECK((L3.generator(0) * L3.generator(0)).is_zero());
  FreeCga B = alg({{"x", 2, Sort::polynomial}, {"z", 3, Sort::exterior}});
  GradedElement xz = B.generator("x") + B.generator("z");
  CHECK(xz * xz == B.parse("x^2 + 2*x*z"));
  // char 2: odd polynomial generator keeps its square
  FreeCga F = alg({{"y", 1, Sort::polynomial}}, CoefficientRing::prime_field(2));
  CHECK_FALSE((F.generator(0) * F.generator(0)).is_zero());
  FreeCga other = alg({{"x", 2, Sort::polynomial}});
  CHECK_THROWS_WITH(B.generator("x") * other.generator("x"), doctest::Contains("algebra mismatch"));
}

TEST_CASE("basis enumeration examples") {
  FreeCga B = alg({{"x", 2, Sort::polynomial}, {"z", 3, Sort::exterior}});
  auto b6 = B.basis_of_degree(6);
  REQUIRE(b6.size() == 1);
  CHECK(B.format(b6[0]) == "x^3");
  auto b5 = B.basis_of_degree(5);
  REQUIRE(b5.size() == 1);
  CHECK(B.format(b5[0]) == "x*z");
  FreeCga st = alg({{"s", 2, Sort::polynomial}, {"t", 2, Sort::polynomial}});
  CHECK(st.basis_of_degree(4).size() == 3);
}

TEST_CASE("Hilbert series examples") {
  CHECK(alg({{"x", 4, Sort::polynomial}}).hilbert_series(8) == std::vector<std::size_t>{1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(alg({{"a", 3, Sort::exterior}, {"b", 5, Sort::exterior}}).hilbert_series(8) ==
        std::vector<std::size_t>{1, 0, 0, 1, 0, 1, 0, 0, 1});
  CHECK(alg({{"s", 2, Sort::polynomial}, {"t", 2, Sort::polynomial}}).hilbert_series(4) ==
        std::vector<std::size_t>{1, 0, 2, 0, 3});
}

TEST_CASE("basis counts match the generating function on the corpus") {
  for (const auto& A : corpus()) {
    std::vector<oracle::Gen> g;
    for (std::size_t i = 0; i < A.size(); ++i) {
      g.push_back({A.generators()[i].degree, A.generators()[i].sort == Sort::exterior});
    }
    auto expect = oracle::hilbert(g, 30);
    auto hs = A.hilbert_series(30);
    auto pf = A.hilbert_series_product_formula(30);
    for (int n = 0; n <= 30; ++n) {
      CHECK(static_cast<long>(A.basis_of_degree(n).size()) == expect[n]);
      CHECK(static_cast<long>(hs[n]) == expect[n]);
      CHECK(pf[n] == expect[n]);
    }
  }
}

TEST_CASE("graded commutativity and associativity on random pairs") {
  std::mt19937_64 rng(17);
  auto algebras = corpus();
  int checked = 0;
  while (checked < 500) {
    const FreeCga& A = algebras[rng() % algebras.size()];
    int p = 1 + static_cast<int>(rng() % 8), q = 1 + static_cast<int>(rng() % 8), r = 1 + static_cast<int>(rng() % 4);
    GradedElement a = random_homogeneous(A, rng, p), b = random_homogeneous(A, rng, q), c = random_homogeneous(A, rng, r);
    Rational sign = (p * q) % 2 ? -1 : 1;
    CHECK(a * b - sign * (b * a) == A.zero());
    CHECK((a * b) * c == a * (b * c));
    ++checked;
  }
}

TEST_CASE("substitution") {
  FreeCga BU = alg({{"c1", 2, Sort::polynomial}, {"c2", 4, Sort::polynomial}});
  FreeCga BT = alg({{"t1", 2, Sort::polynomial}, {"t2", 2, Sort::polynomial}});
  AlgebraMap f = substitute(BU, BT, {{"c1", BT.parse("t1 + t2")}, {"c2", BT.parse("t1*t2")}});
  CHECK(f(BU.parse("c1^2 - 2*c2")) == BT.parse("t1^2 + t2^2"));
  AlgebraMap id = substitute(BU, BU, {{"c1", BU.generator("c1")}, {"c2", BU.generator("c2")}});
  CHECK(id(BU.parse("c1^3 + c1*c2")) == BU.parse("c1^3 + c1*c2"));
  // circle (-3,1,1,1) in SU(4): c2 -> -6 s^2, so c2^2 -> 36 s^4
  FreeCga BSU = alg({{"c2", 4, Sort::polynomial}, {"c3", 6, Sort::polynomial}, {"c4", 8, Sort::polynomial}});
  FreeCga S = alg({{"s", 2, Sort::polynomial}});
  AlgebraMap g = substitute(BSU, S, {{"c2", S.parse("-6*s^2")}, {"c3", S.parse("-8*s^3")}, {"c4", S.parse("-3*s^4")}});
  CHECK(g(BSU.parse("c2^2")) == S.parse("36*s^4"));
  CHECK_THROWS_AS(substitute(BU, BT, {{"c1", BT.parse("t1*t2")}, {"c2", BT.parse("t1*t2")}}), Error);
  FreeCga E = alg({{"z", 3, Sort::exterior}});
  FreeCga P = alg({{"a", 1, Sort::polynomial}, {"b", 2, Sort::polynomial}}, CoefficientRing::prime_field(2));
  FreeCga E2 = alg({{"z", 1, Sort::exterior}}, CoefficientRing::prime_field(2));
  CHECK_THROWS_WITH(substitute(E2, P, {{"z", P.parse("a")}}), doctest::Contains("not a CGA map"));
  (void)E;
}

TEST_CASE("substitution respects products on random pairs") {
  std::mt19937_64 rng(4);
  FreeCga src = alg({{"x", 2, Sort::polynomial}, {"y", 4, Sort::polynomial}, {"z", 3, Sort::exterior}});
  FreeCga dst = alg({{"s", 2, Sort::polynomial}, {"u", 1, Sort::exterior}, {"v", 1, Sort::exterior}});
  AlgebraMap f = substitute(src, dst, {{"x", dst.parse("s + u*v")}, {"y", dst.parse("s^2 - 2*u*v*s")}, {"z", dst.parse("s*v + s*u")}});
  for (int i = 0; i < 100; ++i) {
    GradedElement a = random_homogeneous(src, rng, 1 + rng() % 9), b = random_homogeneous(src, rng, 1 + rng() % 9);
    CHECK(f(a * b) == f(a) * f(b));
  }
}

TEST_CASE("parse and format round trip") {
  FreeCga B = alg({{"x", 2, Sort::polynomial}, {"z", 3, Sort::exterior}, {"w", 5, Sort::exterior}});
  for (const char* t : {"x^2*z", "3/2*x*z*w - x^4", "-z*w"}) {
    GradedElement e = B.parse(t);
    CHECK(B.parse(B.format(e)) == e);
  }
  CHECK(B.parse("w*z") == -B.parse("z*w"));
  CHECK_THROWS_AS(B.parse("x +"), Error);
  CHECK_THROWS_AS(B.parse("q"), Error);
}
