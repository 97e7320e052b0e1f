#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcoh/barcalc.hpp"
#include "hcoh/catalog.hpp"
#include "hcoh/error.hpp"
#include "hcoh/models.hpp"
#include "hcoh/tor.hpp"
#include "oracles.hpp"

using namespace hcoh;

namespace {

const auto Qr = CoefficientRing::rationals();

Dga exterior(std::vector<int> degrees, int cap) {
  std::vector<GeneratorSpec> g;
  for (int d : degrees) g.push_back({"z" + std::to_string(d), d, Sort::exterior});
  return Dga::from_free(FreeCga(Qr, g), cap);
}

Dga truncated_polynomial(int cap) { return Dga::from_free(FreeCga(Qr, {{"x", 2, Sort::polynomial}}), cap); }

Dga x2_y3(int cap) {
  FreeCga A(Qr, {{"x", 2, Sort::polynomial}, {"y", 3, Sort::exterior}});
  return Dga::from_cdga(Cdga::from_named(A, {{"y", A.parse("x^2")}}), cap);
}

// Cohomology dimensions through cap from dense matrices and the oracle rank.
std::vector<long> oracle_dims(const CochainComplex& c, int cap) {
  std::vector<long> rk(c.d.size() + 1, 0);
  for (std::size_t n = 0; n < c.d.size(); ++n) {
    const ExactMatrix& m = c.d[n];
    if (m.rows() == 0 || m.cols() == 0) continue;
    oracle::Dense d(m.rows(), std::vector<Rational>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (const auto& [k, v] : m.row(r)) d[r][k] = v;
    rk[n] = static_cast<long>(oracle::rank(d, c.ring.characteristic()));
  }
  std::vector<long> out;
  for (int n = 0; n <= cap; ++n) {
    long dim = static_cast<long>(c.labels[static_cast<std::size_t>(n)].size());
    out.push_back(dim - rk[static_cast<std::size_t>(n)] - (n ? rk[static_cast<std::size_t>(n - 1)] : 0));
  }
  return out;
}

std::vector<long> even_ones(int cap) {
  std::vector<long> v;
  for (int n = 0; n <= cap; ++n) v.push_back(n % 2 ? 0 : 1);
  return v;
}

}  // namespace

TEST_CASE("bar and cobar of the ground field") {
  Dga k = Dga::ground(Qr);
  Dgc Bk = bar(k, 6);
  CHECK(Bk.basis.size() == 1);
  CHECK(Bk.degree(0) == 0);
  Dga Ok = cobar(Bk, 6);
  CHECK(Ok.basis.size() == 1);
}

TEST_CASE("bar construction of an exterior algebra on a degree-3 class") {
  Dga A = exterior({3}, 14);
  REQUIRE_FALSE(A.validate());
  Dgc B = bar(A, 13);
  CHECK_FALSE(B.validate());
  CochainComplex c = complex_of(B, 13);
  CHECK_FALSE(c.find_d_squared_failure());
  auto dims = complex_cohomology(c, 12).dims;
  CHECK(oracle::as_long(dims) == even_ones(12));
  CHECK(oracle_dims(c, 12) == even_ones(12));
}

TEST_CASE("bar differential sign on a two-letter word") {
  // odd a, b: the desuspended prefix has even degree, so d[a|b] = +[ab]
  Dga A = exterior({3, 5}, 10);
  Dgc B = bar(A, 8);
  auto ab = B.basis.find("[z3|z5]");
  auto prod = B.basis.find("[z3*z5]");
  REQUIRE(ab);
  REQUIRE(prod);
  CHECK(B.diff[*ab] == SparseVec{{*prod, Rational(1)}});
  auto ba = B.basis.find("[z5|z3]");
  REQUIRE(ba);
  CHECK(B.diff[*ba] == SparseVec{{*prod, Rational(-1)}});
  // x2 has odd desuspension: d[x|x] = -[x^2]
  Dga P = truncated_polynomial(8);
  Dgc BP = bar(P, 6);
  auto xx = BP.basis.find("[x|x]"), x2 = BP.basis.find("[x^2]");
  REQUIRE(xx);
  REQUIRE(x2);
  CHECK(BP.diff[*xx] == SparseVec{{*x2, Rational(-1)}});
}

TEST_CASE("bar needs a word cap in the presence of degree-one classes") {
  Dga A = exterior({1}, 6);
  CHECK_THROWS_WITH(bar(A, 4), doctest::Contains("bar complex not finite per degree"));
  BarOptions o;
  o.word_cap = 3;
  Dgc B = bar(A, 4, o);
  CHECK_FALSE(B.validate());
}

TEST_CASE("cobar conventions") {
  // single primitive c in degree 2: the suspension has degree 3, so the cobar is a tensor algebra on it
  Dgc C;
  C.basis.cap = 8;
  C.counit_element = C.basis.add("1", 0);
  std::size_t c = C.basis.add("c", 2);
  C.coproduct = {{{Rational(1), 0, 0}}, {{Rational(1), c, 0}, {Rational(1), 0, c}}};
  C.diff.assign(2, SparseVec{});
  REQUIRE_FALSE(C.validate());
  Dga O = cobar(C, 12);
  CHECK_FALSE(O.validate());
  auto dims = complex_cohomology(complex_of(O, 12), 11).dims;
  for (int n = 0; n <= 11; ++n) CHECK(dims[n] == (n % 3 == 0 ? 1u : 0u));
  // degree-0 coalgebra elements are rejected
  Dgc bad = C;
  bad.basis.add("e", 0);
  bad.coproduct.push_back({});
  bad.diff.push_back({});
  CHECK_THROWS_WITH(cobar(bad, 6), doctest::Contains("cobar not finite per degree"));
}

TEST_CASE("cobar of bar recovers the algebra") {
  Dga A = exterior({3}, 10);
  Dga O = cobar(bar(A, 8), 9);
  CHECK_FALSE(O.validate());
  auto dims = complex_cohomology(complex_of(O, 9), 8).dims;
  CHECK(oracle::as_long(dims) == std::vector<long>{1, 0, 0, 1, 0, 0, 0, 0, 0});
  for (const Dga& X : {exterior({3}, 12), exterior({3, 5}, 12), truncated_polynomial(6), x2_y3(12)}) {
    Verdict v = check_counit(X, 8);
    CHECK_MESSAGE(v.ok, v.detail);
  }
}

TEST_CASE("twisting cochains") {
  Dga A = exterior({3}, 14);
  Dgc B = bar(A, 13);
  CHECK(check_twisting_cochain(zero_cochain(B, A), 12).ok);
  TwistingCochainData t = tautological_cochain(B, A);
  CHECK(check_twisting_cochain(t, 12).ok);
  for (const Dga& X : {exterior({3, 5}, 14), truncated_polynomial(6), x2_y3(14), exterior({5, 7}, 14),
                       Dga::from_free(FreeCga(Qr, {{"x", 2, Sort::polynomial}, {"y", 4, Sort::polynomial}}), 14)}) {
    Dgc BX = bar(X, 13);
    Verdict v = check_twisting_cochain(tautological_cochain(BX, X), 12);
    CHECK_MESSAGE(v.ok, v.detail);
  }
  // a single wrong sign on [x], degree 1 in B(Q[x2]); t u t is quadratic in t, so the first
  // witness is the word mixing [x] with the unchanged [x^2]
  Dga P = Dga::from_free(FreeCga(Qr, {{"x", 2, Sort::polynomial}}), 10);
  Dgc BP = bar(P, 9);
  TwistingCochainData m = tautological_cochain(BP, P);
  auto x = BP.basis.find("[x]");
  REQUIRE(x);
  for (auto& [k, v] : m.values[*x]) v = -v;
  Verdict bad = check_twisting_cochain(m, 8);
  CHECK_FALSE(bad.ok);
  CHECK(bad.detail.find("[x|x^2]") != std::string::npos);
}

TEST_CASE("twisted tensor with t = 0 is the Kunneth complex") {
  Dga M = exterior({3}, 12), N = truncated_polynomial(12);
  Dga A = exterior({5}, 14);
  Dgc B = bar(A, 13);
  TwistingCochainData zl = zero_cochain(B, M), zr = zero_cochain(B, N);
  CochainComplex c = twisted_tensor(TwistedSide{&M, &zl}, B, TwistedSide{&N, &zr}, 12);
  CHECK_FALSE(c.find_d_squared_failure());
  auto dims = complex_cohomology(c, 11).dims;
  // H(M) (x) H(B) (x) H(N)
  auto hb = complex_cohomology(complex_of(B, 13), 12).dims;
  auto expect = oracle::poly_mul(oracle::poly_mul({1, 0, 0, 1}, oracle::as_long(hb), 11), even_ones(11), 11);
  CHECK(oracle::as_long(dims) == expect);
}

TEST_CASE("twisted tensor with the tautological cochain") {
  Dga A = x2_y3(14);
  Dgc B = bar(A, 13);
  TwistingCochainData t = tautological_cochain(B, A);
  // (k, BA, k) is the bar complex itself
  CochainComplex plain = twisted_tensor(std::nullopt, B, std::nullopt, 12);
  CHECK(complex_cohomology(plain, 11).dims == complex_cohomology(complex_of(B, 13), 11).dims);
  // BA (x)_t A is acyclic
  CochainComplex acyc = twisted_tensor(std::nullopt, B, TwistedSide{&A, &t}, 12);
  CHECK_FALSE(acyc.find_d_squared_failure());
  auto dims = complex_cohomology(acyc, 11).dims;
  CHECK(dims[0] == 1);
  for (int n = 1; n <= 11; ++n) CHECK(dims[n] == 0);
}

TEST_CASE("one-sided twisted tensor matches the Cartan model for U(2)/T2") {
  GroupDatum G = lookup("U(2)");
  EmbeddingSpec K = named_embedding("T2", G);
  const int cap = 8;
  Dga A = Dga::from_free(G.classifying_ring(Qr), cap + 2);
  Dga N = Dga::from_free(K.source.classifying_ring(Qr), cap + 1);
  Dgc B = bar(A, cap + 1);
  DgaMap nu = dga_map_from(restriction_algebra_map(K, Qr), A, N);
  TwistingCochainData t = compose(nu, tautological_cochain(B, A));
  CHECK(check_twisting_cochain(t, cap).ok);
  CochainComplex c = twisted_tensor(std::nullopt, B, TwistedSide{&N, &t}, cap + 1);
  CHECK_FALSE(c.find_d_squared_failure());
  auto dims = complex_cohomology(c, cap).dims;
  Model m = cartan_model(one_sided_recipe(G, K, Qr));
  CHECK(dims == Cohomology(m.cdga, cap).betti());
}

TEST_CASE("two-sided twisted tensor matches the two-sided model") {
  for (auto [g, h, k] : std::vector<std::tuple<const char*, const char*, const char*>>{
           {"SU(3)", "rc", "rc"}, {"SU(3)", "circle:1,-1,0", "circle:1,1,-2"}, {"U(3)", "circle:1,0,0", "U(2)xU(1)"}}) {
    GroupDatum G = lookup(g);
    ModelRecipe r = two_sided_recipe(G, named_embedding(h, G), named_embedding(k, G), Qr);
    TorTable t = bar_tor(span_from_recipe(r), 10);
    CHECK(t.totals() == Cohomology(kapovitch_model(r).cdga, 10).betti());
  }
}

TEST_CASE("shuffle map") {
  Dga A = exterior({3}, 10);
  ShuffleCheck s = verify_shuffle(A, A, 8);
  CHECK_MESSAGE(s.chain_map.ok, s.chain_map.detail);
  CHECK_MESSAGE(s.coalgebra_map.ok, s.coalgebra_map.detail);
  CHECK(s.terms_checked > 0);
  // [a] (x) [b] -> [a(x)1|1(x)b] + (-1)^{|s^-1 a||s^-1 b|} [1(x)b|a(x)1]
  Dga P = truncated_polynomial(8);
  Dga T = Dga::tensor(P, A, 10);
  std::size_t x = *P.basis.find("x"), z = *A.basis.find("z3");
  auto out = shuffle(P, A, T, {x}, {z});
  std::size_t x1 = T.tensor_index.at({x, A.unit}), z1 = T.tensor_index.at({P.unit, z});
  CHECK(out.size() == 2);
  CHECK(out.at({x1, z1}) == 1);
  CHECK(out.at({z1, x1}) == 1);  // |s^-1 x| = 1, |s^-1 z| = 2
  auto sq = shuffle(P, P, Dga::tensor(P, P, 10), {x}, {x});
  CHECK(sq.size() == 2);
  for (const auto& [w, c] : sq) CHECK(c == (w[0] == Dga::tensor(P, P, 10).tensor_index.at({x, P.unit}) ? 1 : -1));
  // second factor the ground field: canonical identification
  Dga k = Dga::ground(Qr);
  Dga Tk = Dga::tensor(A, k, 10);
  auto id = shuffle(A, k, Tk, {z, z}, {});
  CHECK(id.size() == 1);
  CHECK(id.begin()->second == 1);
  CHECK(verify_shuffle(P, A, 7).chain_map.ok);
}

TEST_CASE("structural checks on corpus algebras") {
  for (const Dga& A : {exterior({3}, 12), exterior({3, 5}, 12), truncated_polynomial(6), x2_y3(12)}) {
    CHECK_FALSE(A.validate());
    Dgc B = bar(A, 11);
    CHECK_FALSE(B.validate());
    auto dims = complex_cohomology(complex_of(B, 11), 10).dims;
    CHECK(dims[0] == 1);
    CHECK_FALSE(complex_of(B, 11).find_d_squared_failure());
    Dga O = cobar(B, 11);
    CHECK_FALSE(O.validate());
  }
}
