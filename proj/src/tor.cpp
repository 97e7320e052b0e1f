#include "hcoh/tor.hpp"

#include <algorithm>
#include <set>

#include "hcoh/catalog.hpp"
#include "hcoh/error.hpp"

namespace hcoh {

std::size_t TorTable::total(int n) const {
  auto it = total_dims.find(n);
  return it == total_dims.end() ? 0 : it->second;
}

std::vector<std::size_t> TorTable::totals() const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= cap; ++n) out.push_back(total(n));
  return out;
}

bool TorTable::concentrated_in_column_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& kv) { return kv.first.first == 0; });
}

int TorTable::min_column() const {
  int m = 0;
  for (const auto& [pq, d] : entries) m = std::min(m, pq.first);
  return m;
}

TorSpan span_from_recipe(const ModelRecipe& recipe) {
  const auto& ring = recipe.ring;
  check_admissible(recipe.G, ring);
  FreeCga base = recipe.G.classifying_ring(ring);
  TorSpan s{base, std::nullopt, recipe.K.classifying_ring(ring), std::nullopt,
            restriction_algebra_map(recipe.rho_K, ring), recipe.flip_sign};
  if (recipe.kind == ModelRecipe::Kind::two_sided && !recipe.H.trivial()) {
    s.left = recipe.H.classifying_ring(ring);
    s.left_map = restriction_algebra_map(recipe.rho_H, ring);
  }
  return s;
}

Cdga koszul_complex(const TorSpan& span) {
  const auto& ring = span.base.ring();
  for (const auto& g : span.base.generators()) {
    if (g.sort != Sort::polynomial) fail("Koszul path needs a polynomial base algebra");
    if (g.degree % 2 != 0 && ring.characteristic() != 2) fail("Koszul path needs even base generators");
    if (g.degree <= 0) fail("Koszul path needs positive-degree base generators");
  }
  if (!(span.right_map.source() == span.base)) fail("right structure map does not start at the base algebra");
  if (span.left_map && !(span.left_map->source() == span.base)) fail("left structure map does not start at the base algebra");
  std::vector<GeneratorSpec> lg = span.left ? span.left->generators() : std::vector<GeneratorSpec>{};
  std::vector<GeneratorSpec> rg = span.right.generators();
  std::set<std::string> names;
  for (const auto& g : rg) names.insert(g.name);
  bool clash = std::any_of(lg.begin(), lg.end(), [&](const auto& g) { return names.count(g.name) > 0; });
  if (clash) {
    for (auto& g : lg) g.name += "_M";
    for (auto& g : rg) g.name += "_N";
  }
  std::vector<GeneratorSpec> all = lg;
  all.insert(all.end(), rg.begin(), rg.end());
  const auto& bg = span.base.generators();
  for (std::size_t j = 0; j < bg.size(); ++j) {
    all.push_back({"z" + std::to_string(j + 1), bg[j].degree - 1, Sort::exterior});
  }
  FreeCga K(ring, all);
  auto include = [&](const FreeCga& src, std::size_t offset) {
    std::vector<GradedElement> imgs;
    for (std::size_t i = 0; i < src.size(); ++i) imgs.push_back(K.generator(offset + i));
    return AlgebraMap(src, K, imgs);
  };
  AlgebraMap into_n = include(span.right, lg.size());
  std::optional<AlgebraMap> into_m;
  if (span.left) into_m.emplace(include(*span.left, 0));
  std::vector<GradedElement> d(K.size(), K.zero());
  const std::size_t z0 = lg.size() + rg.size();
  for (std::size_t j = 0; j < bg.size(); ++j) {
    GradedElement x = span.base.generator(j);
    GradedElement v = into_n(span.right_map(x));
    if (span.left_map) v -= (*into_m)((*span.left_map)(x));
    if (span.flip_sign) v = -v;
    d[z0 + j] = v;
  }
  Cdga c(K, d);
  std::vector<bool> mask(K.size(), false);
  for (std::size_t j = z0; j < K.size(); ++j) mask[j] = true;
  c.set_weight_generators(mask);
  return c;
}

TorTable table_from_cohomology(const Cohomology& h) {
  TorTable t;
  t.cap = h.cap();
  for (const auto& s : h.slices()) {
    t.total_dims[s.degree] = s.dimension;
    for (const auto& [w, dim] : s.by_weight) t.entries[{-w, s.degree + w}] = dim;
  }
  return t;
}

TorTable koszul_tor(const TorSpan& span, int cap, unsigned threads) {
  if (!span.base.ring().is_field()) fail("field required");
  return table_from_cohomology(Cohomology(koszul_complex(span), cap, threads));
}

TorTable bar_tor(const BarTorInput& in, int cap, unsigned threads) {
  if (!in.A) fail("bar_tor needs an algebra");
  const Dga& A = *in.A;
  if (!A.ring.is_field()) fail("field required");
  if ((in.M && !in.mu) || (in.N && !in.nu)) fail("module given without its structure map");
  Dgc BA = bar(A, cap + 1);
  if (auto bad = complex_of(BA, cap + 1).find_d_squared_failure()) verification_failed("bar construction: " + *bad);
  TwistingCochainData tA = tautological_cochain(BA, A);
  std::optional<TwistingCochainData> tl, tr;
  std::optional<TwistedSide> left, right;
  if (in.M) {
    tl = compose(*in.mu, tA);
    left = TwistedSide{in.M, &*tl};
  }
  if (in.N) {
    tr = compose(*in.nu, tA);
    right = TwistedSide{in.N, &*tr};
  }
  CochainComplex cx = twisted_tensor(left, BA, right, cap + 1);
  ComplexCohomology h = complex_cohomology(cx, cap, threads);
  TorTable t;
  t.cap = cap;
  for (int n = 0; n <= cap; ++n) t.total_dims[n] = h.dims[static_cast<std::size_t>(n)];
  const bool bi = cx.bigraded();
  for (const auto& [pq, d] : h.by_pq) {
    if (bi) {
      t.entries[pq] = d;
    } else {
      t.entries[{0, pq.first + pq.second}] += d;
    }
  }
  return t;
}

TorTable bar_tor(const TorSpan& span, int cap, unsigned threads) {
  Dga A = Dga::from_free(span.base, cap + 2);
  Dga N = Dga::from_free(span.right, cap + 1);
  DgaMap nu = dga_map_from(span.right_map, A, N);
  BarTorInput in{&A, nullptr, nullptr, &N, &nu};
  std::optional<Dga> M;
  std::optional<DgaMap> mu;
  if (span.left) {
    M = Dga::from_free(*span.left, cap + 1);
    mu = dga_map_from(*span.left_map, A, *M);
    in.M = &*M;
    in.mu = &*mu;
  }
  return bar_tor(in, cap, threads);
}

RegularityVerdict regular_sequence_check(const FreeCga& B, const std::vector<GradedElement>& f, int cap) {
  if (!B.ring().is_field()) fail("field required");
  for (const auto& g : B.generators()) {
    if (g.sort != Sort::polynomial) fail("regular sequence check needs a polynomial algebra");
  }
  std::vector<int> fdeg;
  for (const auto& x : f) {
    auto d = x.degree();
    if (x.is_zero()) {
      fdeg.push_back(-1);
      continue;
    }
    if (!d || *d <= 0) fail("sequence elements must be homogeneous of positive degree");
    fdeg.push_back(*d);
  }
  RegularityVerdict v;
  std::vector<Integer> hs = B.hilbert_series_product_formula(cap);
  std::vector<Integer> expected = hs;
  for (std::size_t j = 0; j < f.size(); ++j) {
    // a zero element has no well-defined degree; it is never part of a regular sequence
    int d = fdeg[j] < 0 ? 0 : fdeg[j];
    if (d == 0) {
      std::fill(expected.begin(), expected.end(), Integer(-1));
      break;
    }
    for (int n = cap; n >= d; --n) expected[n] -= expected[n - d];
  }
  for (int n = 0; n <= cap; ++n) {
    std::vector<Monomial> basis = B.basis_of_degree(n);
    std::map<Monomial, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    Subspace ideal(B.ring());
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (fdeg[j] < 0 || fdeg[j] > n) continue;
      for (const auto& m : B.basis_of_degree(n - fdeg[j])) {
        GradedElement prod = B.multiply(B.monomial(m), f[j]);
        SparseVec vec;
        for (const auto& [mon, c] : prod.terms()) vec[idx.at(mon)] = c;
        ideal.insert(vec);
      }
    }
    v.quotient_series.push_back(Integer(static_cast<unsigned long>(basis.size() - ideal.dimension())));
    v.expected_series.push_back(expected[n]);
    if (v.regular && v.quotient_series.back() != expected[n]) {
      v.regular = false;
      v.first_failure = n;
    }
  }
  return v;
}

}  // namespace hcoh
