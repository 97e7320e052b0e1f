#include "hcoh/models.hpp"

#include <map>
#include <set>

#include "hcoh/error.hpp"

namespace hcoh {

ModelRecipe one_sided_recipe(const GroupDatum& G, const EmbeddingSpec& K, const CoefficientRing& ring) {
  ModelRecipe r;
  r.kind = ModelRecipe::Kind::one_sided;
  r.G = G;
  r.H = product({});
  r.K = K.source;
  r.rho_H = EmbeddingSpec{r.H, G, std::vector<std::vector<long>>(static_cast<std::size_t>(G.torus_coordinates))};
  r.rho_K = K;
  r.ring = ring;
  return r;
}

ModelRecipe two_sided_recipe(const GroupDatum& G, const EmbeddingSpec& H, const EmbeddingSpec& K,
                             const CoefficientRing& ring) {
  ModelRecipe r = one_sided_recipe(G, K, ring);
  r.kind = ModelRecipe::Kind::two_sided;
  r.H = H.source;
  r.rho_H = H;
  return r;
}

namespace {

Model build(const ModelRecipe& rc, bool use_h) {
  const auto& ring = rc.ring;
  check_admissible(rc.G, ring);
  if (rc.rho_K.target.name != rc.G.name) fail("embedding of K targets " + rc.rho_K.target.name + ", not " + rc.G.name);
  if (use_h && rc.rho_H.target.name != rc.G.name) fail("embedding of H targets " + rc.rho_H.target.name + ", not " + rc.G.name);

  std::vector<GeneratorSpec> hg = use_h ? rc.H.classifying : std::vector<GeneratorSpec>{};
  std::vector<GeneratorSpec> kg = rc.K.classifying;
  std::set<std::string> knames;
  for (const auto& g : kg) knames.insert(g.name);
  bool clash = false;
  for (const auto& g : hg) clash = clash || knames.count(g.name);
  if (clash) {
    for (auto& g : hg) g.name += "_H";
    for (auto& g : kg) g.name += "_K";
  }
  std::vector<GeneratorSpec> all = hg;
  all.insert(all.end(), kg.begin(), kg.end());
  std::map<int, int> seen;
  std::vector<std::string> znames;
  for (const auto& x : rc.G.classifying) {
    int d = x.degree - 1;
    int k = ++seen[d];
    std::string name = "z" + std::to_string(d);
    if (k > 1) name += "_" + std::to_string(k);
    znames.push_back(name);
  }
  // second pass so the first of a repeated degree also gets a suffix
  {
    std::map<int, int> count, idx;
    for (const auto& x : rc.G.classifying) ++count[x.degree - 1];
    for (std::size_t j = 0; j < znames.size(); ++j) {
      int d = rc.G.classifying[j].degree - 1;
      if (count[d] > 1) znames[j] = "z" + std::to_string(d) + "_" + std::to_string(++idx[d]);
    }
  }
  for (std::size_t j = 0; j < znames.size(); ++j) {
    all.push_back({znames[j], rc.G.classifying[j].degree - 1, Sort::exterior});
  }
  FreeCga A(ring, all);

  Model m{Cdga(A, std::vector<GradedElement>(A.size(), A.zero())), rc, {}, {}, {}, 0};
  for (std::size_t i = 0; i < hg.size(); ++i) m.h_generators.push_back(i);
  for (std::size_t i = 0; i < kg.size(); ++i) m.k_generators.push_back(hg.size() + i);
  for (std::size_t i = 0; i < znames.size(); ++i) m.z_generators.push_back(hg.size() + kg.size() + i);

  auto include = [&](const GroupDatum& grp, const std::vector<std::size_t>& positions) {
    std::vector<GradedElement> imgs;
    for (auto p : positions) imgs.push_back(A.generator(p));
    return AlgebraMap(grp.classifying_ring(ring), A, imgs);
  };
  auto rk = restriction_map(rc.rho_K, ring);
  AlgebraMap into_k = include(rc.K, m.k_generators);
  std::vector<GradedElement> dz(A.size(), A.zero());
  std::vector<GradedElement> rh;
  std::optional<AlgebraMap> into_h;
  if (use_h) {
    rh = restriction_map(rc.rho_H, ring);
    into_h.emplace(include(rc.H, m.h_generators));
  }
  for (std::size_t j = 0; j < znames.size(); ++j) {
    GradedElement d = into_k(rk[j]);
    if (use_h) d -= (*into_h)(rh[j]);
    if (rc.flip_sign) d = -d;
    dz[m.z_generators[j]] = d;
  }
  m.cdga = Cdga(A, dz);
  std::vector<bool> mask(A.size(), false);
  for (auto z : m.z_generators) mask[z] = true;
  m.cdga.set_weight_generators(mask);
  m.expected_dimension = rc.G.dimension - rc.K.dimension - (use_h ? rc.H.dimension : 0);
  return m;
}

}  // namespace

Model cartan_model(const ModelRecipe& recipe) {
  if (!recipe.H.trivial() && recipe.kind == ModelRecipe::Kind::two_sided) {
    fail("cartan_model takes a one-sided recipe; use kapovitch_model");
  }
  return build(recipe, false);
}

Model kapovitch_model(const ModelRecipe& recipe) { return build(recipe, true); }

ModelRecipe biquotient_reduce(const GroupDatum& G, const EmbeddingSpec& U, const CoefficientRing& ring) {
  GroupDatum GG = product({G, G});
  if (U.target.torus_coordinates != GG.torus_coordinates) fail("U must be given inside G x G");
  EmbeddingSpec u = U;
  u.target = GG;
  EmbeddingSpec diag{G, GG, {}};
  for (int copy = 0; copy < 2; ++copy) {
    for (int i = 0; i < G.torus_coordinates; ++i) {
      std::vector<long> row(static_cast<std::size_t>(G.torus_coordinates), 0);
      row[i] = 1;
      diag.weights.push_back(row);
    }
  }
  return two_sided_recipe(GG, u, diag, ring);
}

ModelRecipe biquotient_reduce(const GroupDatum& G, const EmbeddingSpec& H, const EmbeddingSpec& K,
                              const CoefficientRing& ring) {
  GroupDatum GG = product({G, G});
  GroupDatum U = product({H.source, K.source});
  EmbeddingSpec u{U, GG, {}};
  const auto hc = static_cast<std::size_t>(H.source.torus_coordinates);
  const auto kc = static_cast<std::size_t>(K.source.torus_coordinates);
  for (const auto& row : H.weights) {
    std::vector<long> r(row);
    r.resize(hc + kc, 0);
    u.weights.push_back(r);
  }
  for (const auto& row : K.weights) {
    std::vector<long> r(hc, 0);
    r.insert(r.end(), row.begin(), row.end());
    u.weights.push_back(r);
  }
  return biquotient_reduce(G, u, ring);
}

}  // namespace hcoh
