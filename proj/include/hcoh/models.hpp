#pragma once

#include <string>
#include <vector>

#include "hcoh/catalog.hpp"
#include "hcoh/cdga.hpp"

namespace hcoh {

struct ModelRecipe {
  enum class Kind { one_sided, two_sided };
  Kind kind = Kind::one_sided;
  GroupDatum G, H, K;
  EmbeddingSpec rho_H, rho_K;  // rho_H unused for one-sided recipes
  CoefficientRing ring = CoefficientRing::rationals();
  bool flip_sign = false;  // negates every dz
};

ModelRecipe one_sided_recipe(const GroupDatum& G, const EmbeddingSpec& K, const CoefficientRing& ring);
ModelRecipe two_sided_recipe(const GroupDatum& G, const EmbeddingSpec& H, const EmbeddingSpec& K,
                             const CoefficientRing& ring);

struct Model {
  Cdga cdga;
  ModelRecipe recipe;
  std::vector<std::size_t> h_generators;  // positions of H(BH) generators
  std::vector<std::size_t> k_generators;  // positions of H(BK) generators
  std::vector<std::size_t> z_generators;  // exterior generators paired with H(BG)
  long expected_dimension = 0;            // dim G - dim H - dim K
  bool two_sided() const { return recipe.kind == ModelRecipe::Kind::two_sided && !recipe.H.trivial(); }
};

// H(BK) (x) Lambda[z_j], dz_j = rho_K*(x_j).
Model cartan_model(const ModelRecipe& recipe);
// H(BH) (x) H(BK) (x) Lambda[z_j], dz_j = 1 (x) rho_K*(x_j) - rho_H*(x_j) (x) 1.
Model kapovitch_model(const ModelRecipe& recipe);

// U <= G x G acting by (a,b).g = a g b^{-1}; the emitted recipe has group G x G, left subgroup U
// and right subgroup the diagonal.
ModelRecipe biquotient_reduce(const GroupDatum& G, const EmbeddingSpec& U_in_GxG, const CoefficientRing& ring);
ModelRecipe biquotient_reduce(const GroupDatum& G, const EmbeddingSpec& H, const EmbeddingSpec& K,
                              const CoefficientRing& ring);

}  // namespace hcoh
