#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hcoh/coeffring.hpp"
#include "hcoh/gca.hpp"

namespace hcoh {

enum class Family { U, SU, Sp, SO_odd, SO_even, Torus };

// U(n), SU(n), Sp(n), SO(2n+1), SO(2n), Torus(n): the parameter is n in each case.
struct GroupFactor {
  Family family;
  int n;
  bool operator==(const GroupFactor&) const = default;
};

struct GroupDatum {
  std::string name;
  std::vector<GroupFactor> factors;
  int rank = 0;
  // SU(n) keeps all n coordinates of the unitary torus, subject to t1 + ... + tn = 0.
  int torus_coordinates = 0;
  long dimension = 0;
  Integer weyl_order = 1;
  std::vector<GeneratorSpec> classifying;  // polynomial generators of H(BG)
  std::vector<int> exterior_degrees;       // degrees of the primitive generators of H(G)
  std::vector<std::pair<int, int>> coordinate_blocks;  // [begin, end) for each factor
  std::vector<std::size_t> generator_factor;            // factor owning each generator

  FreeCga classifying_ring(const CoefficientRing& ring) const;
  FreeCga torus_ring(const CoefficientRing& ring) const;
  std::vector<GradedElement> torus_expressions(const CoefficientRing& ring) const;
  bool trivial() const { return factors.empty(); }
};

GroupDatum group_factor(Family f, int n);
GroupDatum product(const std::vector<GroupDatum>& parts);
// "U(3)", "SU(4)", "Sp(5)", "SO(5)", "T2", "Torus(2)", "1", and products joined by 'x'.
GroupDatum lookup(std::string_view spec);
// Refuses orthogonal factors when 2 is not a unit of the ring.
void check_admissible(const GroupDatum& g, const CoefficientRing& ring);
bool weyl_invariant(const GroupDatum& g, const CoefficientRing& ring);

struct EmbeddingSpec {
  GroupDatum source;  // K
  GroupDatum target;  // G
  // rows: target torus coordinates; columns: source torus coordinates
  std::vector<std::vector<long>> weights;
};

EmbeddingSpec identity_embedding(const GroupDatum& g);
// Named subgroups relative to G: "Tn", "diag-circle", "circle:w1,w2,...", "rc", "1", or any
// catalog group whose coordinates match G's (block inclusion).
EmbeddingSpec named_embedding(std::string_view spec, const GroupDatum& target);

// Images of the H(BG) generators in H(BK).
std::vector<GradedElement> restriction_map(const EmbeddingSpec& e, const CoefficientRing& ring);
AlgebraMap restriction_algebra_map(const EmbeddingSpec& e, const CoefficientRing& ring);
// Rewrites a Weyl-invariant torus polynomial of g in the generators of H(BG).
GradedElement rewrite_invariant(const GroupDatum& g, const GradedElement& torus_poly, const CoefficientRing& ring);

// |W_G| / (|W_H| |W_K|) in equal rank, 0 when rank G exceeds rank H + rank K.
Integer weyl_euler_characteristic(const GroupDatum& G, const GroupDatum& H, const GroupDatum& K);

}  // namespace hcoh
