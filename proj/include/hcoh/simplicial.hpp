#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hcoh/coeffring.hpp"

namespace hcoh {

// eta^* x for a nondegenerate simplex x and an order-preserving surjection eta: [n] -> [dim x].
struct FormalSimplex {
  int base_dim = 0;
  std::size_t id = 0;
  std::vector<int> eta;  // length n + 1, nondecreasing, onto [0, base_dim]

  int dim() const { return static_cast<int>(eta.size()) - 1; }
  bool nondegenerate() const { return dim() == base_dim; }
  bool operator==(const FormalSimplex&) const = default;
};

class FiniteSimplicialSet {
 public:
  explicit FiniteSimplicialSet(std::string name = "") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(faces_.size()) - 1; }
  std::size_t count(int n) const { return n < 0 || n > dim() ? 0 : faces_[n].size(); }
  const std::string& label(int n, std::size_t id) const { return labels_[n][id]; }
  std::optional<std::size_t> find(int n, const std::string& label) const;

  std::size_t add_vertex(std::string label = "");
  // faces[j] = d_j of the new n-simplex; verifies the simplicial identities against it.
  std::size_t add_simplex(int n, std::vector<FormalSimplex> faces, std::string label = "");

  FormalSimplex nondegenerate(int n, std::size_t id) const;
  FormalSimplex degeneracy(const FormalSimplex& x, int i) const;
  FormalSimplex face(const FormalSimplex& x, int j) const;
  // x restricted to the vertex sequence v (strictly increasing indices into [0, dim x]).
  FormalSimplex restrict(const FormalSimplex& x, const std::vector<int>& v) const;
  std::optional<std::string> find_identity_failure() const;

 private:
  std::string name_;
  std::vector<std::vector<std::vector<FormalSimplex>>> faces_;  // [n][id][j]
  std::vector<std::vector<std::string>> labels_;
};

FiniteSimplicialSet boundary_tetrahedron();
// One nondegenerate simplex in each of dimensions 0, 1, 2.
FiniteSimplicialSet rp2_model();
// Random ordered simplicial complex of dimension 3.
FiniteSimplicialSet random_simplicial_set(std::uint64_t seed, int vertices = 6, int tetrahedra = 5);

struct NormalizedCochain {
  int degree = 0;
  std::vector<Rational> values;  // per nondegenerate simplex of that dimension
  bool operator==(const NormalizedCochain&) const = default;
};

NormalizedCochain zero_cochain(const FiniteSimplicialSet& X, int degree);
Rational evaluate(const NormalizedCochain& c, const FormalSimplex& s);
NormalizedCochain coboundary(const FiniteSimplicialSet& X, const NormalizedCochain& c, const CoefficientRing& ring);

struct Surjection {
  std::vector<int> seq;  // values in 1..arity
  int arity() const;
  void validate() const;
  std::string str() const;
};

Surjection cup_surjection(int i);
Surjection E_surjection(int ell);
Surjection F_surjection(int p, int q);

NormalizedCochain interval_cut(const FiniteSimplicialSet& X, const Surjection& u,
                               const std::vector<NormalizedCochain>& c, const CoefficientRing& ring);
// Sign of the interval-cut term with the given cut points p_0 = 0 <= p_1 <= ... <= p_m = N.
int interval_cut_sign(const Surjection& u, const std::vector<int>& cuts);
NormalizedCochain cup_i(const FiniteSimplicialSet& X, int i, const NormalizedCochain& a, const NormalizedCochain& b,
                        const CoefficientRing& ring);

using CupFamily = std::function<NormalizedCochain(int i, const NormalizedCochain&, const NormalizedCochain&)>;

struct RelationVerdict {
  bool ok = true;
  std::size_t trials = 0;
  std::string witness;
};
// D mu_{i+1} = mu_i - (-1)^i mu_i chi on random pairs, D f = d f - (-1)^{|f|} f d.
RelationVerdict steenrod_relation_check(const FiniteSimplicialSet& X, int i, const CoefficientRing& ring,
                                        std::size_t trials, std::uint64_t seed, const CupFamily& cup = {});

enum class HgaKind { E, F };
NormalizedCochain hga_operation(const FiniteSimplicialSet& X, HgaKind kind, int p, int q,
                                const std::vector<NormalizedCochain>& c, const CoefficientRing& ring);

// Cocycle test and class comparison over a field.
bool is_cocycle(const FiniteSimplicialSet& X, const NormalizedCochain& c, const CoefficientRing& ring);
bool cohomologous(const FiniteSimplicialSet& X, const NormalizedCochain& a, const NormalizedCochain& b,
                  const CoefficientRing& ring);

}  // namespace hcoh
