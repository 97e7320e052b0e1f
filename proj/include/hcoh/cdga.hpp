#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcoh/coeffring.hpp"
#include "hcoh/gca.hpp"

namespace hcoh {

class Cdga {
 public:
  // differentials[i] is d of generator i. d^2 = 0 is verified on generators.
  Cdga(FreeCga algebra, std::vector<GradedElement> differentials);
  static Cdga from_named(FreeCga algebra, const std::map<std::string, GradedElement>& d);

  const FreeCga& algebra() const { return algebra_; }
  const GradedElement& generator_differential(std::size_t i) const { return d_[i]; }
  GradedElement differential(const GradedElement& x) const;
  GradedElement differential(const Monomial& m) const;
  // Checks d(dm) = 0 for every basis monomial of degree <= cap; returns the first failure.
  std::optional<Monomial> find_d_squared_failure(int cap) const;

  // Exterior-count weight used for the Tor bigrading: weight of a monomial is the sum of the
  // exponents of the flagged generators. Valid only when d lowers weight by exactly one.
  void set_weight_generators(std::vector<bool> mask);
  const std::vector<bool>& weight_generators() const { return weight_mask_; }
  bool has_weights() const { return !weight_mask_.empty(); }
  int weight(const Monomial& m) const;

  ExactMatrix differential_matrix(const std::vector<Monomial>& from, const std::vector<Monomial>& to) const;

 private:
  FreeCga algebra_;
  std::vector<GradedElement> d_;
  std::vector<bool> weight_mask_;
};

struct CohomologySlice {
  int degree = 0;
  std::size_t dimension = 0;
  std::vector<GradedElement> representatives;
  std::vector<int> representative_weights;  // parallel to representatives, 0 without weights
  std::map<int, std::size_t> by_weight;     // weight -> dimension
};

class Cohomology {
 public:
  Cohomology(const Cdga& c, int cap, unsigned threads = 1);

  int cap() const { return cap_; }
  const std::vector<CohomologySlice>& slices() const { return slices_; }
  const CohomologySlice& slice(int n) const { return slices_.at(static_cast<std::size_t>(n)); }
  const Cdga& complex() const { return c_; }
  std::vector<std::size_t> betti() const;
  // Coordinates of the class of a homogeneous cocycle in the representative basis.
  std::vector<Rational> class_coordinates(const GradedElement& cocycle) const;
  bool is_coboundary(const GradedElement& x) const;
  // Sum of the representatives weighted by coordinates.
  GradedElement from_coordinates(int degree, const std::vector<Rational>& coords) const;

 private:
  Cdga c_;
  int cap_;
  std::vector<CohomologySlice> slices_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::map<Monomial, std::size_t>> index_;
  std::vector<Subspace> cocycle_space_;    // coboundaries (untagged) plus tagged representatives
  std::vector<Subspace> coboundary_space_;
  SparseVec to_vector(int n, const GradedElement& x) const;
};

std::vector<CohomologySlice> cohomology(const Cdga& c, int cap, unsigned threads = 1);

struct IntegralSlice {
  int degree = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariants > 1 surviving in the coefficient ring
};

// Additive cohomology over Z or Z[1/m].
std::vector<IntegralSlice> cohomology_over_Z(const Cdga& c, int cap);

}  // namespace hcoh
