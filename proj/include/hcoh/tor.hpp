#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcoh/barcalc.hpp"
#include "hcoh/cdga.hpp"
#include "hcoh/gca.hpp"
#include "hcoh/models.hpp"

namespace hcoh {

// Bigraded Tor: p <= 0 is the resolution degree, q the internal degree, n = p + q.
struct TorTable {
  int cap = 0;
  std::map<std::pair<int, int>, std::size_t> entries;
  std::map<int, std::size_t> total_dims;  // every n in [0, cap], zeros included

  std::size_t total(int n) const;
  std::vector<std::size_t> totals() const;
  bool concentrated_in_column_zero() const;
  int min_column() const;
};

// Tor over a polynomial algebra A of two A-algebras M and N given by ring maps. An absent
// left side is the ground field.
struct TorSpan {
  FreeCga base;
  std::optional<FreeCga> left;
  FreeCga right;
  std::optional<AlgebraMap> left_map;
  AlgebraMap right_map;
  bool flip_sign = false;
};

TorSpan span_from_recipe(const ModelRecipe& recipe);

// M (x) N (x) Lambda[z_j] with dz_j = 1 (x) nu(x_j) - mu(x_j) (x) 1, weighted by z count.
Cdga koszul_complex(const TorSpan& span);
TorTable table_from_cohomology(const Cohomology& h);
TorTable koszul_tor(const TorSpan& span, int cap, unsigned threads = 1);

// Two-sided bar complex M (x) B A (x) N through total degree cap. Inputs with zero
// differential are bigraded by word length; otherwise every entry sits in p = 0.
struct BarTorInput {
  const Dga* A = nullptr;
  const Dga* M = nullptr;  // nullptr: ground field
  const DgaMap* mu = nullptr;
  const Dga* N = nullptr;
  const DgaMap* nu = nullptr;
};
TorTable bar_tor(const BarTorInput& in, int cap, unsigned threads = 1);
TorTable bar_tor(const TorSpan& span, int cap, unsigned threads = 1);

struct RegularityVerdict {
  bool regular = true;
  std::optional<int> first_failure;
  std::vector<Integer> quotient_series;
  std::vector<Integer> expected_series;
};
// Compares HS(B/(f)) with HS(B) * prod(1 - t^{|f_j|}) through the cap.
RegularityVerdict regular_sequence_check(const FreeCga& B, const std::vector<GradedElement>& f, int cap);

}  // namespace hcoh
