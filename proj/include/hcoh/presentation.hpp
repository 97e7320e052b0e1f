#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcoh/cdga.hpp"
#include "hcoh/gca.hpp"

namespace hcoh {

std::vector<std::size_t> poincare_polynomial(const std::vector<CohomologySlice>& slices);
std::string format_poincare(const std::vector<std::size_t>& coeffs);

struct RingPresentation {
  FreeCga algebra;                          // free CGA on the chosen generators
  std::vector<GradedElement> generators;    // cocycle representative for each generator
  std::vector<GradedElement> relations;     // elements of algebra
  int cap = 0;
  bool complete = false;  // relations are known in every degree
  std::vector<std::size_t> quotient_hilbert;  // re-verified through the cap

  std::vector<int> generator_degrees() const;
  std::vector<int> relation_degrees() const;
  std::vector<std::string> relation_strings() const;
};

// Reason the ring structure must not be reported, or nullopt when it may.
std::optional<std::string> multiplicative_refusal(const CoefficientRing& ring, bool two_sided, bool column_zero);

// Greedy minimal generators and degreewise relations through h.cap(). complete is set when
// expected_dim is known, H vanishes in (expected_dim, cap] and cap >= expected_dim + the
// largest generator degree.
RingPresentation ring_presentation(const Cohomology& h, std::optional<long> expected_dim);
// Hilbert function of algebra / (relations) through cap, computed independently.
std::vector<std::size_t> quotient_hilbert(const FreeCga& algebra, const std::vector<GradedElement>& relations, int cap);

struct DualityReport {
  bool applicable = false;   // cap covers the dimension
  bool palindromic = false;
  std::optional<int> first_mismatch;  // n with b_n != b_{dim-n}
  long euler = 0;
  std::optional<Integer> expected_euler;
  bool euler_ok = false;
};
DualityReport duality_and_euler_checks(const std::vector<std::size_t>& betti, long dim,
                                       std::optional<Integer> expected_euler);

}  // namespace hcoh
