#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hcoh/cdga.hpp"
#include "hcoh/coeffring.hpp"
#include "hcoh/gca.hpp"

namespace hcoh {

// Graded basis with labels; ids are global, degrees nonnegative and at most cap.
struct GradedBasis {
  int cap = 0;
  std::vector<std::string> label;
  std::vector<int> degree;
  std::vector<std::vector<std::size_t>> by_degree;

  std::size_t add(std::string l, int deg);
  std::size_t size() const { return label.size(); }
  std::size_t count(int n) const { return n < 0 || n > cap ? 0 : by_degree[n].size(); }
  std::optional<std::size_t> find(const std::string& l) const;
};

// Finite-type augmented connected DGA truncated at basis.cap: products landing above the cap
// are dropped, which is the quotient by the ideal of degrees above the cap.
class Dga {
 public:
  CoefficientRing ring = CoefficientRing::rationals();
  GradedBasis basis;
  std::size_t unit = 0;
  std::map<std::pair<std::size_t, std::size_t>, SparseVec> products;  // non-unit pairs
  std::vector<SparseVec> diff;
  std::vector<Monomial> monomials;  // filled when built from a free algebra
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> tensor_index;  // filled by tensor()
  std::vector<std::vector<std::size_t>> cobar_words;  // filled by cobar()

  SparseVec multiply(std::size_t a, std::size_t b) const;
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  SparseVec differential(const SparseVec& x) const;
  int degree(std::size_t id) const { return basis.degree[id]; }
  int cap() const { return basis.cap; }
  std::optional<std::string> validate() const;

  static Dga from_free(const FreeCga& A, int cap);
  static Dga from_cdga(const Cdga& C, int cap);
  static Dga ground(const CoefficientRing& ring);
  static Dga tensor(const Dga& A, const Dga& B, int cap);
};

// Finite-type coaugmented DGC with full coproduct tables.
class Dgc {
 public:
  using Coproduct = std::vector<std::tuple<Rational, std::size_t, std::size_t>>;
  CoefficientRing ring = CoefficientRing::rationals();
  GradedBasis basis;
  std::size_t counit_element = 0;  // image of the coaugmentation
  std::vector<Coproduct> coproduct;
  std::vector<SparseVec> diff;
  std::vector<std::vector<std::size_t>> words;  // bar words, when built by bar()

  SparseVec differential(const SparseVec& x) const;
  int degree(std::size_t id) const { return basis.degree[id]; }
  int cap() const { return basis.cap; }
  std::optional<std::string> validate() const;
};

struct DgaMap {
  const Dga* source = nullptr;
  const Dga* target = nullptr;
  std::vector<SparseVec> images;
  SparseVec operator()(const SparseVec& x) const;
};

DgaMap dga_map_from(const AlgebraMap& f, const Dga& source, const Dga& target);

struct TwistingCochainData {
  const Dgc* source = nullptr;
  const Dga* target = nullptr;
  std::vector<SparseVec> values;  // per source basis element, degree +1
};

struct BarOptions {
  std::optional<int> word_cap;
};

Dgc bar(const Dga& A, int cap, BarOptions opts = {});
Dga cobar(const Dgc& C, int cap);
TwistingCochainData tautological_cochain(const Dgc& BA, const Dga& A);
TwistingCochainData compose(const DgaMap& f, const TwistingCochainData& t);
TwistingCochainData zero_cochain(const Dgc& C, const Dga& A);

struct Verdict {
  bool ok = true;
  std::string detail;
};
Verdict check_twisting_cochain(const TwistingCochainData& t, int cap);

// Cochain complex with sparse differentials and a filtration label per basis element.
struct CochainComplex {
  CoefficientRing ring = CoefficientRing::rationals();
  std::vector<std::vector<std::string>> labels;  // per degree
  std::vector<std::vector<int>> filtration;      // per degree, per element
  std::vector<ExactMatrix> d;                    // d[n]: C^n -> C^{n+1}; last degree has none
  int top() const { return static_cast<int>(labels.size()) - 1; }
  // True when every differential term raises the filtration label by exactly one.
  bool bigraded() const;
  std::optional<std::string> find_d_squared_failure() const;
};

struct ComplexCohomology {
  std::vector<std::size_t> dims;                    // per degree <= cap
  std::map<std::pair<int, int>, std::size_t> by_pq;  // (p, q) with p = filtration, q = n - p
};

ComplexCohomology complex_cohomology(const CochainComplex& c, int cap, unsigned threads = 1);
// Rank over a field; rational matrices with min(rows, cols) above the threshold use the
// multimodular rank.
std::size_t field_rank(const ExactMatrix& m, const CoefficientRing& ring);

CochainComplex complex_of(const Dga& A, int cap);
CochainComplex complex_of(const Dgc& C, int cap);

struct TwistedSide {
  const Dga* module = nullptr;                   // M or N acting on itself
  const TwistingCochainData* cochain = nullptr;  // into module
};

// M (x)_{t'} C (x)_t N through total degree cap; omitted sides are the ground field.
// Filtration label p = minus the word length of the C factor when C is a bar construction,
// minus the C degree otherwise.
CochainComplex twisted_tensor(const std::optional<TwistedSide>& left, const Dgc& C,
                              const std::optional<TwistedSide>& right, int cap);

struct ShuffleCheck {
  Verdict chain_map;
  Verdict coalgebra_map;
  std::size_t terms_checked = 0;
};
// Shuffle map B A1 (x) B A2 -> B(A1 (x) A2) on basis words.
std::map<std::vector<std::size_t>, Rational> shuffle(const Dga& A1, const Dga& A2, const Dga& T,
                                                     const std::vector<std::size_t>& w1,
                                                     const std::vector<std::size_t>& w2);
ShuffleCheck verify_shuffle(const Dga& A1, const Dga& A2, int cap);

// Cohomology isomorphism check for the counit Omega B A -> A through degree cap.
Verdict check_counit(const Dga& A, int cap);

}  // namespace hcoh
