#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hcoh {

using Integer = mpz_class;
using Rational = mpq_class;

class CoefficientRing {
 public:
  enum class Kind { rationals, prime_field, integers, localized };

  static CoefficientRing rationals();
  static CoefficientRing prime_field(std::uint32_t p);
  static CoefficientRing integers();
  static CoefficientRing localized(std::uint64_t m);
  // Accepts Q, F<p>, Fp:<p>, Z, Z-inv<m>, Z[1/<m>].
  static CoefficientRing parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::uint32_t prime() const { return static_cast<std::uint32_t>(param_); }
  std::uint64_t inverted() const { return param_; }
  unsigned characteristic() const { return kind_ == Kind::prime_field ? prime() : 0; }
  bool is_field() const { return kind_ == Kind::rationals || kind_ == Kind::prime_field; }
  bool two_is_unit() const;
  bool contains(const Rational& x) const;
  // Canonical form: residues in [0,p) for prime fields; throws if x is not in the ring.
  Rational normalize(const Rational& x) const;
  Rational inverse(const Rational& x) const;
  bool is_unit(const Integer& x) const;
  std::string name() const;

  bool operator==(const CoefficientRing& o) const { return kind_ == o.kind_ && param_ == o.param_; }
  bool operator!=(const CoefficientRing& o) const { return !(*this == o); }

 private:
  CoefficientRing(Kind k, std::uint64_t param) : kind_(k), param_(param) {}
  Kind kind_;
  std::uint64_t param_;
};

bool is_prime(std::uint64_t n);

using SparseVec = std::map<std::size_t, Rational>;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), data_(rows), cols_(cols) {}
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  const SparseVec& row(std::size_t r) const { return data_[r]; }
  std::size_t nonzeros() const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVec> data_;
  std::size_t cols_ = 0;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<std::vector<Rational>> kernel;
};

// Exact rank and kernel over a field; kernel columns come from the reduced row echelon form,
// one per free column in increasing order.
RankKernel rank_and_kernel(const ExactMatrix& m, const CoefficientRing& field);
std::size_t rank(const ExactMatrix& m, const CoefficientRing& field);
// Rank over F_p of a matrix whose entries have denominators prime to p.
std::size_t rank_mod_p(const ExactMatrix& m, std::uint32_t p);
// Lower bound for the rational rank that is exact except when every prime divides some
// minor; the maximum over a fixed prime set.
std::size_t rank_multimodular(const ExactMatrix& m);

struct SmithForm {
  std::vector<Integer> invariants;  // nonzero diagonal entries d1 | d2 | ...
  std::vector<std::vector<Integer>> left;   // U, rows x rows
  std::vector<std::vector<Integer>> right;  // V, cols x cols; U m V = diag
};
SmithForm smith_normal_form(const ExactMatrix& m);

// Incrementally built subspace of a coordinate space with tagged insertions. Reduction also
// reports how the removed part decomposes over the tagged vectors; untagged vectors count as
// zero in that decomposition.
class Subspace {
 public:
  static constexpr std::size_t untagged = static_cast<std::size_t>(-1);

  explicit Subspace(CoefficientRing field);
  const CoefficientRing& field() const { return field_; }
  std::size_t dimension() const { return basis_.size(); }
  bool insert(const SparseVec& v, std::size_t tag = untagged);
  SparseVec reduce(const SparseVec& v, SparseVec* tag_coords = nullptr) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

 private:
  struct Row {
    SparseVec vec;
    SparseVec tags;
  };
  CoefficientRing field_;
  std::map<std::size_t, Row> basis_;  // keyed by pivot index, pivot coefficient 1
};

void axpy(SparseVec& dst, const Rational& s, const SparseVec& src, const CoefficientRing& ring);
std::string to_string(const Rational& x);

}  // namespace hcoh
