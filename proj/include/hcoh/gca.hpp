#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hcoh/coeffring.hpp"

namespace hcoh {

enum class Sort { polynomial, exterior };

struct GeneratorSpec {
  std::string name;
  int degree = 0;
  Sort sort = Sort::polynomial;
  bool operator==(const GeneratorSpec&) const = default;
};

// Exponent vector indexed by generator position.
struct Monomial {
  std::vector<std::uint32_t> exp;
  // Canonical order inside one degree: lexicographically larger exponent vectors first.
  bool operator<(const Monomial& o) const { return exp > o.exp; }
  bool operator==(const Monomial& o) const = default;
};

namespace detail {
struct CgaData {
  CoefficientRing ring = CoefficientRing::rationals();
  std::vector<GeneratorSpec> gens;
  std::uint64_t fingerprint = 0;
};
}  // namespace detail

class GradedElement {
 public:
  using Terms = std::map<Monomial, Rational>;

  GradedElement() = default;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint64_t algebra_fingerprint() const { return alg_ ? alg_->fingerprint : 0; }
  // Degree of every term; nullopt for zero or mixed-degree elements.
  std::optional<int> degree() const;
  Rational coefficient(const Monomial& m) const;

  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
  friend GradedElement operator*(const Rational& s, const GradedElement& a);
  GradedElement operator-() const { return Rational(-1) * *this; }
  bool operator==(const GradedElement& o) const { return terms_ == o.terms_; }

  void add_term(const Monomial& m, const Rational& c);

 private:
  friend class FreeCga;
  std::shared_ptr<const detail::CgaData> alg_;
  Terms terms_;
  void adopt(const GradedElement& o);
};

class FreeCga {
 public:
  FreeCga(CoefficientRing ring, std::vector<GeneratorSpec> gens);

  const CoefficientRing& ring() const { return d_->ring; }
  const std::vector<GeneratorSpec>& generators() const { return d_->gens; }
  std::size_t size() const { return d_->gens.size(); }
  std::uint64_t fingerprint() const { return d_->fingerprint; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool odd_squares_vanish(std::size_t i) const { return d_->gens[i].sort == Sort::exterior; }

  int degree(const Monomial& m) const;
  Monomial unit_monomial() const { return Monomial{std::vector<std::uint32_t>(size(), 0)}; }
  Monomial generator_monomial(std::size_t i) const;

  GradedElement zero() const;
  GradedElement one() const { return constant(1); }
  GradedElement constant(const Rational& c) const;
  GradedElement generator(std::size_t i) const;
  GradedElement generator(const std::string& name) const;
  GradedElement monomial(const Monomial& m, const Rational& c = 1) const;
  GradedElement multiply(const GradedElement& a, const GradedElement& b) const;
  GradedElement power(const GradedElement& a, unsigned k) const;

  // Sign (+1, -1) and product of two monomials; sign 0 when the product vanishes.
  std::pair<int, Monomial> multiply_monomials(const Monomial& a, const Monomial& b) const;

  std::vector<Monomial> basis_of_degree(int n) const;
  std::vector<std::size_t> hilbert_series(int cap) const;
  // Product formula, independent of basis enumeration.
  std::vector<Integer> hilbert_series_product_formula(int cap) const;

  GradedElement parse(const std::string& text) const;
  std::string format(const GradedElement& x) const;
  std::string format(const Monomial& m) const;

  bool operator==(const FreeCga& o) const { return d_->fingerprint == o.d_->fingerprint; }

 private:
  explicit FreeCga(std::shared_ptr<const detail::CgaData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::CgaData> d_;
  friend class GradedElement;
  friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
};

// Degree-0 algebra map determined by generator images.
class AlgebraMap {
 public:
  AlgebraMap(FreeCga source, FreeCga target, std::vector<GradedElement> images);
  const FreeCga& source() const { return source_; }
  const FreeCga& target() const { return target_; }
  const std::vector<GradedElement>& images() const { return images_; }
  GradedElement operator()(const GradedElement& x) const;
  GradedElement apply(const Monomial& m) const;

 private:
  FreeCga source_;
  FreeCga target_;
  std::vector<GradedElement> images_;
};

AlgebraMap substitute(const FreeCga& source, const FreeCga& target,
                      const std::map<std::string, GradedElement>& images);

}  // namespace hcoh
