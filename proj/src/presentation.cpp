#include "hcoh/presentation.hpp"

#include <algorithm>
#include <map>

#include "hcoh/error.hpp"

namespace hcoh {

std::vector<std::size_t> poincare_polynomial(const std::vector<CohomologySlice>& slices) {
  std::vector<std::size_t> out;
  for (const auto& s : slices) {
    if (s.degree != static_cast<int>(out.size())) fail("slices must be consecutive from degree 0");
    out.push_back(s.dimension);
  }
  return out;
}

std::string format_poincare(const std::vector<std::size_t>& c) {
  std::string s;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0) continue;
    if (!s.empty()) s += " + ";
    if (n == 0 || c[n] != 1) s += std::to_string(c[n]);
    if (n > 0) s += n == 1 ? "t" : "t^" + std::to_string(n);
  }
  return s.empty() ? "0" : s;
}

std::vector<int> RingPresentation::generator_degrees() const {
  std::vector<int> d;
  for (const auto& g : algebra.generators()) d.push_back(g.degree);
  return d;
}

std::vector<int> RingPresentation::relation_degrees() const {
  std::vector<int> d;
  for (const auto& r : relations) d.push_back(r.degree().value_or(0));
  return d;
}

std::vector<std::string> RingPresentation::relation_strings() const {
  std::vector<std::string> s;
  for (const auto& r : relations) s.push_back(algebra.format(r));
  return s;
}

std::optional<std::string> multiplicative_refusal(const CoefficientRing& ring, bool two_sided, bool column_zero) {
  if (!ring.is_field()) return "ring structure is only reported over fields";
  if (ring.characteristic() != 2) return std::nullopt;
  if (two_sided) return "additive only in characteristic 2: Tor need not be the cohomology ring for two-sided quotients";
  if (!column_zero) {
    return "additive only in characteristic 2: the Tor ring can differ from the cohomology ring "
           "(U(2)/U(1) over F2 has Tor ring Lambda[z1] (x) F2[y2]/(y2^2), cohomology F2[x]/(x^4))";
  }
  return std::nullopt;
}

namespace {

std::string generator_name(int degree, int repeat) {
  return "x" + std::to_string(degree) + std::string(static_cast<std::size_t>(repeat), '\'');
}

SparseVec to_sparse(const std::vector<Rational>& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) s[i] = v[i];
  }
  return s;
}

// Ideal of the relations inside degree n of the free algebra.
Subspace ideal_in_degree(const FreeCga& P, const std::vector<GradedElement>& rel, int n,
                         const std::map<Monomial, std::size_t>& idx) {
  Subspace I(P.ring());
  for (const auto& r : rel) {
    int d = r.degree().value_or(-1);
    if (d < 0 || d > n) continue;
    for (const auto& m : P.basis_of_degree(n - d)) {
      GradedElement e = P.multiply(P.monomial(m), r);
      SparseVec v;
      for (const auto& [mon, c] : e.terms()) v[idx.at(mon)] = c;
      I.insert(v);
    }
  }
  return I;
}

}  // namespace

std::vector<std::size_t> quotient_hilbert(const FreeCga& P, const std::vector<GradedElement>& relations, int cap) {
  std::vector<std::size_t> out;
  for (int n = 0; n <= cap; ++n) {
    auto basis = P.basis_of_degree(n);
    std::map<Monomial, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    out.push_back(basis.size() - ideal_in_degree(P, relations, n, idx).dimension());
  }
  return out;
}

RingPresentation ring_presentation(const Cohomology& h, std::optional<long> expected_dim) {
  const FreeCga& A = h.complex().algebra();
  const auto& ring = A.ring();
  if (!ring.is_field()) fail("field required");
  const int cap = h.cap();
  std::vector<GeneratorSpec> specs;
  std::vector<GradedElement> reps;  // in A
  std::vector<std::vector<std::pair<Rational, std::vector<std::uint32_t>>>> rel_terms;  // by exponent
  std::map<int, int> repeats;
  auto build = [&]() { return FreeCga(ring, specs); };
  FreeCga P = build();
  // relations are kept as exponent vectors so they survive rebuilding P with more generators
  auto lift = [&](const FreeCga& Pn) {
    std::vector<GradedElement> out;
    for (const auto& terms : rel_terms) {
      GradedElement e = Pn.zero();
      for (const auto& [c, exp] : terms) {
        Monomial m{exp};
        m.exp.resize(Pn.size(), 0);
        e += Pn.monomial(m, c);
      }
      out.push_back(e);
    }
    return out;
  };
  auto image = [&](const Monomial& m) {
    GradedElement x = A.one();
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
      for (std::uint32_t k = 0; k < m.exp[i]; ++k) x = A.multiply(x, reps[i]);
    }
    return x;
  };
  auto coords = [&](int n, const GradedElement& x) {
    return x.is_zero() ? std::vector<Rational>(h.slice(n).dimension, Rational(0)) : h.class_coordinates(x);
  };
  for (int n = 1; n <= cap; ++n) {
    const auto& slice = h.slice(n);
    // classes of products of existing generators
    Subspace decomposable(ring);
    auto basis = P.basis_of_degree(n);
    for (const auto& m : basis) decomposable.insert(to_sparse(coords(n, image(m))));
    for (std::size_t k = 0; k < slice.representatives.size(); ++k) {
      std::vector<Rational> e(slice.dimension, Rational(0));
      e[k] = 1;
      if (decomposable.insert(to_sparse(e))) {
        specs.push_back({generator_name(n, repeats[n]++), n, n % 2 && ring.characteristic() != 2 ? Sort::exterior : Sort::polynomial});
        reps.push_back(slice.representatives[k]);
      }
    }
    P = build();
    // relations: kernel of P_n -> H^n modulo the ideal of earlier relations
    basis = P.basis_of_degree(n);
    std::map<Monomial, std::size_t> idx;
    for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
    std::vector<GradedElement> rel = lift(P);
    Subspace I = ideal_in_degree(P, rel, n, idx);
    ExactMatrix phi(slice.dimension, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto c = coords(n, image(basis[j]));
      for (std::size_t r = 0; r < c.size(); ++r) {
        if (c[r] != 0) phi.set(r, j, c[r]);
      }
    }
    for (const auto& kv : rank_and_kernel(phi, ring).kernel) {
      SparseVec v = to_sparse(kv);
      if (!I.insert(v)) continue;
      std::vector<std::pair<Rational, std::vector<std::uint32_t>>> terms;
      for (const auto& [j, c] : v) terms.push_back({c, basis[j].exp});
      rel_terms.push_back(std::move(terms));
    }
  }
  RingPresentation out{P, {}, lift(P), cap, false, {}};
  for (const auto& r : reps) out.generators.push_back(r);
  out.quotient_hilbert = quotient_hilbert(P, out.relations, cap);
  auto betti = h.betti();
  if (out.quotient_hilbert != betti) verification_failed("presentation Hilbert function differs from the Betti numbers");
  if (expected_dim && *expected_dim >= 0) {
    int maxgen = 0;
    for (const auto& g : specs) maxgen = std::max(maxgen, g.degree);
    bool vanishes = true;
    for (int n = static_cast<int>(*expected_dim) + 1; n <= cap; ++n) vanishes = vanishes && betti[n] == 0;
    out.complete = vanishes && cap >= *expected_dim + maxgen;
  }
  return out;
}

DualityReport duality_and_euler_checks(const std::vector<std::size_t>& betti, long dim,
                                       std::optional<Integer> expected_euler) {
  DualityReport r;
  r.expected_euler = expected_euler;
  if (dim < 0 || static_cast<long>(betti.size()) <= dim) return r;
  r.applicable = true;
  for (std::size_t n = static_cast<std::size_t>(dim) + 1; n < betti.size(); ++n) {
    if (betti[n] != 0) r.applicable = false;  // not a closed manifold of that dimension
  }
  r.palindromic = true;
  for (long n = 0; n <= dim; ++n) {
    r.euler += (n % 2 ? -1 : 1) * static_cast<long>(betti[n]);
    if (r.palindromic && betti[n] != betti[dim - n]) {
      r.palindromic = false;
      r.first_mismatch = static_cast<int>(n);
    }
  }
  r.euler_ok = expected_euler && Integer(r.euler) == *expected_euler;
  return r;
}

}  // namespace hcoh
