#include "hcoh/cdga.hpp"

#include "hcoh/error.hpp"
#include "hcoh/parallel.hpp"

namespace hcoh {

Cdga::Cdga(FreeCga algebra, std::vector<GradedElement> differentials)
    : algebra_(std::move(algebra)), d_(std::move(differentials)) {
  const auto& gens = algebra_.generators();
  if (d_.size() != gens.size()) fail("differential must be given on every generator");
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i].is_zero()) {
      d_[i] = algebra_.zero();
      continue;
    }
    if (d_[i].algebra_fingerprint() != algebra_.fingerprint()) fail("algebra mismatch");
    if (d_[i].degree() != gens[i].degree + 1) {
      fail("d(" + gens[i].name + ") must be homogeneous of degree " + std::to_string(gens[i].degree + 1));
    }
  }
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (!differential(d_[i]).is_zero()) {
      verification_failed("d^2 != 0 on generator " + gens[i].name);
    }
  }
}

Cdga Cdga::from_named(FreeCga algebra, const std::map<std::string, GradedElement>& d) {
  std::vector<GradedElement> ds(algebra.size(), algebra.zero());
  for (const auto& [name, v] : d) {
    auto i = algebra.index_of(name);
    if (!i) fail("differential given for unknown generator " + name);
    ds[*i] = v;
  }
  return Cdga(std::move(algebra), std::move(ds));
}

GradedElement Cdga::differential(const Monomial& m) const {
  const auto& gens = algebra_.generators();
  GradedElement out = algebra_.zero();
  int prefix_degree = 0;
  for (std::size_t i = 0; i < m.exp.size(); ++i) {
    std::uint32_t e = m.exp[i];
    if (e == 0) continue;
    if (!d_[i].is_zero()) {
      Monomial head = algebra_.unit_monomial(), tail = algebra_.unit_monomial();
      for (std::size_t j = 0; j < m.exp.size(); ++j) {
        if (j < i) head.exp[j] = m.exp[j];
        if (j > i) tail.exp[j] = m.exp[j];
      }
      head.exp[i] = e - 1;
      GradedElement term = algebra_.multiply(algebra_.monomial(head), d_[i]);
      term = algebra_.multiply(term, algebra_.monomial(tail));
      Rational coef = (prefix_degree % 2 == 0 ? 1 : -1) * static_cast<long>(e);
      out += coef * term;
    }
    prefix_degree += static_cast<int>(e) * gens[i].degree;
  }
  return out;
}

GradedElement Cdga::differential(const GradedElement& x) const {
  GradedElement out = algebra_.zero();
  for (const auto& [m, c] : x.terms()) out += c * differential(m);
  return out;
}

std::optional<Monomial> Cdga::find_d_squared_failure(int cap) const {
  for (int n = 0; n <= cap; ++n) {
    for (const auto& m : algebra_.basis_of_degree(n)) {
      if (!differential(differential(m)).is_zero()) return m;
    }
  }
  return std::nullopt;
}

void Cdga::set_weight_generators(std::vector<bool> mask) {
  if (mask.size() != algebra_.size()) fail("weight mask size mismatch");
  weight_mask_ = std::move(mask);
  for (std::size_t i = 0; i < d_.size(); ++i) {
    int target = weight(algebra_.generator_monomial(i)) - 1;
    for (const auto& [m, c] : d_[i].terms()) {
      if (weight(m) != target) fail("differential does not lower the weight by one");
    }
  }
}

int Cdga::weight(const Monomial& m) const {
  if (weight_mask_.empty()) return 0;
  int w = 0;
  for (std::size_t i = 0; i < m.exp.size(); ++i) {
    if (weight_mask_[i]) w += static_cast<int>(m.exp[i]);
  }
  return w;
}

ExactMatrix Cdga::differential_matrix(const std::vector<Monomial>& from, const std::vector<Monomial>& to) const {
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < to.size(); ++i) idx.emplace(to[i], i);
  ExactMatrix m(to.size(), from.size());
  for (std::size_t j = 0; j < from.size(); ++j) {
    GradedElement dj = differential(from[j]);
    for (const auto& [mon, c] : dj.terms()) {
      auto it = idx.find(mon);
      if (it == idx.end()) fail("differential leaves the supplied target basis");
      m.set(it->second, j, c);
    }
  }
  return m;
}

// ---- field cohomology ----

namespace {

struct DegreeResult {
  CohomologySlice slice;
  Subspace cocycles;
  Subspace coboundaries;
};

}  // namespace

Cohomology::Cohomology(const Cdga& c, int cap, unsigned threads) : c_(c), cap_(cap) {
  const auto& ring = c.algebra().ring();
  if (!ring.is_field()) fail("field required");
  if (cap < 0) fail("degree cap must be nonnegative");
  const auto& A = c.algebra();
  basis_.resize(static_cast<std::size_t>(cap) + 2);
  index_.resize(basis_.size());
  parallel_for(basis_.size(), threads, [&](std::size_t n) {
    basis_[n] = A.basis_of_degree(static_cast<int>(n));
    for (std::size_t i = 0; i < basis_[n].size(); ++i) index_[n].emplace(basis_[n][i], i);
  });
  const bool weighted = c.has_weights();

  std::vector<std::optional<DegreeResult>> results(static_cast<std::size_t>(cap) + 1);
  parallel_for(results.size(), threads, [&](std::size_t n) {
    DegreeResult r{CohomologySlice{}, Subspace(ring), Subspace(ring)};
    r.slice.degree = static_cast<int>(n);
    // coboundaries in degree n
    if (n > 0) {
      for (const auto& m : basis_[n - 1]) {
        auto v = to_vector(static_cast<int>(n), c.differential(m));
        r.coboundaries.insert(v);
        r.cocycles.insert(v);
      }
    }
    // kernel of d on degree n, block by weight
    std::map<int, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < basis_[n].size(); ++i) {
      blocks[weighted ? c.weight(basis_[n][i]) : 0].push_back(i);
    }
    std::size_t kernel_total = 0;
    for (const auto& [w, cols] : blocks) {
      std::vector<Monomial> from;
      for (auto i : cols) from.push_back(basis_[n][i]);
      ExactMatrix dm = c.differential_matrix(from, basis_[n + 1]);
      RankKernel rk = rank_and_kernel(dm, ring);
      kernel_total += rk.kernel.size();
      std::size_t found = 0;
      for (const auto& kv : rk.kernel) {
        SparseVec v;
        for (std::size_t j = 0; j < kv.size(); ++j) {
          if (kv[j] != 0) v.emplace(cols[j], kv[j]);
        }
        SparseVec rep = r.coboundaries.reduce(v);
        std::size_t tag = r.slice.representatives.size();
        if (r.cocycles.insert(rep, tag)) {
          GradedElement x = A.zero();
          for (const auto& [k, coef] : rep) x += A.monomial(basis_[n][k], coef);
          r.slice.representatives.push_back(std::move(x));
          r.slice.representative_weights.push_back(w);
          ++found;
        }
      }
      if (found > 0) r.slice.by_weight[w] = found;
    }
    r.slice.dimension = r.slice.representatives.size();
    if (r.slice.dimension + r.coboundaries.dimension() != kernel_total) {
      verification_failed("rank-nullity mismatch in degree " + std::to_string(n));
    }
    results[n].emplace(std::move(r));
  });
  for (auto& r : results) {
    slices_.push_back(std::move(r->slice));
    cocycle_space_.push_back(std::move(r->cocycles));
    coboundary_space_.push_back(std::move(r->coboundaries));
  }
}

SparseVec Cohomology::to_vector(int n, const GradedElement& x) const {
  SparseVec v;
  const auto& idx = index_.at(static_cast<std::size_t>(n));
  for (const auto& [m, coef] : x.terms()) {
    auto it = idx.find(m);
    if (it == idx.end()) fail("element is not homogeneous of degree " + std::to_string(n));
    v.emplace(it->second, coef);
  }
  return v;
}

std::vector<std::size_t> Cohomology::betti() const {
  std::vector<std::size_t> b;
  for (const auto& s : slices_) b.push_back(s.dimension);
  return b;
}

std::vector<Rational> Cohomology::class_coordinates(const GradedElement& cocycle) const {
  if (cocycle.is_zero()) fail("class_coordinates needs a homogeneous element");
  int n = *cocycle.degree();
  if (n > cap_) fail("degree beyond the computed range");
  if (!c_.differential(cocycle).is_zero()) fail("class_coordinates called on a non-cocycle");
  SparseVec coords;
  SparseVec rest = cocycle_space_[n].reduce(to_vector(n, cocycle), &coords);
  if (!rest.empty()) verification_failed("cocycle outside the span of representatives and coboundaries");
  std::vector<Rational> out(slices_[n].dimension);
  for (const auto& [k, v] : coords) out.at(k) = v;
  return out;
}

bool Cohomology::is_coboundary(const GradedElement& x) const {
  if (x.is_zero()) return true;
  int n = *x.degree();
  return coboundary_space_.at(n).contains(to_vector(n, x));
}

GradedElement Cohomology::from_coordinates(int degree, const std::vector<Rational>& coords) const {
  GradedElement out = c_.algebra().zero();
  const auto& reps = slices_.at(degree).representatives;
  for (std::size_t i = 0; i < coords.size(); ++i) out += coords[i] * reps.at(i);
  return out;
}

std::vector<CohomologySlice> cohomology(const Cdga& c, int cap, unsigned threads) {
  return Cohomology(c, cap, threads).slices();
}

// ---- integral cohomology ----

std::vector<IntegralSlice> cohomology_over_Z(const Cdga& c, int cap) {
  const auto& ring = c.algebra().ring();
  using K = CoefficientRing::Kind;
  if (ring.kind() != K::integers && ring.kind() != K::localized) fail("integer coefficients required");
  const auto& A = c.algebra();
  std::vector<std::vector<Monomial>> basis;
  for (int n = 0; n <= cap + 1; ++n) basis.push_back(A.basis_of_degree(n));
  std::vector<ExactMatrix> d;
  for (int n = 0; n <= cap; ++n) d.push_back(c.differential_matrix(basis[n], basis[n + 1]));
  for (const auto& m : d) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [col, v] : m.row(r)) {
        if (v.get_den() != 1) fail("integral cohomology needs an integral differential");
      }
    }
  }
  const auto q = CoefficientRing::rationals();
  std::vector<std::size_t> ranks;
  for (const auto& m : d) ranks.push_back(rank(m, q));
  std::vector<IntegralSlice> out;
  for (int n = 0; n <= cap; ++n) {
    IntegralSlice s;
    s.degree = n;
    std::size_t incoming = n > 0 ? ranks[n - 1] : 0;
    s.free_rank = basis[n].size() - ranks[n] - incoming;
    if (n > 0) {
      for (const auto& inv : smith_normal_form(d[n - 1]).invariants) {
        if (inv == 1) continue;
        Integer t = inv;
        if (ring.kind() == K::localized) {
          Integer m(std::to_string(ring.inverted()));
          Integer g;
          while (true) {
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            if (g == 1) break;
            t /= g;
          }
        }
        if (t > 1) s.torsion.push_back(t);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace hcoh
