#include "hcoh/coeffring.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <queue>
#include <utility>

#include "hcoh/error.hpp"
#include "hcoh/modp.hpp"

namespace hcoh {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

CoefficientRing CoefficientRing::rationals() { return {Kind::rationals, 0}; }

CoefficientRing CoefficientRing::prime_field(std::uint32_t p) {
  if (!is_prime(p)) fail("prime field requires a prime, got " + std::to_string(p));
  if (p >= (1u << 31)) fail("prime too large");
  return {Kind::prime_field, p};
}

CoefficientRing CoefficientRing::integers() { return {Kind::integers, 0}; }

CoefficientRing CoefficientRing::localized(std::uint64_t m) {
  if (m < 2) fail("localization needs m >= 2");
  return {Kind::localized, m};
}

CoefficientRing CoefficientRing::parse(std::string_view t) {
  auto number = [&](std::string_view s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      fail("bad coefficient ring '" + std::string(t) + "'");
    }
    return std::stoull(std::string(s));
  };
  if (t == "Q") return rationals();
  if (t == "Z") return integers();
  if (t == "Fp") fail("coefficient ring Fp needs a prime, e.g. F3 or Fp:3");
  if (t.starts_with("Fp:")) return prime_field(static_cast<std::uint32_t>(number(t.substr(3))));
  if (t.starts_with("F")) return prime_field(static_cast<std::uint32_t>(number(t.substr(1))));
  if (t.starts_with("Z-inv")) return localized(number(t.substr(5)));
  if (t.starts_with("Z[1/") && t.ends_with("]")) return localized(number(t.substr(4, t.size() - 5)));
  fail("bad coefficient ring '" + std::string(t) + "'");
}

bool CoefficientRing::two_is_unit() const {
  switch (kind_) {
    case Kind::rationals: return true;
    case Kind::prime_field: return param_ != 2;
    case Kind::integers: return false;
    case Kind::localized: return param_ % 2 == 0;
  }
  return false;
}

namespace {

// Strips from n every prime factor it shares with m.
Integer strip_factors(Integer n, const Integer& m) {
  n = abs(n);
  Integer g;
  while (true) {
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    if (g == 1) return n;
    n /= g;
  }
}

std::uint32_t residue(const Integer& a, std::uint32_t p) {
  return static_cast<std::uint32_t>(mpz_fdiv_ui(a.get_mpz_t(), p));
}

}  // namespace

bool CoefficientRing::contains(const Rational& x) const {
  switch (kind_) {
    case Kind::rationals: return true;
    case Kind::prime_field: return residue(x.get_den(), prime()) != 0;
    case Kind::integers: return x.get_den() == 1;
    case Kind::localized: return strip_factors(x.get_den(), Integer(std::to_string(param_))) == 1;
  }
  return false;
}

Rational CoefficientRing::normalize(const Rational& x) const {
  if (!contains(x)) fail("coefficient " + to_string(x) + " does not lie in " + name());
  if (kind_ != Kind::prime_field) return x;
  std::uint32_t p = prime();
  std::uint64_t v = static_cast<std::uint64_t>(residue(x.get_num(), p)) *
                    modp::inverse(residue(x.get_den(), p), p) % p;
  return Rational(static_cast<unsigned long>(v));
}

Rational CoefficientRing::inverse(const Rational& x) const {
  Rational y = normalize(x);
  if (y == 0) fail("division by zero in " + name());
  if (kind_ == Kind::prime_field) {
    std::uint32_t p = prime();
    return Rational(static_cast<unsigned long>(modp::inverse(residue(y.get_num(), p), p)));
  }
  Rational inv = 1 / y;
  if (!contains(inv)) fail(to_string(y) + " is not a unit in " + name());
  return inv;
}

bool CoefficientRing::is_unit(const Integer& x) const {
  switch (kind_) {
    case Kind::rationals: return x != 0;
    case Kind::prime_field: return residue(x, prime()) != 0;
    case Kind::integers: return abs(x) == 1;
    case Kind::localized:
      return x != 0 && strip_factors(x, Integer(std::to_string(param_))) == 1;
  }
  return false;
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case Kind::rationals: return "Q";
    case Kind::prime_field: return "F" + std::to_string(param_);
    case Kind::integers: return "Z";
    case Kind::localized: return "Z[1/" + std::to_string(param_) + "]";
  }
  return "?";
}

std::string to_string(const Rational& x) { return x.get_str(); }

void axpy(SparseVec& dst, const Rational& s, const SparseVec& src, const CoefficientRing& ring) {
  if (s == 0) return;
  for (const auto& [k, v] : src) {
    auto it = dst.find(k);
    Rational nv = ring.normalize((it == dst.end() ? Rational(0) : it->second) + s * v);
    if (nv == 0) {
      if (it != dst.end()) dst.erase(it);
    } else if (it == dst.end()) {
      dst.emplace(k, nv);
    } else {
      it->second = nv;
    }
  }
}

// ---- ExactMatrix ----

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Rational ExactMatrix::at(std::size_t r, std::size_t c) const {
  auto it = data_[r].find(c);
  return it == data_[r].end() ? Rational(0) : it->second;
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) fail("matrix index out of range");
  if (v == 0) {
    data_[r].erase(c);
  } else {
    data_[r][c] = v;
  }
}

void ExactMatrix::add(std::size_t r, std::size_t c, const Rational& v) { set(r, c, at(r, c) + v); }

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : data_) n += row.size();
  return n;
}

std::vector<Rational> ExactMatrix::apply(const std::vector<Rational>& x) const {
  std::vector<Rational> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
  }
  return y;
}

// ---- elimination ----

namespace {

std::size_t height(const Rational& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

RankKernel rank_kernel_rational(const ExactMatrix& m) {
  std::vector<SparseVec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!m.row(r).empty()) rows.push_back(m.row(r));
  }
  const auto q = CoefficientRing::rationals();
  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r]) continue;
      auto it = rows[r].find(c);
      if (it == rows[r].end()) continue;
      if (best == rows.size()) {
        best = r;
        continue;
      }
      auto hb = height(rows[best].at(c)), hr = height(it->second);
      if (hr < hb || (hr == hb && rows[r].size() < rows[best].size())) best = r;
    }
    if (best == rows.size()) continue;
    Rational inv = 1 / rows[best].at(c);
    for (auto& [k, v] : rows[best]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best) continue;
      auto it = rows[r].find(c);
      if (it == rows[r].end()) continue;
      Rational f = -it->second;
      axpy(rows[r], f, rows[best], q);
    }
    used[best] = true;
    pivots.emplace_back(c, best);
  }
  RankKernel out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto [c, r] : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m.cols());
    x[f] = 1;
    for (auto [c, r] : pivots) {
      auto it = rows[r].find(f);
      if (it != rows[r].end()) x[c] = -it->second;
    }
    out.kernel.push_back(std::move(x));
  }
  return out;
}

struct DenseModP {
  std::size_t rows, cols;
  std::vector<std::uint32_t> a;
  std::uint32_t* row(std::size_t r) { return a.data() + r * cols; }
};

DenseModP to_dense_mod_p(const ExactMatrix& m, std::uint32_t p) {
  DenseModP d{m.rows(), m.cols(), std::vector<std::uint32_t>(m.rows() * m.cols(), 0)};
  const auto field = CoefficientRing::prime_field(p);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) {
      d.a[r * d.cols + c] = static_cast<std::uint32_t>(field.normalize(v).get_num().get_ui());
    }
  }
  return d;
}

// Row reduction in place; full=true clears above pivots as well. Returns pivot columns.
std::vector<std::size_t> eliminate_mod_p(DenseModP& d, std::uint32_t p, bool full) {
  const auto& k = modp::select_kernels(p);
  std::vector<std::size_t> pivcols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < d.cols && rank < d.rows; ++c) {
    std::size_t piv = rank;
    while (piv < d.rows && d.row(piv)[c] == 0) ++piv;
    if (piv == d.rows) continue;
    if (piv != rank) {
      std::swap_ranges(d.row(piv), d.row(piv) + d.cols, d.row(rank));
    }
    std::uint32_t* pr = d.row(rank);
    std::uint32_t inv = modp::inverse(pr[c], p);
    if (inv != 1) k.scale(pr + c, inv, p, d.cols - c);
    for (std::size_t r = full ? 0 : rank + 1; r < d.rows; ++r) {
      if (r == rank) continue;
      std::uint32_t v = d.row(r)[c];
      if (v != 0) k.axpy(d.row(r) + c, pr + c, p - v, p, d.cols - c);
    }
    pivcols.push_back(c);
    ++rank;
  }
  return pivcols;
}

RankKernel rank_kernel_mod_p(const ExactMatrix& m, std::uint32_t p) {
  DenseModP d = to_dense_mod_p(m, p);
  auto pivcols = eliminate_mod_p(d, p, true);
  RankKernel out;
  out.rank = pivcols.size();
  std::vector<long> row_of(m.cols(), -1);
  for (std::size_t i = 0; i < pivcols.size(); ++i) row_of[pivcols[i]] = static_cast<long>(i);
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (row_of[f] >= 0) continue;
    std::vector<Rational> x(m.cols());
    x[f] = 1;
    for (std::size_t i = 0; i < pivcols.size(); ++i) {
      std::uint32_t v = d.row(i)[f];
      if (v != 0) x[pivcols[i]] = static_cast<unsigned long>(p - v);
    }
    out.kernel.push_back(std::move(x));
  }
  return out;
}

}  // namespace

RankKernel rank_and_kernel(const ExactMatrix& m, const CoefficientRing& field) {
  if (!field.is_field()) fail("field required");
  if (field.kind() == CoefficientRing::Kind::prime_field) return rank_kernel_mod_p(m, field.prime());
  return rank_kernel_rational(m);
}

namespace {

// Left-looking sparse elimination: each row is reduced against the pivot rows found so far,
// smallest column first, and becomes a pivot row if anything survives.
std::size_t sparse_rank_mod_p(const ExactMatrix& m, std::uint32_t p) {
  const auto field = CoefficientRing::prime_field(p);
  using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  std::vector<Row> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Row row;
    for (const auto& [c, v] : m.row(r)) {
      auto x = static_cast<std::uint32_t>(field.normalize(v).get_num().get_ui());
      if (x) row.push_back({static_cast<std::uint32_t>(c), x});
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.size() < b.size(); });
  std::vector<long> pivot_of(m.cols(), -1);
  std::vector<Row> pivots;
  std::vector<std::uint64_t> acc(m.cols(), 0);
  std::vector<char> live(m.cols(), 0);
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> todo;
  for (const Row& row : rows) {
    for (auto [c, v] : row) {
      acc[c] = v;
      live[c] = 1;
      todo.push(c);
    }
    Row out;
    while (!todo.empty()) {
      std::uint32_t c = todo.top();
      todo.pop();
      if (!live[c]) continue;
      live[c] = 0;
      std::uint64_t v = acc[c] % p;
      acc[c] = 0;
      if (v == 0) continue;
      if (!out.empty() || pivot_of[c] < 0) {
        out.push_back({c, static_cast<std::uint32_t>(v)});
        continue;
      }
      // subtract v times the pivot row, whose leading entry is 1
      const std::uint64_t f = p - v;
      for (auto [cc, w] : pivots[static_cast<std::size_t>(pivot_of[c])]) {
        if (cc == c) continue;
        acc[cc] = (acc[cc] + f * w) % p;
        if (!live[cc]) {
          live[cc] = 1;
          todo.push(cc);
        }
      }
    }
    if (out.empty()) continue;
    const std::uint32_t inv = modp::inverse(out.front().second, p);
    for (auto& [c, v] : out) v = static_cast<std::uint32_t>(std::uint64_t{v} * inv % p);
    pivot_of[out.front().first] = static_cast<long>(pivots.size());
    pivots.push_back(std::move(out));
  }
  return pivots.size();
}

}  // namespace

std::size_t rank_mod_p(const ExactMatrix& m, std::uint32_t p) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonzeros() == 0) return 0;
  // dense elimination (SIMD kernels) for small or dense blocks
  const double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  if (cells > 1 << 20 && static_cast<double>(m.nonzeros()) < 0.02 * cells) return sparse_rank_mod_p(m, p);
  DenseModP d = to_dense_mod_p(m, p);
  return eliminate_mod_p(d, p, false).size();
}

std::size_t rank(const ExactMatrix& m, const CoefficientRing& field) {
  if (!field.is_field()) fail("field required");
  if (m.nonzeros() == 0) return 0;
  if (field.kind() == CoefficientRing::Kind::prime_field) return rank_mod_p(m, field.prime());
  return rank_kernel_rational(m).rank;
}

std::size_t rank_multimodular(const ExactMatrix& m) {
  static constexpr std::uint32_t primes[] = {32749, 32719, 32717};
  const std::size_t cap = std::min(m.rows(), m.cols());
  std::size_t best = 0;
  for (std::uint32_t p : primes) {
    best = std::max(best, rank_mod_p(m, p));
    if (best == cap) break;
  }
  return best;
}

// ---- Smith normal form ----

SmithForm smith_normal_form(const ExactMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::vector<Integer>> a(R, std::vector<Integer>(C));
  for (std::size_t r = 0; r < R; ++r) {
    for (const auto& [c, v] : m.row(r)) {
      if (v.get_den() != 1) fail("smith normal form needs integer entries");
      a[r][c] = v.get_num();
    }
  }
  std::vector<std::vector<Integer>> u(R, std::vector<Integer>(R)), v(C, std::vector<Integer>(C));
  for (std::size_t i = 0; i < R; ++i) u[i][i] = 1;
  for (std::size_t i = 0; i < C; ++i) v[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  };
  // row i += f * row j
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t c = 0; c < C; ++c) a[i][c] += f * a[j][c];
    for (std::size_t c = 0; c < R; ++c) u[i][c] += f * u[j][c];
  };
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& f) {
    for (std::size_t r = 0; r < R; ++r) a[r][i] += f * a[r][j];
    for (std::size_t r = 0; r < C; ++r) v[r][i] += f * v[r][j];
  };

  SmithForm out;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::size_t pr = R, pc = C;
    for (std::size_t r = t; r < R; ++r) {
      for (std::size_t c = t; c < C; ++c) {
        if (a[r][c] != 0 && (pr == R || abs(a[r][c]) < abs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == R) break;
    swap_rows(t, pr);
    swap_cols(t, pc);
    while (true) {
      bool clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        if (a[r][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        add_row(r, t, -q);
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        if (a[t][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        add_col(c, t, -q);
        if (a[t][c] != 0) clean = false;
      }
      if (!clean) {
        std::size_t br = t, bc = t;
        for (std::size_t r = t; r < R; ++r) {
          if (a[r][t] != 0 && abs(a[r][t]) < abs(a[br][bc])) { br = r; bc = t; }
        }
        for (std::size_t c = t; c < C; ++c) {
          if (a[t][c] != 0 && abs(a[t][c]) < abs(a[br][bc])) { br = t; bc = c; }
        }
        swap_rows(t, br);
        swap_cols(t, bc);
        continue;
      }
      std::size_t bad = R;
      for (std::size_t r = t + 1; r < R && bad == R; ++r) {
        for (std::size_t c = t + 1; c < C; ++c) {
          if (mpz_divisible_p(a[r][c].get_mpz_t(), a[t][t].get_mpz_t()) == 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad == R) break;
      add_row(t, bad, 1);
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      for (auto& x : u[t]) x = -x;
    }
    out.invariants.push_back(a[t][t]);
  }
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

// ---- Subspace ----

Subspace::Subspace(CoefficientRing field) : field_(field) {
  if (!field_.is_field()) fail("field required");
}

SparseVec Subspace::reduce(const SparseVec& v, SparseVec* tag_coords) const {
  SparseVec w;
  for (const auto& [k, x] : v) {
    Rational y = field_.normalize(x);
    if (y != 0) w.emplace(k, y);
  }
  if (tag_coords) tag_coords->clear();
  std::size_t cursor = 0;
  while (true) {
    auto it = w.lower_bound(cursor);
    while (it != w.end() && basis_.find(it->first) == basis_.end()) ++it;
    if (it == w.end()) break;
    const Row& row = basis_.at(it->first);
    cursor = it->first + 1;
    Rational f = it->second;
    if (tag_coords) axpy(*tag_coords, f, row.tags, field_);
    axpy(w, -f, row.vec, field_);
  }
  return w;
}

bool Subspace::insert(const SparseVec& v, std::size_t tag) {
  SparseVec used;
  SparseVec w = reduce(v, &used);
  if (w.empty()) return false;
  SparseVec tags;
  if (tag != untagged) tags.emplace(tag, Rational(1));
  axpy(tags, Rational(-1), used, field_);
  Rational inv = field_.inverse(w.begin()->second);
  for (auto& [k, x] : w) x = field_.normalize(x * inv);
  for (auto& [k, x] : tags) x = field_.normalize(x * inv);
  std::size_t pivot = w.begin()->first;
  basis_.emplace(pivot, Row{std::move(w), std::move(tags)});
  return true;
}

}  // namespace hcoh
