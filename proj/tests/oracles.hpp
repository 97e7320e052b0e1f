#pragma once
// Small independent reference computations used by the tests. Nothing here calls the library's
// linear algebra.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;
using Dense = std::vector<std::vector<Q>>;

// Plain row reduction over Q, or over F_p when p > 0.
inline std::size_t rank(Dense m, unsigned p = 0) {
  auto red = [&](Q x) {
    if (p == 0) return x;
    Z n = x.get_num() % p, d = x.get_den() % p;
    if (n < 0) n += p;
    Z inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), Z(p).get_mpz_t());
    Z r = (n * inv) % p;
    return Q(r);
  };
  for (auto& row : m)
    for (auto& x : row) x = red(x);
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Q f = m[i][c] / m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = red(m[i][j] - f * m[r][j]);
    }
    ++r;
  }
  return r;
}

inline Z det(const std::vector<std::vector<Z>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Z s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Z>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Z> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Z t = m[0][c] * det(minor);
    s += (c % 2 ? -t : t);
  }
  return s;
}

// Invariant factors from determinant divisors: d_k = gcd of k x k minors.
inline std::vector<Z> invariant_factors(const std::vector<std::vector<Z>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<Z> dk{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Z g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    std::vector<bool> rsel(rows, false), csel(cols, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        std::vector<std::vector<Z>> sub;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!rsel[r]) continue;
          std::vector<Z> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (csel[c]) row.push_back(m[r][c]);
          sub.push_back(row);
        }
        Z d = abs(det(sub));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<Z> out;
  for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

// Generating function of a free graded-commutative algebra: prod 1/(1-t^d) or (1+t^d).
struct Gen {
  int degree;
  bool exterior;
};
inline std::vector<long> hilbert(const std::vector<Gen>& gens, int cap) {
  std::vector<long> h(static_cast<std::size_t>(cap) + 1, 0);
  h[0] = 1;
  for (const auto& g : gens) {
    if (g.exterior) {
      for (int n = cap; n >= g.degree; --n) h[n] += h[n - g.degree];
    } else {
      for (int n = g.degree; n <= cap; ++n) h[n] += h[n - g.degree];
    }
  }
  return h;
}

inline std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b, int cap) {
  std::vector<long> c(static_cast<std::size_t>(cap) + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(cap); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Coefficients of prod (1 + t^d) over the list.
inline std::vector<long> exterior_poly(const std::vector<int>& degrees, int cap) {
  std::vector<long> h(static_cast<std::size_t>(cap) + 1, 0);
  h[0] = 1;
  for (int d : degrees)
    for (int n = cap; n >= d; --n) h[n] += h[n - d];
  return h;
}

inline std::vector<long> trim(std::vector<long> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

template <class T>
std::vector<long> as_long(const std::vector<T>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(static_cast<long>(x));
  return out;
}

}  // namespace oracle
