#include "hcoh/barcalc.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hcoh/error.hpp"
#include "hcoh/parallel.hpp"

namespace hcoh {

namespace {

int sign_of(long e) { return (e % 2 == 0) ? 1 : -1; }

void add_to(SparseVec& v, std::size_t k, const Rational& c, const CoefficientRing& ring) {
  if (c == 0) return;
  auto it = v.find(k);
  if (it == v.end()) {
    Rational x = ring.normalize(c);
    if (x != 0) v.emplace(k, x);
    return;
  }
  it->second = ring.normalize(it->second + c);
  if (it->second == 0) v.erase(it);
}

}  // namespace

// ---- GradedBasis ----

std::size_t GradedBasis::add(std::string l, int deg) {
  if (deg < 0 || deg > cap) fail("basis element outside degree range");
  if (by_degree.size() < static_cast<std::size_t>(cap) + 1) by_degree.resize(static_cast<std::size_t>(cap) + 1);
  label.push_back(std::move(l));
  degree.push_back(deg);
  by_degree[deg].push_back(label.size() - 1);
  return label.size() - 1;
}

std::optional<std::size_t> GradedBasis::find(const std::string& l) const {
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == l) return i;
  }
  return std::nullopt;
}

// ---- Dga ----

SparseVec Dga::multiply(std::size_t a, std::size_t b) const {
  if (a == unit) return SparseVec{{b, Rational(1)}};
  if (b == unit) return SparseVec{{a, Rational(1)}};
  auto it = products.find({a, b});
  return it == products.end() ? SparseVec{} : it->second;
}

SparseVec Dga::multiply(const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) {
      for (const auto& [k, z] : multiply(i, j)) add_to(out, k, x * y * z, ring);
    }
  }
  return out;
}

SparseVec Dga::differential(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [i, c] : x) {
    for (const auto& [k, z] : diff[i]) add_to(out, k, c * z, ring);
  }
  return out;
}

Dga Dga::ground(const CoefficientRing& ring) {
  Dga k;
  k.ring = ring;
  k.basis.cap = 0;
  k.unit = k.basis.add("1", 0);
  k.diff.resize(1);
  return k;
}

Dga Dga::from_free(const FreeCga& A, int cap) {
  Dga out;
  out.ring = A.ring();
  out.basis.cap = cap;
  std::map<Monomial, std::size_t> idx;
  for (int n = 0; n <= cap; ++n) {
    for (const auto& m : A.basis_of_degree(n)) {
      std::size_t id = out.basis.add(A.format(m), n);
      out.monomials.push_back(m);
      idx.emplace(m, id);
    }
  }
  out.unit = idx.at(A.unit_monomial());
  const std::size_t N = out.basis.size();
  for (std::size_t a = 0; a < N; ++a) {
    if (a == out.unit) continue;
    for (std::size_t b = 0; b < N; ++b) {
      if (b == out.unit || out.basis.degree[a] + out.basis.degree[b] > cap) continue;
      auto [s, m] = A.multiply_monomials(out.monomials[a], out.monomials[b]);
      if (s == 0) continue;
      out.products[{a, b}] = SparseVec{{idx.at(m), out.ring.normalize(Rational(s))}};
    }
  }
  out.diff.assign(N, SparseVec{});
  return out;
}

Dga Dga::from_cdga(const Cdga& C, int cap) {
  Dga out = from_free(C.algebra(), cap);
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < out.monomials.size(); ++i) idx.emplace(out.monomials[i], i);
  for (std::size_t i = 0; i < out.monomials.size(); ++i) {
    if (out.basis.degree[i] + 1 > cap) continue;
    GradedElement dm = C.differential(out.monomials[i]);
    for (const auto& [m, c] : dm.terms()) out.diff[i].emplace(idx.at(m), c);
  }
  return out;
}

Dga Dga::tensor(const Dga& A, const Dga& B, int cap) {
  if (A.ring != B.ring) fail("tensor product over different rings");
  Dga T;
  T.ring = A.ring;
  T.basis.cap = cap;
  for (int n = 0; n <= cap; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (auto a : (i <= A.cap() ? A.basis.by_degree[i] : std::vector<std::size_t>{})) {
        for (auto b : (n - i <= B.cap() ? B.basis.by_degree[n - i] : std::vector<std::size_t>{})) {
          std::size_t id = T.basis.add(A.basis.label[a] + "(x)" + B.basis.label[b], n);
          T.tensor_index[{a, b}] = id;
        }
      }
    }
  }
  T.unit = T.tensor_index.at({A.unit, B.unit});
  std::vector<std::pair<std::size_t, std::size_t>> parts(T.basis.size());
  for (const auto& [ab, id] : T.tensor_index) parts[id] = ab;
  T.diff.assign(T.basis.size(), SparseVec{});
  for (std::size_t x = 0; x < parts.size(); ++x) {
    auto [a, b] = parts[x];
    int da = A.degree(a);
    for (std::size_t y = 0; y < parts.size(); ++y) {
      if (x == T.unit || y == T.unit || T.degree(x) + T.degree(y) > cap) continue;
      auto [a2, b2] = parts[y];
      Rational sgn = sign_of(static_cast<long>(B.degree(b)) * A.degree(a2));
      SparseVec out;
      for (const auto& [i, u] : A.multiply(a, a2)) {
        for (const auto& [j, v] : B.multiply(b, b2)) {
          auto it = T.tensor_index.find({i, j});
          if (it != T.tensor_index.end()) add_to(out, it->second, sgn * u * v, T.ring);
        }
      }
      if (!out.empty()) T.products[{x, y}] = out;
    }
    if (T.degree(x) + 1 > cap) continue;
    for (const auto& [i, u] : A.diff[a]) {
      auto it = T.tensor_index.find({i, b});
      if (it != T.tensor_index.end()) add_to(T.diff[x], it->second, u, T.ring);
    }
    for (const auto& [j, v] : B.diff[b]) {
      auto it = T.tensor_index.find({a, j});
      if (it != T.tensor_index.end()) add_to(T.diff[x], it->second, sign_of(da) * v, T.ring);
    }
  }
  return T;
}

std::optional<std::string> Dga::validate() const {
  const std::size_t N = basis.size();
  if (!diff[unit].empty()) return "d(1) != 0";
  for (std::size_t a = 0; a < N; ++a) {
    if (degree(a) == 0 && a != unit) return "not connected: extra degree-0 element " + basis.label[a];
    if (degree(a) + 2 <= cap() && !differential(differential(SparseVec{{a, 1}})).empty()) {
      return "d^2 != 0 on " + basis.label[a];
    }
  }
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b) {
      int dab = degree(a) + degree(b);
      if (dab > cap()) continue;
      SparseVec ea{{a, 1}}, eb{{b, 1}};
      if (dab + 1 <= cap()) {
        SparseVec lhs = differential(multiply(a, b));
        SparseVec rhs = multiply(differential(ea), eb);
        SparseVec t = multiply(ea, differential(eb));
        for (const auto& [k, v] : t) add_to(rhs, k, sign_of(degree(a)) * v, ring);
        if (lhs != rhs) return "Leibniz rule fails on " + basis.label[a] + ", " + basis.label[b];
      }
      for (std::size_t c = 0; c < N; ++c) {
        if (dab + degree(c) > cap()) continue;
        SparseVec ec{{c, 1}};
        if (multiply(multiply(ea, eb), ec) != multiply(ea, multiply(eb, ec))) {
          return "product not associative on " + basis.label[a] + ", " + basis.label[b] + ", " + basis.label[c];
        }
      }
    }
  }
  return std::nullopt;
}

// ---- Dgc ----

SparseVec Dgc::differential(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [i, c] : x) {
    for (const auto& [k, z] : diff[i]) add_to(out, k, c * z, ring);
  }
  return out;
}

std::optional<std::string> Dgc::validate() const {
  using Pair = std::map<std::pair<std::size_t, std::size_t>, Rational>;
  using Triple = std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational>;
  const std::size_t N = basis.size();
  for (std::size_t c = 0; c < N; ++c) {
    Triple left, right;
    for (const auto& [x, a, b] : coproduct[c]) {
      for (const auto& [y, a1, a2] : coproduct[a]) left[{a1, a2, b}] += x * y;
      for (const auto& [y, b1, b2] : coproduct[b]) right[{a, b1, b2}] += x * y;
    }
    std::erase_if(left, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(right, [](const auto& kv) { return kv.second == 0; });
    if (left != right) return "coproduct not coassociative on " + basis.label[c];
    SparseVec l, r;
    for (const auto& [x, a, b] : coproduct[c]) {
      if (a == counit_element) add_to(l, b, x, ring);
      if (b == counit_element) add_to(r, a, x, ring);
    }
    SparseVec e{{c, 1}};
    if (l != e || r != e) return "counit law fails on " + basis.label[c];
    if (degree(c) + 2 <= cap() && !differential(differential(e)).empty()) return "d^2 != 0 on " + basis.label[c];
    // d is a coderivation: Delta d = (d (x) 1 + 1 (x) d) Delta
    if (degree(c) + 1 <= cap()) {
      Pair lhs, rhs;
      for (const auto& [k, z] : diff[c]) {
        for (const auto& [x, a, b] : coproduct[k]) lhs[{a, b}] += z * x;
      }
      for (const auto& [x, a, b] : coproduct[c]) {
        for (const auto& [k, z] : diff[a]) rhs[{k, b}] += x * z;
        for (const auto& [k, z] : diff[b]) rhs[{a, k}] += sign_of(degree(a)) * x * z;
      }
      std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
      std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
      if (lhs != rhs) return "differential is not a coderivation on " + basis.label[c];
    }
  }
  return std::nullopt;
}

// ---- maps ----

SparseVec DgaMap::operator()(const SparseVec& x) const {
  SparseVec out;
  for (const auto& [i, c] : x) {
    for (const auto& [k, z] : images.at(i)) add_to(out, k, c * z, target->ring);
  }
  return out;
}

DgaMap dga_map_from(const AlgebraMap& f, const Dga& source, const Dga& target) {
  if (source.monomials.empty() || target.monomials.empty()) fail("dga_map_from needs algebras built from free ones");
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < target.monomials.size(); ++i) idx.emplace(target.monomials[i], i);
  DgaMap m{&source, &target, {}};
  for (std::size_t i = 0; i < source.monomials.size(); ++i) {
    SparseVec v;
    if (source.degree(i) <= target.cap()) {
      GradedElement img = f.apply(source.monomials[i]);
      for (const auto& [mon, c] : img.terms()) add_to(v, idx.at(mon), c, target.ring);
    }
    m.images.push_back(std::move(v));
  }
  return m;
}

// ---- bar ----

Dgc bar(const Dga& A, int cap, BarOptions opts) {
  std::vector<std::size_t> letters;
  for (std::size_t a = 0; a < A.basis.size(); ++a) {
    if (a == A.unit) continue;
    int d = A.degree(a);
    if (d == 0) fail("bar construction needs a connected algebra");
    if (d == 1 && !opts.word_cap) fail("bar complex not finite per degree");
    if (d - 1 <= cap) letters.push_back(a);
  }
  std::sort(letters.begin(), letters.end(), [&](std::size_t x, std::size_t y) {
    return A.degree(x) != A.degree(y) ? A.degree(x) < A.degree(y) : x < y;
  });
  Dgc C;
  C.ring = A.ring;
  C.basis.cap = cap;
  std::map<std::vector<std::size_t>, std::size_t> index;
  // enumerate words degree by degree, shorter first
  std::vector<std::vector<std::vector<std::size_t>>> by_deg(static_cast<std::size_t>(cap) + 1);
  std::vector<std::size_t> cur;
  std::function<void(int)> rec = [&](int deg) {
    by_deg[deg].push_back(cur);
    if (opts.word_cap && static_cast<int>(cur.size()) >= *opts.word_cap) return;
    for (auto a : letters) {
      int nd = deg + A.degree(a) - 1;
      if (nd > cap) continue;
      cur.push_back(a);
      rec(nd);
      cur.pop_back();
    }
  };
  rec(0);
  for (int n = 0; n <= cap; ++n) {
    auto& ws = by_deg[n];
    std::stable_sort(ws.begin(), ws.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (const auto& w : ws) {
      std::string label = "[";
      for (std::size_t i = 0; i < w.size(); ++i) label += (i ? "|" : "") + A.basis.label[w[i]];
      label += "]";
      index.emplace(w, C.basis.add(label, n));
      C.words.push_back(w);
    }
  }
  C.counit_element = index.at({});
  const std::size_t N = C.basis.size();
  C.coproduct.resize(N);
  C.diff.assign(N, SparseVec{});
  for (std::size_t id = 0; id < N; ++id) {
    const auto& w = C.words[id];
    for (std::size_t k = 0; k <= w.size(); ++k) {
      std::vector<std::size_t> pre(w.begin(), w.begin() + static_cast<long>(k));
      std::vector<std::size_t> post(w.begin() + static_cast<long>(k), w.end());
      C.coproduct[id].emplace_back(Rational(1), index.at(pre), index.at(post));
    }
    if (C.degree(id) + 1 > cap) continue;
    long eps = 0;  // degree of the desuspended prefix
    for (std::size_t i = 0; i < w.size(); ++i) {
      // internal: d(s^-1 a) = -s^-1 da, Koszul sign from the prefix
      for (const auto& [k, z] : A.diff[w[i]]) {
        auto nw = w;
        nw[i] = k;
        auto it = index.find(nw);
        if (it != index.end()) add_to(C.diff[id], it->second, -sign_of(eps) * z, C.ring);
      }
      eps += A.degree(w[i]) - 1;
      // deletion of positions i, i+1 with sign (-1)^{prefix through i}
      if (i + 1 < w.size()) {
        for (const auto& [k, z] : A.multiply(w[i], w[i + 1])) {
          std::vector<std::size_t> nw(w.begin(), w.begin() + static_cast<long>(i));
          nw.push_back(k);
          nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
          auto it = index.find(nw);
          if (it != index.end()) add_to(C.diff[id], it->second, sign_of(eps) * z, C.ring);
        }
      }
    }
  }
  return C;
}

// ---- cobar ----

Dga cobar(const Dgc& C, int cap) {
  std::vector<std::size_t> letters;
  for (std::size_t c = 0; c < C.basis.size(); ++c) {
    if (c == C.counit_element) continue;
    if (C.degree(c) <= 0) fail("cobar not finite per degree");
    if (C.degree(c) + 1 <= cap) letters.push_back(c);
  }
  Dga O;
  O.ring = C.ring;
  O.basis.cap = cap;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<std::size_t>> words;
  std::vector<std::vector<std::vector<std::size_t>>> by_deg(static_cast<std::size_t>(cap) + 1);
  std::vector<std::size_t> cur;
  std::function<void(int)> rec = [&](int deg) {
    by_deg[deg].push_back(cur);
    for (auto c : letters) {
      int nd = deg + C.degree(c) + 1;
      if (nd > cap) continue;
      cur.push_back(c);
      rec(nd);
      cur.pop_back();
    }
  };
  rec(0);
  for (int n = 0; n <= cap; ++n) {
    auto& ws = by_deg[n];
    std::stable_sort(ws.begin(), ws.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (const auto& w : ws) {
      std::string label;
      for (std::size_t i = 0; i < w.size(); ++i) label += (i ? " " : "") + ("s" + C.basis.label[w[i]]);
      if (w.empty()) label = "1";
      index.emplace(w, O.basis.add(label, n));
      words.push_back(w);
    }
  }
  O.unit = index.at({});
  O.cobar_words = words;
  const std::size_t N = O.basis.size();
  for (std::size_t x = 0; x < N; ++x) {
    if (x == O.unit) continue;
    for (std::size_t y = 0; y < N; ++y) {
      if (y == O.unit || O.degree(x) + O.degree(y) > cap) continue;
      auto w = words[x];
      w.insert(w.end(), words[y].begin(), words[y].end());
      O.products[{x, y}] = SparseVec{{index.at(w), Rational(1)}};
    }
  }
  O.diff.assign(N, SparseVec{});
  for (std::size_t x = 0; x < N; ++x) {
    if (O.degree(x) + 1 > cap) continue;
    const auto& w = words[x];
    long eps = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::size_t c = w[i];
      auto splice = [&](const std::vector<std::size_t>& mid, const Rational& coef) {
        std::vector<std::size_t> nw(w.begin(), w.begin() + static_cast<long>(i));
        nw.insert(nw.end(), mid.begin(), mid.end());
        nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 1, w.end());
        auto it = index.find(nw);
        if (it == index.end()) fail("cobar differential left the truncation; coalgebra cap too small");
        add_to(O.diff[x], it->second, coef, O.ring);
      };
      // d(sc) = -s(dc) + sum (-1)^{|c'|} sc' sc'' over the reduced coproduct
      if (C.degree(c) + 1 > C.cap()) fail("coalgebra differential missing; coalgebra cap too small");
      for (const auto& [k, z] : C.diff[c]) {
        if (k == C.counit_element) continue;
        splice({k}, -sign_of(eps) * z);
      }
      for (const auto& [z, a, b] : C.coproduct[c]) {
        if (a == C.counit_element || b == C.counit_element) continue;
        splice({a, b}, sign_of(eps) * sign_of(C.degree(a)) * z);
      }
      eps += C.degree(c) + 1;
    }
  }
  return O;
}

// ---- twisting cochains ----

TwistingCochainData tautological_cochain(const Dgc& BA, const Dga& A) {
  if (BA.words.empty()) fail("tautological cochain needs a bar construction");
  TwistingCochainData t{&BA, &A, std::vector<SparseVec>(BA.basis.size())};
  for (std::size_t i = 0; i < BA.basis.size(); ++i) {
    if (BA.words[i].size() == 1) t.values[i] = SparseVec{{BA.words[i][0], Rational(1)}};
  }
  return t;
}

TwistingCochainData compose(const DgaMap& f, const TwistingCochainData& t) {
  if (f.source != t.target) fail("compose: map source is not the cochain target");
  TwistingCochainData out{t.source, f.target, {}};
  for (const auto& v : t.values) out.values.push_back(f(v));
  return out;
}

TwistingCochainData zero_cochain(const Dgc& C, const Dga& A) {
  return {&C, &A, std::vector<SparseVec>(C.basis.size())};
}

Verdict check_twisting_cochain(const TwistingCochainData& t, int cap) {
  const Dgc& C = *t.source;
  const Dga& A = *t.target;
  for (std::size_t c = 0; c < C.basis.size(); ++c) {
    const auto& v = t.values[c];
    for (const auto& [k, z] : v) {
      if (A.degree(k) != C.degree(c) + 1) return {false, "t has wrong degree on " + C.basis.label[c]};
    }
    if (v.count(A.unit)) return {false, "augmentation condition fails on " + C.basis.label[c]};
  }
  if (!t.values[C.counit_element].empty()) return {false, "t does not vanish on the coaugmentation"};
  for (std::size_t c = 0; c < C.basis.size(); ++c) {
    int n = C.degree(c);
    if (n > cap || n + 2 > A.cap() || n + 1 > C.cap()) continue;
    // Dt = d t + t d (t has degree one)
    SparseVec lhs = A.differential(t.values[c]);
    for (const auto& [k, z] : C.diff[c]) {
      for (const auto& [j, y] : t.values[k]) add_to(lhs, j, z * y, A.ring);
    }
    SparseVec rhs;
    for (const auto& [z, a, b] : C.coproduct[c]) {
      if (t.values[a].empty() || t.values[b].empty()) continue;
      for (const auto& [j, y] : A.multiply(t.values[a], t.values[b])) {
        add_to(rhs, j, sign_of(C.degree(a)) * z * y, A.ring);
      }
    }
    if (lhs != rhs) return {false, "Dt != t u t on " + C.basis.label[c]};
  }
  return {true, ""};
}

// ---- complexes ----

bool CochainComplex::bigraded() const {
  for (std::size_t n = 0; n < d.size(); ++n) {
    for (std::size_t r = 0; r < d[n].rows(); ++r) {
      for (const auto& [c, v] : d[n].row(r)) {
        if (filtration[n + 1][r] != filtration[n][c] + 1) return false;
      }
    }
  }
  return true;
}

namespace {

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows(), b.cols());
  std::vector<SparseVec> brows(b.rows());
  for (std::size_t r = 0; r < b.rows(); ++r) brows[r] = b.row(r);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseVec acc;
    for (const auto& [k, v] : a.row(r)) {
      for (const auto& [c, w] : brows[k]) acc[c] += v * w;
    }
    for (const auto& [c, v] : acc) {
      if (v != 0) out.set(r, c, v);
    }
  }
  return out;
}

}  // namespace

std::optional<std::string> CochainComplex::find_d_squared_failure() const {
  for (std::size_t n = 0; n + 1 < d.size(); ++n) {
    ExactMatrix sq = multiply(d[n + 1], d[n]);
    for (std::size_t r = 0; r < sq.rows(); ++r) {
      for (const auto& [c, v] : sq.row(r)) {
        if (ring.normalize(v) != 0) return "d^2 != 0 on " + labels[n][c];
      }
    }
  }
  return std::nullopt;
}

std::size_t field_rank(const ExactMatrix& m, const CoefficientRing& ring) {
  if (m.nonzeros() == 0) return 0;
  if (ring.kind() == CoefficientRing::Kind::rationals && std::min(m.rows(), m.cols()) > 120) {
    return rank_multimodular(m);
  }
  return rank(m, ring);
}

ComplexCohomology complex_cohomology(const CochainComplex& c, int cap, unsigned threads) {
  if (!c.ring.is_field()) fail("field required");
  if (c.top() < cap + 1) fail("complex truncated below cap + 1");
  const bool bi = c.bigraded();
  // rank of d_n on each filtration block
  std::vector<std::map<int, std::size_t>> ranks(static_cast<std::size_t>(cap) + 1);
  std::vector<std::pair<int, int>> jobs;  // (n, p)
  for (int n = 0; n <= cap; ++n) {
    std::set<int> ps;
    for (int p : c.filtration[n]) ps.insert(bi ? p : 0);
    for (int p : ps) jobs.push_back({n, p});
  }
  std::vector<std::size_t> job_rank(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t j) {
    auto [n, p] = jobs[j];
    const ExactMatrix& d = c.d[n];
    if (!bi) {
      job_rank[j] = field_rank(d, c.ring);
      return;
    }
    std::vector<long> col_map(c.filtration[n].size(), -1), row_map(c.filtration[n + 1].size(), -1);
    std::size_t nc = 0, nr = 0;
    for (std::size_t i = 0; i < col_map.size(); ++i) {
      if (c.filtration[n][i] == p) col_map[i] = static_cast<long>(nc++);
    }
    for (std::size_t i = 0; i < row_map.size(); ++i) {
      if (c.filtration[n + 1][i] == p + 1) row_map[i] = static_cast<long>(nr++);
    }
    ExactMatrix sub(nr, nc);
    for (std::size_t r = 0; r < d.rows(); ++r) {
      if (row_map[r] < 0) continue;
      for (const auto& [col, v] : d.row(r)) {
        if (col_map[col] >= 0) sub.set(static_cast<std::size_t>(row_map[r]), static_cast<std::size_t>(col_map[col]), v);
      }
    }
    job_rank[j] = field_rank(sub, c.ring);
  });
  for (std::size_t j = 0; j < jobs.size(); ++j) ranks[jobs[j].first][jobs[j].second] = job_rank[j];
  ComplexCohomology out;
  for (int n = 0; n <= cap; ++n) {
    std::map<int, std::size_t> size;
    for (int p : c.filtration[n]) ++size[bi ? p : 0];
    std::size_t total = 0;
    for (const auto& [p, s] : size) {
      std::size_t in = 0;
      if (n > 0) {
        auto it = ranks[n - 1].find(bi ? p - 1 : 0);
        if (it != ranks[n - 1].end()) in = it->second;
      }
      std::size_t dim = s - ranks[n][p] - in;
      total += dim;
      if (dim > 0) out.by_pq[{p, n - p}] = dim;
    }
    out.dims.push_back(total);
  }
  return out;
}

CochainComplex complex_of(const Dga& A, int cap) {
  cap = std::min(cap, A.cap());
  CochainComplex c;
  c.ring = A.ring;
  std::vector<std::size_t> pos(A.basis.size());
  for (int n = 0; n <= cap; ++n) {
    c.labels.emplace_back();
    c.filtration.emplace_back();
    for (auto id : A.basis.by_degree[n]) {
      pos[id] = c.labels.back().size();
      c.labels.back().push_back(A.basis.label[id]);
      c.filtration.back().push_back(0);
    }
  }
  for (int n = 0; n < cap; ++n) {
    ExactMatrix d(A.basis.count(n + 1), A.basis.count(n));
    for (auto id : A.basis.by_degree[n]) {
      for (const auto& [k, v] : A.diff[id]) d.set(pos[k], pos[id], v);
    }
    c.d.push_back(std::move(d));
  }
  return c;
}

CochainComplex complex_of(const Dgc& C, int cap) {
  cap = std::min(cap, C.cap());
  CochainComplex c;
  c.ring = C.ring;
  std::vector<std::size_t> pos(C.basis.size());
  for (int n = 0; n <= cap; ++n) {
    c.labels.emplace_back();
    c.filtration.emplace_back();
    for (auto id : C.basis.by_degree[n]) {
      pos[id] = c.labels.back().size();
      c.labels.back().push_back(C.basis.label[id]);
      c.filtration.back().push_back(C.words.empty() ? 0 : -static_cast<int>(C.words[id].size()));
    }
  }
  for (int n = 0; n < cap; ++n) {
    ExactMatrix d(C.basis.count(n + 1), C.basis.count(n));
    for (auto id : C.basis.by_degree[n]) {
      for (const auto& [k, v] : C.diff[id]) d.set(pos[k], pos[id], v);
    }
    c.d.push_back(std::move(d));
  }
  return c;
}

CochainComplex twisted_tensor(const std::optional<TwistedSide>& left, const Dgc& C,
                              const std::optional<TwistedSide>& right, int cap) {
  Dga ground = Dga::ground(C.ring);
  TwistingCochainData zero_t = zero_cochain(C, ground);
  const Dga& M = left ? *left->module : ground;
  const Dga& N = right ? *right->module : ground;
  const TwistingCochainData& tl = left ? *left->cochain : zero_t;
  const TwistingCochainData& tr = right ? *right->cochain : zero_t;
  if (tl.source != &C || tr.source != &C) fail("twisting cochain source is not the coalgebra");
  if (tl.target != &M || tr.target != &N) fail("twisting cochain target is not the module algebra");
  if (M.ring != C.ring || N.ring != C.ring) fail("twisted tensor over different rings");
  if (C.cap() < cap || (left && M.cap() < cap) || (right && N.cap() < cap)) {
    fail("twisted tensor inputs truncated below the requested cap");
  }
  for (const auto* t : {&tl, &tr}) {
    Verdict v = check_twisting_cochain(*t, cap);
    if (!v.ok) fail("invalid twisting cochain: " + v.detail);
  }
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
  CochainComplex cx;
  cx.ring = C.ring;
  std::map<Key, std::pair<int, std::size_t>> where;
  std::vector<std::vector<Key>> elems(static_cast<std::size_t>(cap) + 1);
  for (int n = 0; n <= cap; ++n) {
    cx.labels.emplace_back();
    cx.filtration.emplace_back();
    for (int dm = 0; dm <= std::min(n, M.cap()); ++dm) {
      for (int dc = 0; dc <= n - dm; ++dc) {
        int dn = n - dm - dc;
        if (dn > N.cap()) continue;
        for (auto m : M.basis.by_degree[dm]) {
          for (auto c : C.basis.by_degree[dc]) {
            for (auto x : N.basis.by_degree[dn]) {
              Key k{m, c, x};
              where[k] = {n, elems[n].size()};
              elems[n].push_back(k);
              std::string label = C.basis.label[c];
              if (left) label = M.basis.label[m] + " (x) " + label;
              if (right) label += " (x) " + N.basis.label[x];
              cx.labels.back().push_back(label);
              cx.filtration.back().push_back(C.words.empty() ? -dc : -static_cast<int>(C.words[c].size()));
            }
          }
        }
      }
    }
  }
  for (int n = 0; n < cap; ++n) {
    ExactMatrix d(elems[n + 1].size(), elems[n].size());
    for (std::size_t col = 0; col < elems[n].size(); ++col) {
      auto [m, c, x] = elems[n][col];
      const int dm = M.degree(m), dc = C.degree(c);
      SparseVec out;
      auto put = [&](std::size_t m2, std::size_t c2, std::size_t x2, const Rational& v) {
        auto it = where.find({m2, c2, x2});
        if (it == where.end()) fail("twisted tensor differential left the basis");
        add_to(out, it->second.second, v, cx.ring);
      };
      for (const auto& [k, v] : M.diff[m]) put(k, c, x, v);
      for (const auto& [k, v] : C.diff[c]) put(m, k, x, sign_of(dm) * v);
      for (const auto& [k, v] : N.diff[x]) put(m, c, k, sign_of(dm + dc) * v);
      for (const auto& [z, a, b] : C.coproduct[c]) {
        if (!tr.values[b].empty()) {
          for (const auto& [k, v] : N.multiply(tr.values[b], SparseVec{{x, Rational(1)}})) {
            put(m, a, k, -sign_of(dm + C.degree(a)) * z * v);
          }
        }
        if (!tl.values[a].empty()) {
          for (const auto& [k, v] : M.multiply(SparseVec{{m, Rational(1)}}, tl.values[a])) {
            put(k, b, x, sign_of(dm) * z * v);
          }
        }
      }
      for (const auto& [r, v] : out) d.set(r, col, v);
    }
    cx.d.push_back(std::move(d));
  }
  if (auto bad = cx.find_d_squared_failure()) verification_failed("twisted tensor product: " + *bad);
  return cx;
}

// ---- shuffle map ----

std::map<std::vector<std::size_t>, Rational> shuffle(const Dga& A1, const Dga& A2, const Dga& T,
                                                     const std::vector<std::size_t>& w1,
                                                     const std::vector<std::size_t>& w2) {
  std::map<std::vector<std::size_t>, Rational> out;
  const std::size_t p = w1.size(), q = w2.size();
  std::vector<std::size_t> word;
  // choose at each step a letter from w1 or w2; the sign collects (|a|-1)(|b|-1) whenever a
  // letter of w1 is placed after a letter of w2 that originally followed it
  std::function<void(std::size_t, std::size_t, long)> rec = [&](std::size_t i, std::size_t j, long sgn) {
    if (i == p && j == q) {
      out[word] += sign_of(sgn);
      return;
    }
    if (i < p) {
      long add = 0;
      for (std::size_t k = 0; k < j; ++k) add += (A1.degree(w1[i]) - 1L) * (A2.degree(w2[k]) - 1L);
      word.push_back(T.tensor_index.at({w1[i], A2.unit}));
      rec(i + 1, j, sgn + add);
      word.pop_back();
    }
    if (j < q) {
      word.push_back(T.tensor_index.at({A1.unit, w2[j]}));
      rec(i, j + 1, sgn);
      word.pop_back();
    }
  };
  rec(0, 0, 0);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

ShuffleCheck verify_shuffle(const Dga& A1, const Dga& A2, int cap) {
  ShuffleCheck res;
  Dgc B1 = bar(A1, cap), B2 = bar(A2, cap);
  Dga T = Dga::tensor(A1, A2, cap + 1);
  Dgc BT = bar(T, cap);
  std::map<std::vector<std::size_t>, std::size_t> bt_index;
  for (std::size_t i = 0; i < BT.words.size(); ++i) bt_index[BT.words[i]] = i;
  using WordVec = std::map<std::vector<std::size_t>, Rational>;
  auto nabla = [&](const SparseVec& x, const SparseVec& y) {
    WordVec out;
    for (const auto& [i, a] : x) {
      for (const auto& [j, b] : y) {
        for (const auto& [w, c] : shuffle(A1, A2, T, B1.words[i], B2.words[j])) out[w] += a * b * c;
      }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  };
  for (std::size_t i = 0; i < B1.basis.size(); ++i) {
    for (std::size_t j = 0; j < B2.basis.size(); ++j) {
      int deg = B1.degree(i) + B2.degree(j);
      if (deg > cap) continue;
      ++res.terms_checked;
      SparseVec ei{{i, 1}}, ej{{j, 1}};
      WordVec img = nabla(ei, ej);
      if (deg + 1 <= cap && res.chain_map.ok) {
        WordVec lhs;
        for (const auto& [w, c] : img) {
          for (const auto& [k, v] : BT.diff[bt_index.at(w)]) lhs[BT.words[k]] += c * v;
        }
        std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
        WordVec rhs = nabla(B1.diff[i], ej);
        for (const auto& [w, c] : nabla(ei, B2.diff[j])) rhs[w] += sign_of(B1.degree(i)) * c;
        std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
        if (lhs != rhs) res.chain_map = {false, "d nabla != nabla d on " + B1.basis.label[i] + " (x) " + B2.basis.label[j]};
      }
      if (res.coalgebra_map.ok) {
        using PairVec = std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, Rational>;
        PairVec lhs, rhs;
        for (const auto& [w, c] : img) {
          for (std::size_t k = 0; k <= w.size(); ++k) {
            lhs[{std::vector<std::size_t>(w.begin(), w.begin() + static_cast<long>(k)),
                 std::vector<std::size_t>(w.begin() + static_cast<long>(k), w.end())}] += c;
          }
        }
        for (const auto& [c1, x1, x2] : B1.coproduct[i]) {
          for (const auto& [c2, y1, y2] : B2.coproduct[j]) {
            Rational s = sign_of(static_cast<long>(B1.degree(x2)) * B2.degree(y1)) * c1 * c2;
            WordVec left = nabla(SparseVec{{x1, 1}}, SparseVec{{y1, 1}});
            WordVec right = nabla(SparseVec{{x2, 1}}, SparseVec{{y2, 1}});
            for (const auto& [wl, a] : left) {
              for (const auto& [wr, b] : right) rhs[{wl, wr}] += s * a * b;
            }
          }
        }
        std::erase_if(lhs, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
        if (lhs != rhs) res.coalgebra_map = {false, "coproduct not preserved on " + B1.basis.label[i] + " (x) " + B2.basis.label[j]};
      }
    }
  }
  return res;
}

// ---- counit ----

Verdict check_counit(const Dga& A, int cap) {
  if (auto bad = A.validate()) return {false, "input algebra invalid: " + *bad};
  Dgc BA = bar(A, cap);
  if (auto bad = BA.validate()) return {false, "bar construction invalid: " + *bad};
  Dga O = cobar(BA, cap + 1);
  // counit: s[a] -> a, longer bar words -> 0, extended multiplicatively
  std::vector<SparseVec> f(O.basis.size());
  for (std::size_t x = 0; x < O.basis.size(); ++x) {
    SparseVec acc{{A.unit, Rational(1)}};
    for (auto c : O.cobar_words[x]) {
      const auto& w = BA.words[c];
      if (w.size() != 1) {
        acc.clear();
        break;
      }
      acc = A.multiply(acc, SparseVec{{w[0], Rational(1)}});
    }
    f[x] = acc;
  }
  // chain map check
  for (std::size_t x = 0; x < O.basis.size(); ++x) {
    if (O.degree(x) + 1 > cap) continue;
    SparseVec lhs;
    for (const auto& [k, v] : O.diff[x]) {
      for (const auto& [j, y] : f[k]) add_to(lhs, j, v * y, A.ring);
    }
    if (lhs != A.differential(f[x])) return {false, "counit is not a chain map on " + O.basis.label[x]};
  }
  for (int n = 0; n <= cap; ++n) {
    // cocycles of the cobar in degree n
    std::vector<std::size_t> ids = O.basis.by_degree[n];
    ExactMatrix dn(O.basis.count(n + 1), ids.size());
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t r = 0; r < O.basis.by_degree[n + 1].size(); ++r) row_of[O.basis.by_degree[n + 1][r]] = r;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      for (const auto& [k, v] : O.diff[ids[j]]) dn.set(row_of.at(k), j, v);
    }
    RankKernel rk = rank_and_kernel(dn, O.ring);
    std::size_t boundaries = 0;
    if (n > 0) {
      ExactMatrix dprev(ids.size(), O.basis.count(n - 1));
      std::map<std::size_t, std::size_t> r2;
      for (std::size_t r = 0; r < ids.size(); ++r) r2[ids[r]] = r;
      const auto& prev = O.basis.by_degree[n - 1];
      for (std::size_t j = 0; j < prev.size(); ++j) {
        for (const auto& [k, v] : O.diff[prev[j]]) dprev.set(r2.at(k), j, v);
      }
      boundaries = rank(dprev, O.ring);
    }
    std::size_t h_cobar = rk.kernel.size() - boundaries;
    // H^n(A) and the image of the cobar cocycles
    Subspace bA(A.ring);
    std::size_t a_cocycles = 0, h_a = 0;
    if (n <= A.cap()) {
      if (n > 0) {
        for (auto id : A.basis.by_degree[n - 1]) bA.insert(A.diff[id]);
      }
      ExactMatrix da(A.basis.count(n + 1), A.basis.count(n));
      if (n + 1 <= A.cap()) {
        std::map<std::size_t, std::size_t> ra;
        for (std::size_t r = 0; r < A.basis.by_degree[n + 1].size(); ++r) ra[A.basis.by_degree[n + 1][r]] = r;
        for (std::size_t j = 0; j < A.basis.by_degree[n].size(); ++j) {
          for (const auto& [k, v] : A.diff[A.basis.by_degree[n][j]]) da.set(ra.at(k), j, v);
        }
      }
      a_cocycles = A.basis.count(n) - rank(da, A.ring);
      h_a = a_cocycles - bA.dimension();
    }
    Subspace image = bA;
    for (const auto& kv : rk.kernel) {
      SparseVec z;
      for (std::size_t j = 0; j < kv.size(); ++j) {
        if (kv[j] == 0) continue;
        for (const auto& [k, v] : f[ids[j]]) add_to(z, k, kv[j] * v, A.ring);
      }
      image.insert(z);
    }
    std::size_t induced_rank = image.dimension() - bA.dimension();
    if (h_cobar != h_a || induced_rank != h_a) {
      return {false, "degree " + std::to_string(n) + ": H(cobar bar A) = " + std::to_string(h_cobar) +
                         ", H(A) = " + std::to_string(h_a) + ", induced rank " + std::to_string(induced_rank)};
    }
  }
  return {true, ""};
}

}  // namespace hcoh
