#include "hcoh/simplicial.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "hcoh/error.hpp"

namespace hcoh {

namespace {

std::vector<int> identity_map(int n) {
  std::vector<int> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[i] = i;
  return v;
}

void add_scaled(NormalizedCochain& dst, const NormalizedCochain& src, const Rational& s, const CoefficientRing& ring) {
  if (src.values.empty()) return;
  if (dst.values.empty()) dst.values.assign(src.values.size(), Rational(0));
  for (std::size_t i = 0; i < src.values.size(); ++i) dst.values[i] = ring.normalize(dst.values[i] + s * src.values[i]);
}

}  // namespace

// ---- simplicial sets ----

std::optional<std::size_t> FiniteSimplicialSet::find(int n, const std::string& label) const {
  if (n < 0 || n > dim()) return std::nullopt;
  for (std::size_t i = 0; i < labels_[n].size(); ++i) {
    if (labels_[n][i] == label) return i;
  }
  return std::nullopt;
}

std::size_t FiniteSimplicialSet::add_vertex(std::string label) {
  if (faces_.empty()) {
    faces_.emplace_back();
    labels_.emplace_back();
  }
  faces_[0].emplace_back();
  if (label.empty()) label = "v" + std::to_string(faces_[0].size() - 1);
  labels_[0].push_back(std::move(label));
  return faces_[0].size() - 1;
}

std::size_t FiniteSimplicialSet::add_simplex(int n, std::vector<FormalSimplex> faces, std::string label) {
  if (n == 0) return add_vertex(std::move(label));
  if (n < 0 || n > dim() + 1) fail("simplices must be added dimension by dimension");
  if (faces.size() != static_cast<std::size_t>(n) + 1) fail("an n-simplex needs n + 1 faces");
  for (const auto& f : faces) {
    if (f.dim() != n - 1 || f.base_dim > n - 1 || f.base_dim < 0 || f.id >= count(f.base_dim)) {
      fail("face of the wrong dimension or unknown simplex");
    }
    if (f.eta.front() != 0 || f.eta.back() != f.base_dim) fail("face degeneracy is not surjective");
    for (std::size_t k = 1; k < f.eta.size(); ++k) {
      if (f.eta[k] < f.eta[k - 1] || f.eta[k] > f.eta[k - 1] + 1) fail("face degeneracy is not surjective");
    }
  }
  for (int j = 1; j <= n && n >= 2; ++j) {
    for (int i = 0; i < j; ++i) {
      if (!(face(faces[j], i) == face(faces[i], j - 1))) {
        fail("simplicial identity d" + std::to_string(i) + " d" + std::to_string(j) + " fails on a new " +
             std::to_string(n) + "-simplex");
      }
    }
  }
  if (n > dim()) {
    faces_.emplace_back();
    labels_.emplace_back();
  }
  faces_[n].push_back(std::move(faces));
  if (label.empty()) label = "s" + std::to_string(n) + "_" + std::to_string(faces_[n].size() - 1);
  labels_[n].push_back(std::move(label));
  return faces_[n].size() - 1;
}

FormalSimplex FiniteSimplicialSet::nondegenerate(int n, std::size_t id) const {
  if (id >= count(n)) fail("unknown simplex");
  return {n, id, identity_map(n)};
}

FormalSimplex FiniteSimplicialSet::degeneracy(const FormalSimplex& x, int i) const {
  if (i < 0 || i > x.dim()) fail("degeneracy index out of range");
  FormalSimplex y{x.base_dim, x.id, {}};
  for (int k = 0; k <= x.dim() + 1; ++k) y.eta.push_back(x.eta[k <= i ? k : k - 1]);
  return y;
}

FormalSimplex FiniteSimplicialSet::face(const FormalSimplex& x, int j) const {
  const int n = x.dim();
  if (n < 1 || j < 0 || j > n) fail("face index out of range");
  std::vector<int> c;
  for (int k = 0; k <= n; ++k) {
    if (k != j) c.push_back(x.eta[k]);
  }
  const int v = x.eta[j];
  bool hit = std::find(c.begin(), c.end(), v) != c.end();
  if (hit) return {x.base_dim, x.id, c};
  for (auto& e : c) e -= e > v ? 1 : 0;
  const FormalSimplex& f = faces_[x.base_dim][x.id][v];
  FormalSimplex out{f.base_dim, f.id, {}};
  for (int e : c) out.eta.push_back(f.eta[e]);
  return out;
}

FormalSimplex FiniteSimplicialSet::restrict(const FormalSimplex& x, const std::vector<int>& v) const {
  FormalSimplex y = x;
  for (int k = x.dim(); k >= 0; --k) {
    if (!std::binary_search(v.begin(), v.end(), k)) y = face(y, k);
  }
  return y;
}

std::optional<std::string> FiniteSimplicialSet::find_identity_failure() const {
  for (int n = 2; n <= dim(); ++n) {
    for (std::size_t id = 0; id < count(n); ++id) {
      FormalSimplex x = nondegenerate(n, id);
      for (int j = 1; j <= n; ++j) {
        for (int i = 0; i < j; ++i) {
          if (!(face(face(x, j), i) == face(face(x, i), j - 1))) return labels_[n][id];
        }
      }
    }
  }
  return std::nullopt;
}

FiniteSimplicialSet boundary_tetrahedron() {
  FiniteSimplicialSet X("boundary-tetrahedron");
  for (int v = 0; v < 4; ++v) X.add_vertex(std::to_string(v));
  std::map<std::vector<int>, std::size_t> ids;
  for (int v = 0; v < 4; ++v) ids[{v}] = static_cast<std::size_t>(v);
  auto faces_of = [&](const std::vector<int>& s) {
    std::vector<FormalSimplex> f;
    for (std::size_t j = 0; j < s.size(); ++j) {
      std::vector<int> t = s;
      t.erase(t.begin() + static_cast<long>(j));
      f.push_back(X.nondegenerate(static_cast<int>(t.size()) - 1, ids.at(t)));
    }
    return f;
  };
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) ids[{a, b}] = X.add_simplex(1, faces_of({a, b}), std::to_string(a) + std::to_string(b));
  }
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      for (int c = b + 1; c < 4; ++c) {
        ids[{a, b, c}] = X.add_simplex(2, faces_of({a, b, c}), std::to_string(a) + std::to_string(b) + std::to_string(c));
      }
    }
  }
  return X;
}

FiniteSimplicialSet rp2_model() {
  FiniteSimplicialSet X("rp2");
  auto v = X.add_vertex("v");
  FormalSimplex fv = X.nondegenerate(0, v);
  auto e = X.add_simplex(1, {fv, fv}, "e");
  FormalSimplex fe = X.nondegenerate(1, e);
  X.add_simplex(2, {fe, X.degeneracy(fv, 0), fe}, "sigma");
  return X;
}

FiniteSimplicialSet random_simplicial_set(std::uint64_t seed, int vertices, int tetrahedra) {
  if (vertices < 4 || tetrahedra < 1) fail("random simplicial set needs at least 4 vertices and one tetrahedron");
  std::mt19937_64 rng(seed);
  std::set<std::vector<int>> simplices;
  for (int t = 0; t < tetrahedra; ++t) {
    std::vector<int> all(static_cast<std::size_t>(vertices));
    for (int i = 0; i < vertices; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> s(all.begin(), all.begin() + 4);
    std::sort(s.begin(), s.end());
    for (int mask = 1; mask < 16; ++mask) {
      std::vector<int> f;
      for (int k = 0; k < 4; ++k) {
        if (mask & (1 << k)) f.push_back(s[k]);
      }
      simplices.insert(f);
    }
  }
  for (int v = 0; v < vertices; ++v) simplices.insert({v});
  FiniteSimplicialSet X("random-" + std::to_string(seed));
  std::map<std::vector<int>, std::size_t> ids;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& s : simplices) {
      if (s.size() != n) continue;
      std::string label;
      for (int x : s) label += (label.empty() ? "" : ",") + std::to_string(x);
      if (n == 1) {
        ids[s] = X.add_vertex(label);
        continue;
      }
      std::vector<FormalSimplex> f;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<int> t = s;
        t.erase(t.begin() + static_cast<long>(j));
        f.push_back(X.nondegenerate(static_cast<int>(n) - 2, ids.at(t)));
      }
      ids[s] = X.add_simplex(static_cast<int>(n) - 1, f, label);
    }
  }
  return X;
}

// ---- cochains ----

NormalizedCochain zero_cochain(const FiniteSimplicialSet& X, int degree) {
  return {degree, std::vector<Rational>(X.count(degree), Rational(0))};
}

Rational evaluate(const NormalizedCochain& c, const FormalSimplex& s) {
  if (!s.nondegenerate() || s.base_dim != c.degree || s.id >= c.values.size()) return 0;
  return c.values[s.id];
}

NormalizedCochain coboundary(const FiniteSimplicialSet& X, const NormalizedCochain& c, const CoefficientRing& ring) {
  NormalizedCochain out = zero_cochain(X, c.degree + 1);
  for (std::size_t id = 0; id < out.values.size(); ++id) {
    FormalSimplex s = X.nondegenerate(c.degree + 1, id);
    Rational acc = 0;
    for (int j = 0; j <= c.degree + 1; ++j) acc += (j % 2 ? -1 : 1) * evaluate(c, X.face(s, j));
    out.values[id] = ring.normalize(acc);
  }
  return out;
}

// ---- surjections ----

int Surjection::arity() const { return seq.empty() ? 0 : *std::max_element(seq.begin(), seq.end()); }

void Surjection::validate() const {
  if (seq.empty()) fail("empty surjection");
  std::set<int> seen(seq.begin(), seq.end());
  if (*seen.begin() < 1 || static_cast<int>(seen.size()) != arity()) fail("sequence " + str() + " is not a surjection");
  for (std::size_t k = 1; k < seq.size(); ++k) {
    if (seq[k] == seq[k - 1]) fail("sequence " + str() + " has equal consecutive entries");
  }
}

std::string Surjection::str() const {
  std::string s = "(";
  for (std::size_t k = 0; k < seq.size(); ++k) s += (k ? "," : "") + std::to_string(seq[k]);
  return s + ")";
}

Surjection cup_surjection(int i) {
  if (i < 0) fail("cup-i needs i >= 0");
  Surjection u;
  for (int k = 0; k < i + 2; ++k) u.seq.push_back(k % 2 + 1);
  return u;
}

Surjection E_surjection(int ell) {
  if (ell < 1) fail("E_l needs l >= 1");
  Surjection u{{1}};
  for (int k = 2; k <= ell + 1; ++k) {
    u.seq.push_back(k);
    u.seq.push_back(1);
  }
  return u;
}

Surjection F_surjection(int p, int q) {
  if (p < 1 || q < 1) fail("F_{p,q} needs p, q >= 1");
  Surjection u;
  for (int k = 1; k <= q; ++k) {
    u.seq.push_back(1);
    u.seq.push_back(p + k);
  }
  for (int k = 1; k <= p; ++k) {
    u.seq.push_back(k);
    u.seq.push_back(p + q);
  }
  return u;
}

int interval_cut_sign(const Surjection& u, const std::vector<int>& cuts) {
  const std::size_t m = u.seq.size();
  std::vector<long> deg(m);
  std::vector<bool> inner(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) inner[j] = inner[j] || u.seq[k] == u.seq[j];
    deg[j] = cuts[j + 1] - cuts[j] + (inner[j] ? 1 : 0);
  }
  long e = 0;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      if (u.seq[j] > u.seq[k]) e += deg[j] * deg[k];
    }
    if (inner[j]) e += cuts[j + 1] + static_cast<long>(j);
  }
  return e % 2 == 0 ? 1 : -1;
}

NormalizedCochain interval_cut(const FiniteSimplicialSet& X, const Surjection& u,
                               const std::vector<NormalizedCochain>& c, const CoefficientRing& ring) {
  u.validate();
  const int r = u.arity();
  const int m = static_cast<int>(u.seq.size());
  if (static_cast<int>(c.size()) != r) fail("arity/degree mismatch");
  int N = -(m - r);
  for (const auto& x : c) N += x.degree;
  NormalizedCochain out{N, {}};
  if (N < 0 || N > X.dim()) return out;
  out.values.assign(X.count(N), Rational(0));
  std::vector<int> cuts(static_cast<std::size_t>(m) + 1, 0);
  cuts[m] = N;
  for (std::size_t id = 0; id < out.values.size(); ++id) {
    FormalSimplex sigma = X.nondegenerate(N, id);
    Rational acc = 0;
    // enumerate 0 <= p_1 <= ... <= p_{m-1} <= N
    std::function<void(int)> rec = [&](int k) {
      if (k == m) {
        std::vector<std::vector<int>> verts(static_cast<std::size_t>(r));
        for (int j = 0; j < m; ++j) {
          auto& v = verts[u.seq[j] - 1];
          for (int x = cuts[j]; x <= cuts[j + 1]; ++x) v.push_back(x);
        }
        Rational prod = 1;
        for (int s = 0; s < r && prod != 0; ++s) {
          const auto& v = verts[s];
          if (static_cast<int>(v.size()) != c[s].degree + 1) {
            prod = 0;
            break;
          }
          for (std::size_t t = 1; t < v.size(); ++t) {
            if (v[t] <= v[t - 1]) prod = 0;  // repeated vertex: degenerate
          }
          if (prod != 0) prod *= evaluate(c[s], X.restrict(sigma, v));
        }
        if (prod != 0) acc += interval_cut_sign(u, cuts) * prod;
        return;
      }
      for (int p = cuts[k - 1]; p <= N; ++p) {
        cuts[k] = p;
        rec(k + 1);
      }
    };
    rec(1);
    out.values[id] = ring.normalize(acc);
  }
  return out;
}

NormalizedCochain cup_i(const FiniteSimplicialSet& X, int i, const NormalizedCochain& a, const NormalizedCochain& b,
                        const CoefficientRing& ring) {
  NormalizedCochain r = interval_cut(X, cup_surjection(i), {a, b}, ring);
  if ((i * (i + 1) / 2) % 2 != 0) {
    for (auto& v : r.values) v = ring.normalize(-v);
  }
  return r;
}

RelationVerdict steenrod_relation_check(const FiniteSimplicialSet& X, int i, const CoefficientRing& ring,
                                        std::size_t trials, std::uint64_t seed, const CupFamily& cup) {
  if (i < 0) fail("cup-i needs i >= 0");
  CupFamily mu = cup ? cup : CupFamily([&](int k, const NormalizedCochain& a, const NormalizedCochain& b) {
    return cup_i(X, k, a, b, ring);
  });
  std::mt19937_64 rng(seed);
  const int D = X.dim();
  std::vector<std::pair<int, int>> degrees;
  for (int da = 0; da <= D; ++da) {
    for (int db = 0; db <= D; ++db) {
      if (da + db - i - 1 >= 0 && da + db - i <= D) degrees.push_back({da, db});
    }
  }
  RelationVerdict v;
  if (degrees.empty()) return v;
  auto random_cochain = [&](int d) {
    NormalizedCochain c = zero_cochain(X, d);
    for (auto& x : c.values) {
      long r = static_cast<long>(rng() % 5) - 2;
      x = ring.normalize(Rational(r));
    }
    return c;
  };
  auto fit = [&](NormalizedCochain c, int d) {
    if (c.values.empty()) c = zero_cochain(X, d);
    return c;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    auto [da, db] = degrees[rng() % degrees.size()];
    NormalizedCochain a = random_cochain(da), b = random_cochain(db);
    const int dr = da + db - i;
    NormalizedCochain lhs = fit(coboundary(X, fit(mu(i + 1, a, b), dr - 1), ring), dr);
    const Rational s = (i + 1) % 2 ? -1 : 1;
    NormalizedCochain t1 = fit(mu(i + 1, coboundary(X, a, ring), b), dr);
    NormalizedCochain t2 = fit(mu(i + 1, a, coboundary(X, b, ring)), dr);
    add_scaled(lhs, t1, -s, ring);
    add_scaled(lhs, t2, -s * (da % 2 ? -1 : 1), ring);
    NormalizedCochain rhs = fit(mu(i, a, b), dr);
    NormalizedCochain swapped = fit(mu(i, b, a), dr);
    add_scaled(rhs, swapped, -Rational(i % 2 ? -1 : 1) * ((da * db) % 2 ? -1 : 1), ring);
    ++v.trials;
    if (lhs.values != rhs.values) {
      v.ok = false;
      std::string w = "degrees (" + std::to_string(da) + "," + std::to_string(db) + ") a=[";
      for (std::size_t k = 0; k < a.values.size(); ++k) w += (k ? "," : "") + to_string(a.values[k]);
      w += "] b=[";
      for (std::size_t k = 0; k < b.values.size(); ++k) w += (k ? "," : "") + to_string(b.values[k]);
      v.witness = w + "]";
      return v;
    }
  }
  return v;
}

NormalizedCochain hga_operation(const FiniteSimplicialSet& X, HgaKind kind, int p, int q,
                                const std::vector<NormalizedCochain>& c, const CoefficientRing& ring) {
  Surjection u = kind == HgaKind::E ? E_surjection(p) : F_surjection(p, q);
  if (static_cast<int>(c.size()) != u.arity()) fail("arity mismatch");
  return interval_cut(X, u, c, ring);
}

bool is_cocycle(const FiniteSimplicialSet& X, const NormalizedCochain& c, const CoefficientRing& ring) {
  const auto d = coboundary(X, c, ring);
  return std::all_of(d.values.begin(), d.values.end(), [](const Rational& x) { return x == 0; });
}

bool cohomologous(const FiniteSimplicialSet& X, const NormalizedCochain& a, const NormalizedCochain& b,
                  const CoefficientRing& ring) {
  if (!ring.is_field()) fail("field required");
  if (a.degree != b.degree) return false;
  Subspace im(ring);
  if (a.degree > 0) {
    for (std::size_t id = 0; id < X.count(a.degree - 1); ++id) {
      NormalizedCochain e = zero_cochain(X, a.degree - 1);
      e.values[id] = 1;
      auto d = coboundary(X, e, ring);
      SparseVec v;
      for (std::size_t k = 0; k < d.values.size(); ++k) {
        if (d.values[k] != 0) v[k] = d.values[k];
      }
      im.insert(v);
    }
  }
  SparseVec diff;
  for (std::size_t k = 0; k < X.count(a.degree); ++k) {
    Rational x = ring.normalize(evaluate(a, X.nondegenerate(a.degree, k)) - evaluate(b, X.nondegenerate(a.degree, k)));
    if (x != 0) diff[k] = x;
  }
  return im.contains(diff);
}

}  // namespace hcoh
