#include "hcoh/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "hcoh/error.hpp"

namespace hcoh {

namespace {

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Integer pow2(int n) {
  Integer r = 1;
  r <<= n;
  return r;
}

std::string factor_name(const GroupFactor& f) {
  switch (f.family) {
    case Family::U: return "U(" + std::to_string(f.n) + ")";
    case Family::SU: return "SU(" + std::to_string(f.n) + ")";
    case Family::Sp: return "Sp(" + std::to_string(f.n) + ")";
    case Family::SO_odd: return "SO(" + std::to_string(2 * f.n + 1) + ")";
    case Family::SO_even: return "SO(" + std::to_string(2 * f.n) + ")";
    case Family::Torus: return "T" + std::to_string(f.n);
  }
  return "?";
}

// e_j of the given elements
GradedElement elementary(const std::vector<GradedElement>& xs, int j, const FreeCga& R) {
  std::vector<GradedElement> e(static_cast<std::size_t>(j) + 1, R.zero());
  e[0] = R.one();
  for (const auto& x : xs) {
    for (int k = j; k >= 1; --k) e[k] += R.multiply(e[k - 1], x);
  }
  return e[j];
}

bool is_orthogonal(Family f) { return f == Family::SO_odd || f == Family::SO_even; }

}  // namespace

GroupDatum group_factor(Family f, int n) {
  GroupDatum g;
  GroupFactor gf{f, n};
  auto poly = [&](std::string name, int deg) { g.classifying.push_back({std::move(name), deg, Sort::polynomial}); };
  switch (f) {
    case Family::U:
      if (n < 1) fail("U(n) needs n >= 1");
      g.rank = n;
      g.torus_coordinates = n;
      g.dimension = static_cast<long>(n) * n;
      g.weyl_order = factorial(n);
      for (int j = 1; j <= n; ++j) poly("c" + std::to_string(j), 2 * j);
      break;
    case Family::SU:
      if (n < 2) fail("SU(n) needs n >= 2");
      g.rank = n - 1;
      g.torus_coordinates = n;
      g.dimension = static_cast<long>(n) * n - 1;
      g.weyl_order = factorial(n);
      for (int j = 2; j <= n; ++j) poly("c" + std::to_string(j), 2 * j);
      break;
    case Family::Sp:
      if (n < 1) fail("Sp(n) needs n >= 1");
      g.rank = n;
      g.torus_coordinates = n;
      g.dimension = static_cast<long>(n) * (2 * n + 1);
      g.weyl_order = pow2(n) * factorial(n);
      for (int j = 1; j <= n; ++j) poly("q" + std::to_string(j), 4 * j);
      break;
    case Family::SO_odd:
      if (n < 1) fail("SO(2n+1) needs n >= 1");
      g.rank = n;
      g.torus_coordinates = n;
      g.dimension = static_cast<long>(2 * n + 1) * (2 * n) / 2;
      g.weyl_order = pow2(n) * factorial(n);
      for (int j = 1; j <= n; ++j) poly("p" + std::to_string(j), 4 * j);
      break;
    case Family::SO_even:
      if (n < 1) fail("SO(2n) needs n >= 1");
      g.rank = n;
      g.torus_coordinates = n;
      g.dimension = static_cast<long>(2 * n) * (2 * n - 1) / 2;
      g.weyl_order = pow2(n - 1) * factorial(n);
      for (int j = 1; j < n; ++j) poly("p" + std::to_string(j), 4 * j);
      poly("e", 2 * n);
      break;
    case Family::Torus:
      if (n < 1) fail("Torus(r) needs r >= 1");
      g.rank = n;
      g.torus_coordinates = n;
      g.dimension = n;
      g.weyl_order = 1;
      if (n == 1) {
        poly("s", 2);
      } else {
        for (int j = 1; j <= n; ++j) poly("t" + std::to_string(j), 2);
      }
      break;
  }
  g.name = factor_name(gf);
  g.factors = {gf};
  g.coordinate_blocks = {{0, g.torus_coordinates}};
  g.generator_factor.assign(g.classifying.size(), 0);
  for (const auto& c : g.classifying) g.exterior_degrees.push_back(c.degree - 1);
  return g;
}

GroupDatum product(const std::vector<GroupDatum>& parts) {
  GroupDatum g;
  g.weyl_order = 1;
  std::vector<std::string> names;
  std::size_t nfactors = 0;
  for (const auto& p : parts) nfactors += p.factors.size();
  std::size_t fi = 0;
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < p.factors.size(); ++k, ++fi) {
      GroupDatum one = group_factor(p.factors[k].family, p.factors[k].n);
      int offset = g.torus_coordinates;
      g.factors.push_back(p.factors[k]);
      g.rank += one.rank;
      g.torus_coordinates += one.torus_coordinates;
      g.dimension += one.dimension;
      g.weyl_order *= one.weyl_order;
      g.coordinate_blocks.push_back({offset, offset + one.torus_coordinates});
      for (auto c : one.classifying) {
        if (nfactors > 1) c.name += "_" + std::to_string(fi + 1);
        g.classifying.push_back(c);
        g.generator_factor.push_back(fi);
        g.exterior_degrees.push_back(c.degree - 1);
      }
      names.push_back(one.name);
    }
  }
  if (names.empty()) {
    g.name = "1";
  } else {
    for (std::size_t i = 0; i < names.size(); ++i) g.name += (i ? "x" : "") + names[i];
  }
  return g;
}

GroupDatum lookup(std::string_view spec) {
  std::string s;
  for (char ch : spec) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) fail("empty group name");
  if (s == "1" || s == "trivial") return product({});
  // split products on 'x' outside parentheses
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == 'x' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() > 1) {
    std::vector<GroupDatum> gs;
    for (const auto& p : parts) gs.push_back(lookup(p));
    return product(gs);
  }
  auto arg = [&](std::size_t prefix) -> int {
    std::string body = s.substr(prefix);
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos) {
      fail("cannot parse group '" + s + "'");
    }
    return std::stoi(body);
  };
  if (s.starts_with("SU")) return group_factor(Family::SU, arg(2));
  if (s.starts_with("Sp")) return group_factor(Family::Sp, arg(2));
  if (s.starts_with("SO")) {
    int m = arg(2);
    if (m < 2) fail("SO(m) needs m >= 2");
    return m % 2 ? group_factor(Family::SO_odd, m / 2) : group_factor(Family::SO_even, m / 2);
  }
  if (s.starts_with("U")) return group_factor(Family::U, arg(1));
  if (s.starts_with("Torus")) return group_factor(Family::Torus, arg(5));
  if (s.starts_with("T")) return group_factor(Family::Torus, arg(1));
  fail("unknown group '" + s + "'");
}

void check_admissible(const GroupDatum& g, const CoefficientRing& ring) {
  for (const auto& f : g.factors) {
    if (is_orthogonal(f.family) && !ring.two_is_unit()) {
      refuse("catalog restricted to char != 2 for orthogonal groups (" + g.name + " over " + ring.name() + ")");
    }
  }
}

FreeCga GroupDatum::classifying_ring(const CoefficientRing& ring) const { return FreeCga(ring, classifying); }

FreeCga GroupDatum::torus_ring(const CoefficientRing& ring) const {
  std::vector<GeneratorSpec> gens;
  for (int i = 1; i <= torus_coordinates; ++i) gens.push_back({"t" + std::to_string(i), 2, Sort::polynomial});
  return FreeCga(ring, gens);
}

std::vector<GradedElement> GroupDatum::torus_expressions(const CoefficientRing& ring) const {
  FreeCga T = torus_ring(ring);
  std::vector<GradedElement> out;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    auto [lo, hi] = coordinate_blocks[fi];
    std::vector<GradedElement> t, t2;
    for (int i = lo; i < hi; ++i) {
      t.push_back(T.generator(static_cast<std::size_t>(i)));
      t2.push_back(T.multiply(t.back(), t.back()));
    }
    const int n = factors[fi].n;
    switch (factors[fi].family) {
      case Family::U:
        for (int j = 1; j <= n; ++j) out.push_back(elementary(t, j, T));
        break;
      case Family::SU:
        for (int j = 2; j <= n; ++j) out.push_back(elementary(t, j, T));
        break;
      case Family::Sp:
      case Family::SO_odd:
        for (int j = 1; j <= n; ++j) out.push_back(elementary(t2, j, T));
        break;
      case Family::SO_even:
        for (int j = 1; j < n; ++j) out.push_back(elementary(t2, j, T));
        out.push_back(elementary(t, n, T));
        break;
      case Family::Torus:
        for (auto& x : t) out.push_back(x);
        break;
    }
  }
  return out;
}

namespace {

// Permutes / negates torus coordinates.
GradedElement act(const FreeCga& T, const GradedElement& f, const std::vector<std::pair<std::size_t, int>>& perm) {
  std::vector<GradedElement> imgs;
  for (std::size_t i = 0; i < T.size(); ++i) imgs.push_back(Rational(perm[i].second) * T.generator(perm[i].first));
  return AlgebraMap(T, T, imgs)(f);
}

}  // namespace

bool weyl_invariant(const GroupDatum& g, const CoefficientRing& ring) {
  FreeCga T = g.torus_ring(ring);
  auto exprs = g.torus_expressions(ring);
  const auto N = static_cast<std::size_t>(g.torus_coordinates);
  std::vector<std::vector<std::pair<std::size_t, int>>> moves;
  auto identity = [&] {
    std::vector<std::pair<std::size_t, int>> p;
    for (std::size_t i = 0; i < N; ++i) p.push_back({i, 1});
    return p;
  };
  for (std::size_t fi = 0; fi < g.factors.size(); ++fi) {
    auto [lo, hi] = g.coordinate_blocks[fi];
    Family f = g.factors[fi].family;
    if (f == Family::Torus) continue;
    for (int i = lo; i + 1 < hi; ++i) {
      auto p = identity();
      std::swap(p[i], p[i + 1]);
      moves.push_back(p);
    }
    if (f == Family::Sp || f == Family::SO_odd) {
      auto p = identity();
      p[lo].second = -1;
      moves.push_back(p);
    }
    if (f == Family::SO_even && hi - lo >= 2) {
      auto p = identity();
      p[lo].second = -1;
      p[lo + 1].second = -1;
      moves.push_back(p);
    }
  }
  for (const auto& e : exprs) {
    for (const auto& mv : moves) {
      if (!(act(T, e, mv) == e)) return false;
    }
  }
  return true;
}

// ---- rewriting ----

namespace {

[[noreturn]] void not_inclusion() { fail("weight matrix does not define a subgroup inclusion"); }

struct Rewriter {
  const GroupDatum& g;
  const CoefficientRing& ring;
  FreeCga T;
  FreeCga ext;  // classifying generators plus c1 placeholders for SU factors
  std::vector<GradedElement> ext_exprs;
  std::vector<bool> placeholder;
  std::vector<std::size_t> ext_to_class;  // index into g.classifying, or npos
  std::map<std::pair<std::size_t, unsigned>, GradedElement> power_cache;

  static FreeCga build_ext(const GroupDatum& g, const CoefficientRing& ring) {
    std::vector<GeneratorSpec> gens;
    std::size_t k = 0;
    for (std::size_t fi = 0; fi < g.factors.size(); ++fi) {
      if (g.factors[fi].family == Family::SU) gens.push_back({"_c1_" + std::to_string(fi), 2, Sort::polynomial});
      while (k < g.classifying.size() && g.generator_factor[k] == fi) gens.push_back(g.classifying[k++]);
    }
    return FreeCga(ring, gens);
  }

  Rewriter(const GroupDatum& gd, const CoefficientRing& r)
      : g(gd), ring(r), T(gd.torus_ring(r)), ext(build_ext(gd, r)) {
    auto exprs = g.torus_expressions(ring);
    std::size_t k = 0;
    for (std::size_t fi = 0; fi < g.factors.size(); ++fi) {
      if (g.factors[fi].family == Family::SU) {
        auto [lo, hi] = g.coordinate_blocks[fi];
        GradedElement e1 = T.zero();
        for (int i = lo; i < hi; ++i) e1 += T.generator(static_cast<std::size_t>(i));
        ext_exprs.push_back(e1);
        placeholder.push_back(true);
        ext_to_class.push_back(static_cast<std::size_t>(-1));
      }
      while (k < g.classifying.size() && g.generator_factor[k] == fi) {
        ext_exprs.push_back(exprs[k]);
        placeholder.push_back(false);
        ext_to_class.push_back(k);
        ++k;
      }
    }
  }

  const GradedElement& power(std::size_t i, unsigned e) {
    auto key = std::make_pair(i, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    GradedElement v = e == 0 ? T.one() : T.multiply(power(i, e - 1), ext_exprs[i]);
    return power_cache.emplace(key, std::move(v)).first->second;
  }

  // Exponents of the generator monomial whose torus expression leads with lead.
  std::vector<std::uint32_t> decompose(const Monomial& lead) {
    std::vector<std::uint32_t> out(ext.size(), 0);
    std::size_t gi = 0;  // running index into ext generators
    for (std::size_t fi = 0; fi < g.factors.size(); ++fi) {
      auto [lo, hi] = g.coordinate_blocks[fi];
      std::vector<long> lam;
      for (int i = lo; i < hi; ++i) lam.push_back(lead.exp[static_cast<std::size_t>(i)]);
      lam.push_back(0);
      const int n = hi - lo;
      auto dominant = [&](const std::vector<long>& v) {
        for (int i = 0; i + 1 < n; ++i) {
          if (v[i] < v[i + 1]) return false;
        }
        return true;
      };
      switch (g.factors[fi].family) {
        case Family::U:
        case Family::SU:
          if (!dominant(lam)) not_inclusion();
          for (int j = 0; j < n; ++j) out[gi + j] = static_cast<std::uint32_t>(lam[j] - lam[j + 1]);
          gi += n;  // SU: placeholder c1 then c2..cn
          break;
        case Family::Sp:
        case Family::SO_odd: {
          for (int j = 0; j < n; ++j) {
            if (lam[j] % 2) not_inclusion();
            lam[j] /= 2;
          }
          if (!dominant(lam)) not_inclusion();
          for (int j = 0; j < n; ++j) out[gi + j] = static_cast<std::uint32_t>(lam[j] - lam[j + 1]);
          gi += n;
          break;
        }
        case Family::SO_even: {
          long eps = lam[0] % 2;
          for (int j = 0; j < n; ++j) {
            if (lam[j] % 2 != eps) not_inclusion();
            lam[j] = (lam[j] - eps) / 2;
          }
          if (!dominant(lam)) not_inclusion();
          for (int j = 0; j + 1 < n; ++j) out[gi + j] = static_cast<std::uint32_t>(lam[j] - lam[j + 1]);
          out[gi + n - 1] = static_cast<std::uint32_t>(eps + 2 * lam[n - 1]);
          gi += n;
          break;
        }
        case Family::Torus:
          for (int j = 0; j < n; ++j) out[gi + j] = static_cast<std::uint32_t>(lam[j]);
          gi += n;
          break;
      }
    }
    return out;
  }

  GradedElement run(GradedElement p) {
    p = project_su(p);
    FreeCga K = g.classifying_ring(ring);
    GradedElement out = K.zero();
    std::size_t guard = 0;
    while (!p.is_zero()) {
      if (++guard > 1000000) not_inclusion();
      const auto& [lead, c] = *p.terms().begin();
      Rational coef = c;
      auto exps = decompose(lead);
      GradedElement value = T.one();
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i]) value = T.multiply(value, power(i, exps[i]));
      }
      if (value.terms().begin()->first.exp != lead.exp || value.terms().begin()->second != 1) {
        verification_failed("rewrite leading term mismatch");
      }
      p -= coef * value;
      bool drop = false;
      Monomial km = K.unit_monomial();
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (placeholder[i]) {
          if (exps[i]) drop = true;
        } else {
          km.exp[ext_to_class[i]] = exps[i];
        }
      }
      if (!drop) out += K.monomial(km, coef);
    }
    return out;
  }

  // On SU blocks, replace ti by ti - (sum t)/m when the polynomial is not symmetric there.
  GradedElement project_su(const GradedElement& p) {
    std::vector<GradedElement> imgs;
    bool any = false;
    for (std::size_t i = 0; i < T.size(); ++i) imgs.push_back(T.generator(i));
    for (std::size_t fi = 0; fi < g.factors.size(); ++fi) {
      if (g.factors[fi].family != Family::SU) continue;
      auto [lo, hi] = g.coordinate_blocks[fi];
      bool symmetric = true;
      for (int i = lo; i + 1 < hi && symmetric; ++i) {
        std::vector<GradedElement> sw;
        for (std::size_t k = 0; k < T.size(); ++k) sw.push_back(T.generator(k));
        std::swap(sw[i], sw[i + 1]);
        symmetric = AlgebraMap(T, T, sw)(p) == p;
      }
      if (symmetric) continue;
      any = true;
      GradedElement sum = T.zero();
      for (int i = lo; i < hi; ++i) sum += T.generator(static_cast<std::size_t>(i));
      Rational inv = ring.inverse(Rational(hi - lo));
      for (int i = lo; i < hi; ++i) imgs[i] = T.generator(static_cast<std::size_t>(i)) - inv * sum;
    }
    return any ? AlgebraMap(T, T, imgs)(p) : p;
  }
};

}  // namespace

GradedElement rewrite_invariant(const GroupDatum& g, const GradedElement& torus_poly, const CoefficientRing& ring) {
  Rewriter rw(g, ring);
  return rw.run(torus_poly);
}

EmbeddingSpec identity_embedding(const GroupDatum& g) {
  EmbeddingSpec e{g, g, {}};
  for (int i = 0; i < g.torus_coordinates; ++i) {
    std::vector<long> row(static_cast<std::size_t>(g.torus_coordinates), 0);
    row[i] = 1;
    e.weights.push_back(row);
  }
  return e;
}

namespace {

void check_shape(const EmbeddingSpec& e) {
  if (static_cast<int>(e.weights.size()) != e.target.torus_coordinates) {
    fail("weight matrix needs " + std::to_string(e.target.torus_coordinates) + " rows (target torus coordinates)");
  }
  for (const auto& row : e.weights) {
    if (static_cast<int>(row.size()) != e.source.torus_coordinates) {
      fail("weight matrix needs " + std::to_string(e.source.torus_coordinates) + " columns (source torus coordinates)");
    }
  }
}

// The induced coordinate sum on each SU block of the target must vanish on the source torus.
void check_su_constraints(const EmbeddingSpec& e) {
  for (std::size_t fi = 0; fi < e.target.factors.size(); ++fi) {
    if (e.target.factors[fi].family != Family::SU) continue;
    auto [lo, hi] = e.target.coordinate_blocks[fi];
    std::vector<long> sum(static_cast<std::size_t>(e.source.torus_coordinates), 0);
    for (int i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += e.weights[i][j];
    }
    // allowed: constant on each SU block of the source, zero elsewhere
    std::vector<bool> covered(sum.size(), false);
    for (std::size_t sf = 0; sf < e.source.factors.size(); ++sf) {
      if (e.source.factors[sf].family != Family::SU) continue;
      auto [slo, shi] = e.source.coordinate_blocks[sf];
      for (int j = slo; j < shi; ++j) {
        covered[j] = true;
        if (sum[j] != sum[slo]) not_inclusion();
      }
    }
    for (std::size_t j = 0; j < sum.size(); ++j) {
      if (!covered[j] && sum[j] != 0) not_inclusion();
    }
  }
}

std::vector<std::vector<long>> column(const std::vector<long>& w) {
  std::vector<std::vector<long>> m;
  for (long x : w) m.push_back({x});
  return m;
}

}  // namespace

EmbeddingSpec named_embedding(std::string_view spec_view, const GroupDatum& target) {
  std::string spec(spec_view);
  const int N = target.torus_coordinates;
  if (spec == "diag-circle") {
    return {group_factor(Family::Torus, 1), target, column(std::vector<long>(static_cast<std::size_t>(N), 1))};
  }
  if (spec == "rc") {
    if (N < 2) fail("reflected circle needs at least two torus coordinates");
    std::vector<long> w(static_cast<std::size_t>(N), 0);
    w[0] = 1;
    w[1] = -1;
    return {group_factor(Family::Torus, 1), target, column(w)};
  }
  if (spec.starts_with("circle:")) {
    std::vector<long> w;
    std::string body = spec.substr(7);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        w.push_back(std::stol(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        fail("bad circle weight '" + item + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(w.size()) != N) fail("circle needs " + std::to_string(N) + " weights");
    return {group_factor(Family::Torus, 1), target, column(w)};
  }
  GroupDatum source = lookup(spec);
  EmbeddingSpec e{source, target, {}};
  if (source.trivial()) {
    e.weights.assign(static_cast<std::size_t>(N), {});
  } else if (source.torus_coordinates == N) {
    e.weights = identity_embedding(target).weights;
  } else if (source.factors.size() == 1 && source.factors[0].family == Family::Torus &&
             source.torus_coordinates == N - 1 && target.factors.size() == 1 &&
             target.factors[0].family == Family::SU) {
    // maximal torus of SU(n): last coordinate is minus the sum of the others
    for (int i = 0; i + 1 < N; ++i) {
      std::vector<long> row(static_cast<std::size_t>(N - 1), 0);
      row[i] = 1;
      e.weights.push_back(row);
    }
    e.weights.push_back(std::vector<long>(static_cast<std::size_t>(N - 1), -1));
  } else {
    fail("no default inclusion of " + source.name + " in " + target.name + "; give explicit weights");
  }
  return e;
}

std::vector<GradedElement> restriction_map(const EmbeddingSpec& e, const CoefficientRing& ring) {
  check_shape(e);
  check_su_constraints(e);
  check_admissible(e.source, ring);
  check_admissible(e.target, ring);
  FreeCga TG = e.target.torus_ring(ring);
  FreeCga TK = e.source.torus_ring(ring);
  std::vector<GradedElement> imgs;
  for (const auto& row : e.weights) {
    GradedElement x = TK.zero();
    for (std::size_t j = 0; j < row.size(); ++j) x += Rational(row[j]) * TK.generator(j);
    imgs.push_back(x);
  }
  AlgebraMap sub(TG, TK, imgs);
  Rewriter rw(e.source, ring);
  std::vector<GradedElement> out;
  for (const auto& expr : e.target.torus_expressions(ring)) out.push_back(rw.run(sub(expr)));
  return out;
}

AlgebraMap restriction_algebra_map(const EmbeddingSpec& e, const CoefficientRing& ring) {
  return AlgebraMap(e.target.classifying_ring(ring), e.source.classifying_ring(ring), restriction_map(e, ring));
}

Integer weyl_euler_characteristic(const GroupDatum& G, const GroupDatum& H, const GroupDatum& K) {
  int r = H.rank + K.rank;
  if (r > G.rank) fail("action cannot be free");
  if (r < G.rank) return 0;
  Integer denom = H.weyl_order * K.weyl_order;
  if (G.weyl_order % denom != 0) verification_failed("Weyl orders do not divide");
  return G.weyl_order / denom;
}

}  // namespace hcoh
