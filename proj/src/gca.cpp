#include "hcoh/gca.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "hcoh/error.hpp"

namespace hcoh {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t fingerprint_of(const detail::CgaData& d) {
  std::uint64_t h = std::hash<std::string>{}(d.ring.name());
  for (const auto& g : d.gens) {
    h = mix(h, std::hash<std::string>{}(g.name));
    h = mix(h, static_cast<std::uint64_t>(g.degree));
    h = mix(h, g.sort == Sort::exterior ? 1 : 2);
  }
  return h;
}

void check_same(const std::shared_ptr<const detail::CgaData>& a,
                const std::shared_ptr<const detail::CgaData>& b) {
  if (a && b && a->fingerprint != b->fingerprint) fail("algebra mismatch");
}

}  // namespace

// ---- GradedElement ----

void GradedElement::adopt(const GradedElement& o) {
  check_same(alg_, o.alg_);
  if (!alg_) alg_ = o.alg_;
}

std::optional<int> GradedElement::degree() const {
  if (terms_.empty() || !alg_) return std::nullopt;
  std::optional<int> deg;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < m.exp.size(); ++i) d += static_cast<int>(m.exp[i]) * alg_->gens[i].degree;
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

Rational GradedElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void GradedElement::add_term(const Monomial& m, const Rational& c) {
  Rational v = coefficient(m) + c;
  if (alg_) v = alg_->ring.normalize(v);
  if (v == 0) {
    terms_.erase(m);
  } else {
    terms_[m] = v;
  }
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  adopt(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
  adopt(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedElement operator*(const Rational& s, const GradedElement& a) {
  GradedElement out;
  out.alg_ = a.alg_;
  for (const auto& [m, c] : a.terms_) out.add_term(m, s * c);
  return out;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b) {
  check_same(a.alg_, b.alg_);
  if (a.is_zero() || b.is_zero()) {
    GradedElement z;
    z.alg_ = a.alg_ ? a.alg_ : b.alg_;
    return z;
  }
  return FreeCga(a.alg_).multiply(a, b);
}

// ---- FreeCga ----

FreeCga::FreeCga(CoefficientRing ring, std::vector<GeneratorSpec> gens) {
  auto d = std::make_shared<detail::CgaData>();
  d->ring = ring;
  std::set<std::string> names;
  for (const auto& g : gens) {
    if (g.name.empty() || !names.insert(g.name).second) fail("generator names must be unique and nonempty: '" + g.name + "'");
    if (g.degree <= 0) fail("generator " + g.name + " needs positive degree");
    bool odd = g.degree % 2 != 0;
    if (ring.characteristic() != 2) {
      if (odd != (g.sort == Sort::exterior)) {
        fail("generator " + g.name + ": outside characteristic 2, exterior generators are exactly the odd ones");
      }
    } else if (!odd && g.sort == Sort::exterior) {
      fail("generator " + g.name + ": even exterior generators are not supported");
    }
  }
  d->gens = std::move(gens);
  d->fingerprint = fingerprint_of(*d);
  d_ = std::move(d);
}

std::optional<std::size_t> FreeCga::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < d_->gens.size(); ++i) {
    if (d_->gens[i].name == name) return i;
  }
  return std::nullopt;
}

int FreeCga::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.exp.size(); ++i) d += static_cast<int>(m.exp[i]) * d_->gens[i].degree;
  return d;
}

Monomial FreeCga::generator_monomial(std::size_t i) const {
  Monomial m = unit_monomial();
  m.exp.at(i) = 1;
  return m;
}

GradedElement FreeCga::zero() const {
  GradedElement z;
  z.alg_ = d_;
  return z;
}

GradedElement FreeCga::constant(const Rational& c) const { return monomial(unit_monomial(), c); }

GradedElement FreeCga::generator(std::size_t i) const { return monomial(generator_monomial(i)); }

GradedElement FreeCga::generator(const std::string& name) const {
  auto i = index_of(name);
  if (!i) fail("unknown generator '" + name + "'");
  return generator(*i);
}

GradedElement FreeCga::monomial(const Monomial& m, const Rational& c) const {
  if (m.exp.size() != size()) fail("monomial arity mismatch");
  GradedElement x = zero();
  x.add_term(m, c);
  return x;
}

std::pair<int, Monomial> FreeCga::multiply_monomials(const Monomial& a, const Monomial& b) const {
  const auto& g = d_->gens;
  Monomial out = a;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.exp[i] += b.exp[i];
    if (g[i].sort == Sort::exterior && out.exp[i] > 1) return {0, out};
  }
  // b's odd factors move left past a's odd factors with larger index.
  unsigned parity = 0;
  unsigned odd_after = 0;  // odd-degree count of a strictly after position j
  for (std::size_t jj = g.size(); jj-- > 0;) {
    if (g[jj].degree % 2 != 0) parity += odd_after * b.exp[jj];
    if (g[jj].degree % 2 != 0) odd_after += a.exp[jj];
  }
  int sign = (parity % 2 == 0) ? 1 : -1;
  if (d_->ring.characteristic() == 2) sign = 1;
  return {sign, out};
}

GradedElement FreeCga::multiply(const GradedElement& a, const GradedElement& b) const {
  check_same(a.alg_, d_);
  check_same(b.alg_, d_);
  GradedElement out = zero();
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      auto [s, m] = multiply_monomials(ma, mb);
      if (s != 0) out.add_term(m, s * ca * cb);
    }
  }
  return out;
}

GradedElement FreeCga::power(const GradedElement& a, unsigned k) const {
  GradedElement out = one();
  for (unsigned i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

std::vector<Monomial> FreeCga::basis_of_degree(int n) const {
  std::vector<Monomial> out;
  if (n < 0) return out;
  const auto& g = d_->gens;
  Monomial cur = unit_monomial();
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
    if (i == g.size()) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    int maxe = rest / g[i].degree;
    if (g[i].sort == Sort::exterior) maxe = std::min(maxe, 1);
    for (int e = maxe; e >= 0; --e) {
      cur.exp[i] = static_cast<std::uint32_t>(e);
      rec(i + 1, rest - e * g[i].degree);
    }
    cur.exp[i] = 0;
  };
  rec(0, n);
  return out;
}

std::vector<std::size_t> FreeCga::hilbert_series(int cap) const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= cap; ++n) out.push_back(basis_of_degree(n).size());
  return out;
}

std::vector<Integer> FreeCga::hilbert_series_product_formula(int cap) const {
  std::vector<Integer> s(static_cast<std::size_t>(cap) + 1, 0);
  if (cap < 0) return s;
  s[0] = 1;
  for (const auto& g : d_->gens) {
    if (g.sort == Sort::exterior) {
      for (int n = cap; n >= g.degree; --n) s[n] += s[n - g.degree];
    } else {
      for (int n = g.degree; n <= cap; ++n) s[n] += s[n - g.degree];
    }
  }
  return s;
}

// ---- text ----

std::string FreeCga::format(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < m.exp.size(); ++i) {
    if (m.exp[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += d_->gens[i].name;
    if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
  }
  return out.empty() ? "1" : out;
}

std::string FreeCga::format(const GradedElement& x) const {
  if (x.is_zero()) return "0";
  // highest degree first, canonical order inside a degree
  std::vector<std::pair<Monomial, Rational>> terms(x.terms().begin(), x.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const auto& a, const auto& b) { return degree(a.first) > degree(b.first); });
  std::string out;
  for (const auto& [m, c] : terms) {
    Rational a = abs(c);
    bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mon = format(m);
    if (mon == "1") {
      out += to_string(a);
    } else if (a == 1) {
      out += mon;
    } else {
      out += to_string(a) + "*" + mon;
    }
  }
  return out;
}

GradedElement FreeCga::parse(const std::string& text) const {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto bad = [&](const std::string& why) {
    fail("cannot parse '" + text + "' at column " + std::to_string(pos) + ": " + why);
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  };
  GradedElement out = zero();
  skip();
  if (text.substr(pos) == "0") return out;
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) bad("empty expression");
      break;
    }
    Rational sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
      skip();
    } else if (!first) {
      bad("expected + or -");
    }
    first = false;
    GradedElement term = constant(sign);
    bool any = false;
    while (true) {
      skip();
      if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
      if (any) {
        if (text[pos] == '*') {
          ++pos;
          skip();
        }
      }
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::string num = read_int();
        if (pos < text.size() && text[pos] == '/') {
          ++pos;
          std::string den = read_int();
          if (den.empty()) bad("missing denominator");
          num += "/" + den;
        }
        Rational c(num);
        c.canonicalize();
        term = c * term;
      } else if (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_' || text[pos] == '\'')) {
          ++pos;
        }
        std::string name = text.substr(start, pos - start);
        auto idx = index_of(name);
        if (!idx) bad("unknown generator '" + name + "'");
        unsigned e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          std::string ex = read_int();
          if (ex.empty()) bad("missing exponent");
          e = static_cast<unsigned>(std::stoul(ex));
        }
        term = multiply(term, power(generator(*idx), e));
      } else if (pos < text.size() && text[pos] == '(') {
        bad("parentheses are not supported");
      } else {
        bad("unexpected character");
      }
      any = true;
    }
    if (!any) bad("dangling sign");
    out += term;
  }
  return out;
}

// ---- AlgebraMap ----

AlgebraMap::AlgebraMap(FreeCga source, FreeCga target, std::vector<GradedElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.size()) fail("algebra map needs one image per generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    auto& img = images_[i];
    if (img.is_zero()) {
      img = target_.zero();
      continue;
    }
    if (img.algebra_fingerprint() != target_.fingerprint()) fail("algebra mismatch");
    const auto& g = source_.generators()[i];
    if (img.degree() != g.degree) fail("degree mismatch for image of " + g.name);
    if (g.sort == Sort::exterior && !target_.multiply(img, img).is_zero()) {
      fail("not a CGA map: image of " + g.name + " has nonzero square");
    }
  }
}

GradedElement AlgebraMap::apply(const Monomial& m) const {
  GradedElement out = target_.one();
  for (std::size_t i = 0; i < m.exp.size(); ++i) {
    for (std::uint32_t e = 0; e < m.exp[i]; ++e) out = target_.multiply(out, images_[i]);
    if (out.is_zero()) break;
  }
  return out;
}

GradedElement AlgebraMap::operator()(const GradedElement& x) const {
  if (!x.is_zero() && x.algebra_fingerprint() != source_.fingerprint()) fail("algebra mismatch");
  GradedElement out = target_.zero();
  for (const auto& [m, c] : x.terms()) out += c * apply(m);
  return out;
}

AlgebraMap substitute(const FreeCga& source, const FreeCga& target,
                      const std::map<std::string, GradedElement>& images) {
  std::vector<GradedElement> imgs;
  for (const auto& g : source.generators()) {
    auto it = images.find(g.name);
    if (it == images.end()) fail("no image given for generator " + g.name);
    imgs.push_back(it->second);
  }
  for (const auto& [name, img] : images) {
    if (!source.index_of(name)) fail("image given for unknown generator " + name);
  }
  return AlgebraMap(source, target, std::move(imgs));
}

}  // namespace hcoh
