#include "hcoh/serialize.hpp"

#include <fstream>
#include <sstream>

#include "hcoh/error.hpp"
#include "hcoh/space.hpp"

namespace hcoh {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(path + ": " + e.what());
  }
}

Rational parse_rational(const Json& v) {
  try {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
      Rational r(v.get<std::string>());
      r.canonicalize();
      return r;
    }
  } catch (const std::invalid_argument&) {
  }
  fail("coefficient must be an integer or a rational string, got " + v.dump());
}

Json to_json(const TorTable& t) {
  Json j;
  j["cap"] = t.cap;
  Json e = Json::array();
  for (const auto& [pq, d] : t.entries) e.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
  j["entries"] = e;
  Json tot = Json::array();
  for (int n = 0; n <= t.cap; ++n) tot.push_back(t.total(n));
  j["total_dims"] = tot;
  return j;
}

std::string render_grid(const TorTable& t) {
  if (t.entries.empty()) return "(empty)\n";
  int pmin = t.min_column(), qmax = 0;
  for (const auto& [pq, d] : t.entries) qmax = std::max(qmax, pq.second);
  std::ostringstream out;
  const int w = 4;
  for (int q = qmax; q >= 0; --q) {
    bool any = false;
    for (int p = pmin; p <= 0; ++p) any = any || t.entries.count({p, q});
    if (!any) continue;
    std::string label = "q=" + std::to_string(q);
    out << label << std::string(label.size() < 6 ? 6 - label.size() : 1, ' ');
    for (int p = pmin; p <= 0; ++p) {
      auto it = t.entries.find({p, q});
      std::string cell = it == t.entries.end() ? "." : std::to_string(it->second);
      out << std::string(static_cast<std::size_t>(w) - std::min<std::size_t>(cell.size(), w - 1), ' ') << cell;
    }
    out << "\n";
  }
  out << "      ";
  for (int p = pmin; p <= 0; ++p) {
    std::string cell = std::to_string(p);
    out << std::string(static_cast<std::size_t>(w) - std::min<std::size_t>(cell.size(), w - 1), ' ') << cell;
  }
  out << "   (p)\n";
  return out.str();
}

Json to_json(const RingPresentation& p) {
  Json j;
  Json g = Json::array();
  for (const auto& s : p.algebra.generators()) g.push_back({s.name, s.degree});
  j["generators"] = g;
  j["relations"] = p.relation_strings();
  j["relation_degrees"] = p.relation_degrees();
  j["cap"] = p.cap;
  j["complete"] = p.complete;
  return j;
}

std::string render(const RingPresentation& p) {
  std::string s = "k[";
  const auto& g = p.algebra.generators();
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? ", " : "") + g[i].name;
  s += "]";
  auto rel = p.relation_strings();
  if (!rel.empty()) {
    s += " / (";
    for (std::size_t i = 0; i < rel.size(); ++i) s += (i ? ", " : "") + rel[i];
    s += ")";
  }
  s += p.complete ? "" : "  [relations through degree " + std::to_string(p.cap) + " only]";
  return s;
}

Json to_json(const std::vector<IntegralSlice>& z) {
  Json arr = Json::array();
  for (const auto& s : z) {
    Json t = Json::array();
    for (const auto& x : s.torsion) t.push_back(x.get_str());
    arr.push_back({{"degree", s.degree}, {"free_rank", s.free_rank}, {"torsion", t}});
  }
  return arr;
}

std::vector<GeneratorSpec> generators_from_json(const Json& j) {
  std::vector<GeneratorSpec> out;
  if (!j.is_array()) fail("generators must be an array");
  for (const auto& g : j) {
    if (!g.contains("name") || !g.contains("degree")) fail("generator needs name and degree");
    std::string sort = g.value("sort", g["degree"].get<int>() % 2 ? "exterior" : "polynomial");
    if (sort != "exterior" && sort != "polynomial") fail("generator sort must be exterior or polynomial");
    out.push_back({g["name"].get<std::string>(), g["degree"].get<int>(),
                   sort == "exterior" ? Sort::exterior : Sort::polynomial});
  }
  return out;
}

FreeCga free_algebra_from_json(const Json& j, const CoefficientRing& ring) {
  return FreeCga(ring, generators_from_json(j.at("generators")));
}

namespace {

CoefficientRing ring_of(const Json& j) { return CoefficientRing::parse(j.value("ring", std::string("Q"))); }

void require_schema(const Json& j, const char* schema) {
  if (j.contains("schema") && j["schema"] != schema) {
    fail("expected schema " + std::string(schema) + ", got " + j["schema"].dump());
  }
}

}  // namespace

Dga dga_from_json(const Json& j, int cap) {
  try {
    require_schema(j, kDgaSchema);
    const CoefficientRing ring = ring_of(j);
    if (j.contains("free")) {
      const Json& f = j["free"];
      FreeCga A = free_algebra_from_json(f, ring);
      std::map<std::string, GradedElement> d;
      if (f.contains("differential")) {
        for (const auto& [name, text] : f["differential"].items()) d[name] = A.parse(text.get<std::string>());
      }
      int c = j.contains("truncate") ? std::min(cap, j["truncate"].get<int>()) : cap;
      return Dga::from_cdga(Cdga::from_named(A, d), c);
    }
    Dga a;
    a.ring = ring;
    a.basis.cap = std::min(cap, j.at("cap").get<int>());
    std::map<std::string, std::size_t> id;
    for (const auto& b : j.at("basis")) {
      int deg = b.at("degree").get<int>();
      std::string label = b.at("label").get<std::string>();
      if (id.count(label)) fail("duplicate basis label " + label);
      if (deg > a.basis.cap) continue;
      id[label] = a.basis.add(label, deg);
    }
    auto lookup_id = [&](const Json& l) {
      auto it = id.find(l.get<std::string>());
      if (it == id.end()) fail("unknown basis label " + l.dump());
      return it->second;
    };
    auto vec = [&](const Json& terms) {
      SparseVec v;
      for (const auto& t : terms) {
        if (!id.count(t.at(1).get<std::string>())) continue;  // above the cap
        Rational c = ring.normalize(parse_rational(t.at(0)));
        if (c != 0) v[lookup_id(t.at(1))] = c;
      }
      return v;
    };
    a.unit = lookup_id(j.at("unit"));
    a.diff.assign(a.basis.size(), SparseVec{});
    for (const auto& p : j.value("products", Json::array())) {
      std::string l = p.at(0).get<std::string>(), r = p.at(1).get<std::string>();
      if (!id.count(l) || !id.count(r)) continue;
      auto x = lookup_id(p.at(0)), y = lookup_id(p.at(1));
      if (x == a.unit || y == a.unit) fail("products with the unit are implicit");
      if (a.degree(x) + a.degree(y) > a.cap()) continue;
      SparseVec v = vec(p.at(2));
      for (const auto& [k, c] : v) {
        if (a.degree(k) != a.degree(x) + a.degree(y)) fail("product of " + l + " and " + r + " has the wrong degree");
      }
      if (!v.empty()) a.products[{x, y}] = v;
    }
    for (const auto& d : j.value("differential", Json::array())) {
      if (!id.count(d.at(0).get<std::string>())) continue;
      auto x = lookup_id(d.at(0));
      if (a.degree(x) + 1 > a.cap()) continue;
      a.diff[x] = vec(d.at(1));
      for (const auto& [k, c] : a.diff[x]) {
        if (a.degree(k) != a.degree(x) + 1) fail("differential of " + a.basis.label[x] + " has the wrong degree");
      }
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("dga schema violation: ") + e.what());
  }
}

Json to_json(const Dga& a) {
  Json j;
  j["schema"] = kDgaSchema;
  j["ring"] = a.ring.name();
  j["cap"] = a.cap();
  Json basis = Json::array();
  for (std::size_t i = 0; i < a.basis.size(); ++i) basis.push_back({{"label", a.basis.label[i]}, {"degree", a.basis.degree[i]}});
  j["basis"] = basis;
  j["unit"] = a.basis.label[a.unit];
  auto terms = [&](const SparseVec& v) {
    Json t = Json::array();
    for (const auto& [k, c] : v) t.push_back({to_string(c), a.basis.label[k]});
    return t;
  };
  Json prods = Json::array();
  for (const auto& [xy, v] : a.products) prods.push_back({a.basis.label[xy.first], a.basis.label[xy.second], terms(v)});
  j["products"] = prods;
  Json diff = Json::array();
  for (std::size_t i = 0; i < a.diff.size(); ++i) {
    if (!a.diff[i].empty()) diff.push_back({a.basis.label[i], terms(a.diff[i])});
  }
  j["differential"] = diff;
  return j;
}

Json to_json(const Dgc& c, bool with_coproduct) {
  Json j;
  j["ring"] = c.ring.name();
  j["cap"] = c.cap();
  Json basis = Json::array();
  for (std::size_t i = 0; i < c.basis.size(); ++i) basis.push_back({{"label", c.basis.label[i]}, {"degree", c.basis.degree[i]}});
  j["basis"] = basis;
  Json diff = Json::array();
  for (std::size_t i = 0; i < c.diff.size(); ++i) {
    if (c.diff[i].empty()) continue;
    Json t = Json::array();
    for (const auto& [k, v] : c.diff[i]) t.push_back({to_string(v), c.basis.label[k]});
    diff.push_back({c.basis.label[i], t});
  }
  j["differential"] = diff;
  if (with_coproduct) {
    Json cop = Json::array();
    for (std::size_t i = 0; i < c.coproduct.size(); ++i) {
      for (const auto& [v, a, b] : c.coproduct[i]) cop.push_back({c.basis.label[i], to_string(v), c.basis.label[a], c.basis.label[b]});
    }
    j["coproduct"] = cop;
  }
  return j;
}

TorSpan span_from_json(const Json& j) {
  try {
    require_schema(j, kSpanSchema);
    if (j.contains("G")) {
      SpaceConfig c;
      c.G = j["G"].get<std::string>();
      c.K = j.value("K", std::string("1"));
      c.H = j.value("H", std::string());
      c.embed_K = j.value("embed_K", std::string());
      c.embed_H = j.value("embed_H", std::string());
      c.coeff = j.value("ring", std::string("Q"));
      c.flip_sign = j.value("flip_sign", false);
      return span_from_recipe(recipe_from_config(c));
    }
    const CoefficientRing ring = ring_of(j);
    FreeCga base = free_algebra_from_json(j.at("base"), ring);
    FreeCga right = free_algebra_from_json(j.at("right"), ring);
    auto map_of = [&](const FreeCga& target, const Json& images) {
      std::map<std::string, GradedElement> m;
      for (const auto& [name, text] : images.items()) m[name] = target.parse(text.get<std::string>());
      for (const auto& g : base.generators()) {
        if (!m.count(g.name)) fail("structure map misses base generator " + g.name);
      }
      return substitute(base, target, m);
    };
    TorSpan s{base, std::nullopt, right, std::nullopt, map_of(right, j.at("right_map")), j.value("flip_sign", false)};
    if (j.contains("left")) {
      s.left = free_algebra_from_json(j["left"], ring);
      s.left_map = map_of(*s.left, j.at("left_map"));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("span schema violation: ") + e.what());
  }
}

namespace {

// "v", "s0(v)", "s1(s0(v))"
FormalSimplex parse_face(const FiniteSimplicialSet& X, const std::string& text) {
  if (text.size() > 3 && text[0] == 's' && std::isdigit(static_cast<unsigned char>(text[1]))) {
    auto open = text.find('(');
    if (open != std::string::npos && text.back() == ')') {
      int i = std::stoi(text.substr(1, open - 1));
      return X.degeneracy(parse_face(X, text.substr(open + 1, text.size() - open - 2)), i);
    }
  }
  for (int n = 0; n <= X.dim(); ++n) {
    if (auto id = X.find(n, text)) return X.nondegenerate(n, *id);
  }
  fail("unknown simplex " + text);
}

}  // namespace

SimplicialInput simplicial_builtin(const std::string& name) {
  if (name == "boundary-tetrahedron") return {boundary_tetrahedron(), {}};
  if (name == "rp2") {
    SimplicialInput in{rp2_model(), {}};
    in.cochains["x"] = NormalizedCochain{1, {Rational(1)}};
    return in;
  }
  if (name.rfind("random:", 0) == 0) return {random_simplicial_set(std::stoull(name.substr(7))), {}};
  fail("unknown builtin simplicial set " + name);
}

SimplicialInput simplicial_from_json(const Json& j) {
  try {
    require_schema(j, kSsetSchema);
    SimplicialInput in{FiniteSimplicialSet(j.value("name", std::string())), {}};
    auto& X = in.space;
    for (const auto& s : j.at("simplices")) {
      int n = s.at("dim").get<int>();
      std::string label = s.at("label").get<std::string>();
      if (n == 0) {
        X.add_vertex(label);
        continue;
      }
      std::vector<FormalSimplex> faces;
      for (const auto& f : s.at("faces")) faces.push_back(parse_face(X, f.get<std::string>()));
      X.add_simplex(n, faces, label);
    }
    const Json cochains = j.value("cochains", Json::object());
    for (const auto& [name, c] : cochains.items()) {
      int deg = c.at("degree").get<int>();
      NormalizedCochain x = zero_cochain(X, deg);
      for (const auto& [label, v] : c.at("values").items()) {
        auto id = X.find(deg, label);
        if (!id) fail("cochain " + name + " names unknown simplex " + label);
        x.values[*id] = parse_rational(v);
      }
      in.cochains[name] = x;
    }
    return in;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("simplicial set schema violation: ") + e.what());
  }
}

Json to_json(const FiniteSimplicialSet& X, const NormalizedCochain& c) {
  Json v = Json::object();
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (c.values[i] != 0) v[X.label(c.degree, i)] = to_string(c.values[i]);
  }
  return {{"degree", c.degree}, {"values", v}};
}

}  // namespace hcoh
