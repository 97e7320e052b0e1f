#include "hcoh/space.hpp"

#include <algorithm>
#include <sstream>

#include "hcoh/error.hpp"
#include "hcoh/presentation.hpp"
#include "hcoh/tor.hpp"

#ifndef HCOH_VERSION
#define HCOH_VERSION "dev"
#endif

namespace hcoh {

const char* engine_version() { return HCOH_VERSION; }

std::vector<std::vector<long>> parse_weight_matrix(const std::string& text) {
  std::vector<std::vector<long>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<long> r;
    std::stringstream cs(row);
    std::string item;
    while (std::getline(cs, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
      try {
        std::size_t used = 0;
        r.push_back(std::stol(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        fail("bad weight '" + item + "' in matrix " + text);
      }
    }
    rows.push_back(r);
  }
  if (rows.empty()) fail("empty weight matrix");
  for (const auto& r : rows) {
    if (r.size() != rows[0].size()) fail("weight matrix rows differ in length");
  }
  return rows;
}

EmbeddingSpec resolve_embedding(const GroupDatum& G, const std::string& sub, const std::string& weights) {
  if (sub.empty()) fail("subgroup missing");
  if (weights.empty()) return named_embedding(sub, G);
  return EmbeddingSpec{lookup(sub), G, parse_weight_matrix(weights)};
}

Json SpaceConfig::to_json() const {
  Json j;
  j["G"] = G;
  j["H"] = H;
  j["K"] = K;
  j["embed_H"] = embed_H;
  j["embed_K"] = embed_K;
  j["coeff"] = coeff;
  j["maxdeg"] = maxdeg ? Json(*maxdeg) : Json(nullptr);
  j["method"] = method;
  j["flip_sign"] = flip_sign;
  j["require_ring"] = require_ring;
  return j;
}

SpaceConfig SpaceConfig::from_json(const Json& j) {
  try {
    SpaceConfig c;
    c.G = j.at("G").get<std::string>();
    c.H = j.value("H", std::string());
    c.K = j.at("K").get<std::string>();
    c.embed_H = j.value("embed_H", std::string());
    c.embed_K = j.value("embed_K", std::string());
    c.coeff = j.value("coeff", std::string("Q"));
    if (j.contains("maxdeg") && !j["maxdeg"].is_null()) c.maxdeg = j["maxdeg"].get<int>();
    c.method = j.value("method", std::string("koszul"));
    c.flip_sign = j.value("flip_sign", false);
    c.require_ring = j.value("require_ring", false);
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("manifest config: ") + e.what());
  }
}

Json make_manifest(const std::string& command, const Json& config, const std::string& ring, int cap,
                   const std::vector<std::string>& warnings) {
  Json m;
  m["command"] = command;
  m["config"] = config;
  m["ring"] = ring;
  m["cap"] = cap;
  m["engine_version"] = engine_version();
  m["warnings"] = warnings;
  return m;
}

ModelRecipe recipe_from_config(const SpaceConfig& c) {
  const CoefficientRing ring = CoefficientRing::parse(c.coeff);
  GroupDatum G = lookup(c.G);
  check_admissible(G, ring);
  EmbeddingSpec K = resolve_embedding(G, c.K, c.embed_K);
  ModelRecipe r = c.H.empty() ? one_sided_recipe(G, K, ring)
                              : two_sided_recipe(G, resolve_embedding(G, c.H, c.embed_H), K, ring);
  r.flip_sign = c.flip_sign;
  return r;
}

namespace {

std::string space_name(const ModelRecipe& r) {
  std::string s = r.G.name + "/" + r.K.name;
  if (r.kind == ModelRecipe::Kind::two_sided) s = r.H.name + "\\" + s;
  return s;
}

int default_cap(const ModelRecipe& r, long dim) {
  int maxgen = 0;
  for (const auto& g : r.G.classifying) maxgen = std::max(maxgen, g.degree);
  return static_cast<int>(std::max(1L, dim + maxgen));
}

Json model_json(const Model& m) {
  const FreeCga& A = m.cdga.algebra();
  Json gens = Json::array();
  for (std::size_t i = 0; i < A.size(); ++i) {
    const auto& g = A.generators()[i];
    Json e{{"name", g.name}, {"degree", g.degree}};
    if (!m.cdga.generator_differential(i).is_zero()) e["d"] = A.format(m.cdga.generator_differential(i));
    gens.push_back(e);
  }
  return gens;
}

}  // namespace

RunResult run_space(const SpaceConfig& c) {
  if (c.method != "koszul" && c.method != "bar" && c.method != "both") fail("method must be koszul, bar or both");
  if (c.maxdeg && *c.maxdeg < 0) fail("maxdeg must be nonnegative");
  ModelRecipe recipe = recipe_from_config(c);
  const CoefficientRing& ring = recipe.ring;
  const bool two_sided = recipe.kind == ModelRecipe::Kind::two_sided;
  Model model = two_sided ? kapovitch_model(recipe) : cartan_model(recipe);
  const long dim = model.expected_dimension;
  const int cap = c.maxdeg ? *c.maxdeg : default_cap(recipe, dim);
  const unsigned threads = std::max(1u, c.threads);

  RunResult res;
  Json rep;
  rep["schema"] = kReportSchema;
  rep["space"] = space_name(recipe);
  rep["ring"] = ring.name();
  rep["cap"] = cap;
  rep["expected_dimension"] = dim;
  rep["model"] = model_json(model);
  Json checks;
  std::vector<std::string>& warnings = res.warnings;
  std::vector<std::size_t> betti;
  bool verified = true;
  std::string failure;

  if (auto bad = model.cdga.find_d_squared_failure(cap)) {
    verified = false;
    failure = "d^2 != 0 on " + model.cdga.algebra().format(*bad);
  }
  checks["d_squared_zero"] = verified;

  std::optional<Integer> chi;
  try {
    chi = weyl_euler_characteristic(recipe.G, two_sided ? recipe.H : product({}), recipe.K);
  } catch (const Error&) {
  }

  if (ring.is_field()) {
    Cohomology h(model.cdga, cap, threads);
    TorTable koszul = table_from_cohomology(h);
    std::optional<TorTable> bar;
    if (c.method != "koszul") bar = bar_tor(span_from_recipe(recipe), cap, threads);
    betti = c.method == "bar" ? bar->totals() : koszul.totals();
    Json tor;
    if (c.method != "bar") tor["koszul"] = to_json(koszul);
    if (bar) tor["bar"] = to_json(*bar);
    if (c.method == "both") {
      bool agree = koszul.totals() == bar->totals();
      checks["methods_agree"] = agree;
      if (!agree) {
        verified = false;
        failure = "Koszul and bar totals differ";
      }
    }
    rep["poincare"] = {{"coefficients", betti}, {"text", format_poincare(betti)}};
    rep["tor"] = tor;
    auto refusal = multiplicative_refusal(ring, two_sided, koszul.concentrated_in_column_zero());
    if (refusal) {
      warnings.push_back(*refusal);
      rep["presentation"] = nullptr;
      RingPresentation tor_ring = ring_presentation(h, std::nullopt);
      rep["tor_algebra"] = to_json(tor_ring);
      if (c.require_ring) {
        res.exit_code = 3;
        res.error = *refusal;
      }
    } else {
      rep["presentation"] = to_json(ring_presentation(h, dim));
    }
  } else {
    auto z = cohomology_over_Z(model.cdga, cap);
    for (const auto& s : z) betti.push_back(s.free_rank);
    rep["poincare"] = {{"coefficients", betti}, {"text", format_poincare(betti)}};
    rep["integral"] = to_json(z);
    std::string msg = "ring structure is only reported over fields";
    warnings.push_back(msg);
    rep["presentation"] = nullptr;
    if (c.require_ring) {
      res.exit_code = 3;
      res.error = msg;
    }
  }

  DualityReport d = duality_and_euler_checks(betti, dim, chi);
  checks["duality_applicable"] = d.applicable;
  if (d.applicable) {
    checks["palindromic"] = d.palindromic;
    checks["euler"] = d.euler;
    checks["expected_euler"] = chi ? Json(chi->get_str()) : Json(nullptr);
    checks["euler_matches"] = d.euler_ok;
  }
  rep["checks"] = checks;
  rep["warnings"] = warnings;
  rep["manifest"] = make_manifest("space", c.to_json(), ring.name(), cap, warnings);
  res.report = rep;
  if (!verified) {
    res.exit_code = 4;
    res.error = failure;
  }
  return res;
}

std::string render_space_text(const Json& r) {
  std::ostringstream out;
  out << "space      " << r["space"].get<std::string>() << "\n";
  out << "ring       " << r["ring"].get<std::string>() << "\n";
  out << "cap        " << r["cap"].get<int>() << "\n";
  out << "dimension  " << r["expected_dimension"].get<long>() << "\n";
  out << "model\n";
  for (const auto& g : r["model"]) {
    out << "  " << g["name"].get<std::string>() << " (" << g["degree"].get<int>() << ")";
    if (g.contains("d")) out << "  d = " << g["d"].get<std::string>();
    out << "\n";
  }
  out << "poincare   " << r["poincare"]["text"].get<std::string>() << "\n";
  if (r.contains("tor")) {
    for (const char* key : {"koszul", "bar"}) {
      if (!r["tor"].contains(key)) continue;
      const Json& t = r["tor"][key];
      TorTable tt;
      tt.cap = t["cap"].get<int>();
      for (const auto& e : t["entries"]) tt.entries[{e["p"].get<int>(), e["q"].get<int>()}] = e["dim"].get<std::size_t>();
      out << "tor (" << key << ")\n" << render_grid(tt);
    }
  }
  if (r.contains("integral")) {
    out << "additive cohomology\n";
    for (const auto& s : r["integral"]) {
      if (s["free_rank"].get<std::size_t>() == 0 && s["torsion"].empty()) continue;
      out << "  H^" << s["degree"].get<int>() << " = ";
      std::string parts;
      if (s["free_rank"].get<std::size_t>() > 0) parts = "free rank " + std::to_string(s["free_rank"].get<std::size_t>());
      for (const auto& t : s["torsion"]) parts += (parts.empty() ? "" : " + ") + ("Z/" + t.get<std::string>());
      out << parts << "\n";
    }
  }
  auto ring_block = [&](const char* title, const Json& p) {
    out << title << "\n  generators:";
    for (const auto& g : p["generators"]) out << " " << g[0].get<std::string>() << "(" << g[1].get<int>() << ")";
    out << "\n  relations:";
    for (const auto& rel : p["relations"]) out << " [" << rel.get<std::string>() << "]";
    out << "\n  complete: " << (p["complete"].get<bool>() ? "yes" : "no") << "\n";
  };
  if (!r["presentation"].is_null()) ring_block("presentation", r["presentation"]);
  if (r.contains("tor_algebra")) ring_block("tor algebra (not the cohomology ring)", r["tor_algebra"]);
  out << "checks\n";
  for (const auto& [k, v] : r["checks"].items()) out << "  " << k << ": " << v.dump() << "\n";
  for (const auto& w : r["warnings"]) out << "warning: " << w.get<std::string>() << "\n";
  out << "manifest " << r["manifest"].dump() << "\n";
  return out.str();
}

}  // namespace hcoh
