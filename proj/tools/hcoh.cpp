#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hcoh/barcalc.hpp"
#include "hcoh/error.hpp"
#include "hcoh/serialize.hpp"
#include "hcoh/simplicial.hpp"
#include "hcoh/space.hpp"
#include "hcoh/tor.hpp"

using namespace hcoh;

namespace {

struct Output {
  RunResult result;
  std::string text;
};

std::string dims_line(const std::vector<std::size_t>& d) {
  std::string s;
  for (std::size_t n = 0; n < d.size(); ++n) s += (n ? " " : "") + std::to_string(d[n]);
  return s;
}

// Inline file contents so that a manifest replays without the original paths.
Json load_input(const std::string& path) { return read_json_file(path); }

Output run_space_cmd(const Json& config, unsigned threads) {
  SpaceConfig c = SpaceConfig::from_json(config);
  c.threads = threads;
  Output o{run_space(c), {}};
  o.text = render_space_text(o.result.report);
  return o;
}

Output run_bar_cmd(const Json& config, unsigned threads) {
  const int cap = config.at("maxdeg").get<int>();
  if (cap < 0) fail("maxdeg must be nonnegative");
  const bool counit = config.value("check_counit", false);
  BarOptions opts;
  if (config.contains("word_cap") && !config["word_cap"].is_null()) opts.word_cap = config["word_cap"].get<int>();
  Dga A = dga_from_json(config.at("dga"), cap + 2);
  Output o;
  Json rep;
  rep["schema"] = kReportSchema;
  rep["ring"] = A.ring.name();
  rep["cap"] = cap;
  Json checks;
  std::string failure;
  if (auto bad = A.validate()) failure = "input algebra: " + *bad;
  checks["input_valid"] = failure.empty();
  std::vector<std::size_t> dims;
  if (failure.empty()) {
    Dgc BA = bar(A, cap + 1, opts);
    auto bad = BA.validate();
    checks["bar_valid"] = !bad;
    if (bad) failure = "bar construction: " + *bad;
    CochainComplex cx = complex_of(BA, cap + 1);
    auto d2 = cx.find_d_squared_failure();
    checks["d_squared_zero"] = !d2;
    if (d2) failure = "d^2 != 0 at " + *d2;
    auto tw = check_twisting_cochain(tautological_cochain(BA, A), cap);
    checks["tautological_twisting_cochain"] = tw.ok;
    if (!tw.ok) failure = "twisting cochain: " + tw.detail;
    if (failure.empty()) dims = complex_cohomology(cx, cap, threads).dims;
    if (counit && failure.empty()) {
      Verdict v = check_counit(A, cap);
      checks["counit_quasi_isomorphism"] = v.ok;
      if (!v.ok) {
        checks["counit_witness"] = v.detail;
        failure = "counit: " + v.detail;
      }
    }
  }
  rep["bar_cohomology"] = dims;
  rep["checks"] = checks;
  o.result.exit_code = failure.empty() ? 0 : 4;
  o.result.error = failure;
  o.result.report = rep;
  std::ostringstream t;
  t << "ring   " << A.ring.name() << "\ncap    " << cap << "\nH(BA)  " << dims_line(dims) << "\nchecks\n";
  for (const auto& [k, v] : checks.items()) t << "  " << k << ": " << v.dump() << "\n";
  o.text = t.str();
  return o;
}

Output run_tor_cmd(const Json& config, unsigned threads) {
  const int cap = config.at("maxdeg").get<int>();
  if (cap < 0) fail("maxdeg must be nonnegative");
  const std::string method = config.value("method", std::string("both"));
  if (method != "koszul" && method != "bar" && method != "both") fail("method must be koszul, bar or both");
  TorSpan span = span_from_json(config.at("span"));
  Output o;
  Json rep;
  rep["schema"] = kReportSchema;
  rep["ring"] = span.base.ring().name();
  rep["cap"] = cap;
  std::optional<TorTable> k, b;
  if (method != "bar") k = koszul_tor(span, cap, threads);
  if (method != "koszul") b = bar_tor(span, cap, threads);
  std::ostringstream t;
  if (k) {
    rep["koszul"] = to_json(*k);
    t << "tor (koszul)  totals " << dims_line(k->totals()) << "\n" << render_grid(*k);
  }
  if (b) {
    rep["bar"] = to_json(*b);
    t << "tor (bar)  totals " << dims_line(b->totals()) << "\n" << render_grid(*b);
  }
  if (k && b) {
    bool agree = k->totals() == b->totals();
    rep["checks"] = {{"methods_agree", agree}};
    t << "methods agree: " << (agree ? "true" : "false") << "\n";
    if (!agree) {
      o.result.exit_code = 4;
      o.result.error = "Koszul and bar totals differ";
    }
  }
  o.result.report = rep;
  o.text = t.str();
  return o;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Output run_cochain_cmd(const Json& config, unsigned) {
  const CoefficientRing ring = CoefficientRing::parse(config.value("coeff", std::string("Q")));
  const Json& sset = config.at("sset");
  SimplicialInput in = sset.is_string() ? simplicial_builtin(sset.get<std::string>()) : simplicial_from_json(sset);
  const FiniteSimplicialSet& X = in.space;
  const std::string op = config.at("op").get<std::string>();
  auto colon = op.find(':');
  if (colon == std::string::npos) fail("operation must look like cup:i, E:l, F:p,q, surj:1,2,1 or relation:i");
  const std::string kind = op.substr(0, colon), arg = op.substr(colon + 1);
  auto ints = [&](const std::string& s) {
    std::vector<int> v;
    for (const auto& x : split(s, ',')) {
      try {
        v.push_back(std::stoi(x));
      } catch (const std::exception&) {
        fail("bad integer '" + x + "' in " + op);
      }
    }
    if (v.empty()) fail("missing arguments in " + op);
    return v;
  };
  auto named = [&](const std::string& name) {
    auto it = in.cochains.find(name);
    if (it == in.cochains.end()) fail("unknown cochain " + name);
    NormalizedCochain c = it->second;
    for (auto& x : c.values) x = ring.normalize(x);
    return c;
  };
  std::vector<NormalizedCochain> args;
  for (const auto& n : config.value("args", std::vector<std::string>{})) args.push_back(named(n));

  Output o;
  Json rep;
  rep["schema"] = kReportSchema;
  rep["space"] = X.name();
  rep["ring"] = ring.name();
  rep["op"] = op;
  std::ostringstream t;
  if (kind == "relation") {
    const int i = ints(arg).at(0);
    const std::size_t trials = config.value("trials", std::size_t{200});
    RelationVerdict v = steenrod_relation_check(X, i, ring, trials, config.value("seed", std::uint64_t{1}));
    rep["relation"] = {{"i", i}, {"ok", v.ok}, {"trials", v.trials}, {"witness", v.witness}};
    t << "relation for cup_" << i + 1 << " over " << ring.name() << ": " << (v.ok ? "holds" : "FAILS") << " on "
      << v.trials << " pairs\n";
    if (!v.ok) {
      t << "witness: " << v.witness << "\n";
      o.result.exit_code = 4;
      o.result.error = "relation fails: " + v.witness;
    }
  } else {
    Surjection u;
    if (kind == "cup") {
      u = cup_surjection(ints(arg).at(0));
    } else if (kind == "E") {
      u = E_surjection(ints(arg).at(0));
    } else if (kind == "F") {
      auto pq = ints(arg);
      if (pq.size() != 2) fail("F takes p,q");
      u = F_surjection(pq[0], pq[1]);
    } else if (kind == "surj") {
      u = Surjection{ints(arg)};
      u.validate();
    } else {
      fail("unknown operation " + kind);
    }
    if (static_cast<int>(args.size()) != u.arity()) {
      fail(u.str() + " takes " + std::to_string(u.arity()) + " cochains, got " + std::to_string(args.size()));
    }
    // cup-i carries its sign; the other selectors are the raw interval-cut operation
    NormalizedCochain r =
        kind == "cup" ? cup_i(X, ints(arg).at(0), args.at(0), args.at(1), ring) : interval_cut(X, u, args, ring);
    rep["surjection"] = u.str();
    rep["result"] = to_json(X, r);
    t << "surjection " << u.str() << "\nresult in degree " << r.degree << ":";
    for (const auto& [label, v] : rep["result"]["values"].items()) t << " " << label << "=" << v.get<std::string>();
    t << "\n";
    if (ring.is_field()) {
      bool cocycle = is_cocycle(X, r, ring);
      rep["cocycle"] = cocycle;
      Json same = Json::array();
      for (const auto& [name, c] : in.cochains) {
        if (c.degree == r.degree && is_cocycle(X, named(name), ring) && cohomologous(X, r, named(name), ring)) {
          same.push_back(name);
        }
      }
      rep["cohomologous_to"] = same;
      bool zero_class = cocycle && cohomologous(X, r, zero_cochain(X, r.degree), ring);
      rep["zero_class"] = zero_class;
      t << "cocycle: " << (cocycle ? "yes" : "no");
      if (cocycle) t << ", class " << (zero_class ? "zero" : "nonzero");
      t << "\n";
      for (const auto& n : same) t << "cohomologous to " << n.get<std::string>() << "\n";
    }
  }
  o.result.report = rep;
  o.text = t.str();
  return o;
}

Output dispatch(const std::string& command, const Json& config, unsigned threads) {
  if (command == "space") return run_space_cmd(config, threads);
  if (command == "bar") return run_bar_cmd(config, threads);
  if (command == "tor") return run_tor_cmd(config, threads);
  if (command == "cochain") return run_cochain_cmd(config, threads);
  fail("unknown command in manifest: " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of homogeneous spaces and biquotients"};
  app.require_subcommand(0, 1);
  std::string format = "text", manifest_out, replay;
  unsigned threads = 1;
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--manifest-out", manifest_out, "write the run manifest with wall time to this file");
  app.add_option("--replay", replay, "rerun a manifest or a JSON report");
  app.set_version_flag("--version", std::string(engine_version()));

  SpaceConfig sc;
  int space_maxdeg = -1;
  auto* space = app.add_subcommand("space", "cohomology of G/K or H\\G/K");
  space->add_option("--G", sc.G, "ambient group")->required();
  space->add_option("--H", sc.H, "left subgroup (biquotient)");
  space->add_option("--K", sc.K, "right subgroup")->required();
  space->add_option("--embed-H", sc.embed_H, "weight matrix for H, rows ';' separated");
  space->add_option("--embed-K", sc.embed_K, "weight matrix for K, rows ';' separated");
  space->add_option("--coeff", sc.coeff, "Q, Fp, Z or Z-inv<m>");
  space->add_option("--maxdeg", space_maxdeg, "degree cap");
  space->add_option("--method", sc.method, "koszul, bar or both");
  space->add_flag("--flip-sign", sc.flip_sign, "use the opposite sign in the two-sided model");
  space->add_flag("--require-ring", sc.require_ring, "exit 3 when the ring structure is refused");

  std::string dga_path;
  int bar_maxdeg = 12, word_cap = -1;
  bool check_counit_flag = false;
  auto* barc = app.add_subcommand("bar", "bar construction of a DGA");
  barc->add_option("--dga", dga_path, "DGA JSON file")->required();
  barc->add_option("--maxdeg", bar_maxdeg, "degree cap");
  barc->add_option("--word-cap", word_cap, "maximal bar word length");
  barc->add_flag("--check-counit", check_counit_flag, "check the counit of the bar-cobar adjunction");

  std::string span_path, tor_method = "both";
  int tor_maxdeg = 12;
  auto* tor = app.add_subcommand("tor", "differential Tor of a span of polynomial algebras");
  tor->add_option("--span", span_path, "span JSON file")->required();
  tor->add_option("--method", tor_method, "koszul, bar or both");
  tor->add_option("--maxdeg", tor_maxdeg, "degree cap");

  std::string sset, op, surjection, cc_coeff = "Q", a, b, cargs;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  auto* cochain = app.add_subcommand("cochain", "cochain operations on a simplicial set");
  cochain->add_option("--sset", sset, "JSON file or builtin: boundary-tetrahedron, rp2, random:<seed>")->required();
  cochain->add_option("--op", op, "cup:i, E:l, F:p,q, surj:1,2,1 or relation:i");
  cochain->add_option("--surjection", surjection, "surjection sequence, e.g. 1,2,1");
  cochain->add_option("--coeff", cc_coeff, "Q, Fp, Z or Z-inv<m>");
  cochain->add_option("--a", a, "first cochain");
  cochain->add_option("--b", b, "second cochain");
  cochain->add_option("--args", cargs, "comma-separated cochain names for higher arity");
  cochain->add_option("--trials", trials, "random pairs for relation checks");
  cochain->add_option("--seed", seed, "seed for relation checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string command;
    Json config;
    if (!replay.empty()) {
      Json m = read_json_file(replay);
      if (m.contains("manifest")) m = m["manifest"];
      if (!m.contains("command") || !m.contains("config")) fail("replay file has no manifest");
      command = m["command"].get<std::string>();
      config = m["config"];
    } else if (*space) {
      command = "space";
      if (space_maxdeg >= 0) sc.maxdeg = space_maxdeg;
      config = sc.to_json();
    } else if (*barc) {
      command = "bar";
      config = {{"dga", load_input(dga_path)}, {"maxdeg", bar_maxdeg}, {"check_counit", check_counit_flag},
                {"word_cap", word_cap >= 0 ? Json(word_cap) : Json(nullptr)}};
    } else if (*tor) {
      command = "tor";
      config = {{"span", load_input(span_path)}, {"method", tor_method}, {"maxdeg", tor_maxdeg}};
    } else if (*cochain) {
      command = "cochain";
      if (op.empty() && !surjection.empty()) op = "surj:" + surjection;
      if (op.empty()) fail("--op or --surjection is required");
      std::vector<std::string> names;
      if (!cargs.empty()) {
        for (const auto& n : split(cargs, ',')) names.push_back(n);
      } else {
        if (!a.empty()) names.push_back(a);
        if (!b.empty()) names.push_back(b);
      }
      bool builtin = sset.find(".json") == std::string::npos;
      config = {{"sset", builtin ? Json(sset) : load_input(sset)}, {"op", op}, {"coeff", cc_coeff},
                {"args", names}, {"trials", trials}, {"seed", seed}};
    } else {
      std::cout << app.help();
      return 2;
    }

    auto start = std::chrono::steady_clock::now();
    Output out = dispatch(command, config, threads);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json& rep = out.result.report;
    if (!rep.contains("manifest")) {
      std::vector<std::string> warnings = out.result.warnings;
      rep["manifest"] = make_manifest(command, config, rep.value("ring", std::string()), rep.value("cap", 0), warnings);
      out.text += "manifest " + rep["manifest"].dump() + "\n";
    }
    if (!manifest_out.empty()) {
      Json m = rep["manifest"];
      m["wall_time_seconds"] = wall;
      std::ofstream f(manifest_out);
      if (!f) fail("cannot write " + manifest_out);
      f << m.dump(2) << "\n";
    }
    if (format == "json") {
      std::cout << rep.dump(2) << "\n";
    } else {
      std::cout << out.text;
    }
    if (out.result.exit_code != 0) {
      std::cerr << (out.result.exit_code == 3 ? "refused: " : "verification failed: ") << out.result.error << "\n";
    }
    return out.result.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::refused:
        return 3;
      case ErrorKind::verification:
        return 4;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
