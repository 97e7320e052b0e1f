#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

using Json = nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string cli() {
  const char* p = std::getenv("HCOH_CLI");
  REQUIRE_MESSAGE(p, "HCOH_CLI is not set");
  return p;
}

std::string data(const std::string& f) {
  const char* p = std::getenv("HCOH_DATA");
  REQUIRE_MESSAGE(p, "HCOH_DATA is not set");
  return std::string(p) + "/" + f;
}

Result run(const std::string& args) {
  Result r;
  std::string cmd = "'" + cli() + "' " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Json run_json(const std::string& args, int expect = 0) {
  Result r = run("--format json " + args);
  CHECK(r.code == expect);
  return Json::parse(r.out);
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hcoh_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("space: flag manifold U(2)/T2") {
  Json j = run_json("space --G 'U(2)' --K T2 --coeff Q --maxdeg 4");
  CHECK(j["poincare"]["text"] == "1 + t^2");
  REQUIRE(j["presentation"].is_object());
  CHECK(j["presentation"]["generators"].size() == 1);
  CHECK(j["presentation"]["generators"][0][1] == 2);
  CHECK(j["presentation"]["relation_degrees"] == Json::array({4}));
  CHECK(j["checks"]["d_squared_zero"] == true);
  CHECK(j["manifest"]["command"] == "space");
  CHECK(j["manifest"]["cap"] == 4);
  Result t = run("space --G 'U(2)' --K T2 --coeff Q --maxdeg 4");
  CHECK(t.code == 0);
  CHECK(t.out.find("1 + t^2") != std::string::npos);
}

TEST_CASE("space: char 2 diagonal circle is additive only") {
  Json j = run_json("space --G 'U(2)' --K diag-circle --coeff F2 --maxdeg 4");
  CHECK(j["poincare"]["coefficients"] == Json::array({1, 1, 1, 1, 0}));
  CHECK(j["presentation"].is_null());
  REQUIRE(j["warnings"].size() >= 1);
  CHECK(j["warnings"][0].get<std::string>().find("characteristic 2") != std::string::npos);
  CHECK(j["manifest"]["warnings"] == j["warnings"]);
  CHECK(run("space --G 'U(2)' --K diag-circle --coeff F2 --maxdeg 4 --require-ring").code == 3);
}

TEST_CASE("space: SU(4)/circle with both methods") {
  Json j = run_json("space --G 'SU(4)' --K circle:-3,1,1,1 --coeff Q --maxdeg 15 --method both");
  CHECK(j["poincare"]["coefficients"] ==
        Json::array({1, 0, 1, 0, 0, 1, 0, 2, 0, 1, 0, 0, 1, 0, 1, 0}));
  CHECK(j["checks"]["methods_agree"] == true);
  CHECK(j["checks"]["palindromic"] == true);
}

TEST_CASE("space: errors and refusals") {
  CHECK(run("space --G 'Bogus(3)' --K T2").code == 2);
  CHECK(run("space --G 'U(2)' --K T2 --coeff Q7").code == 2);
  CHECK(run("space --G 'U(2)' --K T2 --method magic").code == 2);
  CHECK(run("space --G 'SO(5)' --K 'SO(2)xSO(3)' --coeff F2").code == 3);
  CHECK(run("--no-such-flag").code == 2);
}

TEST_CASE("bar: exterior algebra on a degree-3 class") {
  Json j = run_json("bar --dga '" + data("lambda-z3.json") + "' --maxdeg 12 --check-counit");
  std::vector<int> dims = j["bar_cohomology"];
  for (std::size_t n = 0; n < dims.size(); ++n) CHECK(dims[n] == (n % 2 == 0 ? 1 : 0));
  for (auto& [k, v] : j["checks"].items()) {
    CAPTURE(k);
    CHECK(v == true);
  }
}

TEST_CASE("bar: d^2 failure is a verification error") {
  auto f = tmp("bad.json");
  std::ofstream(f) << R"({"schema":"hcoh.dga/1","ring":"Q","free":{"generators":[)"
                   << R"({"name":"a","degree":2,"sort":"polynomial"},{"name":"b","degree":3,"sort":"exterior"}],)"
                   << R"("differential":{"a":"b","b":"a^2"}}})";
  CHECK(run("bar --dga '" + f.string() + "' --maxdeg 6").code == 4);
  std::ofstream(f) << "{\"schema\": \"hcoh.dga/1\"";
  CHECK(run("bar --dga '" + f.string() + "' --maxdeg 6").code == 2);
  std::filesystem::remove(f);
}

TEST_CASE("tor: both methods agree") {
  for (const char* s : {"span-polynomial.json", "span-flag-u3.json"}) {
    CAPTURE(s);
    Json j = run_json("tor --span '" + data(s) + "' --method both");
    CHECK(j["checks"]["methods_agree"] == true);
    CHECK(j["koszul"] == j["bar"]);
  }
}

TEST_CASE("cochain: cup-1 square on RP2") {
  Json j = run_json("cochain --sset '" + data("rp2.json") + "' --op cup:1 --coeff F2 --a x --b x");
  CHECK(j["cocycle"] == true);
  CHECK(j["cohomologous_to"] == Json::array({"x"}));
  CHECK(j["zero_class"] == false);
}

TEST_CASE("cochain: Steenrod relation holds") {
  Json j = run_json("cochain --sset boundary-tetrahedron --op relation:1 --coeff Z --trials 30 --seed 4");
  CHECK(j["manifest"]["command"] == "cochain");
}

TEST_CASE("replay reproduces the report byte for byte") {
  auto m = tmp("manifest.json");
  for (const std::string& args : std::vector<std::string>{"space --G 'U(3)' --K T3 --method both", "tor --span '" + data("span-biquotient.json") + "'",
                           "bar --dga '" + data("x2-y3.json") + "' --maxdeg 8"}) {
    CAPTURE(args);
    Result a = run("--format json --manifest-out '" + m.string() + "' " + args);
    REQUIRE(a.code == 0);
    Json man = Json::parse(std::ifstream(m));
    CHECK(man.contains("wall_time_seconds"));
    Result b = run("--format json --replay '" + m.string() + "'");
    CHECK(b.code == 0);
    CHECK(a.out == b.out);
    // a report replays through its embedded manifest
    auto r = tmp("report.json");
    std::ofstream(r) << a.out;
    CHECK(run("--format json --replay '" + r.string() + "'").out == a.out);
    std::filesystem::remove(r);
  }
  std::filesystem::remove(m);
}

TEST_CASE("output does not depend on the thread count") {
  std::string args = "space --G 'SU(4)' --K circle:-3,1,1,1 --maxdeg 15 --method both";
  Result a = run("--format json --threads 1 " + args);
  Result b = run("--format json --threads 4 " + args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("--format json " + args).out == a.out);
}
