#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qrange::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(QRANGE_FIXTURE_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qrange_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("analyze reports structure") {
  const Result plus = run({"analyze", fixture("tree_plus_one.json")});
  REQUIRE(plus.code == 0);
  const json a = json::parse(plus.out);
  CHECK(a["cycle_free"] == true);
  CHECK(a["tree"] == false);
  CHECK(a["nilpotent"] == false);
  CHECK(a["connected"] == false);
  CHECK(a["components"] == json::parse("[[1, 2], [3]]"));
  CHECK(a["permutation"] == json::parse("[1, 2, 3]"));

  const json c = json::parse(run({"analyze", fixture("real_cyclic_4x4.json")}).out);
  CHECK(c["cycle_free"] == false);
  CHECK(c["nilpotent"] == true);
  CHECK(c["edge_count"] == 5);

  const json e = json::parse(run({"analyze", fixture("convex_noncircular.json")}).out);
  CHECK(e["classification"]["convex"] == true);
  CHECK(e["classification"]["circular"] == false);
}

TEST_CASE("classify reports the realifying unitary") {
  const Result r = run({"classify", fixture("convex_noncircular.json")});
  REQUIRE(r.code == 0);
  const json c = json::parse(r.out);
  CHECK(c["convex"] == true);
  CHECK(c["triple_product"] == json::parse("[-1.0, 0.0, 0.0, 0.0]"));
  for (const auto& row : c["realified"]["entries"])
    for (const auto& q : row) CHECK(std::abs(q[1].get<double>()) + std::abs(q[2].get<double>()) + std::abs(q[3].get<double>()) == 0.0);
  CHECK(run({"classify", fixture("real_cyclic_4x4.json")}).code == 2);
}

TEST_CASE("bild of the zero matrix is the origin") {
  const Result r = run({"bild", fixture("zero_3x3.json"), "--samples", "1000", "--support-angles", "16"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "re,im");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line == "0,0");
    ++rows;
  }
  CHECK(rows == 1016);
}

TEST_CASE("bild of a tree is its disk") {
  const fs::path out = scratch("tree.json");
  const Result r = run({"bild", fixture("path_tree.json"), "--samples", "20000", "--json", out.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(out));
  const double radius = j["disk_union"]["radii"][0].get<double>();
  CHECK(radius == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(j["max_modulus"].get<double>() <= radius + 1e-9);
  CHECK(j["max_modulus"].get<double>() >= radius * (1.0 - 5e-3));
}

TEST_CASE("bild envelope of the ellipse example") {
  const fs::path out = scratch("ellipse.json");
  const fs::path svg = scratch("ellipse.svg");
  const Result r = run({"bild", fixture("ellipse_k1.json"), "--samples", "2000", "--json", out.string(), "--svg",
                        svg.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(out));
  const double ax = std::sqrt(0.5), ay = 0.5;
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& p : j["envelope"]) {
    const double dx = p[0].get<double>() - 0.5, dy = p[1].get<double>();
    const double t = std::hypot(dx, dy);
    if (t == 0.0) continue;
    const double te = 1.0 / std::sqrt(dx * dx / (t * t * ax * ax) + dy * dy / (t * t * ay * ay));
    worst = std::max(worst, std::abs(t - te));
    ++count;
  }
  CHECK(count > 1000);
  CHECK(worst <= 1e-4);
  CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("reruns are byte identical") {
  const std::vector<std::string> args{"bild", fixture("convex_noncircular.json"), "--samples", "5000", "--seed", "9"};
  const Result a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Result c = run({"bild", fixture("convex_noncircular.json"), "--samples", "5000", "--seed", "10"});
  CHECK(a.out != c.out);

  const Result v1 = run({"verify", "--suite", "random", "--seed", "7", "--samples", "20000"});
  const Result v2 = run({"verify", "--suite", "random", "--seed", "7", "--samples", "20000"});
  CHECK(v1.out == v2.out);
  CHECK(v1.code == v2.code);
}

TEST_CASE("verify worked examples and the negative control") {
  const Result ok = run({"verify", "--suite", "paper-examples"});
  CHECK(ok.code == 0);
  const json good = json::parse(ok.out);
  for (const auto& c : good["checks"]) CHECK(c["status"] == "PASS");

  const Result bad = run({"verify", "--suite", "paper-examples", "--radius-scale", "0.99"});
  CHECK(bad.code == 3);
  bool containment_failed = false;
  const json report = json::parse(bad.out);
  for (const auto& c : report["checks"]) {
    const std::string name = c["name"];
    if (name.find("containment") != std::string::npos && c["status"] == "FAIL") containment_failed = true;
  }
  CHECK(containment_failed);
}

TEST_CASE("verify a single matrix") {
  const Result r = run({"verify", fixture("path_tree.json"), "--samples", "20000"});
  CHECK(r.code == 0);
  CHECK(!json::parse(r.out)["checks"].empty());
}

TEST_CASE("errors and exit codes") {
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"n\": 2,\n  \"entries\": [[[0,0,0,0], [0,0,0,0]],\n   [[0,0,0,0] [0,0,0,0]]]}";
  const Result parse = run({"analyze", bad.string()});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 3, column 15") != std::string::npos);

  CHECK(run({"analyze", scratch("missing.json").string()}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"bild", fixture("zero_3x3.json"), "--samples", "zero"}).code == 2);
  CHECK(run({"verify", fixture("path_tree.json"), "--suite", "random"}).code == 2);
  CHECK(run({"verify", "--suite", "everything"}).code == 2);
}

TEST_CASE("run manifest") {
  const fs::path m = scratch("manifest.json");
  const Result r = run({"analyze", fixture("path_tree.json"), "--seed", "5", "--manifest", m.string()});
  REQUIRE(r.code == 0);
  const json j = json::parse(slurp(m));
  CHECK(j["command"] == "analyze");
  CHECK(j["seed"] == 5);
  CHECK(j["samples"] == 100000);
  CHECK(j["grid"] == 512);
  CHECK(j.contains("input_hash"));
  CHECK(j.contains("tool_version"));

  const Result s = run({"analyze", fixture("path_tree.json")});
  CHECK(s.err.rfind("manifest: ", 0) == 0);
}
