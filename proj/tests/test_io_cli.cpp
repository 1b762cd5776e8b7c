#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhd/cli.hpp"
#include "qhd/io.hpp"

using namespace qhd;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result call(const std::string& command, std::vector<std::string> args, RunConfig cfg = {}) {
  cfg.command = command;
  cfg.args = std::move(args);
  std::ostringstream out, err;
  const int status = run(cfg, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("domain specs") {
  const ConvexDomain disk = domain_from_json(Json::parse(R"({"type": "disk"})"));
  CHECK(disk.contains(v2(0.5, 0.5)));
  CHECK_FALSE(disk.contains(v2(0.8, 0.8)));

  const ConvexDomain ball = domain_from_json(Json::parse(R"({"type": "ball", "params": {"center": [1, 0], "radius": 2}})"));
  CHECK(ball.contains(v2(2.9, 0)));
  CHECK_FALSE(ball.contains(v2(-1.1, 0)));

  // x > 0, y > 0, x + y < 1 as covectors on (x, y, 1).
  const ConvexDomain tri = domain_from_json(
      Json::parse(R"({"type": "polytope", "params": {"covectors": [[1,0,0],[0,1,0],[-1,-1,1]]}})"));
  CHECK(tri.contains(v2(0.2, 0.2)));
  CHECK_FALSE(tri.contains(v2(0.6, 0.6)));

  const ConvexDomain q = domain_from_json(Json::parse(R"({"type": "orthant", "params": {"n": 3}})"));
  CHECK(q.dim() == 3);

  // y > x^2 as x.Qx + b.x + c < 0.
  const ConvexDomain par = domain_from_json(Json::parse(
      R"({"type": "quadratic", "params": {"basepoint": [0, 1],
          "constraints": [{"Q": [[1,0],[0,0]], "b": [0,-1], "c": 0}]}})"));
  CHECK(par.contains(v2(1, 1.01)));
  CHECK_FALSE(par.contains(v2(1, 0.99)));

  const ConvexDomain cat = domain_from_json(Json::parse(R"j({"type": "(iii)"})j"));
  CHECK(cat.contains(v2(0, 1)));
  const ConvexDomain placeholder = domain_from_json(Json::parse(R"({"type": "viii", "params": {"base": {"type": "disk"}}})"));
  CHECK(placeholder.dim() == 3);

  const ConvexDomain both = domain_from_json(Json::parse(
      R"({"type": "oracle-composite", "params": {"op": "intersection",
          "parts": [{"type": "ball", "params": {"center": [0.5, 0.5]}}, {"type": "orthant", "params": {"n": 2}}]}})"));
  CHECK(both.contains(v2(0.3, 0.3)));
  CHECK_FALSE(both.contains(v2(-0.3, 0.3)));

  for (const char* bad : {R"({"type": "nope"})", R"({"params": {}})", R"([1, 2])",
                          R"({"type": "polytope", "params": {"covectors": []}})"}) {
    CHECK_THROWS_AS(domain_from_json(Json::parse(bad)), Error);
  }
}

TEST_CASE("maps, generators and points") {
  const ProjMap full = map_from_json(Json::parse("[[2,0,0],[0,2,0],[0,0,0.25]]"), 2);
  CHECK((apply_affine_chart(full, v2(1, 1)) - v2(8, 8)).norm() < 1e-12);
  const ProjMap linear = map_from_json(Json::parse("[[0,1],[1,0]]"), 2);
  CHECK((apply_affine_chart(linear, v2(1, 3)) - v2(3, 1)).norm() < 1e-12);
  CHECK_THROWS_AS(map_from_json(Json::parse("[[1,0],[0,1],[0,0]]"), 2), Error);
  CHECK_THROWS_AS(map_from_json(Json::parse("[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"), 2), Error);

  const GeneratorSet plain = generators_from_json(Json::parse("[[[2,0],[0,1]]]"), 2);
  CHECK(plain.size() == 2);
  const GeneratorSet named = generators_from_json(
      Json::parse(R"({"generators": [{"matrix": [[2,0],[0,1]], "label": "a"}, {"matrix": [[1,0],[0,2]], "label": "b"}]})"), 2);
  CHECK(named.size() == 4);
  CHECK_THROWS_AS(generators_from_json(Json::parse("[]"), 2), Error);

  CHECK((point_from_json(Json::parse("[0.5, 0.25]"), 2) - v2(0.5, 0.25)).norm() == 0.0);
  CHECK((point_from_json(Json::parse("[1, 0.5, 2]"), 2) - v2(0.5, 0.25)).norm() < 1e-15);
  CHECK_THROWS_AS(point_from_json(Json::parse("[1, 0.5, 0]"), 2), Error);
  CHECK_THROWS_AS(point_from_json(Json::parse("[1]"), 2), Error);
}

TEST_CASE("catalog ids and number formatting") {
  CHECK(normalize_catalog_id("(iii)") == "iii");
  CHECK(normalize_catalog_id("XIV") == "xiv");
  CHECK(normalize_catalog_id("all") == "all");

  CHECK(fmt9(std::log(3.0)) == "1.09861229");
  CHECK(fmt9(-0.0) == "0");
  CHECK(round9(1.0 / 3.0) == 0.333333333);
  CHECK(num(std::nan("")) == "nan");
  CHECK(num(-INFINITY) == "-inf");
}

TEST_CASE("read_json_arg takes inline JSON or a file") {
  CHECK(read_json_arg("[1, 2]") == Json::parse("[1, 2]"));
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "qhd_io_test_domain.json";
  {
    std::ofstream f(path);
    f << R"({"type": "disk"})";
  }
  CHECK(read_json_arg(path.string())["type"] == "disk");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_arg("/nonexistent/qhd.json"), Error);
}

TEST_CASE("dist on the disk prints ln 3") {
  const Result r = call("dist", {R"({"type":"disk"})", "[0,0]", "[0.5,0]"});
  CHECK(r.status == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["distance"].get<double>() == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(r.out.find("1.09861229") != std::string::npos);
}

TEST_CASE("classify the triangle isometry") {
  const Result r = call("classify", {R"({"type":"triangle"})", "[[2,0,0],[0,2,0],[0,0,0.25]]"});
  CHECK(r.status == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["kind"] == "hyperbolic");
  CHECK(j["translation_length"].get<double>() == doctest::Approx(std::log(8.0)).epsilon(1e-8));
  CHECK(j["summary"].get<std::string>().rfind("hyperbolic, translation length", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(call("catalog", {"check", "iii"}).status == kExitOk);
  CHECK(call("verify", {"prop76"}).status == kExitOk);
  CHECK(call("catalog", {"list"}).status == kExitOk);

  // A map that does not preserve the disk pushes orbit points to the boundary.
  RunConfig len;
  len.len = 2;
  const Result bad_orbit = call("orbit", {R"({"type":"disk"})", "[[[2,0,0],[0,1,0],[0,0,1]]]", "[0.5,0]"}, len);
  CHECK(bad_orbit.status == kExitCheckFailed);
  CHECK_FALSE(bad_orbit.out.empty());

  const Result unknown = call("dist", {R"({"type":"nope"})", "[0,0]", "[0.5,0]"});
  CHECK(unknown.status == kExitInvalidInput);
  CHECK(unknown.err.rfind("error:", 0) == 0);
  CHECK(call("dist", {R"({"type":"disk"})", "[0,0]", "[1.5,0]"}).status == kExitInvalidInput);
  CHECK(call("dist", {R"({"type":"disk"})", "[0,0]"}).status == kExitInvalidInput);
  CHECK(call("classify", {R"({"type":"disk"})", "[[2,0,0],[0,1,0],[0,0,1]]"}).status == kExitInvalidInput);
  CHECK(call("frobnicate", {}).status == kExitInvalidInput);
  CHECK(call("catalog", {"check", "xx"}).status == kExitInvalidInput);
}

TEST_CASE("outputs are byte-identical across runs") {
  struct Case {
    std::string command;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases = {
      {"limits", {R"({"type":"triangle"})", "[[[2,0,0],[0,0.5,0],[0,0,1]]]"}},
      {"cone", {R"({"type":"xi"})"}},
      {"horosphere", {R"({"type":"disk"})", "[1,0,-1]", "[1,0,1]", "[-0.3,0]"}},
      {"catalog", {"classify", R"({"type":"parabola"})"}},
      {"verify", {"prop76"}},
  };
  RunConfig cfg;
  cfg.seed = 5;
  cfg.budget = 300;
  for (const Case& c : cases) {
    const Result a = call(c.command, c.args, cfg);
    const Result b = call(c.command, c.args, cfg);
    CHECK_MESSAGE(a.status == kExitOk, c.command);
    CHECK_MESSAGE(a.out == b.out, c.command);
    CHECK_FALSE(a.out.empty());
  }
  RunConfig svg = cfg;
  svg.svg = true;
  const Result s1 = call("horosphere", cases[2].args, svg);
  const Result s2 = call("horosphere", cases[2].args, svg);
  CHECK(s1.out.rfind("<svg", 0) == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("output file") {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "qhd_io_test_out.json";
  RunConfig cfg;
  cfg.output = path.string();
  const Result r = call("dist", {R"({"type":"disk"})", "[0,0]", "[0.5,0]"}, cfg);
  CHECK(r.status == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  const Json j = Json::parse(f);
  CHECK(j["distance"].get<double>() == doctest::Approx(std::log(3.0)));
  std::filesystem::remove(path);
}
