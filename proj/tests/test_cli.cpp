#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "seriesroot/cli.hpp"
#include "seriesroot/errors.hpp"

using namespace seriesroot;
using nlohmann::json;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("seriesroot_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++) + ".json");
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

struct RunResult {
  int code;
  json report;
  std::string raw;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv = {"seriesroot"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  RunResult r;
  r.code = code;
  r.raw = out.str();
  r.err = err.str();
  if (code == 0 && !r.raw.empty()) r.report = json::parse(r.raw);
  return r;
}

const char* kMap1 = R"({"n": 1, "components": [[[[1],[2.0,0.0]], [[2],[1.0,0.0]]]]})";
const char* kMap2 = R"({"n": 2, "components": [
  [[[1,0],[2.0,0.0]], [[0,2],[1.0,0.0]]],
  [[[0,1],[3.0,0.0]], [[2,0],[1.0,0.0]]]]})";
const char* kZ2 = R"({"coeffs": [[0.0,0.0],[0.0,0.0],[1.0,0.0]]})";

}  // namespace

TEST_CASE("sha256 matches the reference digest of 'abc'") {
  CHECK(cli::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("map parser accepts the schema and sums duplicates") {
  PolyMap<cplx> F = cli::parse_map_text(
      R"({"n": 1, "components": [[[[1],[1.0,0.0]], [[1],[1.5,0.0]]]]})");
  CHECK(F.components[0].coeff({1}) == cplx(2.5, 0.0));

  CHECK_THROWS_AS(cli::parse_map_text(R"({"n": 2, "components": [[]]})"),
                  precondition_error);
  CHECK_THROWS_AS(cli::parse_map_text(R"({"n": 1, "components": [[[[-1],[1.0,0.0]]]]})"),
                  precondition_error);
  CHECK_THROWS_AS(cli::parse_map_text("not json"), precondition_error);
}

TEST_CASE("univariate parser accepts both schemas") {
  DensePoly a = cli::parse_univariate_text(kZ2);
  CHECK(a.degree() == 2);
  DensePoly b = cli::parse_univariate_text(kMap1);
  CHECK(b.coeffs[1] == cplx(2.0, 0.0));
  CHECK(b.coeffs[2] == cplx(1.0, 0.0));
  CHECK_THROWS_AS(cli::parse_univariate_text(kMap2), precondition_error);
}

TEST_CASE("classify reports the expanding verdict") {
  TempFile f(kMap2);
  auto r = run_cli({"classify", f.path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.report["command"] == "classify");
  CHECK(r.report["result"]["verdict"] == "IsRoot-Expanding");
  CHECK(r.report["version"] == "0.1.0");
  CHECK(r.report["input_sha256"].get<std::string>().size() == 64);
}

TEST_CASE("minpoly recovers T^2-6T+8 through the CLI") {
  TempFile f(kMap1);
  auto r = run_cli({"minpoly", f.path.string(), "--degree", "2"});
  REQUIRE(r.code == 0);
  auto minimal = r.report["result"]["minimal"];
  REQUIRE(minimal.size() == 3);
  CHECK(minimal[0][0].get<double>() == doctest::Approx(8.0));
  CHECK(minimal[1][0].get<double>() == doctest::Approx(-6.0));
  CHECK(minimal[2][0].get<double>() == doctest::Approx(1.0));
  CHECK(r.report["result"]["divides_candidate"] == true);
  CHECK(r.report["result"]["residual"].get<double>() < 1e-10);
}

TEST_CASE("verify accepts the true annihilator and rejects a wrong one") {
  TempFile f(kMap1);
  TempFile good(R"({"coeffs": [[8.0,0.0],[-6.0,0.0],[1.0,0.0]]})");
  auto r = run_cli({"verify", f.path.string(), "--poly", good.path.string(),
                    "--degree", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.report["result"]["annihilates"] == true);

  TempFile bad(R"({"coeffs": [[1.0,0.0],[1.0,0.0]]})");
  auto r2 = run_cli({"verify", f.path.string(), "--poly", bad.path.string(),
                     "--degree", "2"});
  REQUIRE(r2.code == 0);
  CHECK(r2.report["result"]["annihilates"] == false);
}

TEST_CASE("fixpoints reports classes and a vanishing residue sum") {
  TempFile f(kZ2);
  auto r = run_cli({"fixpoints", f.path.string()});
  REQUIRE(r.code == 0);
  auto pts = r.report["result"]["fixed_points"];
  REQUIRE(pts.size() == 2);
  CHECK(pts[0]["class"] == "attracting");
  CHECK(pts[1]["class"] == "repelling");
  CHECK(r.report["result"]["residue_sum"]["normalized"].get<double>() < 1e-12);
}

TEST_CASE("conjugate moves the repelling fixed point home") {
  TempFile f(kZ2);
  auto r = run_cli({"conjugate", f.path.string(), "--to-fixed-point"});
  REQUIRE(r.code == 0);
  auto g = r.report["result"]["conjugated"];
  CHECK(std::abs(g[0][0].get<double>()) < 1e-12);
  CHECK(g[1][0].get<double>() == doctest::Approx(2.0));
  CHECK(r.report["result"]["fixed_point"]["class"] == "repelling");
}

TEST_CASE("solve1d completes on z+z^2") {
  TempFile f(R"({"coeffs": [[0.0,0.0],[1.0,0.0],[1.0,0.0]]})");
  auto r = run_cli({"solve1d", f.path.string(), "--rows", "2", "--cols", "16",
                    "--radius", "100"});
  REQUIRE(r.code == 0);
  CHECK(r.report["result"]["completed"] == true);
  for (const auto& res : r.report["result"]["row_residuals"])
    CHECK(res.get<double>() < 1e-9);
  CHECK(!r.report["result"]["coefficients"].empty());
}

TEST_CASE("deterministic output: identical runs produce identical bytes") {
  TempFile f(kMap2);
  auto r1 = run_cli({"classify", f.path.string()});
  auto r2 = run_cli({"classify", f.path.string()});
  CHECK(r1.raw == r2.raw);
}

TEST_CASE("exit codes distinguish input and numerical failures") {
  auto missing = run_cli({"classify", "/nonexistent/input.json"});
  CHECK(missing.code == 2);

  TempFile garbage("{{{");
  CHECK(run_cli({"classify", garbage.path.string()}).code == 2);

  TempFile wrong_schema(R"({"foo": 1})");
  CHECK(run_cli({"minpoly", wrong_schema.path.string(), "--degree", "2"}).code == 2);

  // Non-origin-preserving map: classify's linear part is undefined.
  TempFile affine(R"({"n": 1, "components": [[[[0],[1.0,0.0]], [[1],[2.0,0.0]]]]})");
  CHECK(run_cli({"classify", affine.path.string()}).code == 2);
}
