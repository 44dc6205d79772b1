#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef INFTY_SPEC_BIN
#error "INFTY_SPEC_BIN must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("infty_spec_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const fs::path& dir, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(INFTY_SPEC_BIN) + " " + args + " --out " + dir.string() +
                          " > " + (dir / "stdout.txt").string() + " 2> " + (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load(const fs::path& p) { return Json::parse(slurp(p)); }

}  // namespace

TEST_CASE("compute writes a versioned report") {
  const auto dir = scratch("compute");
  REQUIRE(run("compute --domain ball --r 1 --h 0.015625 --solver fmm", dir) == 0);
  const auto j = load(dir / "compute.json");
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "compute");
  CHECK(j["eigenpair_closed_form"]["lambda_D"].get<double>() == 1.0);
  const double lD = j["eigenpair_numeric"]["lambda_D"].get<double>();
  const double bar = j["eigenpair_numeric"]["error_bars"][0].get<double>();
  CHECK(std::abs(lD - 1.0) <= bar);
  CHECK(j["report"]["flags"]["theorem_pass"] == true);
  CHECK(slurp(dir / "stdout.txt") == slurp(dir / "compute.json"));
}

TEST_CASE("identical runs produce byte-identical files") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  const std::string args = "sweep --family stadium4 --k 10,20 --r 1 --h 0.015625";
  REQUIRE(run(args, a) == 0);
  REQUIRE(run(args, b) == 0);
  CHECK(slurp(a / "sweep.json") == slurp(b / "sweep.json"));
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
  const auto v1 = scratch("det_v1"), v2 = scratch("det_v2");
  REQUIRE(run("verify --domain polygon --k 8 --h 0.015625", v1) == 0);
  REQUIRE(run("verify --domain polygon --k 8 --h 0.015625", v2, "INFTY_SPEC_THREADS=1") == 0);
  CHECK(slurp(v1 / "verify.json") == slurp(v2 / "verify.json"));
  CHECK(slurp(v1 / "verify.svg") == slurp(v2 / "verify.svg"));
}

TEST_CASE("verify flags and exit codes") {
  const auto dir = scratch("verify");
  CHECK(run("verify --domain polygon --k 12 --r 1 --h 0.0078125", dir) == 0);
  CHECK(run("verify --domain annulus --eps 0.75 --h 0.0078125", dir) == 0);
  auto j = load(dir / "verify.json");
  CHECK(j["report"]["inner_radius"].get<double>() == doctest::Approx(0.25));
  CHECK(j["report"]["flags"]["inner_ball"] == true);
  const auto svg = slurp(dir / "verify.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("#1a9850") != std::string::npos);
  CHECK(svg.find("#d73027") != std::string::npos);
  CHECK(run("verify --domain polygon --k 3 --h 0.0078125", dir) == 4);
}

TEST_CASE("sweep rows and summary") {
  const auto dir = scratch("sweep");
  REQUIRE(run("sweep --family polygon --k 3:64 --r 1 --h 0.0625", dir) == 0);
  const auto j = load(dir / "sweep.json");
  CHECK(j["rows"].size() == 62);
  CHECK(j["summary"]["delta1_strictly_decreasing"] == true);
  CHECK(j["summary"]["last_hausdorff"].get<double>() < 0.002);
  REQUIRE(run("sweep --family ellipse --r 1 --ratio 1+1/k --k 1,10,100", dir) == 0);
  const auto e = load(dir / "sweep.json");
  CHECK(e["rows"][2]["delta1"].get<double>() < e["rows"][0]["delta1"].get<double>());
  CHECK(e["ratio"] == "1+1/k");
}

TEST_CASE("eigenfunction fields") {
  const auto dir = scratch("eig");
  REQUIRE(run("eigenfunction --domain ball --r 1 --h 0.015625", dir) == 0);
  const auto j = load(dir / "eigenfunction.json");
  CHECK(j["sup_deviation"].get<double>() <= 4 * 0.015625);
  for (const char* f : {"u", "v", "deviation"}) {
    const auto hdr = load(dir / (std::string(f) + ".json"));
    CHECK(fs::file_size(dir / (std::string(f) + ".bin")) ==
          8 * hdr["width"].get<std::size_t>() * hdr["height"].get<std::size_t>());
  }
  CHECK(run("eigenfunction --domain polygon --k 6", dir) == 2);
}

TEST_CASE("input errors leave no files behind") {
  const auto dir = scratch("errors");
  CHECK(run("compute --domain annulus --eps 0.75 --h 1.0", dir) == 3);
  CHECK(run("compute --domain stadium --eps 1.5 --match-volume 1", dir) == 2);
  CHECK(run("compute --domain torus", dir) == 2);
  CHECK(run("compute --domain ball --h 0", dir) == 2);
  CHECK(run("sweep --family ellipse --ratio '1+*k'", dir) == 2);
  CHECK(run("compute --domain ball", dir, "INFTY_SPEC_THREADS=-2") == 2);
  CHECK(run("bogus", dir) == 2);
  std::size_t outputs = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename() != "stdout.txt" && e.path().filename() != "stderr.txt") ++outputs;
  CHECK(outputs == 0);
}

TEST_CASE("domain spec files") {
  const auto dir = scratch("spec");
  {
    std::ofstream out(dir / "hex.json");
    out << R"({"kind": "regular_polygon", "dimension": 2, "params": {"sides": 6, "apothem": 0.9523128068639574}})";
  }
  REQUIRE(run("compute --spec " + (dir / "hex.json").string() + " --h 0.015625", dir) == 0);
  const auto j = load(dir / "compute.json");
  CHECK(j["domain"]["params"]["sides"] == 6);
  CHECK(j["report"]["delta1"].get<double>() == doctest::Approx(0.05007513580866396));
}
