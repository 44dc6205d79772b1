#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "infspec/errors.hpp"
#include "infspec/serialize.hpp"

using namespace infspec;

TEST_SUITE("serialize") {

TEST_CASE("17 significant digits round-trip doubles") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  for (double v : {M_PI, 1e-300, -2.5e17, 0.23394106816087604}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()).empty());
}

TEST_CASE("domain specs round-trip through JSON") {
  for (const auto& spec :
       {DomainSpec::ball(1.5), DomainSpec::ball(0.7, Point2{0.25, -1.0}), DomainSpec::ball(2.0, 4),
        DomainSpec::annulus(1.25, 0.75), DomainSpec::stadium(0.2, 7.5398223686155035),
        DomainSpec::polygon(7, 0.9), DomainSpec::ellipse({1.5, 0.5, 2.0})}) {
    const auto j = to_json(spec);
    const auto back = domain_from_json(Json::parse(dump(j)));
    CHECK(dump(to_json(back)) == dump(j));
    CHECK(volume(back) == volume(spec));
  }
  const auto poly = to_json(DomainSpec::polygon(6, 1.0));
  CHECK(poly["kind"] == "regular_polygon");
  CHECK(poly["params"]["sides"] == 6);
}

TEST_CASE("malformed specs are parameter errors") {
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"kind": "ball"})")), ParameterError);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"kind": "blob", "params": {}})")), ParameterError);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"kind": "annulus", "params": {"outer_radius": 1, "inner_radius": 2}})")),
                  ParameterError);
}

TEST_CASE("dump is deterministic and maps non-finite values to null") {
  Json j;
  j["a"] = 0.1;
  j["b"] = std::numeric_limits<double>::quiet_NaN();
  j["c"] = std::numeric_limits<double>::infinity();
  j["d"] = Json::array({1.0, 2.5});
  const auto text = dump(j);
  CHECK(text == dump(j));
  const auto back = Json::parse(text);
  CHECK(back["a"].get<double>() == 0.1);
  CHECK(back["b"].is_null());
  CHECK(back["c"].is_null());
  CHECK(back["d"].size() == 2);
}

TEST_CASE("sweep CSV layout") {
  const auto s = sweep({FamilyKind::Stadium4}, 1.0, {10, 20});
  const auto csv = sweep_csv(s);
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "index,delta1,delta2,hausdorff,delta1_numeric,delta2_numeric,hausdorff_numeric,fraenkel,sup_deviation");
  std::getline(in, row);
  CHECK(row.rfind("10,", 0) == 0);
  CHECK(std::stod(row.substr(3)) == doctest::Approx(0.03233746627678147).epsilon(1e-12));
  CHECK(row.substr(row.size() - 5) == ",,,,,");
}

TEST_CASE("sweep and report JSON carry the schema version") {
  const auto s = to_json(sweep({FamilyKind::Polygon}, 1.0, {4, 5}));
  CHECK(s["schema_version"] == kSchemaVersion);
  ReportOptions opts;
  opts.fraenkel = false;
  const auto rep = to_json(stability_report(DomainSpec::polygon(8, 0.97), 1.0, std::ldexp(1.0, -5), opts));
  CHECK(rep["schema_version"] == kSchemaVersion);
  for (const char* key : {"r", "delta1", "delta2", "inner_radius", "outer_radius_thm", "outer_radius_lemma",
                          "symdiff_inner", "symdiff_outer", "fraenkel", "hausdorff", "bound_C", "flags"})
    CHECK(rep.contains(key));
}

TEST_CASE("atomic writes replace files whole") {
  const auto dir = std::filesystem::temp_directory_path() / "infspec_atomic_test";
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "x.txt", "first");
  write_file_atomic(dir / "x.txt", "second");
  std::ifstream in(dir / "x.txt");
  std::string s;
  in >> s;
  CHECK(s == "second");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}

}
