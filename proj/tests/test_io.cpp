#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "volproj/errors.hpp"
#include "volproj/io.hpp"

using namespace volproj;
namespace fs = std::filesystem;

namespace {

PointSet parse(const std::string& text) {
  std::istringstream in(text);
  return io::parse_point_set_csv(in);
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("volproj_test_" + name);
}

}  // namespace

TEST_CASE("parse_point_set_csv reads points as rows") {
  const PointSet P = parse("1,2,3\n4,5,6\n");
  CHECK(P.n() == 2);
  CHECK(P.dim() == 3);
  CHECK(P.point(0)(0) == 1.0);
  CHECK(P.point(0)(2) == 3.0);
  CHECK(P.point(1)(1) == 5.0);
}

TEST_CASE("parse_point_set_csv tolerates comments, blanks, spaces and CRLF") {
  const PointSet P = parse(
      "# generated file\n"
      "\n"
      " 1.5 , -2 \r\n"
      "# interior comment\n"
      "0,3e2\r\n");
  CHECK(P.n() == 2);
  CHECK(P.dim() == 2);
  CHECK(P.point(0)(0) == 1.5);
  CHECK(P.point(0)(1) == -2.0);
  CHECK(P.point(1)(1) == 300.0);
}

TEST_CASE("parse_point_set_csv rejects malformed input") {
  CHECK_THROWS_AS(parse(""), CsvParseError);
  CHECK_THROWS_AS(parse("# only comments\n"), CsvParseError);
  CHECK_THROWS_AS(parse("1,2\n"), CsvParseError);          // a single point
  CHECK_THROWS_AS(parse("1,2\n3\n"), CsvParseError);       // ragged width
  CHECK_THROWS_AS(parse("1,2\n3,4,5\n"), CsvParseError);   // ragged width
  CHECK_THROWS_AS(parse("1,abc\n3,4\n"), CsvParseError);   // bad token
  CHECK_THROWS_AS(parse("1,\n3,4\n"), CsvParseError);      // empty field
  CHECK_THROWS_AS(parse("1,2 3\n4,5\n"), CsvParseError);   // trailing junk
  CHECK_THROWS_AS(parse("1e999,2\n3,4\n"), CsvParseError); // overflow
}

TEST_CASE("point_set_to_csv round-trips exactly") {
  Eigen::MatrixXd pts(3, 4);
  pts << 0.1, -1e300, 3.0, 1e-300,
         M_PI, 7.5, -0.0, 2.2250738585072014e-308,
         123456789.123456789, 1.0 / 3.0, 42.0, -9.87654321e-5;
  const PointSet P(pts);
  const std::string csv = io::point_set_to_csv(P);
  CHECK(csv.rfind("# points=4 dim=3", 0) == 0);
  const PointSet back = parse(csv);
  REQUIRE(back.n() == P.n());
  REQUIRE(back.dim() == P.dim());
  CHECK(back.coords() == P.coords());

  const std::string bare = io::point_set_to_csv(P, false);
  CHECK(bare.find('#') == std::string::npos);
  CHECK(parse(bare).coords() == P.coords());
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  for (double v : {M_PI, 1.0 / 3.0, 6.02e23, -0.0, 5e-324}) {
    const std::string s = io::format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("read_point_set_csv and write_text_atomic") {
  const fs::path path = temp_file("roundtrip.csv");
  io::write_text_atomic(path.string(), "7,8\n9,10\n");
  const PointSet P = io::read_point_set_csv(path.string());
  CHECK(P.n() == 2);
  CHECK(P.point(1)(0) == 9.0);

  // Overwrite in place.
  io::write_text_atomic(path.string(), "1,1\n2,2\n3,3\n");
  CHECK(io::read_point_set_csv(path.string()).n() == 3);

  // No temp droppings left behind.
  int entries = 0;
  for (const auto& e : fs::directory_iterator(path.parent_path())) {
    const std::string name = e.path().filename().string();
    if (name.rfind("volproj_test_roundtrip.csv", 0) == 0) ++entries;
  }
  CHECK(entries == 1);
  fs::remove(path);

  CHECK_THROWS_AS(io::read_point_set_csv((path.parent_path() / "does_not_exist.csv").string()),
                  CsvParseError);
}

TEST_CASE("report_to_json maps NaN to null and keeps counts") {
  DistortionReport rep;
  rep.overall_min = 1.0;
  rep.overall_max = 2.5;
  rep.distortion = 2.5;
  rep.sampled = true;
  rep.seed = RandomSeed{42, 9};
  rep.strategy.mode = SubsetMode::sampled;
  rep.strategy.sample_count = 100;
  SizeStats fine;
  fine.min_ratio = 1.0;
  fine.max_ratio = 2.5;
  fine.evaluated = 10;
  fine.degenerate = 0;
  SizeStats broken;
  broken.min_ratio = std::numeric_limits<double>::quiet_NaN();
  broken.max_ratio = std::numeric_limits<double>::quiet_NaN();
  broken.evaluated = 4;
  broken.degenerate = 4;
  rep.per_size[2] = fine;
  rep.per_size[3] = broken;

  const nlohmann::json j = io::report_to_json(rep);
  CHECK(j["overall_min"] == 1.0);
  CHECK(j["distortion"] == 2.5);
  CHECK(j["sampled"] == true);
  CHECK(j["seed"]["seed"] == 42);
  CHECK(j["seed"]["stream"] == 9);
  CHECK(j["strategy"]["mode"] == "sampled");
  CHECK(j["strategy"]["sample_count"] == 100);
  CHECK(j["per_size"]["2"]["evaluated"] == 10);
  CHECK(j["per_size"]["3"]["min_ratio"].is_null());
  CHECK(j["per_size"]["3"]["degenerate"] == 4);
  // Serializes without throwing despite the NaNs.
  CHECK_FALSE(j.dump(2).empty());
}
