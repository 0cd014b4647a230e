#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "octic/verify.hpp"

using namespace octic;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.p = 5;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.p = 9;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.p = 11;
  c.ext_degrees = {4};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c.allow_large = true;
  CHECK_NOTHROW(c.validate());
  c.jobs = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  RunConfig d;
  CHECK(d.t_value() == 7);
  d.t = "3/2";
  CHECK(d.t_value() == Rational(3, 2));
  d.t = "x";
  CHECK_THROWS_AS(d.validate(), UsageError);
  CHECK_THROWS_AS(run("nope", RunConfig{}), UsageError);
}

TEST_CASE("empty and failing reports") {
  VerificationReport r;
  r.version = kVersion;
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["checks"].empty());
  CHECK(j["overall"] == "pass");
  r.checks.push_back({"x", "anchor", "skipped", nlohmann::json::object(), 0});
  CHECK(r.passed());
  r.checks.push_back({"y", "anchor", "fail", nlohmann::json::object(), 0});
  CHECK(nlohmann::json::parse(r.to_json())["overall"] == "fail");
}

TEST_CASE("verify-all passes and is byte-identical without timing") {
  RunConfig c;
  c.timing = false;
  c.ext_degrees = {1, 2};
  auto a = run("verify-all", c);
  CHECK(a.passed());
  std::set<std::string> ids;
  for (const auto& ch : a.checks) CHECK(ids.insert(ch.id).second);
  const auto dir = std::filesystem::temp_directory_path();
  const std::string p1 = (dir / "octic_report_a.json").string(), p2 = (dir / "octic_report_b.json").string();
  emit_report(a, p1);
  emit_report(run("verify-all", c), p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(slurp(p1).find("elapsed") == std::string::npos);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
  CHECK_THROWS(emit_report(a, "/nonexistent-dir/report.json"));
}

TEST_CASE("signature at t = 0 reports the fivefold point") {
  RunConfig c;
  c.t = "0";
  auto r = run("signature", c);
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].status == "pass");
  auto five = r.checks[0].data["census"]["fivefold_points"];
  REQUIRE(five.size() == 1);
  CHECK(five[0]["point"] == "(0:0:0:1)");
  CHECK(five[0]["planes"] == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("a custom arrangement with a fourfold line fails admissibility") {
  const auto path = (std::filesystem::temp_directory_path() / "octic_bad_arrangement.txt").string();
  {
    std::ofstream out(path);
    out << "1 0 0 0\n0 1 0 0\n1 1 0 0\n1 -1 0 0\n0 0 1 0\n0 0 0 1\n1 2 3 4\n3 1 4 1\n";
  }
  RunConfig c;
  c.arrangement = path;
  auto r = run("signature", c);
  CHECK_FALSE(r.passed());
  std::remove(path.c_str());
  c.arrangement = "/nonexistent/arrangement.txt";
  CHECK_THROWS_AS(run("signature", c), UsageError);
}
