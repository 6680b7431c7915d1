#include <atlas/cli.hpp>

#include <doctest.h>

#include <fstream>
#include <string>

using namespace atlas;
using nlohmann::json;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(ATLAS_TEST_DATA) + "/" + name);
  REQUIRE(in);
  return json::parse(in);
}

cli::Result run(const std::string& command, const json& doc) {
  cli::Options o;
  o.command = command;
  return cli::run(o, doc);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("statuses on the sample documents") {
  CHECK(run("check-atlas", load("basic_atlas.json")).status == cli::kPass);
  const auto circle = run("equivalence-report", load("circle_atlas.json"));
  CHECK(circle.status == cli::kPass);
  const auto cover = run("check-atlas", load("discrete_cover.json"));
  CHECK(cover.status == cli::kFail);
  CHECK(cover.report.dump().find("\"residue\":[\"w\"]") != std::string::npos);
  CHECK(run("cech", load("discrete_cover.json")).status == cli::kPass);
  CHECK(run("check-descent", load("line_atlas_descent.json")).status == cli::kPass);
  CHECK(run("check-descent", load("explicit_sheaf.json")).status == cli::kPass);
  CHECK(run("check-hypercover", load("labeled_edge.json")).status == cli::kFail);
  for (const char* c : {"nerve", "refine", "homology"}) CHECK(run(c, load("basic_atlas.json")).status == cli::kPass);
}

TEST_CASE("descent failure carries a witness") {
  const auto r = run("check-descent", load("line_descent.json"));
  CHECK(r.status == cli::kFail);
  const auto dump = r.report.dump();
  CHECK(dump.find("not_surjective") != std::string::npos);
  CHECK(dump.find("\"limit\":4") != std::string::npos);
  CHECK(dump.find("\"sections\":2") != std::string::npos);
}

TEST_CASE("input errors name the offending path") {
  const auto r = run("check-atlas", load("bad_unknown_point.json"));
  CHECK(r.status == cli::kInputError);
  CHECK(r.report["error"] == "/space/opens/1: unknown point identifier: t");
  CHECK(run("check-atlas", load("bad_not_monotone.json")).status == cli::kInputError);
  CHECK(run("check-atlas", json::array()).status == cli::kInputError);
  CHECK(run("check-atlas", json::object()).status == cli::kInputError);
  CHECK(run("frobnicate", load("basic_atlas.json")).status == cli::kInputError);
  auto doc = load("basic_atlas.json");
  doc["options"] = {{"truncation", 9}};
  const auto range = run("nerve", doc);
  CHECK(range.status == cli::kInputError);
  CHECK(range.report["error"].get<std::string>().starts_with("/options/truncation"));
}

TEST_CASE("reports are deterministic and echo the seed") {
  cli::Options o;
  o.command = "corpus";
  o.count = 15;
  o.seed = 77;
  const auto a = cli::run(o, json::object());
  const auto b = cli::run(o, json::object());
  CHECK(a.report.dump(2) == b.report.dump(2));
  CHECK(a.report["seed"] == 77);
  CHECK_FALSE(a.report.contains("timing_ms"));
  CHECK(a.status == cli::kPass);
  const auto doc = load("circle_atlas.json");
  CHECK(run("equivalence-report", doc).report.dump() == run("equivalence-report", doc).report.dump());
  o.timing = true;
  CHECK(cli::run(o, json::object()).report.contains("timing_ms"));
}

TEST_CASE("flags override the options section") {
  auto doc = load("basic_atlas.json");
  doc["options"] = {{"truncation", 2}};
  cli::Options o;
  o.command = "nerve";
  const auto two = cli::run(o, doc);
  o.truncation = 1;
  const auto one = cli::run(o, doc);
  REQUIRE(two.status == cli::kPass);
  REQUIRE(one.status == cli::kPass);
  CHECK(two.report.dump() != one.report.dump());
}

}  // TEST_SUITE
