#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "toric_af/cli.hpp"
#include "toric_af/json_io.hpp"

using namespace toric_af;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  int code = run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("toric_af_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

const std::string kSqrt2 = "nf:t^2-2@[1,2]:(0,1)";

}  // namespace

TEST_CASE("jpa expand example") {
  auto r = invoke({"jpa", "expand", "--lambda", "1," + kSqrt2, "--steps", "6"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["digits"] == json::parse(R"([["1"],["2"],["2"],["2"],["2"],["2"]])"));
  CHECK(j["termination"] == "truncated");
  CHECK(j.contains("version"));
  // Round trip through the schema.
  auto e = json_io::expansion_from_json(j);
  auto back = json_io::to_json(e);
  for (const char* key : {"digits", "states", "termination", "rank", "projective"}) CHECK(back[key] == j[key]);
}

TEST_CASE("pl commands") {
  auto r = invoke({"pl", "equal", "--a", "1," + kSqrt2, "--b", "2," + kSqrt2});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["equal"] == false);
  r = invoke({"pl", "equal", "--a", "1," + kSqrt2, "--b", "nf:t^2-2@[1,2]:(1,1)," + kSqrt2});
  CHECK(json::parse(r.out)["equal"] == true);

  r = invoke({"pl", "project", "--lambda", "2,nf:t^2-2@[1,2]:(0,2)"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(json_io::exact_vector_from_json(j["thetas"]) == parse_exact_vector(kSqrt2));
  CHECK(json_io::exact_from_json(j["scale"]) == ExactReal(2));

  std::string m = temp_file("matrix.json", R"([["1","1"],[0,1]])");
  r = invoke({"pl", "transform", "--lambda", "1," + kSqrt2, "--matrix", m});
  REQUIRE(r.code == 0);
  CHECK(json_io::exact_vector_from_json(json::parse(r.out)["lambdas"]) ==
        parse_exact_vector("1,nf:t^2-2@[1,2]:(1,1)"));

  r = invoke({"pl", "project", "--lambda", "1,-1"});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("DomainError") != std::string::npos);
  r = invoke({"pl", "transform", "--lambda", "1,2", "--matrix", "-"}, "[[2,0],[0,1]]");
  CHECK(r.code == kExitError);
  CHECK(r.err.find("NotUnimodular") != std::string::npos);
}

TEST_CASE("usage errors") {
  auto r = invoke({});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("jpa") != std::string::npos);
  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"jpa"}).code == kExitUsage);
  CHECK(invoke({"jpa", "expand"}).code == kExitUsage);
  CHECK(invoke({"jpa", "expand", "--lambda", "1,2", "--steps", "many"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--version"}).code == 0);
}

TEST_CASE("piped composition and bratteli") {
  auto expand = invoke({"jpa", "expand", "--lambda", "1,nf:t^2-t-1@[1,2]:(0,1)", "--steps", "6"});
  REQUIRE(expand.code == 0);
  auto build = invoke({"bratteli", "build", "--digits", "-", "--depth", "5"}, expand.out);
  REQUIRE(build.code == 0);
  auto d = json::parse(build.out);
  CHECK(d["rank"] == 2);
  CHECK(d["depth"] == 5);
  CHECK(d["levels"][4]["dimensions"] == json::parse(R"(["5","8"])"));
  auto diagram = json_io::diagram_from_json(d);
  CHECK(json_io::to_json(diagram)["levels"] == d["levels"]);

  auto tele = invoke({"bratteli", "telescope", "--diagram", "-", "--cuts", "3,5"}, build.out);
  REQUIRE(tele.code == 0);
  auto t = json::parse(tele.out);
  CHECK(t["levels"][0]["matrix"] == json::parse(R"([["1","1"],["1","2"]])"));
  CHECK(t["levels"][2]["label"] == 5);

  auto bare = invoke({"bratteli", "build", "--digits", "-", "--depth", "3"}, "[[1],[2]]");
  REQUIRE(bare.code == 0);
  auto dot = invoke({"--format", "dot", "bratteli", "build", "--digits", "-", "--depth", "3"}, "[[1],[2]]");
  CHECK(dot.out.rfind("digraph", 0) == 0);

  auto period = invoke({"jpa", "period", "--expansion", "-"},
                       invoke({"jpa", "expand", "--lambda", "1," + kSqrt2, "--steps", "5"}).out);
  REQUIRE(period.code == 0);
  CHECK(json::parse(period.out)["period"] == json::parse(R"({"preperiod":1,"period":1})"));
  period = invoke({"jpa", "period", "--lambda", "1,nf:t^3-3@[1,2]:(0,1),nf:t^3-3@[1,2]:(0,0,1)"});
  CHECK(json::parse(period.out)["period"] == json::parse(R"({"preperiod":2,"period":2})"));

  auto conv = invoke({"jpa", "convergents", "--digits", "-", "--k", "5"}, "[1,1,1,1,1]");
  REQUIRE(conv.code == 0);
  CHECK(json::parse(conv.out)["last_column"] == json::parse(R"(["5","8"])"));

  auto cf = invoke({"cf", "expand", "--x", "7/3"});
  CHECK(json::parse(cf.out)["digits"] == json::parse(R"(["2","3"])"));
  auto eu = invoke({"cf", "euclid", "--a", "9", "--b", "4"});
  CHECK(json::parse(eu.out)["quotients"] == json::parse(R"(["2","4"])"));
  auto diag = invoke({"jpa", "diagnose", "--lambda", "1,nf:t^2-t-1@[1,2]:(0,1)", "--steps", "20"});
  CHECK(json::parse(diag.out)["trend"] == "improving");
}

TEST_CASE("af stable-iso") {
  auto r = invoke({"af", "stable-iso", "--theta-a", "nf:t^2-2@[1,2]:(-1,1)", "--theta-b", "nf:t^2-2@[1,2]:(1,1)"});
  REQUIRE(r.code == 0);
  auto v = json::parse(r.out);
  CHECK(v["outcome"] == "Isomorphic");
  CHECK(v["tail"].is_object());

  r = invoke({"af", "stable-iso", "--theta-a", "nf:t^2-t-1@[1,2]:(0,1)", "--theta-b", kSqrt2});
  CHECK(json::parse(r.out)["outcome"] == "Distinct");

  // Rank 3, unrelated cubic modules of equal rank: nothing decisive.
  std::string a = "nf:t^3-2@[1,2]:(0,1),nf:t^3-2@[1,2]:(0,0,1)";
  std::string b = "nf:t^3-2@[1,2]:(1,3),nf:t^3-2@[1,2]:(0,5,1)";
  r = invoke({"--strict", "af", "stable-iso", "--theta-a", a, "--theta-b", b, "--horizon", "4"});
  CHECK(json::parse(r.out)["outcome"] == "Unknown");
  CHECK(r.code == kExitUnknown);
  r = invoke({"af", "stable-iso", "--theta-a", a, "--theta-b", b, "--horizon", "4"});
  CHECK(r.code == 0);

  std::string w = temp_file("witness.json", "[[1,1],[0,1]]");
  r = invoke({"af", "stable-iso", "--theta-a", kSqrt2, "--theta-b", "nf:t^2-2@[1,2]:(1,1)", "--witness", w, "--scale",
              "1"});
  v = json::parse(r.out);
  CHECK(v["outcome"] == "Isomorphic");
  CHECK(v["method"] == "supplied witness");
  CHECK(invoke({"af", "stable-iso", "--theta-a", "float:1.5", "--theta-b", kSqrt2}).code == kExitError);
}

TEST_CASE("sample genericity and config") {
  auto r = invoke({"sample", "genericity", "--rank", "2", "--trials", "50", "--seed", "3"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["trials"] == 50);
  CHECK(j["seed"] == "3");
  CHECK(j["rate"].get<double>() >= 0.9);
  auto again = invoke({"--seed", "3", "sample", "genericity", "--rank", "2", "--trials", "50", "--workers", "3"});
  CHECK(again.out == r.out);

  auto csv = invoke({"--format", "csv", "sample", "genericity", "--rank", "3", "--trials", "20"});
  CHECK(csv.out.rfind("log10_angle_below,count\n", 0) == 0);

  std::string good = temp_file("config_good.json", R"({"format": "text", "period_horizon": 50})");
  std::string bad = temp_file("config_bad.json", R"({"colour": "blue"})");
  setenv("TORIC_AF_CONFIG", good.c_str(), 1);
  r = invoke({"pl", "equal", "--a", "1,2", "--b", "1,3"});
  CHECK(r.out.find("equal: true") != std::string::npos);
  r = invoke({"--json", "pl", "equal", "--a", "1,2", "--b", "3,1"});
  CHECK(json::parse(r.out)["equal"] == true);
  setenv("TORIC_AF_CONFIG", bad.c_str(), 1);
  r = invoke({"pl", "equal", "--a", "1,2", "--b", "1,3"});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("colour") != std::string::npos);
  unsetenv("TORIC_AF_CONFIG");
}
