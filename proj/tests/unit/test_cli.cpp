#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "reeb_forge/cli.hpp"
#include "reeb_forge/serialization.hpp"

using namespace reeb;
using reeb::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("reeb_forge_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

json read(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("parse_args") {
  const std::vector<std::string> a{"plan-free", "--ambient", "3", "--ranks", "1,1,0,2", "-o", "s.json"};
  const auto c = cli::parse_args(a);
  CHECK(c.verb == cli::Verb::PlanFree);
  CHECK(c.ambient == 3);
  CHECK(c.ranks == std::vector<std::int64_t>{1, 1, 0, 2});
  CHECK(c.output == "s.json");

  const std::vector<std::string> missing{"plan-free", "--ranks", "1,1"};
  try {
    cli::parse_args(missing);
    FAIL("expected UsageError");
  } catch (const cli::UsageError& e) {
    CHECK(e.exit_code() == 2);
    CHECK(std::string(e.what()).find("--ambient") != std::string::npos);
  }
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"plan-free", "--ambient", "3", "--ranks", "1,1,0,2", "--bogus"}).code == 2);
  CHECK(run({"apply", "/nonexistent/script.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
}

TEST_CASE("plan-free writes a script that apply reproduces") {
  TempDir tmp;
  const auto r = run({"plan-free", "--ambient", "3", "--ranks", "1,1,0,2", "-o", tmp.file("plan.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("chi = -2") != std::string::npos);
  const json plan = read(tmp.file("plan.json"));
  CHECK(plan.at("target_met") == true);

  write(tmp.file("script.json"), plan.at("script").dump());
  const auto a = run({"apply", tmp.file("script.json"), "-o", tmp.file("profile.json")});
  CHECK(a.code == 0);
  const json profile = read(tmp.file("profile.json"));
  CHECK(profile.at("homology") == plan.at("achieved"));
  CHECK(run({"verify", tmp.file("profile.json")}).code == 0);
  CHECK(run({"verify", "--structure", tmp.file("profile.json")}).code == 0);
}

TEST_CASE("infeasible targets exit 1") {
  const auto r = run({"plan-free", "--ambient", "3", "--ranks", "1,2,0,1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("g_n") != std::string::npos);
  CHECK(run({"plan-euler", "--ambient", "2", "--target", "3"}).code == 1);
  CHECK(run({"plan-free", "--ambient", "3", "--ranks", "1,2"}).code == 2);
}

TEST_CASE("torsion planning and the torsion gap") {
  TempDir tmp;
  const auto r = run({"plan-torsion", "--ambient", "7", "--gs", "1", "--groups", "Z/3", "-o", tmp.file("plan.json")});
  REQUIRE(r.code == 0);
  const json plan = read(tmp.file("plan.json"));
  write(tmp.file("script.json"), plan.at("script").dump());
  REQUIRE(run({"apply", tmp.file("script.json"), "-o", tmp.file("profile.json")}).code == 0);

  const auto gap = run({"verify", "--thm5", "--i0", "1", tmp.file("profile.json"), "-o", tmp.file("gap.json")});
  CHECK(gap.code == 0);
  CHECK(gap.out.find("finite H_2") != std::string::npos);
  CHECK(read(tmp.file("gap.json")).at("holds") == true);
  CHECK(run({"torsion-gap", "--i0", "1", tmp.file("profile.json")}).code == 0);
  CHECK(run({"verify", "--thm5", "--structure", tmp.file("profile.json")}).code == 2);

  write(tmp.file("bad.json"),
        R"({"ambient":4,"homology":[{"rank":1,"torsion":[]},{"rank":0,"torsion":[]},{"rank":0,"torsion":[2]},)"
        R"({"rank":0,"torsion":[]},{"rank":1,"torsion":[]}]})");
  CHECK(run({"verify", "--thm5", "--i0", "1", tmp.file("bad.json")}).code == 1);

  CHECK(run({"plan-torsion", "--ambient", "8", "--gs", "0,-1", "--groups", "Z/2;0"}).code == 0);
  CHECK(run({"plan-torsion", "--ambient", "8", "--gs", "0,-1", "--groups", "Z/2"}).code == 2);
}

TEST_CASE("other verbs") {
  TempDir tmp;
  CHECK(run({"plan-wedge", "--ambient", "4", "--ranks", "1,3,0,0,1"}).code == 0);
  CHECK(run({"plan-euler", "--ambient", "4", "--target", "-5"}).code == 0);
  CHECK(run({"plan-bundle", "--ambient", "6", "--k", "4", "--l", "0", "--base", R"({"kind":"surface","genus":1})"}).code ==
        0);
  CHECK(run({"plan-bundle", "--ambient", "6", "--k", "3", "--l", "0", "--base", "sphere:2"}).code == 2);

  const auto o = run({"oracle-check", "--space", "lens:3,1"});
  CHECK(o.code == 0);
  CHECK(o.out.find("formula: (Z, Z/3, 0, Z)") != std::string::npos);
  CHECK(o.out.find("oracle:  (Z, Z/3, 0, Z)") != std::string::npos);
  CHECK(run({"oracle-check", "--space", "hsphere:5"}).code == 1);
  CHECK(run({"oracle-check", "--space", "lens:4,2"}).code == 2);

  const auto c = run({"catalog", "--validate", "-o", tmp.file("catalog.json")});
  CHECK(c.code == 0);
  CHECK(read(tmp.file("catalog.json")).size() > 100);

  write(tmp.file("p.json"), R"({"ambient":4,"homology":[{"rank":1,"torsion":[]},{"rank":0,"torsion":[]},)"
                            R"({"rank":1,"torsion":[]},{"rank":0,"torsion":[]},{"rank":1,"torsion":[]}]})");
  const auto inf = run({"infer-source", "--m", "10", tmp.file("p.json")});
  CHECK(inf.code == 0);
  CHECK(inf.out.find("H_5(M) = 0") != std::string::npos);
  CHECK(run({"infer-source", "--m", "3", tmp.file("p.json")}).code == 2);

  write(tmp.file("broken.json"), "{ not json");
  CHECK(run({"apply", tmp.file("broken.json")}).code == 2);
  write(tmp.file("deep.json"), R"({"ambient":3,"ops":[{"type":"normal","manifold":{"kind":"sphere","dim":3}}]})");
  const auto deep = run({"apply", tmp.file("deep.json")});
  CHECK(deep.code == 2);
  CHECK(deep.err.find("op 0") != std::string::npos);
}

TEST_CASE("written JSON is stable and output deterministic") {
  TempDir tmp;
  const auto a = run({"plan-wedge", "--ambient", "5", "--ranks", "1,2,1,0,3,2", "-o", tmp.file("a.json")});
  const auto b = run({"plan-wedge", "--ambient", "5", "--ranks", "1,2,1,0,3,2", "-o", tmp.file("b.json")});
  CHECK(a.code == 0);
  CHECK(read(tmp.file("a.json")) == read(tmp.file("b.json")));
  const json j = read(tmp.file("a.json"));
  CHECK(json::parse(j.dump()) == j);
  CHECK(a.out.substr(0, a.out.find("wrote")) == b.out.substr(0, b.out.find("wrote")));
}
