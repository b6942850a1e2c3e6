#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fiveprime/cli.hpp"
#include "json.hpp"

using namespace fiveprime;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"fiveprime"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : store) argv.push_back(s.c_str());
  std::ostringstream out, err;
  int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  return {std::istreambuf_iterator<char>(is), {}};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "fiveprime_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("exppair word") {
  Outcome o = run({"exppair", "--word", "BAAB"});
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("kappa=2/7 lam=4/7") != std::string::npos);
  CHECK(run({"exppair", "--word", "BQ"}).code == kExitUsage);
}

TEST_CASE("usage errors exit 2 and print the synopsis") {
  Outcome o = run({"exppair", "--no-such-flag"});
  CHECK(o.code == kExitUsage);
  CHECK(o.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("hb-verify") {
  Outcome o = run({"hb-verify", "--k", "2", "--nmax", "10000"});
  CHECK(o.code == kExitOk);
  auto j = nlohmann::json::parse(o.out);
  CHECK(j["max_error"].get<double>() <= 1e-9);
  CHECK(run({"hb-verify", "--k", "5", "--nmax", "100"}).code == kExitUsage);
}

TEST_CASE("primes and regions") {
  Outcome p = run({"primes", "--X", "100", "--lambda", "0.1"});
  REQUIRE(p.code == kExitOk);
  auto j = nlohmann::json::parse(p.out);
  CHECK(j["count"] == 21);
  Outcome r = run({"regions", "--X", "1e6", "--log-power", "0", "--x", "0", "--y", "0"});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["region"] == "Omega1");
}

TEST_CASE("classify") {
  Outcome o = run({"classify", "--X", "1e12", "--R", "1e10", "--blocks",
                   "1e12,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1"});
  REQUIRE(o.code == kExitOk);
  auto j = nlohmann::json::parse(o.out);
  CHECK(j["labels"][0]["kind"] == "TypeI");
  CHECK(j["B2_le_C"] == true);
  CHECK(run({"classify", "--X", "1e12", "--R", "1e10", "--blocks", "1,2"}).code == kExitUsage);
}

TEST_CASE("config file with flag overrides") {
  auto cfg = scratch("config.json");
  std::ofstream(cfg) << R"({"c": 1.03, "d": 1.01, "lambda_cut": 0.1, "eps1": 0.5, "eps2": 0.5})";
  Outcome o = run({"--config", cfg.string(), "search", "--X", "400", "--ratio", "1.026"});
  REQUIRE(o.code == kExitOk);
  auto j = nlohmann::json::parse(o.out);
  CHECK(j["raw_count"] == 130);
  Outcome wider = run({"--config", cfg.string(), "search", "--X", "400", "--ratio", "1.026", "--eps1", "2"});
  CHECK(nlohmann::json::parse(wider.out)["eps1"] == 2.0);
  auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"c": 1.03, "gamma": 2})";
  CHECK(run({"--config", bad.string(), "search", "--X", "400"}).code == kExitUsage);
}

TEST_CASE("search output is reproducible and carries a manifest") {
  auto a = scratch("a.csv"), b = scratch("b.csv");
  for (const auto& path : {a, b}) {
    Outcome o = run({"search", "--X", "400", "--ratio", "1.026", "--eps1", "2", "--eps2", "2", "--lambda", "0.1",
                     "--threads", "2", "--out", path.string()});
    REQUIRE(o.code == kExitOk);
  }
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a.string() + ".summary.json") == slurp(b.string() + ".summary.json"));
  CHECK(slurp(a).rfind("p1,p2,p3,p4,p5,r1,r2,weight\n", 0) == 0);
  auto manifest = nlohmann::json::parse(slurp(a.string() + ".manifest.json"));
  CHECK(manifest["command"] == "search");
  CHECK(manifest.contains("config_digest"));
  CHECK(manifest.contains("version"));
  CHECK(manifest.contains("elapsed_seconds"));
  auto other = nlohmann::json::parse(slurp(b.string() + ".manifest.json"));
  CHECK(manifest["config_digest"] != other["config_digest"]);  // output path is part of argv
}

TEST_CASE("expsum point and grid") {
  Outcome o = run({"expsum", "--X", "1000", "--mode", "point", "--x", "0", "--y", "0"});
  REQUIRE(o.code == kExitOk);
  auto path = scratch("grid.csv");
  Outcome g = run({"expsum", "--X", "1000", "--mode", "grid", "--x-max", "0.01", "--nx", "4", "--y-max", "0.01",
                   "--ny", "3", "--out", path.string()});
  REQUIRE(g.code == kExitOk);
  CHECK(std::filesystem::exists(path.string() + ".json"));
  CHECK(std::filesystem::exists(path.string() + ".manifest.json"));
  CHECK(run({"expsum", "--X", "1000", "--mode", "grid"}).code == kExitUsage);
}

TEST_CASE("verify runs single criteria") {
  Outcome o = run({"verify", "--only", "1"});
  CHECK(o.code == kExitOk);
  CHECK(o.out.rfind("PASS criterion 1", 0) == 0);
  CHECK(run({"verify", "--only", "11"}).code == kExitUsage);
}
