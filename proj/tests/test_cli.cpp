#include "nlscd/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nlscd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = nlscd::cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / "nlscd_cli_test";
  fs::create_directories(d);
  return d / name;
}

const std::vector<std::string> small_gs{"groundstate", "--nu", "-1", "--alpha", "0", "--p", "3", "--mu", "1",
                                        "--nodes",     "600",  "--rmax", "30"};

}  // namespace

TEST_CASE("spectrum report") {
  auto r = run({"spectrum", "--nu", "-1", "--alpha", "0", "--count", "4"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["verb"] == "spectrum");
  CHECK(j["params"]["nu"] == -1.0);
  CHECK(j["results"]["omega_nu"].get<double>() == doctest::Approx(10.398390228260566).epsilon(1e-12));
  CHECK(j["results"]["ladder"].size() == 4);
  CHECK(j["results"]["friedrichs"].size() == 4);
  CHECK(j["diagnostics"]["all_converged"] == true);
  CHECK(j.contains("citations"));
}

TEST_CASE("validation errors exit with 1") {
  auto a = run({"actionmin", "--nu", "-1", "--alpha", "0", "--p", "3", "--omega", "5"});
  CHECK(a.code == nlscd::cli::validation_error);
  CHECK(a.err.find("omega_nu") != std::string::npos);
  CHECK(run({"groundstate", "--p", "4.5", "--mu", "1"}).code == 1);
  CHECK(run({"groundstate", "--omega", "20"}).code == 1);
  CHECK(run({"spectrum", "--nu", "1"}).code == 1);
  CHECK(run({"spectrum", "--bogus", "1"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"groundstate", "--restarts", "2"}).code == 1);
  CHECK(run({"verify", "--only", "nothing_like_this"}).code == 1);
}

TEST_CASE("help") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("groundstate") != std::string::npos);
}

TEST_CASE("groundstate writes json and csv deterministically") {
  auto j1 = scratch("gs1.json"), c1 = scratch("gs1.csv"), j2 = scratch("gs2.json"), c2 = scratch("gs2.csv");
  auto a = small_gs, b = small_gs;
  a.insert(a.end(), {"--json", j1.string(), "--csv", c1.string()});
  b.insert(b.end(), {"--json", j2.string(), "--csv", c2.string()});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(slurp(j1) == slurp(j2));
  CHECK(slurp(c1) == slurp(c2));
  auto j = json::parse(slurp(j1));
  CHECK(j["verb"] == "groundstate");
  CHECK(j["results"]["mode"] == "mass");
  CHECK(j["results"]["energy"].get<double>() < 0);
  CHECK(j["diagnostics"]["converged"] == true);
  CHECK(j["diagnostics"]["restarts"].size() == 3);
  std::istringstream csv(slurp(c1));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "r,phi,green,u");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 600);
}

TEST_CASE("config file supplies defaults and flags override it") {
  auto cfg = scratch("cfg.json");
  std::ofstream(cfg) << R"({"nu": -1, "alpha": 0, "p": 3, "mu": 1, "nodes": 600, "rmax": 30})";
  auto from_file = run({"groundstate", "--config", cfg.string()});
  auto from_flags = run(small_gs);
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out == from_flags.out);
  auto over = run({"groundstate", "--config", cfg.string(), "--mu", "2"});
  REQUIRE(over.code == 0);
  CHECK(json::parse(over.out)["params"]["mu"] == 2.0);

  auto bad = scratch("bad.json");
  std::ofstream(bad) << R"({"nu": -1, "wibble": 3})";
  CHECK(run({"spectrum", "--config", bad.string()}).code == 1);
  CHECK(run({"spectrum", "--config", scratch("missing.json").string()}).code == 1);

  auto only = scratch("only.json");
  std::ofstream(only) << R"({"only": ["theta"], "samples": 10})";
  auto v = run({"verify", "--config", only.string()});
  REQUIRE(v.code == 0);
  CHECK(json::parse(v.out)["results"]["checks"].size() == 4);
}

TEST_CASE("verify subset") {
  auto r = run({"verify", "--only", "theta,equimeasurability", "--samples", "10"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["results"]["pass"] == true);
  CHECK(j["results"]["checks"].size() == 5);
  for (const auto& c : j["results"]["checks"]) CHECK(c["citation"].get<std::string>().size() > 0);
}

TEST_CASE("kernel dump") {
  auto c = scratch("k.csv");
  auto r = run({"kernel-dump", "--nu", "-1", "--lambda", "4", "--nodes", "100", "--rmax", "20", "--csv", c.string()});
  REQUIRE(r.code == 0);
  std::istringstream csv(slurp(c));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "r,G,Phi,F");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 100);
  CHECK(run({"kernel-dump", "--nu", "-1", "--lambda", "0.5"}).code == 1);
}
