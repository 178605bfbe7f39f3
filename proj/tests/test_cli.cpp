#include <doctest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "subduce/io.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* cli = std::getenv("SUBDUCE_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "SUBDUCE_CLI must point at the subduce binary");
  return cli;
}

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + cli_path() + " " + args +
                    " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.output.append(buffer, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("solve emits a verified solution") {
  RunResult r = run("solve --lambda 4,2 --lambda1 2,1 --lambda2 2,1 --q 1.5");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["multiplicity"] == 1);
  CHECK(j["coefficients"].size() == 6);
  CHECK(j["q"] == 1.5);

  // the payload parses back into a verifiable solution
  subduce::SDCSolution sol = subduce::solution_from_json(j);
  CHECK(subduce::verify_solution(sol, subduce::QParam(1.5), 1e-8).pass());
}

TEST_CASE("solve single box on each side") {
  RunResult r = run("solve --lambda 2 --lambda1 1 --lambda2 1");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  REQUIRE(j["coefficients"].size() == 1);
  CHECK(j["coefficients"][0]["value"] == 1.0);
}

TEST_CASE("solve reports incompatible sizes as an empty solution") {
  RunResult r = run("solve --lambda 3,1 --lambda1 2,1 --lambda2 3");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["multiplicity"] == 0);
  CHECK(j["coefficients"].empty());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("solve --lambda 4,x --lambda1 2 --lambda2 1").exit_code == 2);
  CHECK(run("solve --lambda 4,2").exit_code == 2);
  CHECK(run("bogus").exit_code == 2);
  CHECK(run("table").exit_code == 2);
  CHECK(run("solve --lambda 4,2 --lambda1 2,1 --lambda2 2,1 --q -1").exit_code == 2);
}

TEST_CASE("full and reduced solve modes serialize identically") {
  std::string flags = "--lambda 4,2 --lambda1 2,1 --lambda2 2,1 --q 1.3";
  RunResult reduced = run("solve " + flags + " --mode reduced");
  RunResult full = run("solve " + flags + " --mode full");
  CHECK(reduced.exit_code == 0);
  CHECK(full.exit_code == 0);
  CHECK(reduced.output == full.output);
}

TEST_CASE("verify passes on solvable cases") {
  CHECK(run("verify --lambda 2 --lambda1 1 --lambda2 1").exit_code == 0);
  RunResult r = run("verify --lambda 3,2,1 --lambda1 2,1 --lambda2 2,1 "
                    "--mode full --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["pass"] == true);
  CHECK(j["multiplicity"] == 2);
  CHECK_FALSE(j["oracle"].is_null());
  CHECK(j["oracle"]["pass"] == true);
}

TEST_CASE("verify handles the multiplicity-three reduction") {
  RunResult r = run("verify --lambda 4,3,2,1 --lambda1 3,2,1 --lambda2 3,1 "
                    "--format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["multiplicity"] == 3);
  CHECK(j["pass"] == true);
  CHECK(j["verification"]["residual_ortho_row"].get<double>() < 1e-9);
  CHECK(j["verification"]["coupling_checked"] == true);
}

TEST_CASE("table reproduces multiplicities and unknown counts") {
  RunResult r = run("table --format csv \"4,2/2,1/2,1\" \"4,3,2,1/3,2,1/3,1\" "
                    "\"5,4,3,2,1/4,3,2,1/4,1\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"4,2\",\"2,1\",\"2,1\",1,36,6") != std::string::npos);
  CHECK(r.output.find("\"4,3,2,1\",\"3,2,1\",\"3,1\",3,36864,72") != std::string::npos);
  CHECK(r.output.find("\"5,4,3,2,1\",\"4,3,2,1\",\"4,1\",4,899678208,480") !=
        std::string::npos);

  RunResult sweep = run("table --sizes 4,2 --format csv");
  CHECK(sweep.exit_code == 0);
  // every (lambda, lambda1, lambda2) triple with those box counts
  CHECK(std::count(sweep.output.begin(), sweep.output.end(), '\n') == 1 + 5 * 2 * 2);
}

TEST_CASE("dump-rep emits the documented matrix") {
  RunResult csv = run("dump-rep --shape 2,1 --index 2 --q 1 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output == "row,col,value\n"
                      "0,0,-0.5\n"
                      "0,1,0.866025403784\n"
                      "1,0,0.866025403784\n"
                      "1,1,0.5\n");
  RunResult json = run("dump-rep --shape 2,1 --index 2 --q 1 --format json");
  nlohmann::json j = nlohmann::json::parse(json.output);
  CHECK(j["dimension"] == 2);
  CHECK(j["matrix"][0][0] == -0.5);
  CHECK(run("dump-rep --shape 2,1 --index 3").exit_code == 2);
}

TEST_CASE("graph output formats") {
  RunResult dot = run("graph --lambda 4,2 --lambda1 2,1 --lambda2 2,1");
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.find("graph subduction {") != std::string::npos);
  CHECK(dot.output.find(" -- ") != std::string::npos);
  CHECK(dot.output.find("components:") != std::string::npos);
  RunResult csv = run("graph --lambda 4,2 --lambda1 2,1 --lambda2 2,1 --format csv");
  CHECK(csv.output.rfind("row,col,value\n", 0) == 0);
}

TEST_CASE("help, version and file output") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("solve --help").exit_code == 0);
  RunResult version = run("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.output.find("0.1.0") != std::string::npos);

  std::filesystem::path out =
      std::filesystem::temp_directory_path() / "subduce-out-test.json";
  std::filesystem::remove(out);
  RunResult solved =
      run("solve --lambda 2 --lambda1 1 --lambda2 1 --out " + out.string());
  CHECK(solved.exit_code == 0);
  CHECK(solved.output.empty());
  std::ifstream file(out);
  nlohmann::json j = nlohmann::json::parse(file);
  CHECK(j["multiplicity"] == 1);
  std::filesystem::remove(out);

  RunResult csv = run("solve --lambda 4,2 --lambda1 2,1 --lambda2 2,1 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("eta,skew,m2,value\n", 0) == 0);
  CHECK(std::count(csv.output.begin(), csv.output.end(), '\n') == 7);
}

TEST_CASE("cache hits return byte-identical payloads") {
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "subduce-cache-test";
  std::filesystem::remove_all(dir);
  std::string flags =
      "solve --lambda 3,2,1 --lambda1 2,1 --lambda2 2,1 --q 1.2 --cache-dir " +
      dir.string();
  RunResult fresh = run(flags);
  REQUIRE(fresh.exit_code == 0);
  RunResult hit = run(flags);
  CHECK(hit.exit_code == 0);
  CHECK(hit.output == fresh.output);

  // the second run really reads the file: tampering shows through
  std::filesystem::path cached;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    cached = entry.path();
  REQUIRE(!cached.empty());
  std::ofstream(cached, std::ios::binary) << "{\"tampered\":true}\n";
  RunResult tampered = run(flags);
  CHECK(tampered.output == "{\"tampered\":true}\n");

  // the environment variable overrides the flag
  std::filesystem::path env_dir =
      std::filesystem::temp_directory_path() / "subduce-cache-env";
  std::filesystem::remove_all(env_dir);
  RunResult via_env = run(flags, "SUBDUCE_CACHE_DIR=" + env_dir.string());
  CHECK(via_env.exit_code == 0);
  CHECK(via_env.output == fresh.output);
  bool wrote_env_dir = std::filesystem::exists(env_dir) &&
                       !std::filesystem::is_empty(env_dir);
  CHECK(wrote_env_dir);
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(env_dir);
}

TEST_CASE("repeated runs are byte-identical") {
  std::string flags = "solve --lambda 4,3,2,1 --lambda1 3,2,1 --lambda2 3,1 --q 1.5";
  RunResult a = run(flags);
  RunResult b = run(flags);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  nlohmann::json j = nlohmann::json::parse(a.output);
  CHECK(j["multiplicity"] == 3);
  CHECK(j["coefficients"].size() == 72 * 3);
}
