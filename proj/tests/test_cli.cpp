#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

// Exercises the installed binary end to end.  EVK_CLI_PATH is injected by the
// build so the test never guesses at layout.
namespace {

int run(const std::string& args) {
  std::string cmd = std::string(EVK_CLI_PATH) + " " + args;
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("verify subcommand emits a parseable report") {
  const std::string out = "cli_symfun.json";
  int rc = run("verify --suite symfun --trials 1 --no-timing --out " + out +
               " > /dev/null");
  CHECK(rc == 0);
  auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["config"]["suite"] == "symfun");
  CHECK(j[0]["results"].size() > 0);
  for (const auto& row : j[0]["results"]) {
    CHECK(row["status"] != "fail");
    CHECK(row["millis"] == 0);
  }
  std::remove(out.c_str());
}

TEST_CASE("verify rejects inconsistent configuration") {
  CHECK(run("verify --suite ga --n 1 > /dev/null 2>&1") == 2);
  CHECK(run("verify --suite minimalistic --n 2 > /dev/null 2>&1") == 2);
  CHECK(run("verify --suite current --order 3 --rmax 3 > /dev/null 2>&1") == 2);
  CHECK(run("verify --suite ga --params fixed --hbar 0 > /dev/null 2>&1") == 2);
}

TEST_CASE("expand reports generators absent from the assignment") {
  const std::string out = "cli_expand.txt";
  int rc = run("expand --gen H --i 0 --r 1 > " + out);
  CHECK(rc == 0);
  CHECK(slurp(out).find("not-in-paper") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("expand prints the template tree and the matrix form") {
  const std::string out = "cli_tree.txt";
  CHECK(run("expand --gen T --i 1 --j 2 --r 2 --n 3 > " + out) == 0);
  CHECK(slurp(out).find("E[1,x0]") != std::string::npos);
  CHECK(run("expand --gen X+ --i 1 --r 0 --n 3 --depth 1 --format matrix > " + out) == 0);
  CHECK(slurp(out).find("vac") != std::string::npos);
  CHECK(run("expand --gen T --i 1 --j 1 --r 1 --json > " + out) == 0);
  CHECK(nlohmann::json::parse(slurp(out)).is_object());
  std::remove(out.c_str());
}

TEST_CASE("bad invocations exit with the usage code") {
  CHECK(run("frobnicate > /dev/null 2>&1") == 2);
  CHECK(run("expand --gen Q > /dev/null 2>&1") == 2);
  CHECK(run("> /dev/null 2>&1") == 2);
}

TEST_CASE("reports are deterministic without timing") {
  const std::string a = "cli_det_a.json";
  const std::string b = "cli_det_b.json";
  std::string args = "verify --suite infra --trials 1 --depth 1 --no-timing";
  CHECK(run(args + " --out " + a + " > /dev/null") == 0);
  CHECK(run(args + " --out " + b + " > /dev/null") == 0);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}
