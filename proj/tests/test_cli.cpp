#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kmpscp/cli.hpp"
#include "kmpscp/harness.hpp"
#include "support.hpp"

using namespace kmpscp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "kmpscp_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("failure table") {
  Run r = cli({"failure", "--pattern", "ababa"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("failure=0,0,0,1,2\n") != std::string::npos);
  CHECK(r.out.find("4  abab") != std::string::npos);
}

TEST_CASE("specialize report") {
  Run r = cli({"specialize", "--pattern", "aab", "--report"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("pivots=4 generalizations=0 ", 0) == 0);
}

TEST_CASE("specialize then run") {
  fs::path out = scratch("residual_aab.scl");
  fs::path dot = scratch("aab.dot");
  Run s = cli({"specialize", "--pattern", "aab", "--out", out.string(), "--dot", dot.string()});
  REQUIRE(s.code == kExitOk);
  CHECK(slurp(dot).rfind("digraph", 0) == 0);
  Run r = cli({"run", "--program", out.string(), "--entry", "F_0", "--input", "aaab", "--steps"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "T\nsteps=5\n");
  for (const auto& y : testing::words("abz", 0, 5)) {
    Run v = cli({"run", "--program", out.string(), "--entry", "F_0", "--input", y});
    CHECK(v.out == (testing::contains("aab", y) ? "T\n" : "F\n"));
  }
}

TEST_CASE("run the naive matcher from its file") {
  Run r = cli({"run", "--program", KMPSCP_SOURCE_DIR "/programs/naive_matcher.scl", "--entry", "S", "--input", "a",
               "--input", "ba", "--steps"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "T\nsteps=4\n");
}

TEST_CASE("evaluation errors exit with 1") {
  fs::path p = scratch("stuck.scl");
  std::ofstream(p) << "G { 'a':x = T; }\n";
  Run r = cli({"run", "--program", p.string(), "--entry", "G", "--input", "b"});
  CHECK(r.code == kExitFailure);
  CHECK_FALSE(r.err.empty());
  fs::path bad = scratch("bad.scl");
  std::ofstream(bad) << "G { 'a':x = T }\n";
  CHECK(cli({"run", "--program", bad.string(), "--entry", "G", "--input", "a"}).code == kExitFailure);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"failure"}).code == kExitUsage);
  CHECK(cli({"failure", "--pattern", "ab", "--bogus"}).code == kExitUsage);
  CHECK(cli({"failure", "--pattern", "a b"}).code == kExitUsage);
  CHECK(cli({"verify", "--pattern", "ab", "--corpus", "default"}).code == kExitUsage);
  CHECK(cli({"tree", "--pattern", "ab"}).code == kExitUsage);
  CHECK(cli({"specialize", "--pattern", "ab", "--whistle", "sometimes"}).code == kExitUsage);
  CHECK(cli({"run", "--program", "/nonexistent/file.scl", "--entry", "F_0", "--input", "a"}).code == kExitUsage);
  Run r = cli({"run", "--program", KMPSCP_SOURCE_DIR "/programs/naive_matcher.scl", "--entry", "S", "--input", "a"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("takes 2 arguments") != std::string::npos);
}

TEST_CASE("tree export") {
  Run r = cli({"tree", "--pattern", "a", "--dot", "-"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("peripheries=2") != std::string::npos);
  CHECK(r.out.find("⟨T⟩") != std::string::npos);
  CHECK(r.out.find("⟨F⟩") != std::string::npos);
  std::size_t dashed = 0;
  for (std::size_t i = r.out.find("style=dashed"); i != std::string::npos; i = r.out.find("style=dashed", i + 1)) ++dashed;
  CHECK(dashed == 1);
  Run t = cli({"tree", "--pattern", "aab", "--text"});
  CHECK(t.out.rfind("node 0 pivot ⟨S(\"aab\", #y)⟩\n", 0) == 0);
}

TEST_CASE("verify a single pattern") {
  Run a = cli({"verify", "--pattern", "aab", "--seed", "7"});
  Run b = cli({"verify", "--pattern", "aab", "--seed", "7"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("summary patterns=1 passed=1 failed=0") != std::string::npos);
}

TEST_CASE("a generalizing whistle makes specialize fail") {
  Run r = cli({"specialize", "--pattern", "aab", "--whistle", "all", "--report"});
  CHECK(r.code == kExitFailure);
  CHECK(r.out.find("generalizations=0") == std::string::npos);
}
