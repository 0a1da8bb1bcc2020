#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "support.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HOWSON_BIN + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return testing::fixture(name); }

}  // namespace

TEST_CASE("exit codes across the fixture matrix") {
  struct Case {
    std::string args;
    std::string env;
    int code;
  };
  const std::vector<Case> cases = {
      {"validate " + fx("d1-z2.json"), "", 0},
      {"validate " + fx("bad-associativity.json"), "", 1},
      {"validate " + fx("noncommuting-free-abelian.json"), "", 1},
      {"validate " + fx("not-automorphism.json"), "", 1},
      {"validate " + fx("malformed.json"), "", 1},
      {"validate " + fx("does-not-exist.json"), "", 3},
      {"", "", 3},
      {"frobnicate", "", 3},
      {"intersect " + fx("d1-z2.json") + " --x1 X1", "", 3},
      {"intersect " + fx("d1-z2.json") + " --x1 X1 --x2 NOPE", "", 1},
      {"member " + fx("d1-z2.json") + " --gens X1 --e q --g '[0,1]'", "", 1},
      {"member " + fx("d1-z2.json") + " --gens X1 --e a --g '[0,0]'", "", 1},
      {"bound --sizeE 3 --sizeX 1", "", 0},
      {"bound --sizeE 3", "", 3},
      {"reduce --builtin zchain --x1 '[0,1]' --budget 1000", "", 2},
      {"reduce --builtin example-s4 --x1 '[4,0,1]' --x2 '[3,0,1]' --budget 1000", "", 0},
      {"reduce --builtin nope --x1 '[0,1]'", "", 3},
      {"automaton " + fx("d1-z2.json") + " --gens X1", "HOWSON_CAP=automaton_states=2", 2},
      {"automaton " + fx("d1-z2.json") + " --gens X1", "HOWSON_CAP=bogus=1", 3},
      {"zchain --x '[3,0]'", "", 1},
      {"zchain --x '[0,2];[-1,3]' --depth 8", "", 0},
      {"zchain --x '[0,2' --depth 8", "", 1},
      {"oracle " + fx("d1-z2.json") + " --x1 X1 --x2 X2", "", 0},
      {"selftest --count 20", "", 0},
  };
  for (const auto& c : cases) {
    CAPTURE(c.args);
    CHECK(run_cli(c.args, c.env).code == c.code);
  }
}

TEST_CASE("intersect on the D1 fixture") {
  Run r = run_cli("intersect " + fx("d1-z2.json") + " --x1 X1 --x2 X2 --poly 0,1");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["gens"].size() == 2);
  CHECK(j["certificates_valid"] == true);
  CHECK(j["poly_bound"] == 4 * 6 * 0 + j["poly_bound"].get<std::uint64_t>());
  Run raw = run_cli("intersect " + fx("d1-z2.json") + " --x1 X1 --x2 X2 --no-prune");
  CHECK(nlohmann::json::parse(raw.out)["gens"].size() == 3);
  Run empty = run_cli("intersect " + fx("d1-z2.json") + " --x1 A --x2 B");
  CHECK(nlohmann::json::parse(empty.out)["gens"].empty());
}

TEST_CASE("bound output") {
  Run r = run_cli("bound --sizeE 3 --sizeX 1");
  CHECK(nlohmann::json::parse(r.out) == nlohmann::json{{"rank_bound", 4095}});
  Run p = run_cli("bound --sizeE 3 --poly 0,1 --n 2");
  CHECK(nlohmann::json::parse(p.out)["poly_bound"] == 33554436);
  Run big = run_cli("bound --sizeE 5 --sizeX 2");
  CHECK(nlohmann::json::parse(big.out)["rank_bound"].is_string());
}

TEST_CASE("member and sofe") {
  Run m = run_cli("member " + fx("d1-z2.json") + " --gens X1 --e b --g '[0,1]'");
  REQUIRE(m.code == 0);
  auto j = nlohmann::json::parse(m.out);
  CHECK(j["member"] == true);
  CHECK(j["certificate_valid"] == true);
  Run f = run_cli("member " + fx("d1-free.json") + " --gens X1 --e 0 --g 'x y-'");
  CHECK(nlohmann::json::parse(f.out)["member"] == true);
  Run s = run_cli("sofe " + fx("d1-z2.json") + " --gens X1 --e a");
  auto sj = nlohmann::json::parse(s.out);
  CHECK(sj["empty"] == false);
  CHECK(sj["rank_bound"] == 4095);
}

TEST_CASE("automaton JSON and DOT export") {
  const std::string dot = "howson_cli_test.dot";
  Run r = run_cli("automaton " + fx("d1-z2.json") + " --gens X1 --e 0 --dot " + dot);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["state_count"] == 7);
  std::ifstream in(dot);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("doublecircle") != std::string::npos);
  std::remove(dot.c_str());
}

TEST_CASE("reduced instances re-parse") {
  Run r = run_cli("reduce --builtin example-s4 --x1 '[4,0,1]' --x2 '[3,0,1]' --budget 1000");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  const std::string path = "howson_cli_reduced.json";
  {
    std::ofstream out(path);
    out << j["instance"].dump();
  }
  CHECK(run_cli("validate " + path).code == 0);
  Run inter = run_cli("oracle " + path + " --x1 X1 --x2 X2");
  CHECK(inter.code == 2);
  Run cert = run_cli("intersect " + path + " --x1 X1 --x2 X2");
  CHECK(nlohmann::json::parse(cert.out)["certificates_valid"] == true);
  std::remove(path.c_str());
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> commands = {
      "validate " + fx("d1-z2.json"),
      "aut " + fx("s3-antichain.json"),
      "automaton " + fx("d1-free.json") + " --gens X1",
      "sofe " + fx("s3-antichain.json") + " --gens X1 --e a",
      "intersect " + fx("d1-z2.json") + " --x1 X1 --x2 X2",
      "intersect " + fx("d1-free.json") + " --x1 X1 --x2 X2",
      "intersect " + fx("d1-free-abelian.json") + " --x1 X1 --x2 X2",
      "intersect " + fx("s3-antichain.json") + " --x1 X1 --x2 X2",
      "member " + fx("d1-free.json") + " --gens X2 --e a --g 'x x'",
      "bound --sizeE 4 --sizeX 2",
      "reduce --builtin example-s4 --x1 '[4,0,1]' --x2 '[3,0,1]'",
      "zchain --x '[0,2];[-1,3]' --depth 8 --x2 '[0,3]'",
      "oracle " + fx("s3-antichain.json") + " --x1 X1 --x2 X2",
      "selftest --count 30 --seed 5",
  };
  for (const auto& c : commands) {
    CAPTURE(c);
    Run a = run_cli(c);
    Run b = run_cli(c);
    CHECK(a.code == 0);
    CHECK_FALSE(a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("golden outputs match byte for byte") {
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  const std::vector<std::pair<std::string, std::string>> golden = {
      {"intersect " + fx("d1-z2.json") + " --x1 X1 --x2 X2", "golden/intersect-d1-z2.json"},
      {"bound --sizeE 3 --sizeX 1", "golden/bound-3-1.json"},
      {"zchain --x '[0,2];[-1,3]' --depth 8", "golden/zchain-example.json"},
  };
  for (const auto& [args, file] : golden) {
    CAPTURE(args);
    Run r = run_cli(args);
    CHECK(r.code == 0);
    CHECK(r.out == slurp(fx(file)));
  }
}
