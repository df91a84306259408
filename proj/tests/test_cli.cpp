#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lpa-grkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = grkit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return oracle::fixture(std::string("graphs/") + name); }

}  // namespace

TEST_CASE("cli: k0 and decompose") {
  auto r = cli({"k0", fx("rose4.graph")});
  CHECK(r.code == 0);
  CHECK(r.out == "Z/3\n");
  r = cli({"decompose", fx("hub_three_heads.graph")});
  CHECK(r.code == 0);
  CHECK(r.out.find("M_5(K[x,x^-1])(0,1,1,2,2) ⊕ M_4(K[x^2,x^-2])(0,1,1,2) ⊕ M_7(L(1,2))(0,1,1,1,2,2,2)") !=
        std::string::npos);
}

TEST_CASE("cli: non-polycephaly inputs exit with 3") {
  CHECK(cli({"classify", fx("triangle.graph")}).code == 3);
  CHECK(cli({"decompose", fx("fibonacci.graph")}).code == 3);
  CHECK(cli({"iso", fx("fibonacci.graph"), fx("rose2.graph")}).code == 3);
}

TEST_CASE("cli: k0gr falls back to the colimit for sink-free non-polycephaly graphs") {
  const auto r = cli({"k0gr", fx("triangle.graph")});
  CHECK(r.out.find("⊕_3 Z[1/2]") != std::string::npos);
}

TEST_CASE("cli: iso exit codes and certificates") {
  auto r = cli({"iso", fx("rose_two_feeders.graph"), fx("rose_two_feeders_via_middle.graph"), "--certificate"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Iso") != std::string::npos);
  CHECK(cli({"iso", fx("rose2.graph"), fx("feeder_rose.graph")}).code == 1);
  CHECK(cli({"matrix-iso", "2", "0,0,0", "0,0,0,0"}).code == 1);
  CHECK(cli({"matrix-iso", "2", "0,1,1", "0,1,2,2"}).code == 0);
  CHECK(cli({"matrix-iso", "6", "0,0", "0,0,0"}).code == 2);
  CHECK(cli({"free-iso", "2", "1", "0,0"}).code == 0);
}

TEST_CASE("cli: usage, parse and missing-input errors") {
  CHECK(cli({}).code == grkit::cli::kExitUsage);
  CHECK(cli({"frobnicate"}).code == grkit::cli::kExitUsage);
  CHECK(cli({"k0"}).code == grkit::cli::kExitUsage);
  CHECK(cli({"matrix-iso", "2", "0,x", "0"}).code == grkit::cli::kExitUsage);
  CHECK(cli({"free-iso", "1", "0", "0"}).code == grkit::cli::kExitUsage);
  const auto bad = cli({"k0", oracle::fixture("invalid/undeclared.graph")});
  CHECK(bad.code == grkit::cli::kExitParse);
  CHECK(bad.err.find("line") != std::string::npos);
  CHECK(cli({"k0", oracle::fixture("invalid/garbage.graph")}).code == grkit::cli::kExitParse);
  CHECK(cli({"k0", "/nonexistent/graph.graph"}).code == grkit::cli::kExitNoInput);
  CHECK(cli({"--batch", "/nonexistent-dir", "k0"}).code == grkit::cli::kExitNoInput);
}

TEST_CASE("cli: JSON reports are byte-stable and carry input digests") {
  const auto a = cli({"--json", "k0gr", fx("hub_three_heads.graph")});
  const auto b = cli({"--json", "k0gr", fx("hub_three_heads.graph")});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "k0gr");
  CHECK(j["exit_code"] == 0);
  REQUIRE(j["inputs"].size() == 1);
  CHECK(j["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK_FALSE(j.contains("timing_ms"));
  const auto t = nlohmann::json::parse(cli({"--json", "--timing", "k0", fx("rose2.graph")}).out);
  CHECK(t.contains("timing_ms"));
}

TEST_CASE("cli: text and JSON graph formats give the same answer") {
  const auto a = nlohmann::json::parse(cli({"--json", "k0gr", "--colimit", fx("fibonacci.graph")}).out);
  const auto b = nlohmann::json::parse(cli({"--json", "k0gr", "--colimit", fx("fibonacci.json")}).out);
  CHECK(a["result"] == b["result"]);
}

TEST_CASE("cli: batch mode") {
  const auto dir = std::filesystem::temp_directory_path() / "grkit_batch_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  for (const char* f : {"rose2.graph", "triangle.graph", "single_sink.graph"})
    std::filesystem::copy_file(fx(f), dir / f);
  const auto r = cli({"--json", "--batch", dir.string(), "classify"});
  CHECK(r.code == 3);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["batch"].size() == 3);
  CHECK(j["batch"][0]["inputs"][0]["path"].get<std::string>().find("rose2") != std::string::npos);
  CHECK(j["batch"][2]["exit_code"] == 3);
  CHECK(cli({"--json", "--batch", dir.string(), "classify"}).out == r.out);
  CHECK(cli({"--batch", dir.string(), "monoid-eq", fx("rose2.graph"), "v", "v"}).code ==
        grkit::cli::kExitUsage);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli: monoid budget from flag and environment") {
  auto r = cli({"--json", "monoid-eq", fx("rose4.graph"), "v", "v+v", "--budget", "10"});
  CHECK(nlohmann::json::parse(r.out)["result"]["budget"] == 10);
  CHECK(r.code == 2);
  ::setenv("LPA_GRKIT_BUDGET", "25", 1);
  r = cli({"--json", "monoid-eq", fx("rose4.graph"), "v", "v+v"});
  CHECK(nlohmann::json::parse(r.out)["result"]["budget"] == 25);
  r = cli({"--json", "monoid-eq", fx("rose4.graph"), "v", "v+v", "--budget", "7"});
  CHECK(nlohmann::json::parse(r.out)["result"]["budget"] == 7);
  ::unsetenv("LPA_GRKIT_BUDGET");
  CHECK(cli({"monoid-eq", fx("rose2.graph"), "v", "v+v"}).code == 0);
  CHECK(cli({"monoid-eq", fx("acyclic_uv.graph"), "u", "v+v"}).code == 1);
}

TEST_CASE("cli: bratteli and hsets") {
  const auto r = cli({"bratteli", fx("fibonacci.graph"), "--depth", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("(3,2)") != std::string::npos);
  const auto h = cli({"hsets", fx("acyclic_uv.graph")});
  CHECK(h.code == 0);
  // {v} is not saturated: every edge out of u lands in it.
  CHECK(h.out == "{}\n{u,v}\n");
}
