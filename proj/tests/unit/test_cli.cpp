#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "wh/cli.hpp"
#include "wh/parallel.hpp"
#include "wh/quantize.hpp"

using namespace wh;
using namespace wh::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("wh_cli_test_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  json out;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "whtool");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream os;
  const int code = run_main(static_cast<int>(argv.size()), argv.data(), os);
  set_thread_count(1);
  return {code, json::parse(os.str())};
}

fs::path write_json(const fs::path& p, const json& j) {
  std::ofstream(p) << j.dump();
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json coarse_quantize() {
  return {{"command", "quantize"},
          {"parameters",
           {{"grid", {{"omega", {{"half_width", 16}, {"count", 64}}}, {"b", {{"half_width", 16}, {"count", 64}}}}},
            {"time", {{"half_width", 20}, {"count", 64}}}}}};
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(json{{"command", "gabor"}, {"seed", 7}, {"parameters", {{"probe_width", 2.0}}}});
  CHECK(c.command == "gabor");
  CHECK(c.seed == 7);
  CHECK(c.parameters["probe_width"] == 2.0);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"comand", "gabor"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"seed", -1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"parameters", 3}}), ConfigError);
}

TEST_CASE("parameter validation happens before any work") {
  ExperimentConfig c;
  c.command = "stellar";
  c.parameters = {{"s", 1.2}};
  try {
    execute(c);
    FAIL("accepted s = 1.2");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "s must lie in (0,1)");
  }
  c.parameters = {{"s", 0.5}, {"speed", 3}};
  CHECK_THROWS_AS(execute(c), ConfigError);
  c.command = "gabor";
  c.parameters = {{"signal", "square"}};
  CHECK_THROWS_AS(execute(c), ConfigError);
  c.parameters = {{"time", {{"half_width", 10}, {"count", 1}}}};
  CHECK_THROWS_AS(execute(c), ConfigError);
  c.command = "cylinder";
  c.parameters = {{"lambda", 60.0}};
  CHECK_THROWS_AS(execute(c), ConfigError);
  c.command = "teleport";
  CHECK_THROWS_AS(execute(c), ConfigError);
}

TEST_CASE("hash and number formatting") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-16.0) == "-16");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("grid CSV round trip") {
  TempDir tmp;
  const PhaseSpaceGrid g{Grid1D::centered(4.0, 16), Grid1D(-1.0, 0.3, 9)};
  const auto w = par_kernel_closed(1.5, 0.7, g);
  const auto text = grid_csv(g.omega, g.b, "omega", "b", w.values);
  CHECK(text.rfind("# omega_start,omega_step,n_omega,b_start,b_step,n_b\n# -4,0.5,16,-1,0.29999999999999999,9\n", 0) == 0);
  std::ofstream(tmp.path / "w.csv") << text;
  const auto back = read_distribution_csv(tmp.path / "w.csv");
  CHECK(back.grid == g);
  CHECK(back.values == w.values);
  std::ofstream(tmp.path / "bad.csv") << "# 0,1,2,0,1,2\n1,2\n3\n";
  CHECK_THROWS_AS(read_distribution_csv(tmp.path / "bad.csv"), ConfigError);
  CHECK_THROWS_AS(read_distribution_csv(tmp.path / "missing.csv"), ConfigError);
}

TEST_CASE("run_main exit codes and manifest") {
  TempDir tmp;
  SUBCASE("group-check passes") {
    const auto r = run({"group-check", "--out", (tmp.path / "gc").string()});
    CHECK(r.code == kExitOk);
    const auto rep = json::parse(slurp(tmp.path / "gc" / "group_check.json"));
    CHECK(rep["all_passed"] == true);
    CHECK(rep["schema"] == 1);
    const auto man = json::parse(slurp(tmp.path / "gc" / "manifest.json"));
    CHECK(man["status"] == "ok");
    CHECK(man["outputs"][0]["sha256"] == sha256_hex(slurp(tmp.path / "gc" / "group_check.json")));
  }
  SUBCASE("invalid s gives exit 2 with error JSON and an error manifest") {
    const auto cfg = write_json(tmp.path / "bad.json", {{"command", "stellar"}, {"parameters", {{"s", 1.2}}}});
    const auto r = run({"--config", cfg.string(), "--out", (tmp.path / "bad").string()});
    CHECK(r.code == kExitInvalid);
    CHECK(r.out["status"] == "error");
    CHECK(r.out["message"] == "s must lie in (0,1)");
    const auto man = json::parse(slurp(tmp.path / "bad" / "manifest.json"));
    CHECK(man["status"] == "error");
    CHECK(man["outputs"].empty());
  }
  SUBCASE("usage errors") {
    CHECK(run({"--threads", "0", "gabor"}).code == kExitInvalid);
    CHECK(run({"--bogus"}).code == kExitInvalid);
    CHECK(run({"--out", (tmp.path / "x").string()}).code == kExitInvalid);
    const auto cfg = write_json(tmp.path / "g.json", {{"command", "gabor"}});
    CHECK(run({"--config", cfg.string(), "cylinder", "--out", (tmp.path / "y").string()}).code == kExitInvalid);
  }
  SUBCASE("warnings reach the manifest and --strict turns them into exit 3") {
    const auto cfg = write_json(tmp.path / "q.json", coarse_quantize());
    const auto loose = run({"--config", cfg.string(), "--out", (tmp.path / "loose").string()});
    CHECK(loose.code == kExitOk);
    const auto man = json::parse(slurp(tmp.path / "loose" / "manifest.json"));
    REQUIRE(!man["warnings"].empty());
    CHECK(man["warnings"].size() == loose.out["warnings"].get<std::size_t>());
    const auto strict = run({"--config", cfg.string(), "--strict", "--out", (tmp.path / "strict").string()});
    CHECK(strict.code == kExitStrict);
    CHECK(json::parse(slurp(tmp.path / "strict" / "manifest.json"))["status"] == "strict-failure");
  }
  SUBCASE("output directory replacement rules") {
    fs::create_directories(tmp.path / "precious");
    std::ofstream(tmp.path / "precious" / "notes.txt") << "keep";
    CHECK(run({"group-check", "--out", (tmp.path / "precious").string()}).code == kExitInvalid);
    CHECK(fs::exists(tmp.path / "precious" / "notes.txt"));
    CHECK(run({"group-check", "--out", (tmp.path / "again").string()}).code == kExitOk);
    std::ofstream(tmp.path / "again" / "stale.txt") << "old";
    CHECK(run({"group-check", "--out", (tmp.path / "again").string()}).code == kExitOk);
    CHECK_FALSE(fs::exists(tmp.path / "again" / "stale.txt"));
    for (const auto& e : fs::directory_iterator(tmp.path)) CHECK(e.path().filename().string().find(".tmp-") == std::string::npos);
  }
}

TEST_CASE("file inputs") {
  TempDir tmp;
  const PhaseSpaceGrid g{Grid1D::centered(16.0, 128), Grid1D::centered(16.0, 128)};
  std::ofstream(tmp.path / "w.csv") << grid_csv(g.omega, g.b, "omega", "b", par_kernel_closed(1.0, 1.0, g).normalized().values);
  const auto q = write_json(tmp.path / "q.json", {{"command", "quantize"},
                                                   {"parameters", {{"w", {{"csv", (tmp.path / "w.csv").string()}}},
                                                                   {"time", {{"half_width", 20}, {"count", 128}}}}}});
  CHECK(run({"--config", q.string(), "--out", (tmp.path / "q").string()}).code == kExitOk);
  const auto rep = json::parse(slurp(tmp.path / "q" / "quantize_report.json"));
  CHECK(std::abs(rep["diagnostics"]["trace"].get<double>() - 1.0) < 1e-6);

  write_json(tmp.path / "zeros.json", json::array({{{"re", 0.0}, {"im", 0.0}}}));
  const auto s = write_json(tmp.path / "s.json",
                            {{"command", "stellar"},
                             {"parameters",
                              {{"zeros_file", (tmp.path / "zeros.json").string()},
                               {"s", 0.9},
                               {"a", 1.0},
                               {"r", 1.0},
                               {"rel_threshold", 0.9},
                               {"grid", {{"omega", {{"half_width", 24}, {"count", 128}}}, {"b", {{"half_width", 24}, {"count", 128}}}}}}}});
  CHECK(run({"--config", s.string(), "--out", (tmp.path / "s").string()}).code == kExitOk);
  const auto srep = json::parse(slurp(tmp.path / "s" / "stellar_report.json"));
  CHECK(srep["matched_count"] == 1);
  CHECK(srep["schema"] == 1);

  std::ofstream(tmp.path / "sig.csv") << "t,re,im\n0,1,0\n0.5,0,0\n1.5,0,0\n";
  const auto bad = write_json(tmp.path / "b.json", {{"command", "gabor"}, {"parameters", {{"signal_csv", (tmp.path / "sig.csv").string()}}}});
  CHECK(run({"--config", bad.string(), "--out", (tmp.path / "b").string()}).code == kExitInvalid);
}

TEST_CASE("reruns are byte-identical, whatever the thread count") {
  TempDir tmp;
  const auto cfg = write_json(tmp.path / "c.json", {{"command", "stellar"},
                                                    {"seed", 3},
                                                    {"parameters",
                                                     {{"s", 0.5},
                                                      {"quantize", true},
                                                      {"time", {{"half_width", 20}, {"count", 128}}},
                                                      {"grid", {{"omega", {{"half_width", 12}, {"count", 128}}},
                                                                {"b", {{"half_width", 12}, {"count", 128}}}}}}}});
  REQUIRE(run({"--config", cfg.string(), "--out", (tmp.path / "a").string()}).code == kExitOk);
  REQUIRE(run({"--config", cfg.string(), "--out", (tmp.path / "b").string(), "--threads", "3"}).code == kExitOk);
  const auto ma = json::parse(slurp(tmp.path / "a" / "manifest.json"));
  const auto mb = json::parse(slurp(tmp.path / "b" / "manifest.json"));
  CHECK(ma["outputs"] == mb["outputs"]);
  for (const auto& o : ma["outputs"]) {
    const std::string f = o["file"];
    CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
  }
}
