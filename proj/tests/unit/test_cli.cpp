#include <doctest.h>

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "clex");
  std::ostringstream out, err;
  Result r;
  r.code = clex::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("clex_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

json without_wall_time(json j) {
  j["provenance"].erase("wall_time_s");
  return j;
}

}  // namespace

TEST_CASE("graphs counts connected graphs") {
  const auto r = invoke({"graphs", "--n", "3", "--class", "connected", "--count"});
  REQUIRE(r.code == clex::cli::kOk);
  const auto j = r.report();
  CHECK(j["results"]["count"] == 4);
  CHECK(j["provenance"]["code_version"].is_string());
  CHECK(j["provenance"]["catalog_hits"] == 0);
}

TEST_CASE("graphs lists every graph when not counting") {
  const auto r = invoke({"graphs", "--n", "4", "--class", "tree"});
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["results"]["count"] == 16);
  CHECK(j["results"]["graphs"].size() == 16);
}

TEST_CASE("radius for hard rods gives 1/(2e)") {
  const auto r = invoke({"radius", "--potential", "hard-rod"});
  REQUIRE(r.code == 0);
  const auto j = r.report();
  CHECK(j["results"]["activity"]["z_max"].get<double>() ==
        doctest::Approx(1.0 / (2.0 * std::numbers::e)).epsilon(1e-12));
  CHECK(j["results"]["activity"]["unbounded"] == false);
}

TEST_CASE("virial coefficients of hard rods are all one") {
  const auto r = invoke({"virial", "--potential", "hard-rod", "--order", "4"});
  REQUIRE(r.code == 0);
  const auto B = r.report()["results"]["B"];
  for (const char* n : {"2", "3", "4"}) CHECK(B[n].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eos series for hard rods") {
  const auto r = invoke({"eos", "--potential", "hard-rod", "--order", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["results"].contains("pressure"));
}

TEST_CASE("canonical compares against the exact oracle for small N") {
  const auto r = invoke({"canonical", "--potential", "hard-rod", "--N", "3", "--L", "20", "--K", "2"});
  REQUIRE(r.code == 0);
  const auto j = r.report()["results"];
  CHECK(j["oracle"]["method"] == "exact-1d");
  CHECK(j["oracle"]["log_z"].get<double>() ==
        doctest::Approx(std::log(20.0) + 2 * std::log(17.0) - std::log(6.0)).epsilon(1e-10));
  CHECK(std::isfinite(j["difference"].get<double>()));
}

TEST_CASE("correlations on a small grid") {
  const auto r = invoke({"correlations", "--potential", "hard-rod", "--function", "h", "--order", "1",
                         "--r-max", "0.5", "--dr", "0.25"});
  REQUIRE(r.code == 0);
  const auto j = r.report()["results"];
  CHECK(j["r"].size() == 2);
  CHECK(j["orders"][0][0].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("schema errors exit with 2") {
  TempDir dir;
  write_file(dir / "bad_key.json", R"({"virial": {"ordr": 3}})");
  write_file(dir / "bad_section.json", R"({"nonsense": {}})");
  write_file(dir / "not_json.json", "virial = 3");
  CHECK(invoke({"--config", (dir / "bad_key.json").string(), "virial"}).code == clex::cli::kSchemaError);
  CHECK(invoke({"--config", (dir / "bad_section.json").string(), "virial"}).code == clex::cli::kSchemaError);
  CHECK(invoke({"--config", (dir / "not_json.json").string(), "virial"}).code == clex::cli::kSchemaError);
  CHECK(invoke({"--config", (dir / "missing.json").string(), "virial"}).code == clex::cli::kSchemaError);
  CHECK(invoke({"--format", "xml", "radius"}).code == clex::cli::kSchemaError);
  CHECK(invoke({"radius", "--potential", "no-such-potential"}).code == clex::cli::kSchemaError);
  CHECK(invoke({"graphs", "--class", "no-such-class"}).code == clex::cli::kSchemaError);
  CHECK(invoke({"catalog-gc"}).code == clex::cli::kSchemaError);
  CHECK(invoke({}).code == clex::cli::kSchemaError);
}

TEST_CASE("a Monte Carlo path without a seed is a schema error") {
  const auto r = invoke({"virial", "--potential", "hard-sphere", "--order", "3"});
  CHECK(r.code == clex::cli::kSchemaError);
  CHECK(r.err.find("seed") != std::string::npos);
  CHECK(invoke({"canonical", "--potential", "hard-rod", "--N", "6", "--L", "30"}).code ==
        clex::cli::kSchemaError);
}

TEST_CASE("caps exit with 3") {
  CHECK(invoke({"graphs", "--n", "9", "--class", "all"}).code == clex::cli::kCapExceeded);
  CHECK(invoke({"canonical", "--potential", "hard-rod", "--K", "5"}).code == clex::cli::kCapExceeded);
  CHECK(invoke({"virial", "--potential", "hard-rod", "--order", "8"}).code == clex::cli::kCapExceeded);
}

TEST_CASE("a stalled solver exits with 4") {
  const auto r = invoke({"ozpy", "--potential", "hard-sphere", "--dim", "3", "--rho", "0.3", "--max-iter", "2"});
  CHECK(r.code == clex::cli::kNonConvergence);
  CHECK(r.err.find("nonconvergence") != std::string::npos);
}

TEST_CASE("ozpy reports thermodynamics per density") {
  const auto r = invoke({"ozpy", "--potential", "hard-rod", "--rho", "0.1", "0.2", "--dr", "0.01",
                         "--n-points", "2048"});
  REQUIRE(r.code == 0);
  const auto runs = r.report()["results"]["runs"];
  REQUIRE(runs.size() == 2);
  for (const auto& run : runs) {
    const double rho = run["rho"];
    CHECK(run["pressure_virial"].get<double>() == doctest::Approx(rho / (1.0 - rho)).epsilon(1e-2));
  }
}

TEST_CASE("Monte Carlo runs are deterministic for a fixed seed") {
  const std::vector<std::string> args = {"virial", "--potential", "hard-sphere", "--order", "3",
                                         "--seed", "11", "--samples", "20000"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(without_wall_time(a.report()).dump() == without_wall_time(b.report()).dump());
  const auto c = invoke({"virial", "--potential", "hard-sphere", "--order", "3", "--seed", "12",
                         "--samples", "20000"});
  CHECK(a.report()["results"]["B"]["3"] != c.report()["results"]["B"]["3"]);
  CHECK(a.report()["inputs"]["seed"] == 11);
}

TEST_CASE("csv output") {
  const auto r = invoke({"--format", "csv", "virial", "--potential", "hard-rod", "--order", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,B_n,std_error\n", 0) == 0);
  CHECK(r.out.find("\n2,1,") != std::string::npos);
  const auto rad = invoke({"--format", "csv", "radius"});
  CHECK(rad.out.rfind("condition,max_parameter\n", 0) == 0);
  CHECK(invoke({"--format", "csv", "ozpy", "--rho", "0.1", "0.2"}).code == clex::cli::kSchemaError);
}

TEST_CASE("--out writes the report atomically") {
  TempDir dir;
  const auto path = dir / "report.json";
  const auto r = invoke({"--out", path.string(), "radius"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK_FALSE(fs::exists(fs::path(path.string() + ".tmp")));
  const auto j = json::parse(read_file(path));
  CHECK(j["inputs"]["command"] == "radius");
}

TEST_CASE("command-line flags override the config file") {
  TempDir dir;
  write_file(dir / "cfg.json", R"({"potential": {"kind": "hard-rod", "sigma": 2.0},
                                   "virial": {"order": 4}, "output": {"format": "json"}})");
  const auto cfg = (dir / "cfg.json").string();
  auto r = invoke({"--config", cfg, "virial"});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["results"]["order"] == 4);
  CHECK(j["results"]["B"]["2"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));

  r = invoke({"--config", cfg, "virial", "--order", "3"});
  REQUIRE(r.code == 0);
  j = r.report();
  CHECK(j["results"]["order"] == 3);
  CHECK(j["results"]["B"]["2"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));

  r = invoke({"--config", cfg, "--sigma", "1.0", "virial"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["results"]["B"]["2"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("catalog hits are counted and catalog-gc reports") {
  TempDir dir;
  const auto cat = (dir / "catalog.jsonl").string();
  const std::vector<std::string> args = {"--catalog", cat, "virial", "--potential", "hard-rod", "--order", "4"};
  const auto cold = invoke(args);
  REQUIRE(cold.code == 0);
  const auto warm = invoke(args);
  REQUIRE(warm.code == 0);
  const auto jc = cold.report(), jw = warm.report();
  CHECK(jc["provenance"]["catalog_hits"] == 0);
  CHECK(jc["provenance"]["catalog_misses"].get<int>() > 0);
  CHECK(jw["provenance"]["catalog_hits"].get<int>() > 0);
  CHECK(jw["results"].dump() == jc["results"].dump());

  const auto gc = invoke({"--catalog", cat, "catalog-gc"});
  REQUIRE(gc.code == 0);
  const auto g = gc.report()["results"];
  CHECK(g["kept"].get<int>() == jc["provenance"]["catalog_misses"].get<int>());
  CHECK(g["quarantined"] == 0);
}
