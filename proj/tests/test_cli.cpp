#include "catfin/cli.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <random>

using namespace catfin;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("catfin-cli-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("triangle") {
  const auto table = run({"triangle", "--d", "2", "--rows", "4", "--format", "table"});
  REQUIRE(table.code == 0);
  CHECK(lines(table.out) == std::vector<std::string>{"   1", "  1 1", " 1 2 1", "1 3 3 1"});

  const auto csv = run({"triangle", "--d", "3", "--rows", "5", "--format", "csv"});
  REQUIRE(csv.code == 0);
  const auto rows = lines(csv.out);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) CHECK(std::count(r.begin(), r.end(), ',') == 16);
  CHECK(rows[0] == ",,,,,,,,1,,,,,,,,");
  CHECK(rows[2] == ",,,,1,,2,,3,,2,,1,,,,");

  const auto js = run({"triangle", "--d", "3", "--rows", "3", "--format", "json"});
  REQUIRE(js.code == 0);
  const auto j = json::Json::parse(js.out);
  REQUIRE(j.size() == 3);
  CHECK(j[2]["entries"] == json::Json::array({"1", "2", "3", "2", "1"}));

  CHECK(run({"triangle", "--d", "1"}).code == 1);
}

TEST_CASE("paths count") {
  const auto dyck = run({"paths", "count", "--n", "6", "--m", "4", "--oracle"});
  REQUIRE(dyck.code == 0);
  CHECK(dyck.out == "formula " + bounded_formula(6, 4, 0).str() + "\noracle " + bounded_formula(6, 4, 0).str() +
                        "\nstatus match\n");

  const auto unbounded = run({"paths", "count", "--n", "5", "--format", "json"});
  REQUIRE(unbounded.code == 0);
  CHECK(json::Json::parse(unbounded.out)["formula"] == "42");
  CHECK(json::Json::parse(unbounded.out)["m"] == "unbounded");

  const auto gen = run({"paths", "count", "--n", "6", "--m", "2", "--steps", "gen3", "--oracle"});
  CHECK(gen.code == 0);
  CHECK(gen.out.find("status match") != std::string::npos);

  SECTION("the m = 0 3-Pascal sum does not count any policy's paths") {
    for (const char* policy : {"weak", "edge-strict", "strict"}) {
      const auto r = run({"paths", "count", "--n", "3", "--m", "0", "--steps", "gen3", "--policy", policy, "--oracle"});
      CHECK(r.code == 2);
      CHECK(r.out.find("status mismatch") != std::string::npos);
    }
  }
  CHECK(run({"paths", "count", "--n", "3", "--strict"}).code == 1);
  CHECK(run({"paths", "count", "--n", "3", "--steps", "gen3", "--policy", "loose"}).code == 1);
}

TEST_CASE("enumeration budget errors report the size") {
  const auto r = run({"--enum-budget", "100", "paths", "count", "--n", "10", "--oracle"});
  CHECK(r.code == 1);
  CHECK(r.err.find("budget error") != std::string::npos);
  CHECK(r.err.find("100") != std::string::npos);
}

TEST_CASE("altsum") {
  const auto r = run({"altsum", "--row", "12", "--m", "4"});
  REQUIRE(r.code == 0);
  const auto j = json::Json::parse(r.out);
  CHECK(j["value"] == bounded_formula(6, 4, 0).str());
  CHECK(j["terms"].size() == 5);

  const auto table = run({"altsum", "--d", "3", "--row", "4", "--m", "20", "--format", "table"});
  REQUIRE(table.code == 0);
  CHECK(lines(table.out).back() == "value 3");
}

TEST_CASE("complex") {
  TempDir dir;
  const auto triplets = (dir.path / "d.txt").string();
  const auto build = run({"complex", "build", "--M", "4", "--c", "1", "--m", "1", "--s", "0", "--triplets", triplets});
  REQUIRE(build.code == 0);
  const auto j = json::Json::parse(build.out);
  CHECK(j["d_squared_zero"] == true);
  CHECK(j["N"] == 3);
  const auto text = slurp(triplets);
  CHECK(text.rfind("%differential index=", 0) == 0);
  CHECK(text.find("%catfin-triplets rows=") != std::string::npos);

  const auto euler = run({"complex", "euler", "--M", "6", "--c", "0", "--m", "1", "--s", "0"});
  REQUIRE(euler.code == 0);
  CHECK(json::Json::parse(euler.out)["euler_char"] == bounded_formula(3, 1, 0).str());

  const auto hom = run({"complex", "homology", "--M", "6", "--c", "0", "--m", "1", "--s", "0"});
  REQUIRE(hom.code == 0);
  const auto h = json::Json::parse(hom.out);
  CHECK(h["method"] == "modular-certified");
  long long alternating = 0;
  for (const auto& e : h["entries"]) alternating += (e["index"].get<int>() % 2 == 0 ? 1 : -1) * e["homology"].get<long long>();
  CHECK(std::to_string(alternating) == h["euler_char"].get<std::string>());

  const auto exact = run({"complex", "homology", "--M", "5", "--c", "0", "--m", "1", "--s", "1", "--exact"});
  REQUIRE(exact.code == 0);
  CHECK(json::Json::parse(exact.out)["method"] == "exact");

  CHECK(run({"complex", "build", "--M", "4", "--c", "9", "--m", "1", "--s", "0"}).code == 1);
  CHECK(run({"--matrix-budget", "3", "complex", "build", "--M", "8", "--c", "0", "--m", "1", "--s", "0"}).code == 1);
}

TEST_CASE("qchi") {
  const auto named = run({"qchi", "--M", "6", "--c", "0", "--m", "1", "--s", "0", "--f", "pentagonal"});
  const auto custom = run({"qchi", "--M", "6", "--c", "0", "--m", "1", "--s", "0", "--f", "custom:3,-1"});
  const auto alias = run({"complex", "qchi", "--M", "6", "--c", "0", "--m", "1", "--s", "0", "--f", "pentagonal_1_2"});
  REQUIRE(named.code == 0);
  REQUIRE(custom.code == 0);
  REQUIRE(alias.code == 0);
  const auto a = json::Json::parse(named.out);
  const auto b = json::Json::parse(custom.out);
  CHECK(a["chi"] == b["chi"]);
  CHECK(a["chi"] == json::Json::parse(alias.out)["chi"]);
  CHECK(a["at_one"] == bounded_formula(3, 1, 0).str());

  CHECK(run({"qchi", "--M", "6", "--c", "0", "--m", "1", "--s", "0", "--f", "custom:3,0"}).code == 1);
  CHECK(run({"qchi", "--M", "6", "--c", "0", "--m", "1", "--s", "0", "--f", "custom:3"}).code == 1);
  CHECK(run({"qchi", "--M", "6", "--c", "0", "--m", "1", "--s", "0"}).code == 1);
}

TEST_CASE("verify") {
  TempDir dir;
  const auto report = (dir.path / "p1.json").string();
  const auto p1 = run({"verify", "prop1", "--max-rows", "20", "--json", report});
  CHECK(p1.code == 0);
  const auto j = json::Json::parse(slurp(report));
  CHECK(j["summary"]["mismatch"] == 0);
  CHECK(j["counterexamples"].empty());
  CHECK(p1.out.find("mismatch 0") != std::string::npos);

  const auto p2 = run({"verify", "prop2", "--max-rows", "12", "--format", "json"});
  CHECK(p2.code == 2);
  CHECK_FALSE(json::Json::parse(p2.out)["counterexamples"].empty());

  const auto p3 = run({"verify", "prop3", "--max-n", "5"});
  CHECK(p3.code == 0);

  SECTION("job count does not change the report") {
    const auto one = run({"--jobs", "1", "verify", "prop1", "--max-rows", "14", "--format", "json"});
    const auto four = run({"--jobs", "4", "verify", "prop1", "--max-rows", "14", "--format", "json"});
    CHECK(one.out == four.out);
  }
  CHECK(run({"verify", "prop4"}).code == 1);
  CHECK(run({"verify", "prop1", "--max-rows", "61"}).code == 1);
}

TEST_CASE("scan") {
  const auto r = run({"scan", "--N", "3", "--partition", "1,2", "--max-n", "6", "--top", "3"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].rfind("1 3 -1 6/6 0 ", 0) == 0);

  const auto js = run({"scan", "--N", "5", "--partition", "1,4", "--max-n", "6", "--format", "json", "--top", "1"});
  REQUIRE(js.code == 0);
  const auto c = json::Json::parse(js.out)["candidates"][0];
  CHECK(c["A"] == 5);
  CHECK(c["B"] == -3);

  CHECK(run({"scan", "--N", "5", "--partition", "2,2"}).code == 1);
  CHECK(run({"scan", "--N", "5", "--a-range", "3:1"}).code == 1);
}

TEST_CASE("oeis offline") {
  TempDir dir;
  const auto r = run({"--offline", "--cache-dir", dir.path.string(), "oeis", "--terms", "1,2,5,7,12"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("skipped") != std::string::npos);

  fs::copy_file(fs::path(CATFIN_TEST_DATA) / "fixtures" / "oeis" / "malformed.txt",
                OeisClient(OeisConfig{true, "", dir.path}).cache_path("seq:9,9"));
  const auto bad = run({"--offline", "--cache-dir", dir.path.string(), "oeis", "--terms", "9,9"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("<html") != std::string::npos);

  CHECK(run({"--no-oeis", "oeis", "--terms", "1,x"}).code == 1);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 1);
  CHECK(run({"--bogus", "triangle"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("triangle") != std::string::npos);
  CHECK(run({"--jobs", "0", "triangle"}).code == 1);
}

TEST_CASE("configuration layering") {
  TempDir dir;
  const auto cfg_path = dir.path / "catfin.conf";
  std::ofstream(cfg_path) << "# defaults for tests\nformat = csv\nenum_budget = 50\noeis.offline = yes\n";

  const auto from_file = run({"--config", cfg_path.string(), "triangle", "--rows", "2"});
  CHECK(from_file.out == ",1,\n1,,1\n");
  const auto flag_wins = run({"--config", cfg_path.string(), "--format", "table", "triangle", "--rows", "2"});
  CHECK(flag_wins.out == " 1\n1 1\n");
  CHECK(run({"--config", cfg_path.string(), "paths", "count", "--n", "8", "--oracle"}).code == 1);

  std::ofstream(dir.path / "bad.conf") << "colour = blue\n";
  const auto bad = run({"--config", (dir.path / "bad.conf").string(), "triangle"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("colour") != std::string::npos);

  SECTION("the cache directory comes from the environment unless a flag overrides it") {
    ::setenv(cli::kCacheEnv, (dir.path / "env").string().c_str(), 1);
    CHECK(cli::default_config().oeis.cache_dir == dir.path / "env");
    cli::Options o;
    o.config_path = cfg_path.string();
    CHECK(cli::resolve_config(o).oeis.cache_dir == dir.path / "env");
    CHECK(cli::resolve_config(o).oeis.offline);
    o.cache_dir = (dir.path / "flag").string();
    CHECK(cli::resolve_config(o).oeis.cache_dir == dir.path / "flag");
    ::unsetenv(cli::kCacheEnv);
  }
}
