#include "catfin/oeis.hpp"

#include <catch_amalgamated.hpp>

#include <atomic>
#include <random>
#include <thread>

using namespace catfin;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(fs::path(CATFIN_TEST_DATA) / "fixtures" / "oeis" / name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("catfin-oeis-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

void seed_cache(const OeisClient& client, const std::vector<Integer>& terms, const std::string& body) {
  fs::create_directories(client.config().cache_dir);
  std::ofstream(client.cache_path(oeis_query(terms)), std::ios::binary) << body;
}

// A port on 127.0.0.1 that nothing listens on.
int closed_port() {
  httplib::Server probe;
  const int port = probe.bind_to_any_port("127.0.0.1");
  probe.stop();
  return port;
}

}  // namespace

TEST_CASE("query strings and cache names") {
  CHECK(oeis_query(ints({1, 2, 5, 7})) == "seq:1,2,5,7");
  CHECK(oeis_query(ints({-3})) == "seq:-3");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  OeisConfig cfg;
  cfg.cache_dir = "/tmp/x";
  const OeisClient client(cfg);
  CHECK(client.cache_path("seq:1,2") != client.cache_path("seq:1,3"));
  CHECK(client.cache_path("seq:1,2").parent_path() == fs::path("/tmp/x"));
}

TEST_CASE("response parsing") {
  const auto pent = parse_oeis_response(fixture("pentagonal.json"));
  REQUIRE(pent.size() == 1);
  CHECK(pent[0].id == "A001318");
  CHECK(pent[0].name.find("pentagonal") != std::string::npos);

  const auto jac = parse_oeis_response(fixture("jacobsthal.json"));
  REQUIRE(jac.size() == 1);
  CHECK(jac[0].id == "A001045");

  CHECK(parse_oeis_response(fixture("no_results.json")).empty());
  CHECK(parse_oeis_response("null").empty());
  CHECK(parse_oeis_response("[]").empty());
  CHECK_THROWS_AS(parse_oeis_response(fixture("malformed.txt")), std::invalid_argument);
  CHECK_THROWS_AS(parse_oeis_response(R"({"count": 3})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_oeis_response(R"([{"name": "no number"}])"), std::invalid_argument);
}

TEST_CASE("cache hits need no network") {
  TempDir dir;
  OeisConfig cfg;
  cfg.cache_dir = dir.path;
  cfg.offline = true;
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(closed_port());
  const OeisClient client(cfg);

  seed_cache(client, ints({1, 2, 5, 7, 12, 15}), fixture("pentagonal.json"));
  const auto pent = client.lookup(ints({1, 2, 5, 7, 12, 15}));
  CHECK(pent.status == OeisStatus::cached);
  CHECK(pent.contains("A001318"));

  seed_cache(client, ints({0, 1, 1, 3, 5, 11, 21}), fixture("jacobsthal.json"));
  const auto jac = client.lookup(ints({0, 1, 1, 3, 5, 11, 21}));
  CHECK(jac.status == OeisStatus::cached);
  CHECK(jac.contains("A001045"));
}

TEST_CASE("offline with a cold cache is a soft skip") {
  TempDir dir;
  OeisConfig cfg;
  cfg.cache_dir = dir.path;
  cfg.offline = true;
  const auto r = OeisClient(cfg).lookup(ints({1, 2, 3}));
  CHECK(r.status == OeisStatus::skipped);
  CHECK(r.matches.empty());
  CHECK(r.message.find("offline") != std::string::npos);
  CHECK(fs::is_empty(dir.path));

  cfg.enabled = false;
  CHECK(OeisClient(cfg).lookup(ints({1})).status == OeisStatus::skipped);
}

TEST_CASE("malformed cached body is a parse error that keeps the body") {
  TempDir dir;
  OeisConfig cfg;
  cfg.cache_dir = dir.path;
  cfg.offline = true;
  const OeisClient client(cfg);
  seed_cache(client, ints({4, 4}), fixture("malformed.txt"));
  const auto r = client.lookup(ints({4, 4}));
  CHECK(r.status == OeisStatus::parse_error);
  CHECK(r.raw_body == fixture("malformed.txt"));
}

TEST_CASE("network failure is a soft skip") {
  TempDir dir;
  OeisConfig cfg;
  cfg.cache_dir = dir.path;
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(closed_port());
  cfg.timeout_seconds = 2;
  const auto r = OeisClient(cfg).lookup(ints({1, 2, 5}));
  CHECK(r.status == OeisStatus::skipped);
  CHECK(r.message.find("network") != std::string::npos);
}

TEST_CASE("HTTP lookups against a local server are cached") {
  httplib::Server server;
  std::atomic<int> hits{0};
  std::string last_query;
  server.Get("/search", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    last_query = req.get_param_value("q");
    if (req.get_param_value("fmt") != "json") {
      res.status = 400;
      return;
    }
    if (last_query == "seq:0,1,1,3,5,11,21")
      res.set_content(fixture("jacobsthal.json"), "application/json");
    else if (last_query == "seq:9,9")
      res.set_content(fixture("malformed.txt"), "text/html");
    else
      res.set_content(fixture("no_results.json"), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread worker([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  TempDir dir;
  OeisConfig cfg;
  cfg.cache_dir = dir.path;
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(port);
  const OeisClient client(cfg);

  const auto first = client.lookup(ints({0, 1, 1, 3, 5, 11, 21}));
  CHECK(first.status == OeisStatus::ok);
  CHECK(first.contains("A001045"));
  CHECK(last_query == "seq:0,1,1,3,5,11,21");
  CHECK(fs::exists(client.cache_path(first.query)));

  const auto second = client.lookup(ints({0, 1, 1, 3, 5, 11, 21}));
  CHECK(second.status == OeisStatus::cached);
  CHECK(second.contains("A001045"));
  CHECK(hits == 1);

  const auto bad = client.lookup(ints({9, 9}));
  CHECK(bad.status == OeisStatus::parse_error);
  CHECK_FALSE(bad.raw_body.empty());
  CHECK_FALSE(fs::exists(client.cache_path(bad.query)));

  const auto none = client.lookup(ints({3, 1, 4}));
  CHECK(none.status == OeisStatus::ok);
  CHECK(none.matches.empty());

  server.stop();
  worker.join();
}
