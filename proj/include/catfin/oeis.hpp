#ifndef CATFIN_OEIS_HPP
#define CATFIN_OEIS_HPP

// Minimal OEIS search client. Raw response bodies are cached on disk under a
// hash of the query string; a cache hit never touches the network.

#include "catfin/exactnum.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace catfin {

struct OeisConfig {
  bool enabled = true;
  std::string endpoint = "https://oeis.org";
  std::filesystem::path cache_dir;  // empty disables the cache
  bool offline = false;
  int timeout_seconds = 10;
};

struct OeisMatch {
  std::string id;  // e.g. A001318
  std::string name;
};

enum class OeisStatus {
  ok,           // fetched over HTTP
  cached,       // served from the on-disk cache
  skipped,      // disabled, offline with a cold cache, or the network failed
  parse_error,  // body was not a recognizable search response
};

inline std::string_view to_string(OeisStatus s) {
  switch (s) {
    case OeisStatus::ok: return "ok";
    case OeisStatus::cached: return "cached";
    case OeisStatus::skipped: return "skipped";
    case OeisStatus::parse_error: return "parse-error";
  }
  return "?";
}

struct OeisResult {
  OeisStatus status = OeisStatus::skipped;
  std::string query;
  std::vector<OeisMatch> matches;
  std::string message;
  std::string raw_body;

  bool contains(std::string_view id) const {
    for (const auto& m : matches)
      if (m.id == id) return true;
    return false;
  }
};

inline std::string oeis_query(const std::vector<Integer>& terms) {
  std::string q = "seq:";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) q += ',';
    q += terms[i].str();
  }
  return q;
}

/// 64-bit FNV-1a, hex encoded; used for cache file names.
inline std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Accepts both the bare-array response and the older {"results": [...]}
/// object. Throws std::invalid_argument on anything else.
inline std::vector<OeisMatch> parse_oeis_response(const std::string& body) {
  const auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw std::invalid_argument("response is not JSON");
  nlohmann::json results;
  if (doc.is_array()) {
    results = doc;
  } else if (doc.is_object() && doc.contains("results")) {
    results = doc.at("results");
    if (results.is_null()) return {};
  } else if (doc.is_null()) {
    return {};
  } else {
    throw std::invalid_argument("response has no result list");
  }
  if (!results.is_array()) throw std::invalid_argument("result list is not an array");
  std::vector<OeisMatch> out;
  for (const auto& r : results) {
    if (!r.is_object() || !r.contains("number") || !r.at("number").is_number_integer())
      throw std::invalid_argument("result entry without a sequence number");
    char id[16];
    std::snprintf(id, sizeof id, "A%06lld", r.at("number").get<long long>());
    out.push_back({id, r.value("name", std::string{})});
  }
  return out;
}

class OeisClient {
 public:
  explicit OeisClient(OeisConfig config) : config_(std::move(config)) {}

  const OeisConfig& config() const noexcept { return config_; }

  std::filesystem::path cache_path(const std::string& query) const {
    return config_.cache_dir / ("oeis-" + fnv1a_hex(query) + ".json");
  }

  OeisResult lookup(const std::vector<Integer>& terms) const {
    OeisResult result;
    result.query = oeis_query(terms);
    if (!config_.enabled) {
      result.message = "OEIS lookup disabled";
      return result;
    }
    if (auto body = read_cache(result.query)) return parsed(std::move(result), std::move(*body), OeisStatus::cached);
    if (config_.offline) {
      result.message = "offline and no cached response for " + result.query;
      return result;
    }

    httplib::Client client(config_.endpoint);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_follow_location(true);
    auto response = client.Get("/search", httplib::Params{{"q", result.query}, {"fmt", "json"}}, httplib::Headers{});
    if (!response) {
      result.message = "network error: " + httplib::to_string(response.error());
      return result;
    }
    if (response->status != 200) {
      result.message = "HTTP status " + std::to_string(response->status);
      return result;
    }
    result = parsed(std::move(result), response->body, OeisStatus::ok);
    if (result.status == OeisStatus::ok) write_cache(result.query, result.raw_body);
    return result;
  }

 private:
  static OeisResult parsed(OeisResult result, std::string body, OeisStatus success) {
    result.raw_body = std::move(body);
    try {
      result.matches = parse_oeis_response(result.raw_body);
      result.status = success;
    } catch (const std::exception& e) {
      result.status = OeisStatus::parse_error;
      result.message = e.what();
    }
    return result;
  }

  std::optional<std::string> read_cache(const std::string& query) const {
    if (config_.cache_dir.empty()) return std::nullopt;
    std::ifstream in(cache_path(query), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write_cache(const std::string& query, const std::string& body) const {
    if (config_.cache_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(config_.cache_dir, ec);
    std::ofstream out(cache_path(query), std::ios::binary);
    out << body;
  }

  OeisConfig config_;
};

}  // namespace catfin

#endif  // CATFIN_OEIS_HPP
