#include "slisum/cache.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <system_error>
#include <thread>

#include <json.hpp>

#include "slisum/error.hpp"
#include "slisum/hashing.hpp"

namespace slisum {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json key_material(const EngineRequest& request) {
  return {
      {"task", std::string(to_string(request.task))},
      {"prompt_body", request.prompt_body},
      {"model", request.params.model},
      {"temperature", request.params.temperature},
      {"max_tokens", request.params.max_tokens},
  };
}

std::string unique_suffix() {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex << rng();
  return out.str();
}

}  // namespace

std::string request_key(const EngineRequest& request) {
  return sha256_hex(key_material(request).dump());
}

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create cache directory " + dir_.string() + ": " + ec.message());
}

fs::path ResponseCache::entry_path(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

void ResponseCache::quarantine(const fs::path& entry) {
  std::error_code ec;
  const fs::path qdir = dir_ / "quarantine";
  fs::create_directories(qdir, ec);
  fs::rename(entry, qdir / (entry.filename().string() + "." + unique_suffix() + ".corrupt"), ec);
  if (ec) fs::remove(entry, ec);
  ++quarantined_;
}

std::optional<std::string> ResponseCache::lookup(const EngineRequest& request) {
  const std::string key = request_key(request);
  const fs::path path = entry_path(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  in.close();
  const json entry = json::parse(buffer.str(), nullptr, false);
  if (entry.is_discarded() || !entry.is_object() || !entry.contains("key") ||
      !entry.contains("response") || !entry["response"].is_string() ||
      entry["key"] != key) {
    quarantine(path);
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return entry["response"].get<std::string>();
}

void ResponseCache::store(const EngineRequest& request, const std::string& response) {
  const std::string key = request_key(request);
  const fs::path path = entry_path(key);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  const json entry = {{"key", key}, {"request", key_material(request)}, {"response", response}};
  const fs::path tmp = path.parent_path() / (key + ".tmp." + unique_suffix());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cache directory not writable: " + path.parent_path().string());
    out << entry.dump();
    if (!out.flush()) throw ConfigError("failed writing cache entry " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("failed to publish cache entry " + path.string());
  }
}

std::string CachingBackend::complete(const EngineRequest& request) {
  if (auto cached = cache_.lookup(request)) return *cached;
  std::string response = inner_.complete(request);
  cache_.store(request, response);
  return response;
}

CacheStats cache_stats(const fs::path& dir) {
  CacheStats stats;
  std::error_code ec;
  if (!fs::exists(dir, ec)) return stats;
  for (const auto& e : fs::recursive_directory_iterator(dir, ec)) {
    if (!e.is_regular_file()) continue;
    const auto& p = e.path();
    if (p.parent_path().filename() == "quarantine") {
      ++stats.quarantined;
    } else if (p.extension() == ".json") {
      ++stats.entries;
      stats.bytes += static_cast<std::size_t>(e.file_size());
    }
  }
  return stats;
}

std::size_t cache_clear(const fs::path& dir) {
  std::error_code ec;
  if (!fs::exists(dir, ec)) return 0;
  std::size_t removed = 0;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (!e.is_directory()) continue;
    for (const auto& f : fs::recursive_directory_iterator(e.path(), ec))
      if (f.is_regular_file()) ++removed;
    fs::remove_all(e.path(), ec);
  }
  return removed;
}

}  // namespace slisum
