#pragma once

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>

#include "slisum/engine.hpp"

namespace slisum {

/// Content address of a request: SHA-256 over (task, prompt_body, model,
/// temperature, max_tokens).
std::string request_key(const EngineRequest& request);

/// Directory of one JSON file per request key. Writes go to a temporary file
/// that is renamed into place; unreadable entries are moved to
/// `quarantine/` and reported as misses.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<std::string> lookup(const EngineRequest& request);
  void store(const EngineRequest& request, const std::string& response);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(const std::string& key) const;

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }
  std::size_t quarantined() const { return quarantined_.load(); }

 private:
  void quarantine(const std::filesystem::path& entry);

  std::filesystem::path dir_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
  std::atomic<std::size_t> quarantined_{0};
};

/// Serves cached responses and forwards misses to `inner`.
class CachingBackend final : public Backend {
 public:
  CachingBackend(Backend& inner, ResponseCache& cache) : inner_(inner), cache_(cache) {}
  std::string complete(const EngineRequest& request) override;

 private:
  Backend& inner_;
  ResponseCache& cache_;
};

struct CacheStats {
  std::size_t entries = 0;
  std::size_t bytes = 0;
  std::size_t quarantined = 0;
};

CacheStats cache_stats(const std::filesystem::path& dir);
/// Removes all entries (and quarantined files); returns how many were removed.
std::size_t cache_clear(const std::filesystem::path& dir);

}  // namespace slisum
