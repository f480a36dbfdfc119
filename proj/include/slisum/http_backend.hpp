#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slisum/engine.hpp"

namespace slisum {

struct HttpResponse {
  int status = 0;
  std::string body;
};

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

/// Connection-level failure (no HTTP status available).
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// Throws TransportError when no response was received.
  virtual HttpResponse post(const std::string& path, const std::string& body,
                            const HttpHeaders& headers) = 0;
};

/// cpp-httplib client; one connection per request so it can be shared.
class HttplibTransport final : public HttpTransport {
 public:
  HttplibTransport(std::string base_url, std::chrono::seconds timeout);
  HttpResponse post(const std::string& path, const std::string& body,
                    const HttpHeaders& headers) override;

 private:
  std::string base_url_;
  std::chrono::seconds timeout_;
};

/// Appends every exchange to a JSONL fixture file:
/// {"request_hash", "request", "response": {"status", "body"}, "timestamp"}.
class FixtureRecorder final : public HttpTransport {
 public:
  FixtureRecorder(HttpTransport& inner, std::filesystem::path file);
  HttpResponse post(const std::string& path, const std::string& body,
                    const HttpHeaders& headers) override;

 private:
  HttpTransport& inner_;
  std::filesystem::path file_;
  std::mutex mutex_;
};

/// Serves responses from a fixture file, keyed by the SHA-256 of the request
/// body. Unknown requests raise TransportError.
class FixtureReplay final : public HttpTransport {
 public:
  explicit FixtureReplay(const std::filesystem::path& file);
  HttpResponse post(const std::string& path, const std::string& body,
                    const HttpHeaders& headers) override;

  std::size_t size() const { return responses_.size(); }

 private:
  std::map<std::string, HttpResponse> responses_;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{1000};
  double factor = 2.0;
};

struct HttpSettings {
  std::string path = "/v1/chat/completions";
  std::string api_key;
  int max_inflight = 4;
  RetryPolicy retry;
  /// Replaced in tests to avoid real waits.
  std::function<void(std::chrono::milliseconds)> sleep;
};

/// Chat-completion backend: the task instruction is the system message and
/// the prompt body the user message. Retries transport errors, 429 and 5xx
/// with exponential backoff; other 4xx fail at once.
class HttpBackend final : public Backend {
 public:
  HttpBackend(HttpTransport& transport, HttpSettings settings);
  std::string complete(const EngineRequest& request) override;

  /// The JSON body sent for `request`.
  static std::string request_body(const EngineRequest& request);

 private:
  HttpTransport& transport_;
  HttpSettings settings_;
  std::unique_ptr<std::counting_semaphore<1024>> inflight_;
};

}  // namespace slisum
