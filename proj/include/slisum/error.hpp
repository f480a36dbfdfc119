#pragma once

#include <stdexcept>
#include <string>

namespace slisum {

/// Invalid pipeline or planner configuration (window/step sizes, eps, MinPts).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Precondition violated by a caller-supplied value.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A summary-engine request failed for good (after retries, or with an
/// unusable response).
class EngineError : public std::runtime_error {
 public:
  EngineError(const std::string& what, std::string request_id, int attempts)
      : std::runtime_error(what),
        request_id_(std::move(request_id)),
        attempts_(attempts) {}

  const std::string& request_id() const noexcept { return request_id_; }
  int attempts() const noexcept { return attempts_; }

 private:
  std::string request_id_;
  int attempts_;
};

}  // namespace slisum
