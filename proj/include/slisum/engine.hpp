#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slisum {

enum class Task { summarize, classify, connect };

std::string_view to_string(Task task);

/// The fixed instruction sent with each task.
std::string_view instruction(Task task);

struct EngineParams {
  std::string model = "mock";
  double temperature = 0.0;
  int max_tokens = 512;
  std::optional<std::int64_t> seed;
};

struct EngineRequest {
  Task task = Task::summarize;
  std::string prompt_body;
  EngineParams params;
  /// Structured form of prompt_body for classify/connect (the statements).
  std::vector<std::string> items;
};

/// 1-based statement indices per category.
using Partition = std::vector<std::vector<std::size_t>>;

/// True when `partition` covers {1..n} with every index exactly once.
bool is_partition(const Partition& partition, std::size_t n);

struct ClassificationResult {
  Partition partition;
  std::string raw_response;
};

/// Reads "Category k: i, j, ..." lines. Out-of-range indices are dropped, a
/// repeated index keeps its first category, and indices never mentioned are
/// appended as singletons in index order. Always returns a valid partition.
Partition parse_classification_response(std::string_view raw, std::size_t n);

/// Renders statements as the numbered list sent to the backend.
std::string render_statement_list(std::span<const std::string> statements);

/// Something that answers one request with raw text. Implementations must be
/// safe to call from several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string complete(const EngineRequest& request) = 0;
};

/// Deterministic offline backend.
///  - summarize: the window sentence with the highest summed ROUGE-1 F1
///    against the other sentences; earliest wins ties.
///  - classify: groups statements whose normalized text is equal.
///  - connect: joins statements with single spaces.
class MockBackend final : public Backend {
 public:
  std::string complete(const EngineRequest& request) override;
};

/// Pass-through that counts requests per task.
class CountingBackend final : public Backend {
 public:
  explicit CountingBackend(Backend& inner) : inner_(inner) {}
  std::string complete(const EngineRequest& request) override;

  std::size_t calls(Task task) const;
  std::size_t total_calls() const;

 private:
  Backend& inner_;
  std::array<std::atomic<std::size_t>, 3> counts_{};
};

struct EngineParamSet {
  EngineParamSet() { summarize.temperature = 0.3; }

  EngineParams summarize;
  EngineParams classify;
  EngineParams connect;

  void set_model(const std::string& model);
};

/// Task-level API over a Backend.
class Engine {
 public:
  explicit Engine(Backend& backend) : backend_(backend) {}

  /// Throws EngineError on an empty response.
  std::string summarize(std::string_view window_text, const EngineParams& params) const;
  ClassificationResult classify(std::span<const std::string> statements,
                                const EngineParams& params) const;
  std::string connect(std::span<const std::string> statements,
                      const EngineParams& params) const;

  Backend& backend() const { return backend_; }

 private:
  Backend& backend_;
};

}  // namespace slisum
