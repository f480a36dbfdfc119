#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "slisum/engine.hpp"

namespace slisum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPartial = 2;

struct SummarizeOptions {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> backend;  // "mock" | "http"
  std::optional<std::size_t> window_size;
  std::optional<std::size_t> step_size;
  std::optional<double> eps;
  std::optional<std::size_t> min_pts;
  std::optional<std::string> profile;  // "short" | "long" | "auto"
  std::optional<int> jobs;
  std::optional<int> concurrency;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> record_fixtures;
  std::optional<std::filesystem::path> replay_fixtures;
  bool dry_run = false;
  bool record_timing = false;
  /// Replaces the configured backend (tests).
  Backend* backend_override = nullptr;
};

struct SummarizeStats {
  std::size_t articles_ok = 0;
  std::size_t articles_failed = 0;
  std::size_t lines_skipped = 0;
  std::size_t transport_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
};

int cmd_summarize(const SummarizeOptions& options, std::ostream& out, std::ostream& err,
                  SummarizeStats* stats = nullptr);

struct EvaluateOptions {
  std::filesystem::path summaries;
  std::filesystem::path references;
  std::optional<std::filesystem::path> out;
  std::string format = "json";  // or "text"
};

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err);

struct AnalyzeOptions {
  std::filesystem::path runs_dir;
  std::optional<std::filesystem::path> out;
  std::string format = "json";
};

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err);

int cmd_cache(const std::string& action, const std::filesystem::path& cache_dir,
              std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace slisum::cli
