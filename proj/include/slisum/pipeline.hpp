#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slisum/aggregate.hpp"
#include "slisum/cluster.hpp"
#include "slisum/engine.hpp"
#include "slisum/text.hpp"

namespace slisum {

/// Articles with at least this many words use the long profile.
inline constexpr std::size_t kLongProfileMinWords = 3000;

struct ProfileDefaults {
  std::string name;
  std::size_t window_size = 0;
  std::size_t step_size = 0;
  double eps = 0.25;
  std::size_t min_pts = 1;
};

ProfileDefaults short_profile();  // 150 / 50, eps 0.25, MinPts 2
ProfileDefaults long_profile();   // 750 / 150, eps 0.25, MinPts 3
ProfileDefaults resolve_profile(std::size_t article_words);

struct PipelineConfig {
  std::size_t window_size = 150;
  std::size_t step_size = 50;
  double eps = 0.25;
  std::optional<std::size_t> min_pts;  // default: default_min_pts(K)
  EngineParamSet params;
  int concurrency = 4;
  std::optional<std::int64_t> seed;
  std::string backend = "mock";  // echoed into the run record

  std::size_t k() const { return k_ratio(window_size, step_size); }
  std::size_t effective_min_pts() const;
  /// Throws ConfigError on an invalid combination.
  void validate() const;
};

/// Explicitly set fields; the rest come from the length-based profile.
struct ConfigOverrides {
  std::optional<std::size_t> window_size;
  std::optional<std::size_t> step_size;
  std::optional<double> eps;
  std::optional<std::size_t> min_pts;
  std::optional<std::string> profile;  // "short", "long" or "auto"
};

/// Profile defaults for this article (or the forced profile), then
/// `overrides` on top. Without an explicit MinPts the result leaves min_pts
/// unset so it follows default_min_pts(K), which also reproduces both
/// profiles' MinPts. Non-sizing fields come from `base`.
PipelineConfig resolve_config(std::size_t article_words, const ConfigOverrides& overrides,
                              PipelineConfig base = {});

struct Generation {
  std::size_t window_ordinal = 0;
  std::size_t repetition = 0;
  std::string local_summary;
  std::vector<Statement> statements;
};

struct VoteRecord {
  VoteOutcome outcome;
  bool classification_skipped = false;
  std::string raw_response;
};

struct EngineCallCounts {
  std::size_t summarize = 0;
  std::size_t classify = 0;
  std::size_t connect = 0;

  std::size_t total() const { return summarize + classify + connect; }
};

/// Inputs for comparing windowed generation cost against one full-context
/// pass (quadratic attention model).
struct CostReport {
  std::size_t article_words = 0;
  std::size_t summarize_input_words = 0;
  double windowed_quadratic_cost = 0.0;      // sum over generations of words^2
  double full_context_quadratic_cost = 0.0;  // article_words^2
  double breakeven_words = 0.0;              // 1.36 * K * window_size
};

struct Timings {
  double generation_ms = 0.0;
  double clustering_ms = 0.0;
  double aggregation_ms = 0.0;
  double total_ms = 0.0;
};

struct RunRecord {
  std::string status = "complete";  // or "partial"
  std::string error;
  std::string article_id;
  std::size_t article_words = 0;
  std::vector<std::size_t> sentence_word_positions;  // 1-based, per sentence
  PipelineConfig config;
  WindowPlan plan;
  std::vector<Generation> generations;
  std::vector<Cluster> retained_clusters;  // cluster_id = index + 1
  std::vector<Cluster> discarded_clusters;
  std::vector<Statement> noise;
  std::vector<VoteRecord> votes;
  FinalSummary final_summary;
  EngineCallCounts engine_calls;
  CostReport cost;
  std::vector<std::string> flags;
  std::optional<Timings> timings;
};

inline constexpr std::string_view kNoClusterSurvived = "no cluster survived MinPts";

/// Thrown when an engine request fails for good; carries what was completed.
class RunAborted : public std::runtime_error {
 public:
  RunAborted(const std::string& what, RunRecord partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RunRecord& partial() const noexcept { return partial_; }

 private:
  RunRecord partial_;
};

/// Sliding generation, filtration and aggregation for one article.
/// Statement numbering follows plan order (window, repetition, position), so
/// the concurrency level never changes the result.
RunRecord run(const Article& article, const PipelineConfig& config, const Engine& engine);

/// Serialized form with sorted keys. Timings are written only on request.
std::string to_json(const RunRecord& record, bool include_timings = false);
RunRecord run_record_from_json(const std::string& json_text);

}  // namespace slisum
