#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slisum/cluster.hpp"
#include "slisum/pipeline.hpp"

namespace slisum {

struct PairScore {
  std::string id;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
};

struct ScoreReport {
  std::vector<PairScore> pairs;
  std::optional<double> mean_rouge1;  // absent for an empty corpus
  std::optional<double> mean_rouge2;
  std::optional<double> mean_rougeL;
  std::vector<std::string> unmatched_ids;

  std::size_t count() const { return pairs.size(); }
};

/// Metrics that need external learned models; always reported as unavailable.
inline constexpr const char* kUnavailableMetrics[] = {"factcc", "summac", "bertscore"};

/// Per-pair ROUGE-1/2/L F1 and corpus means. Throws ArgumentError on a
/// length mismatch. `ids` may be empty, otherwise it must align too.
ScoreReport score(std::span<const std::string> summaries, std::span<const std::string> references,
                  std::span<const std::string> ids = {});

struct PositionHistogram {
  std::vector<std::size_t> bin_starts;  // 1-based word positions, ascending
  std::vector<std::size_t> counts;
  std::vector<double> percentages;
  std::size_t total = 0;
  bool empty() const { return total == 0; }

  std::string bin_label(std::size_t bin) const;
};

/// Default bins 1-1000, 1001-2000, 2001-3000, 3001+.
std::vector<std::size_t> default_position_bins();

/// Histogram of 1-based word positions. Positions before the first bin start
/// fall into the first bin.
PositionHistogram position_histogram(std::span<const std::size_t> word_positions,
                                     std::span<const std::size_t> bin_starts);

/// Statements are placed at the first word of their anchor sentence.
PositionHistogram position_histogram(const FinalSummary& summary, const Article& article,
                                     std::span<const std::size_t> bin_starts);
PositionHistogram position_histogram(const RunRecord& record,
                                     std::span<const std::size_t> bin_starts);

/// Count-weighted merge of histograms sharing the same bins.
PositionHistogram merge_histograms(std::span<const PositionHistogram> parts);

struct DistanceDiagnostics {
  std::size_t same_cluster_pairs = 0;
  double mean_same_cluster = 0.0;  // 0 when there are no pairs
  double max_same_cluster = 0.0;
  std::size_t cluster_pairs = 0;
  std::optional<double> mean_hausdorff;  // absent with fewer than two clusters
};

/// Within-cluster pairwise distances and between-cluster Hausdorff distances.
/// Throws ArgumentError for an empty cluster list.
DistanceDiagnostics distance_diagnostics(std::span<const Cluster> clusters);
DistanceDiagnostics distance_diagnostics(const RunRecord& record);

}  // namespace slisum
