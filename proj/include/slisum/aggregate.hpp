#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slisum/cluster.hpp"
#include "slisum/engine.hpp"
#include "slisum/text.hpp"

namespace slisum {

enum class VoteRationale { unique_majority, cross_category_tie, within_category_latest };

std::string_view to_string(VoteRationale rationale);

struct VoteOutcome {
  std::size_t cluster_id = 0;
  Partition partition;
  std::size_t winner_category = 0;  // 0-based into partition
  Statement winner_statement;
  VoteRationale rationale = VoteRationale::unique_majority;
};

/// Majority vote within one cluster. The largest category wins; among tied
/// categories the one holding the latest-generated statement wins; the
/// winning statement is the latest-generated one of its category.
/// `within_category_latest` is reported when the only choice was inside a
/// single category (one category, or a unique majority of size > 1 is still
/// `unique_majority`).
///
/// Throws ArgumentError when `partition` is not a partition of the cluster.
VoteOutcome vote(std::span<const Statement> cluster, const Partition& partition,
                 std::size_t cluster_id = 0);

/// 1-based index of the article sentence with the highest ROUGE-1 F1 against
/// the statement; smallest index on ties.
std::size_t anchor(const TokenBag& statement, const Article& article);
std::size_t anchor(std::string_view statement, const Article& article);

struct SelectedStatement {
  Statement statement;
  std::size_t source_anchor = 0;
  std::size_t cluster_id = 0;
};

/// Stable sort by (source_anchor, generation_seq).
std::vector<SelectedStatement> arrange(std::vector<SelectedStatement> selected);

struct IntegrationResult {
  std::string text;
  bool used_fallback = false;
  bool engine_called = false;
  std::string note;
};

/// Minimum ROUGE-1 recall of every statement against the connected text.
inline constexpr double kPreservationRecall = 0.8;

/// True when every statement keeps ROUGE-1 recall >= kPreservationRecall in
/// `connected` and their best-matching sentences of `connected` appear in
/// order.
bool preserves_statements(std::span<const std::string> statements, std::string_view connected);

/// Connects ordered statements through the engine, falling back to plain
/// space-joined concatenation when the output fails preserves_statements or
/// the engine errors. A single statement is returned as is.
IntegrationResult integrate(std::span<const std::string> statements, const Engine& engine,
                            const EngineParams& params);

struct FinalSummary {
  std::vector<SelectedStatement> statements;
  std::string connected_text;
  bool integration_fallback = false;
};

}  // namespace slisum
