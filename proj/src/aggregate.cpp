#include "slisum/aggregate.hpp"

#include <algorithm>

#include "slisum/error.hpp"

namespace slisum {
namespace {

std::string join(std::span<const std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

std::string_view to_string(VoteRationale rationale) {
  switch (rationale) {
    case VoteRationale::unique_majority: return "unique-majority";
    case VoteRationale::cross_category_tie: return "cross-category-tie";
    case VoteRationale::within_category_latest: return "within-category-latest";
  }
  return "unique-majority";
}

VoteOutcome vote(std::span<const Statement> cluster, const Partition& partition,
                 std::size_t cluster_id) {
  if (cluster.empty()) throw ArgumentError("vote: empty cluster");
  if (!is_partition(partition, cluster.size()))
    throw ArgumentError("vote: categories are not a partition of the cluster");

  auto latest_in = [&](const std::vector<std::size_t>& category) {
    std::size_t best = category.front();
    for (std::size_t idx : category)
      if (cluster[idx - 1].generation_seq > cluster[best - 1].generation_seq) best = idx;
    return best;
  };

  std::size_t largest = 0;
  for (const auto& c : partition) largest = std::max(largest, c.size());

  std::size_t winner = partition.size();
  std::size_t tied = 0;
  for (std::size_t c = 0; c < partition.size(); ++c) {
    if (partition[c].size() != largest) continue;
    ++tied;
    if (winner == partition.size() ||
        cluster[latest_in(partition[c]) - 1].generation_seq >
            cluster[latest_in(partition[winner]) - 1].generation_seq)
      winner = c;
  }

  VoteOutcome out;
  out.cluster_id = cluster_id;
  out.partition = partition;
  out.winner_category = winner;
  out.winner_statement = cluster[latest_in(partition[winner]) - 1];
  if (tied > 1)
    out.rationale = VoteRationale::cross_category_tie;
  else if (partition.size() == 1)
    out.rationale = VoteRationale::within_category_latest;
  else
    out.rationale = VoteRationale::unique_majority;
  return out;
}

std::size_t anchor(const TokenBag& statement, const Article& article) {
  if (article.sentences.empty()) throw ArgumentError("anchor: article has no sentences");
  std::size_t best = 1;
  double best_score = -1.0;
  for (const auto& s : article.sentences) {
    const double score = rouge1_f1(statement, TokenBag(s.text));
    if (score > best_score) {
      best_score = score;
      best = s.index;
    }
  }
  return best;
}

std::size_t anchor(std::string_view statement, const Article& article) {
  return anchor(TokenBag(statement), article);
}

std::vector<SelectedStatement> arrange(std::vector<SelectedStatement> selected) {
  std::stable_sort(selected.begin(), selected.end(),
                   [](const SelectedStatement& a, const SelectedStatement& b) {
                     if (a.source_anchor != b.source_anchor)
                       return a.source_anchor < b.source_anchor;
                     return a.statement.generation_seq < b.statement.generation_seq;
                   });
  return selected;
}

bool preserves_statements(std::span<const std::string> statements, std::string_view connected) {
  const TokenBag whole(connected);
  const auto pieces = segment_sentences(connected);
  std::vector<TokenBag> piece_bags;
  piece_bags.reserve(pieces.size());
  for (const auto& p : pieces) piece_bags.emplace_back(p.text);

  std::size_t previous = 0;
  for (const auto& s : statements) {
    const TokenBag bag(s);
    if (rouge1_recall(bag, whole) < kPreservationRecall) return false;
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < piece_bags.size(); ++i) {
      const double score = rouge1_f1(bag, piece_bags[i]);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (best < previous) return false;
    previous = best;
  }
  return true;
}

IntegrationResult integrate(std::span<const std::string> statements, const Engine& engine,
                            const EngineParams& params) {
  if (statements.empty()) throw ArgumentError("integrate: no statements");
  IntegrationResult out;
  if (statements.size() == 1) {
    out.text = statements.front();
    return out;
  }
  out.engine_called = true;
  try {
    std::string connected = engine.connect(statements, params);
    if (!connected.empty() && preserves_statements(statements, connected)) {
      out.text = std::move(connected);
      return out;
    }
    out.note = "connected text failed the preservation check";
  } catch (const EngineError& e) {
    out.note = std::string("connect failed: ") + e.what();
  }
  out.text = join(statements);
  out.used_fallback = true;
  return out;
}

}  // namespace slisum
