#include "slisum/evalkit.hpp"

#include <algorithm>

#include "slisum/error.hpp"
#include "slisum/lexical.hpp"

namespace slisum {

ScoreReport score(std::span<const std::string> summaries, std::span<const std::string> references,
                  std::span<const std::string> ids) {
  if (summaries.size() != references.size())
    throw ArgumentError("score: " + std::to_string(summaries.size()) + " summaries vs " +
                        std::to_string(references.size()) + " references");
  if (!ids.empty() && ids.size() != summaries.size())
    throw ArgumentError("score: ids do not align with summaries");

  ScoreReport report;
  double s1 = 0.0, s2 = 0.0, sl = 0.0;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    PairScore p;
    p.id = ids.empty() ? std::to_string(i + 1) : ids[i];
    p.rouge1 = rouge1_f1(summaries[i], references[i]);
    p.rouge2 = rouge2_f1(summaries[i], references[i]);
    p.rougeL = rougeL_f1(summaries[i], references[i]);
    s1 += p.rouge1;
    s2 += p.rouge2;
    sl += p.rougeL;
    report.pairs.push_back(std::move(p));
  }
  if (!report.pairs.empty()) {
    const auto n = static_cast<double>(report.pairs.size());
    report.mean_rouge1 = s1 / n;
    report.mean_rouge2 = s2 / n;
    report.mean_rougeL = sl / n;
  }
  return report;
}

std::vector<std::size_t> default_position_bins() { return {1, 1001, 2001, 3001}; }

std::string PositionHistogram::bin_label(std::size_t bin) const {
  const std::string lo = std::to_string(bin_starts.at(bin));
  if (bin + 1 == bin_starts.size()) return lo + "-";
  return lo + "-" + std::to_string(bin_starts[bin + 1] - 1);
}

PositionHistogram position_histogram(std::span<const std::size_t> word_positions,
                                     std::span<const std::size_t> bin_starts) {
  if (bin_starts.empty()) throw ArgumentError("position_histogram: no bins");
  if (!std::is_sorted(bin_starts.begin(), bin_starts.end()))
    throw ArgumentError("position_histogram: bin starts must ascend");
  PositionHistogram h;
  h.bin_starts.assign(bin_starts.begin(), bin_starts.end());
  h.counts.assign(bin_starts.size(), 0);
  for (std::size_t pos : word_positions) {
    const auto it = std::upper_bound(bin_starts.begin(), bin_starts.end(), pos);
    const std::size_t bin = it == bin_starts.begin()
                                ? 0
                                : static_cast<std::size_t>(it - bin_starts.begin()) - 1;
    ++h.counts[bin];
    ++h.total;
  }
  h.percentages.assign(bin_starts.size(), 0.0);
  if (h.total > 0)
    for (std::size_t b = 0; b < h.counts.size(); ++b)
      h.percentages[b] = 100.0 * static_cast<double>(h.counts[b]) / static_cast<double>(h.total);
  return h;
}

PositionHistogram position_histogram(const FinalSummary& summary, const Article& article,
                                     std::span<const std::size_t> bin_starts) {
  if (article.sentences.empty()) throw ArgumentError("position_histogram: empty article");
  std::vector<std::size_t> positions;
  for (const auto& s : summary.statements)
    positions.push_back(article.first_word_position(s.source_anchor));
  return position_histogram(positions, bin_starts);
}

PositionHistogram position_histogram(const RunRecord& record,
                                     std::span<const std::size_t> bin_starts) {
  std::vector<std::size_t> positions;
  for (const auto& s : record.final_summary.statements) {
    if (s.source_anchor < 1 || s.source_anchor > record.sentence_word_positions.size())
      throw ArgumentError("run record anchor out of range");
    positions.push_back(record.sentence_word_positions[s.source_anchor - 1]);
  }
  return position_histogram(positions, bin_starts);
}

PositionHistogram merge_histograms(std::span<const PositionHistogram> parts) {
  if (parts.empty()) {
    const auto bins = default_position_bins();
    return position_histogram(std::span<const std::size_t>{}, bins);
  }
  PositionHistogram merged;
  merged.bin_starts = parts.front().bin_starts;
  merged.counts.assign(merged.bin_starts.size(), 0);
  for (const auto& p : parts) {
    if (p.bin_starts != merged.bin_starts)
      throw ArgumentError("merge_histograms: bin layouts differ");
    for (std::size_t b = 0; b < p.counts.size(); ++b) merged.counts[b] += p.counts[b];
    merged.total += p.total;
  }
  merged.percentages.assign(merged.bin_starts.size(), 0.0);
  if (merged.total > 0)
    for (std::size_t b = 0; b < merged.counts.size(); ++b)
      merged.percentages[b] =
          100.0 * static_cast<double>(merged.counts[b]) / static_cast<double>(merged.total);
  return merged;
}

DistanceDiagnostics distance_diagnostics(std::span<const Cluster> clusters) {
  if (clusters.empty()) throw ArgumentError("distance_diagnostics: no retained cluster");
  DistanceDiagnostics d;
  double sum = 0.0;
  for (const auto& c : clusters) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        const double dist = distance(c[i].token_bag, c[j].token_bag);
        sum += dist;
        d.max_same_cluster = std::max(d.max_same_cluster, dist);
        ++d.same_cluster_pairs;
      }
    }
  }
  if (d.same_cluster_pairs > 0) d.mean_same_cluster = sum / static_cast<double>(d.same_cluster_pairs);

  std::vector<std::vector<TokenBag>> bags(clusters.size());
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (const auto& s : clusters[c]) bags[c].push_back(s.token_bag);

  const std::size_t n = clusters.size();
  if (n >= 2) {
    // Pair (a, b) with a < b flattened so the OpenMP loop is balanced.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    std::vector<double> values(pairs.size());
    const auto count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t p = 0; p < count; ++p) {
      const auto [a, b] = pairs[static_cast<std::size_t>(p)];
      values[static_cast<std::size_t>(p)] =
          hausdorff(std::span<const TokenBag>(bags[a]), std::span<const TokenBag>(bags[b]));
    }
    double total = 0.0;
    for (double v : values) total += v;  // fixed order, thread-count independent
    d.cluster_pairs = pairs.size();
    d.mean_hausdorff = total / static_cast<double>(pairs.size());
  }
  return d;
}

DistanceDiagnostics distance_diagnostics(const RunRecord& record) {
  return distance_diagnostics(record.retained_clusters);
}

}  // namespace slisum
