#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "slisum/lexical.hpp"

namespace slisum {

/// One sentence of one local summary.
struct Statement {
  std::string text;
  TokenBag token_bag;
  std::size_t window_ordinal = 0;
  std::size_t repetition = 0;        // 0-based repetition of the window
  std::size_t generation_seq = 0;    // unique, follows plan order
  std::size_t position_in_summary = 0;  // 1-based

  static Statement make(std::string text, std::size_t window_ordinal,
                        std::size_t repetition, std::size_t generation_seq,
                        std::size_t position_in_summary);
};

using Cluster = std::vector<Statement>;

struct ClusterSet {
  std::vector<Cluster> clusters;  // in creation order, members by generation_seq
  std::vector<Statement> noise;
  double eps = 0.25;
  std::size_t min_pts = 1;
};

/// DBSCAN under the sentence distance. A statement is a core point when at
/// least `min_pts` statements (itself included) lie within `eps`. Statements
/// are visited in ascending generation_seq, so a border point reachable from
/// several clusters joins the one created first.
///
/// Throws ArgumentError unless 0 < eps < 1 and min_pts >= 1.
ClusterSet dbscan(std::span<const Statement> statements, double eps, std::size_t min_pts,
                  int threads = 0);

/// Clusters of size >= min_pts.
std::vector<Cluster> filter_clusters(const ClusterSet& cluster_set);

/// max(1, round_half_up(K / 2)).
std::size_t default_min_pts(std::size_t k_ratio);

}  // namespace slisum
