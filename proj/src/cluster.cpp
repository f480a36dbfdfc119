#include "slisum/cluster.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "slisum/error.hpp"

namespace slisum {

Statement Statement::make(std::string text, std::size_t window_ordinal,
                          std::size_t repetition, std::size_t generation_seq,
                          std::size_t position_in_summary) {
  Statement s;
  s.token_bag = TokenBag(text);
  s.text = std::move(text);
  s.window_ordinal = window_ordinal;
  s.repetition = repetition;
  s.generation_seq = generation_seq;
  s.position_in_summary = position_in_summary;
  return s;
}

ClusterSet dbscan(std::span<const Statement> statements, double eps, std::size_t min_pts,
                  int threads) {
  if (!(eps > 0.0 && eps < 1.0))
    throw ArgumentError("dbscan: eps must lie in (0, 1), got " + std::to_string(eps));
  if (min_pts < 1) throw ArgumentError("dbscan: min_pts must be >= 1");

  const std::size_t n = statements.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return statements[a].generation_seq < statements[b].generation_seq;
  });

  std::vector<TokenBag> bags;
  bags.reserve(n);
  for (std::size_t i : order) bags.push_back(statements[i].token_bag);
  const DistanceMatrix dist = distance_matrix(bags, threads);

  // Neighborhoods in visiting order (positions into `order`), self included.
  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i == j || dist(i, j) <= eps) neighbors[i].push_back(j);

  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, kUnassigned);
  std::vector<bool> visited(n, false);
  std::size_t cluster_count = 0;

  for (std::size_t p = 0; p < n; ++p) {
    if (visited[p]) continue;
    visited[p] = true;
    if (neighbors[p].size() < min_pts) continue;  // noise unless claimed later

    const std::size_t id = cluster_count++;
    label[p] = id;
    std::deque<std::size_t> seeds(neighbors[p].begin(), neighbors[p].end());
    while (!seeds.empty()) {
      const std::size_t q = seeds.front();
      seeds.pop_front();
      if (label[q] == kUnassigned) label[q] = id;
      if (visited[q]) continue;
      visited[q] = true;
      if (neighbors[q].size() >= min_pts)
        seeds.insert(seeds.end(), neighbors[q].begin(), neighbors[q].end());
    }
  }

  ClusterSet out;
  out.eps = eps;
  out.min_pts = min_pts;
  out.clusters.resize(cluster_count);
  for (std::size_t p = 0; p < n; ++p) {
    const Statement& s = statements[order[p]];
    if (label[p] == kUnassigned)
      out.noise.push_back(s);
    else
      out.clusters[label[p]].push_back(s);
  }
  return out;
}

std::vector<Cluster> filter_clusters(const ClusterSet& cluster_set) {
  std::vector<Cluster> kept;
  for (const auto& c : cluster_set.clusters)
    if (c.size() >= cluster_set.min_pts) kept.push_back(c);
  return kept;
}

std::size_t default_min_pts(std::size_t k_ratio) {
  return std::max<std::size_t>(1, (k_ratio + 1) / 2);
}

}  // namespace slisum
