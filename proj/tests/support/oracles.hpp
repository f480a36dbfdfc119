#pragma once

// Brute-force reference computations used only by tests. They work on plain
// whitespace-split lowercase tokens and share no code with the library.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline std::map<std::string, int> counts(const std::vector<std::string>& tokens) {
  std::map<std::string, int> c;
  for (const auto& t : tokens) ++c[t];
  return c;
}

inline int clipped_overlap(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto ca = counts(a);
  const auto cb = counts(b);
  int total = 0;
  for (const auto& [w, n] : ca) {
    auto it = cb.find(w);
    if (it != cb.end()) total += std::min(n, it->second);
  }
  return total;
}

inline double rouge1(const std::string& x, const std::string& y) {
  const auto a = words(x), b = words(y);
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  return 2.0 * clipped_overlap(a, b) / static_cast<double>(a.size() + b.size());
}

inline double dist(const std::string& x, const std::string& y) {
  const auto a = words(x), b = words(y);
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  return static_cast<double>(total - 2 * static_cast<std::size_t>(clipped_overlap(a, b))) /
         static_cast<double>(total);
}

// Exhaustive LCS over all subsequences of the shorter input (inputs <= 12 tokens).
inline std::size_t lcs_bruteforce(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto& s = a.size() <= b.size() ? a : b;
  const auto& t = a.size() <= b.size() ? b : a;
  std::size_t best = 0;
  for (unsigned mask = 0; mask < (1u << s.size()); ++mask) {
    std::size_t j = 0, len = 0;
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (j < t.size() && t[j] != s[i]) ++j;
      if (j == t.size()) ok = false;
      else { ++j; ++len; }
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

inline double hausdorff(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  double forward = 0.0, backward = 0.0;
  for (const auto& a : x) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& b : y) m = std::min(m, dist(a, b));
    forward = std::max(forward, m);
  }
  for (const auto& b : y) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& a : x) m = std::min(m, dist(a, b));
    backward = std::max(backward, m);
  }
  return std::max(forward, backward);
}

struct Clustering {
  std::set<std::set<std::size_t>> clusters;  // sets of item ids
  std::set<std::size_t> noise;
  bool operator==(const Clustering&) const = default;
};

// DBSCAN by reachability closure. `texts[i]` has id `ids[i]`; items are
// considered in ascending id order. Core points are connected through the
// core-core eps graph; a border point joins the component whose smallest core
// id is lowest among components with a core in its neighborhood.
inline Clustering dbscan(const std::vector<std::string>& texts, const std::vector<std::size_t>& ids,
                         double eps, std::size_t min_pts) {
  const std::size_t n = texts.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });

  auto near = [&](std::size_t a, std::size_t b) { return a == b || dist(texts[a], texts[b]) <= eps; };
  std::vector<bool> core(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) c += near(i, j) ? 1 : 0;
    core[i] = c >= min_pts;
  }
  // Component label = smallest core id reachable through core-core edges.
  std::vector<std::size_t> comp(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n; ++i) {
    if (!core[i]) continue;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{i};
    seen[i] = true;
    std::size_t label = ids[i];
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      label = std::min(label, ids[p]);
      for (std::size_t q = 0; q < n; ++q)
        if (core[q] && !seen[q] && near(p, q)) {
          seen[q] = true;
          stack.push_back(q);
        }
    }
    comp[i] = label;
  }
  std::map<std::size_t, std::set<std::size_t>> groups;
  Clustering out;
  for (std::size_t i : order) {
    if (core[i]) {
      groups[comp[i]].insert(ids[i]);
      continue;
    }
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t j = 0; j < n; ++j)
      if (core[j] && near(i, j)) best = std::min(best, comp[j]);
    if (best == std::numeric_limits<std::size_t>::max())
      out.noise.insert(ids[i]);
    else
      groups[best].insert(ids[i]);
  }
  for (auto& [label, members] : groups) out.clusters.insert(members);
  return out;
}

}  // namespace oracle
