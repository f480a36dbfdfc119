#include "slisum/lexical.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <omp.h>

#include "slisum/error.hpp"

namespace slisum {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

double f1_from_counts(std::size_t overlap, std::size_t a, std::size_t b) {
  if (a == 0 && b == 0) return 1.0;
  if (a == 0 || b == 0) return 0.0;
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(a + b);
}

std::vector<std::string> bigrams(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
    out.push_back(tokens[i] + '\x1f' + tokens[i + 1]);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t sorted_overlap(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return common;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::size_t b = i, e = j;
    while (b < e && is_punct(text[b])) ++b;
    while (e > b && is_punct(text[e - 1])) --e;
    if (e > b) {
      std::string token(text.substr(b, e - b));
      for (auto& c : token) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

std::string normalize_text(std::string_view text) {
  std::string out;
  for (const auto& token : tokenize(text)) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

TokenBag::TokenBag(std::string_view text) : TokenBag(tokenize(text)) {}

TokenBag::TokenBag(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
}

std::size_t TokenBag::overlap(const TokenBag& other) const {
  return sorted_overlap(tokens_, other.tokens_);
}

double rouge1_f1(const TokenBag& a, const TokenBag& b) {
  return f1_from_counts(a.overlap(b), a.size(), b.size());
}

double rouge1_f1(std::string_view a, std::string_view b) {
  return rouge1_f1(TokenBag(a), TokenBag(b));
}

double rouge1_recall(const TokenBag& candidate, const TokenBag& reference) {
  if (candidate.empty()) return 1.0;
  return static_cast<double>(candidate.overlap(reference)) /
         static_cast<double>(candidate.size());
}

double distance(const TokenBag& a, const TokenBag& b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 0.0;
  if (a.empty() || b.empty()) return 1.0;
  return static_cast<double>(total - 2 * a.overlap(b)) / static_cast<double>(total);
}

double distance(std::string_view a, std::string_view b) {
  return distance(TokenBag(a), TokenBag(b));
}

double rouge2_f1(std::string_view a, std::string_view b) {
  const auto ta = tokenize(a);
  const auto tb = tokenize(b);
  if (ta.empty() || tb.empty()) return f1_from_counts(0, ta.size(), tb.size());
  const auto ba = bigrams(ta);
  const auto bb = bigrams(tb);
  if (ba.empty() && bb.empty()) return ta == tb ? 1.0 : 0.0;
  return f1_from_counts(sorted_overlap(ba, bb), ba.size(), bb.size());
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rougeL_f1(std::string_view a, std::string_view b) {
  const auto ta = tokenize(a);
  const auto tb = tokenize(b);
  return f1_from_counts(lcs_length(ta, tb), ta.size(), tb.size());
}

double hausdorff(std::span<const TokenBag> x, std::span<const TokenBag> y) {
  if (x.empty() || y.empty()) throw ArgumentError("hausdorff: both sets must be non-empty");
  auto directed = [](std::span<const TokenBag> from, std::span<const TokenBag> to) {
    double worst = 0.0;
    for (const auto& a : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& b : to) nearest = std::min(nearest, distance(a, b));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(x, y), directed(y, x));
}

double hausdorff(std::span<const std::string> x, std::span<const std::string> y) {
  std::vector<TokenBag> bx, by;
  bx.reserve(x.size());
  by.reserve(y.size());
  for (const auto& s : x) bx.emplace_back(s);
  for (const auto& s : y) by.emplace_back(s);
  return hausdorff(std::span<const TokenBag>(bx), std::span<const TokenBag>(by));
}

DistanceMatrix distance_matrix_serial(std::span<const TokenBag> bags) {
  const std::size_t n = bags.size();
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(bags[i], bags[j]);
      m.at(i, j) = d;
      m.at(j, i) = d;
    }
  }
  return m;
}

DistanceMatrix distance_matrix(std::span<const TokenBag> bags, int threads) {
  const auto n = static_cast<std::ptrdiff_t>(bags.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
  DistanceMatrix m(bags.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(team)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      const double d = distance(bags[i], bags[j]);
      m.at(i, j) = d;
      m.at(j, i) = d;
    }
  }
  return m;
}

}  // namespace slisum
