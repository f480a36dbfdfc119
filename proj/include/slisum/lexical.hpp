#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slisum {

/// Case-folded tokens with leading/trailing punctuation stripped. Tokens that
/// are pure punctuation disappear.
std::vector<std::string> tokenize(std::string_view text);

/// Tokens joined by single spaces; the equality key for "same statement".
std::string normalize_text(std::string_view text);

/// Unigram multiset, stored sorted so overlaps are a linear merge.
class TokenBag {
 public:
  TokenBag() = default;
  explicit TokenBag(std::string_view text);
  explicit TokenBag(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::vector<std::string>& sorted_tokens() const noexcept { return tokens_; }

  /// Clipped multiset intersection size.
  std::size_t overlap(const TokenBag& other) const;

  bool operator==(const TokenBag&) const = default;

 private:
  std::vector<std::string> tokens_;
};

/// 2 * overlap / (|a| + |b|); both empty -> 1, exactly one empty -> 0.
double rouge1_f1(const TokenBag& a, const TokenBag& b);
double rouge1_f1(std::string_view a, std::string_view b);

/// Fraction of `candidate`'s tokens found (clipped) in `reference`.
double rouge1_recall(const TokenBag& candidate, const TokenBag& reference);

/// Sentence distance, 1 - ROUGE-1 F1, evaluated as
/// (|a| + |b| - 2 * overlap) / (|a| + |b|) so that equal ratios are bitwise
/// equal doubles.
double distance(const TokenBag& a, const TokenBag& b);
double distance(std::string_view a, std::string_view b);

/// Bigram-overlap F1. If neither text has a bigram the score is 1 when the
/// token sequences are equal and 0 otherwise.
double rouge2_f1(std::string_view a, std::string_view b);

/// LCS-based F1: 2 * LCS / (|a| + |b|), same empty conventions as ROUGE-1.
double rougeL_f1(std::string_view a, std::string_view b);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// Symmetric Hausdorff distance under `distance`. Throws ArgumentError when
/// either set is empty.
double hausdorff(std::span<const std::string> x, std::span<const std::string> y);
double hausdorff(std::span<const TokenBag> x, std::span<const TokenBag> y);

/// Dense symmetric n x n matrix of pairwise distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& at(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Reference implementation: plain double loop over the upper triangle.
DistanceMatrix distance_matrix_serial(std::span<const TokenBag> bags);

/// OpenMP version of distance_matrix_serial; produces identical values.
/// `threads` <= 0 uses the OpenMP default.
DistanceMatrix distance_matrix(std::span<const TokenBag> bags, int threads = 0);

}  // namespace slisum
