#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace slisum {

struct CharSpan {
  std::size_t begin = 0;  // inclusive byte offset
  std::size_t end = 0;    // exclusive byte offset

  bool operator==(const CharSpan&) const = default;
};

struct Sentence {
  std::size_t index = 0;  // 1-based
  std::string text;
  std::size_t word_count = 0;
  CharSpan char_span;
};

struct Article {
  std::string id;
  std::string raw_text;
  std::vector<Sentence> sentences;
  std::size_t total_words = 0;

  /// 1-based word position of the first word of sentence `index` (1-based).
  std::size_t first_word_position(std::size_t index) const;
};

enum class WindowKind { whole, prefix, base, suffix };

std::string_view to_string(WindowKind kind);

struct Window {
  std::size_t ordinal = 0;         // 1-based, position in the plan
  std::size_t start_sentence = 0;  // p_i, 1-based inclusive
  std::size_t end_sentence = 0;    // q_i, 1-based inclusive
  std::size_t word_count = 0;
  std::size_t repetitions = 1;
  WindowKind kind = WindowKind::base;

  bool contains(std::size_t sentence) const {
    return start_sentence <= sentence && sentence <= end_sentence;
  }
};

struct WindowPlan {
  std::vector<Window> windows;
  std::size_t k_ratio = 1;
  std::size_t window_size = 0;
  std::size_t step_size = 0;

  /// Number of summarize requests the plan implies (sum of repetitions).
  std::size_t total_generations() const;
  std::size_t base_window_count() const;
  /// Repetition-weighted number of windows containing `sentence`.
  std::size_t coverage(std::size_t sentence) const;
};

/// Number of whitespace-separated tokens in `text`.
std::size_t count_words(std::string_view text);

/// Rule-based splitter: a boundary is terminal punctuation (. ! ?), optionally
/// followed by closing quotes or brackets, then whitespace, then an uppercase
/// letter or an opening character. Known abbreviations, initials and decimal
/// points never split. Spans are byte offsets into `raw_text`.
std::vector<Sentence> segment_sentences(std::string_view raw_text);

Article make_article(std::string id, std::string raw_text);

/// floor(window_size / step_size). Throws ConfigError when the step is zero or
/// larger than the window.
std::size_t k_ratio(std::size_t window_size, std::size_t step_size);

/// Overlapping window plan in which every sentence is summarized exactly K
/// times (repetition-weighted).
///
/// The article is cut into step blocks: block b closes at the first sentence
/// whose inclusion brings the running word count to b * step_size or more.
/// Base windows are K consecutive blocks, sliding one block at a time. The
/// first and last K-1 blocks are topped up with truncated windows over the
/// leading (trailing) 1..K-1 blocks. An article with at most K blocks is a
/// single window repeated K times. Windows are ordered by (start, end).
///
/// Throws ConfigError unless window_size == K * step_size, and ArgumentError
/// for an article without sentences.
WindowPlan build_window_plan(const Article& article, std::size_t window_size,
                             std::size_t step_size);

/// Text of sentences [window.start_sentence, window.end_sentence] joined by
/// single spaces.
std::string window_text(const Article& article, const Window& window);

}  // namespace slisum
