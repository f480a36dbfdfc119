#include "slisum/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <tuple>

#include "slisum/error.hpp"

namespace slisum {
namespace {

constexpr std::array<std::string_view, 11> kAbbreviations = {
    "Dr", "Mr", "Mrs", "Ms", "Prof", "Fig", "Eq", "e.g", "i.e", "vs", "No"};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

bool is_opener(char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{';
}

// Non-ASCII lead bytes are accepted so that typographic quotes open a sentence.
bool can_start_sentence(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isupper(u) != 0 || is_opener(c) || u >= 0x80;
}

// Word ending right before `pos` (exclusive), with leading openers stripped.
std::string_view word_before(std::string_view text, std::size_t pos) {
  std::size_t begin = pos;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  while (begin < pos && is_opener(text[begin])) ++begin;
  return text.substr(begin, pos - begin);
}

bool is_abbreviation(std::string_view text, std::size_t dot) {
  const std::string_view word = word_before(text, dot);
  if (word.empty()) return false;
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0])))
    return true;  // initial
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
      kAbbreviations.end())
    return true;
  if (word == "al") {
    std::size_t prev_end = dot - word.size();
    while (prev_end > 0 && is_space(text[prev_end - 1])) --prev_end;
    return word_before(text, prev_end) == "et";
  }
  return false;
}

}  // namespace

std::string_view to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::whole: return "whole";
    case WindowKind::prefix: return "prefix";
    case WindowKind::base: return "base";
    case WindowKind::suffix: return "suffix";
  }
  return "base";
}

std::size_t Article::first_word_position(std::size_t index) const {
  if (index == 0 || index > sentences.size())
    throw ArgumentError("sentence index out of range: " + std::to_string(index));
  std::size_t words = 0;
  for (std::size_t i = 0; i + 1 < index; ++i) words += sentences[i].word_count;
  return words + 1;
}

std::size_t WindowPlan::total_generations() const {
  std::size_t total = 0;
  for (const auto& w : windows) total += w.repetitions;
  return total;
}

std::size_t WindowPlan::base_window_count() const {
  return static_cast<std::size_t>(
      std::count_if(windows.begin(), windows.end(), [](const Window& w) {
        return w.kind == WindowKind::base || w.kind == WindowKind::whole;
      }));
}

std::size_t WindowPlan::coverage(std::size_t sentence) const {
  std::size_t total = 0;
  for (const auto& w : windows)
    if (w.contains(sentence)) total += w.repetitions;
  return total;
}

std::size_t count_words(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

std::vector<Sentence> segment_sentences(std::string_view raw_text) {
  std::vector<Sentence> sentences;
  const std::size_t n = raw_text.size();

  auto emit = [&](std::size_t begin, std::size_t end) {
    while (end > begin && is_space(raw_text[end - 1])) --end;
    if (end <= begin) return;
    Sentence s;
    s.index = sentences.size() + 1;
    s.text = std::string(raw_text.substr(begin, end - begin));
    s.word_count = count_words(s.text);
    s.char_span = {begin, end};
    sentences.push_back(std::move(s));
  };

  std::size_t start = 0;
  while (start < n && is_space(raw_text[start])) ++start;

  for (std::size_t i = start; i < n; ++i) {
    if (!is_terminal(raw_text[i])) continue;
    std::size_t j = i + 1;
    while (j < n && is_terminal(raw_text[j])) ++j;
    const bool single_dot = raw_text[i] == '.' && j == i + 1;
    while (j < n && is_closer(raw_text[j])) ++j;
    if (j >= n || !is_space(raw_text[j])) {
      i = j - 1;
      continue;
    }
    std::size_t next = j;
    while (next < n && is_space(raw_text[next])) ++next;
    if (next >= n || !can_start_sentence(raw_text[next])) {
      i = j - 1;
      continue;
    }
    if (single_dot && is_abbreviation(raw_text, i)) continue;

    emit(start, j);
    start = next;
    i = next - 1;
  }
  if (start < n) emit(start, n);
  return sentences;
}

Article make_article(std::string id, std::string raw_text) {
  Article article;
  article.id = std::move(id);
  article.sentences = segment_sentences(raw_text);
  article.raw_text = std::move(raw_text);
  for (const auto& s : article.sentences) article.total_words += s.word_count;
  return article;
}

std::size_t k_ratio(std::size_t window_size, std::size_t step_size) {
  if (step_size == 0) throw ConfigError("step_size must be >= 1 (got 0)");
  if (window_size < step_size)
    throw ConfigError("window_size " + std::to_string(window_size) +
                      " < step_size " + std::to_string(step_size) +
                      " would leave gaps between windows");
  return window_size / step_size;
}

WindowPlan build_window_plan(const Article& article, std::size_t window_size,
                             std::size_t step_size) {
  const std::size_t k = k_ratio(window_size, step_size);
  if (k * step_size != window_size)
    throw ConfigError("window_size " + std::to_string(window_size) +
                      " is not a multiple of step_size " +
                      std::to_string(step_size));
  const auto& sentences = article.sentences;
  if (sentences.empty()) throw ArgumentError("article '" + article.id + "' has no sentences");

  // Step blocks as [first, last] 1-based sentence ranges.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t cumulative = 0;
  std::size_t threshold = step_size;
  std::size_t block_start = 1;
  for (const auto& s : sentences) {
    cumulative += s.word_count;
    if (cumulative >= threshold) {
      blocks.emplace_back(block_start, s.index);
      block_start = s.index + 1;
      threshold = (cumulative / step_size + 1) * step_size;
    }
  }
  if (block_start <= sentences.size())
    blocks.emplace_back(block_start, sentences.size());

  auto words_in = [&](std::size_t first, std::size_t last) {
    std::size_t words = 0;
    for (std::size_t i = first; i <= last; ++i) words += sentences[i - 1].word_count;
    return words;
  };
  auto make_window = [&](std::size_t first_block, std::size_t last_block,
                         WindowKind kind, std::size_t reps) {
    Window w;
    w.start_sentence = blocks[first_block].first;
    w.end_sentence = blocks[last_block].second;
    w.word_count = words_in(w.start_sentence, w.end_sentence);
    w.repetitions = reps;
    w.kind = kind;
    return w;
  };

  WindowPlan plan;
  plan.k_ratio = k;
  plan.window_size = window_size;
  plan.step_size = step_size;

  const std::size_t nb = blocks.size();
  if (nb <= k) {
    plan.windows.push_back(make_window(0, nb - 1, WindowKind::whole, k));
  } else {
    for (std::size_t j = 1; j < k; ++j)
      plan.windows.push_back(make_window(0, j - 1, WindowKind::prefix, 1));
    for (std::size_t b = 0; b + k <= nb; ++b)
      plan.windows.push_back(make_window(b, b + k - 1, WindowKind::base, 1));
    for (std::size_t j = 1; j < k; ++j)
      plan.windows.push_back(make_window(nb - j, nb - 1, WindowKind::suffix, 1));
    std::stable_sort(plan.windows.begin(), plan.windows.end(),
                     [](const Window& a, const Window& b) {
                       return std::tie(a.start_sentence, a.end_sentence) <
                              std::tie(b.start_sentence, b.end_sentence);
                     });
  }
  for (std::size_t i = 0; i < plan.windows.size(); ++i) plan.windows[i].ordinal = i + 1;
  return plan;
}

std::string window_text(const Article& article, const Window& window) {
  std::string text;
  for (std::size_t i = window.start_sentence; i <= window.end_sentence; ++i) {
    if (!text.empty()) text += ' ';
    text += article.sentences.at(i - 1).text;
  }
  return text;
}

}  // namespace slisum
