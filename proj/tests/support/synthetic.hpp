#pragma once

// Deterministic synthetic inputs shared by the unit and acceptance suites.

#include <cctype>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "slisum/cluster.hpp"

namespace synthetic {

// "Word" tokens that never collide across prefixes.
inline std::string word(const std::string& prefix, std::size_t i) {
  return prefix + std::to_string(i);
}

inline std::string sentence_from(const std::vector<std::string>& tokens) {
  std::string s;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string t = tokens[i];
    if (i == 0) t[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(t[0])));
    if (i) s += ' ';
    s += t;
  }
  return s + ".";
}

// Sentence with `words` distinct tokens "<prefix>k".
inline std::string unique_sentence(const std::string& prefix, std::size_t words) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < words; ++i) tokens.push_back(word(prefix, i));
  return sentence_from(tokens);
}

// Random article: `sentences` sentences of [min_words, max_words] words, all
// tokens unique.
inline std::string random_article(std::mt19937& rng, std::size_t sentences, std::size_t min_words,
                                  std::size_t max_words) {
  std::uniform_int_distribution<std::size_t> len(min_words, max_words);
  std::string text;
  for (std::size_t s = 0; s < sentences; ++s) {
    if (s) text += ' ';
    text += unique_sentence("s" + std::to_string(s) + "w", len(rng));
  }
  return text;
}

// Restatement `variant` of planted event `event`: 24 shared words plus one
// variant marker, so two restatements have ROUGE-1 F1 = 48/50.
inline std::string event_restatement(char event, std::size_t variant) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < 24; ++i) tokens.push_back(std::string(1, event) + "ev" + std::to_string(i));
  tokens.push_back(std::string(1, event) + "var" + std::to_string(variant));
  return sentence_from(tokens);
}

// 30 sentences of 25 words. Odd sentences restate event A (1-9), B (11-19) or
// C (21-29); even sentences are filler with private vocabulary. With the short
// profile each step block is two sentences starting on a restatement.
inline std::string planted_events_article() {
  std::string text;
  for (std::size_t s = 1; s <= 30; ++s) {
    if (s > 1) text += ' ';
    if (s % 2 == 1) {
      const char event = s <= 10 ? 'a' : (s <= 20 ? 'b' : 'c');
      text += event_restatement(event, s);
    } else {
      text += unique_sentence("f" + std::to_string(s) + "x", 25);
    }
  }
  return text;
}

struct EventCorpus {
  std::vector<std::string> texts;
  std::vector<std::size_t> event_of;  // parallel to texts
};

// `events` groups of `per_event` statements. Each event has 20 words, 4 of
// which are shared by every event; variants replace up to two of the 16
// private words.
inline EventCorpus separated_events(std::mt19937& rng, std::size_t events, std::size_t per_event) {
  EventCorpus out;
  std::uniform_int_distribution<std::size_t> pos(4, 19);
  std::size_t fresh = 0;
  for (std::size_t e = 0; e < events; ++e) {
    std::vector<std::string> base = {"the", "report", "said", "today"};
    for (std::size_t i = 4; i < 20; ++i) base.push_back("e" + std::to_string(e) + "t" + std::to_string(i));
    for (std::size_t v = 0; v < per_event; ++v) {
      auto tokens = base;
      const std::size_t changes = v % 3;  // 0, 1 or 2 substitutions
      for (std::size_t c = 0; c < changes; ++c) tokens[pos(rng)] = "sub" + std::to_string(fresh++);
      std::string s;
      for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
      out.texts.push_back(s);
      out.event_of.push_back(e);
    }
  }
  return out;
}

// Random short statements over a tiny vocabulary (dense distance structure).
inline std::vector<std::string> random_statements(std::mt19937& rng, std::size_t count) {
  static const std::vector<std::string> vocab = {"red", "blue", "cat", "dog", "ran", "sat", "big", "old"};
  std::uniform_int_distribution<std::size_t> len(1, 6), pick(0, vocab.size() - 1);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string s;
    const std::size_t n = len(rng);
    for (std::size_t k = 0; k < n; ++k) s += (k ? " " : "") + vocab[pick(rng)];
    out.push_back(s);
  }
  return out;
}

inline std::vector<slisum::Statement> as_statements(const std::vector<std::string>& texts) {
  std::vector<slisum::Statement> out;
  for (std::size_t i = 0; i < texts.size(); ++i)
    out.push_back(slisum::Statement::make(texts[i], i + 1, 0, i + 1, 1));
  return out;
}

}  // namespace synthetic
