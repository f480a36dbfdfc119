#include "slisum/engine.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "slisum/error.hpp"
#include "slisum/lexical.hpp"
#include "slisum/text.hpp"

namespace slisum {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string mock_summarize(std::string_view window_text) {
  const auto sentences = segment_sentences(window_text);
  if (sentences.empty()) return {};
  std::vector<TokenBag> bags;
  bags.reserve(sentences.size());
  for (const auto& s : sentences) bags.emplace_back(s.text);

  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    double score = 0.0;
    for (std::size_t j = 0; j < bags.size(); ++j)
      if (j != i) score += rouge1_f1(bags[i], bags[j]);
    // Summation rounding must not break exact ties in favor of a later sentence.
    if (score > best_score + 1e-12) {
      best_score = score;
      best = i;
    }
  }
  return sentences[best].text;
}

std::string mock_classify(std::span<const std::string> statements) {
  std::vector<std::string> keys;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    const std::string key = normalize_text(statements[i]);
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      groups.push_back({i + 1});
    } else {
      groups[static_cast<std::size_t>(it - keys.begin())].push_back(i + 1);
    }
  }
  std::string out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out += "Category " + std::to_string(g + 1) + ":";
    for (std::size_t k = 0; k < groups[g].size(); ++k)
      out += (k == 0 ? " " : ", ") + std::to_string(groups[g][k]);
    out += '\n';
  }
  return out;
}

std::string mock_connect(std::span<const std::string> statements) {
  std::string out;
  for (const auto& s : statements) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

std::string request_label(const EngineRequest& request) {
  return std::string(to_string(request.task)) + ":" + request.params.model;
}

}  // namespace

std::string_view to_string(Task task) {
  switch (task) {
    case Task::summarize: return "summarize";
    case Task::classify: return "classify";
    case Task::connect: return "connect";
  }
  return "summarize";
}

std::string_view instruction(Task task) {
  switch (task) {
    case Task::summarize:
      return "Summarize the above article.";
    case Task::classify:
      return "Classify the above statements into different categories. Statements of "
             "the same category describe the same facts, and statements of different "
             "categories have different semantics. Answer with one line per category "
             "in the form \"Category k: i, j, ...\" listing the statement numbers.";
    case Task::connect:
      return "Generate connectives to concatenate sentences to form a fluent text. "
             "DO NOT change the original semantics.";
  }
  return "";
}

bool is_partition(const Partition& partition, std::size_t n) {
  std::vector<bool> seen(n + 1, false);
  std::size_t count = 0;
  for (const auto& category : partition) {
    if (category.empty()) return false;
    for (std::size_t idx : category) {
      if (idx < 1 || idx > n || seen[idx]) return false;
      seen[idx] = true;
      ++count;
    }
  }
  return count == n;
}

Partition parse_classification_response(std::string_view raw, std::size_t n) {
  Partition partition;
  std::vector<bool> assigned(n + 1, false);

  std::size_t line_start = 0;
  while (line_start <= raw.size()) {
    std::size_t line_end = raw.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = raw.size();
    const std::string_view line = raw.substr(line_start, line_end - line_start);
    line_start = line_end + 1;

    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    std::vector<std::size_t> category;
    std::size_t i = colon + 1;
    while (i < line.size()) {
      if (!std::isdigit(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t value = 0;
      bool overflow = false;
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
        if (value > 1'000'000'000) overflow = true;
        value = value * 10 + static_cast<std::size_t>(line[i] - '0');
        ++i;
      }
      if (overflow || value < 1 || value > n || assigned[value]) continue;
      assigned[value] = true;
      category.push_back(value);
    }
    if (!category.empty()) partition.push_back(std::move(category));
  }
  for (std::size_t idx = 1; idx <= n; ++idx)
    if (!assigned[idx]) partition.push_back({idx});
  return partition;
}

std::string render_statement_list(std::span<const std::string> statements) {
  std::string out;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    out += std::to_string(i + 1) + ". " + statements[i];
    if (i + 1 < statements.size()) out += '\n';
  }
  return out;
}

std::string MockBackend::complete(const EngineRequest& request) {
  switch (request.task) {
    case Task::summarize: return mock_summarize(request.prompt_body);
    case Task::classify: return mock_classify(request.items);
    case Task::connect: return mock_connect(request.items);
  }
  return {};
}

std::string CountingBackend::complete(const EngineRequest& request) {
  counts_[static_cast<std::size_t>(request.task)].fetch_add(1, std::memory_order_relaxed);
  return inner_.complete(request);
}

std::size_t CountingBackend::calls(Task task) const {
  return counts_[static_cast<std::size_t>(task)].load(std::memory_order_relaxed);
}

std::size_t CountingBackend::total_calls() const {
  return calls(Task::summarize) + calls(Task::classify) + calls(Task::connect);
}

void EngineParamSet::set_model(const std::string& model) {
  summarize.model = model;
  classify.model = model;
  connect.model = model;
}

std::string Engine::summarize(std::string_view window_text, const EngineParams& params) const {
  if (trim(window_text).empty()) throw ArgumentError("summarize: empty window text");
  EngineRequest request{Task::summarize, std::string(window_text), params, {}};
  std::string summary = trim(backend_.complete(request));
  if (summary.empty()) throw EngineError("empty summary response", request_label(request), 1);
  return summary;
}

ClassificationResult Engine::classify(std::span<const std::string> statements,
                                      const EngineParams& params) const {
  if (statements.empty()) throw ArgumentError("classify: no statements");
  EngineRequest request{Task::classify, render_statement_list(statements), params,
                        {statements.begin(), statements.end()}};
  ClassificationResult result;
  result.raw_response = backend_.complete(request);
  result.partition = parse_classification_response(result.raw_response, statements.size());
  return result;
}

std::string Engine::connect(std::span<const std::string> statements,
                            const EngineParams& params) const {
  if (statements.empty()) throw ArgumentError("connect: no statements");
  EngineRequest request{Task::connect, render_statement_list(statements), params,
                        {statements.begin(), statements.end()}};
  return trim(backend_.complete(request));
}

}  // namespace slisum
