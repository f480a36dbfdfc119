#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "slisum/aggregate.hpp"
#include "slisum/error.hpp"
#include "synthetic.hpp"

using namespace slisum;

namespace {

std::vector<Statement> d_statements(std::size_t n) {
  std::vector<Statement> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back(Statement::make("D" + std::to_string(i) + ".", i, 0, i, 0));
  return out;
}

// Winner = statement maximizing (size of its category, generation_seq).
std::size_t vote_oracle(const std::vector<Statement>& cluster, const Partition& p) {
  std::size_t best = 0, best_size = 0, best_seq = 0;
  for (const auto& cat : p)
    for (std::size_t idx : cat) {
      const std::size_t seq = cluster[idx - 1].generation_seq;
      if (cat.size() > best_size || (cat.size() == best_size && seq > best_seq)) {
        best = idx;
        best_size = cat.size();
        best_seq = seq;
      }
    }
  return best;
}

Partition random_partition(std::mt19937& rng, std::size_t n) {
  std::vector<std::size_t> label(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (auto& l : label) l = pick(rng);
  Partition p;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    if (slot[label[i]] == SIZE_MAX) {
      slot[label[i]] = p.size();
      p.emplace_back();
    }
    p[slot[label[i]]].push_back(i + 1);
  }
  return p;
}

class RewritingBackend final : public Backend {
 public:
  explicit RewritingBackend(std::string reply) : reply_(std::move(reply)) {}
  std::string complete(const EngineRequest&) override {
    ++calls;
    return reply_;
  }
  int calls = 0;

 private:
  std::string reply_;
};

class FailingBackend final : public Backend {
 public:
  std::string complete(const EngineRequest&) override {
    throw EngineError("backend down", "req", 5);
  }
};

EngineParams params() { return EngineParams{}; }

}  // namespace

TEST_CASE("vote examples") {
  const auto d = d_statements(5);
  const auto r = vote(d, {{2}, {1, 4}, {3, 5}});
  CHECK(r.winner_statement.text == "D5.");
  CHECK(r.winner_category == 2);
  CHECK(r.rationale == VoteRationale::cross_category_tie);

  std::vector<Statement> pair = {Statement::make("D1.", 1, 0, 1, 0),
                                 Statement::make("D4.", 4, 0, 4, 0)};
  const auto single = vote(pair, {{1, 2}});
  CHECK(single.winner_statement.text == "D4.");
  CHECK(single.rationale == VoteRationale::within_category_latest);

  const auto d4 = d_statements(4);
  const auto tie = vote(d4, {{1, 2}, {3, 4}});
  CHECK(tie.winner_category == 1);
  CHECK(tie.winner_statement.text == "D4.");

  const auto majority = vote(d_statements(3), {{3}, {1, 2}});
  CHECK(majority.winner_statement.text == "D2.");
  CHECK(majority.rationale == VoteRationale::unique_majority);
  CHECK(to_string(majority.rationale) == "unique-majority");
  CHECK(to_string(VoteRationale::cross_category_tie) == "cross-category-tie");
  CHECK(to_string(VoteRationale::within_category_latest) == "within-category-latest");
}

TEST_CASE("vote rejects invalid partitions") {
  const auto d = d_statements(3);
  CHECK_THROWS_AS(vote(d, {{1, 2}}), ArgumentError);
  CHECK_THROWS_AS(vote(d, {{1, 2}, {2, 3}}), ArgumentError);
  CHECK_THROWS_AS(vote(d, {{1, 2}, {3, 4}}), ArgumentError);
  CHECK_THROWS_AS(vote(d, {{1, 2, 3}, {}}), ArgumentError);
  CHECK_THROWS_AS(vote(std::span<const Statement>{}, {}), ArgumentError);
}

TEST_CASE("vote matches the oracle and ignores category order") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    std::vector<std::size_t> seqs(n);
    std::iota(seqs.begin(), seqs.end(), 1);
    std::shuffle(seqs.begin(), seqs.end(), rng);
    std::vector<Statement> cluster;
    for (std::size_t i = 0; i < n; ++i)
      cluster.push_back(Statement::make("s" + std::to_string(i), i, 0, seqs[i], 0));
    Partition p = random_partition(rng, n);
    const auto expected = cluster[vote_oracle(cluster, p) - 1].text;
    const auto r = vote(cluster, p);
    CHECK(r.winner_statement.text == expected);
    const auto& cat = p[r.winner_category];
    CHECK(std::any_of(cat.begin(), cat.end(),
                      [&](std::size_t i) { return cluster[i - 1].text == expected; }));
    for (const auto& c : p) CHECK(c.size() <= cat.size());

    std::shuffle(p.begin(), p.end(), rng);
    for (auto& c : p) std::shuffle(c.begin(), c.end(), rng);
    CHECK(vote(cluster, p).winner_statement.text == expected);
  }
}

TEST_CASE("duplicating the winner's latest statement keeps its category") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 7;
    std::vector<Statement> cluster;
    for (std::size_t i = 0; i < n; ++i)
      cluster.push_back(Statement::make("s" + std::to_string(i), i, 0, i + 1, 0));
    Partition p = random_partition(rng, n);
    const auto r = vote(cluster, p);
    cluster.push_back(Statement::make(r.winner_statement.text, n, 0, n + 1, 0));
    p[r.winner_category].push_back(n + 1);
    const auto again = vote(cluster, p);
    CHECK(again.winner_category == r.winner_category);
  }
}

TEST_CASE("anchor") {
  const Article article = make_article(
      "a", "The mayor opened the bridge. Traffic was heavy downtown. Schools closed early. "
           "Rain is expected tomorrow. Officials praised the volunteers. The park reopened. "
           "The bridge cost four million dollars.");
  CHECK(anchor("The bridge cost four million dollars.", article) == 7);
  CHECK(anchor("Heavy traffic downtown all day.", article) == 2);
  CHECK(anchor("zzz qqq", article) == 1);
  CHECK(anchor("", article) == 1);
}

TEST_CASE("anchor matches an exhaustive scan") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string text = synthetic::random_article(rng, 2 + rng() % 8, 3, 9);
    const Article article = make_article("r", text);
    const std::string statement = synthetic::random_article(rng, 1, 2, 8);
    std::size_t best = 0;
    double best_score = -1;
    for (const auto& s : article.sentences) {
      const double f = oracle::rouge1(statement, s.text);
      if (f > best_score + 1e-12) {
        best_score = f;
        best = s.index;
      }
    }
    CHECK(anchor(statement, article) == best);
  }
}

TEST_CASE("arrange sorts by anchor then generation order") {
  auto sel = [](std::string text, std::size_t anchor_at, std::size_t seq) {
    return SelectedStatement{Statement::make(std::move(text), 0, 0, seq, 0), anchor_at, 0};
  };
  auto two = arrange({sel("late", 5, 1), sel("early", 2, 2)});
  CHECK(two[0].statement.text == "early");
  CHECK(two[1].statement.text == "late");

  auto one = arrange({sel("only", 3, 9)});
  CHECK(one.size() == 1);

  auto same = arrange({sel("b", 4, 8), sel("a", 4, 3), sel("c", 1, 10)});
  CHECK(same[0].statement.text == "c");
  CHECK(same[1].statement.text == "a");
  CHECK(same[2].statement.text == "b");
}

TEST_CASE("arrange is a sorted permutation") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SelectedStatement> in;
    const std::size_t n = rng() % 12;
    for (std::size_t i = 0; i < n; ++i)
      in.push_back({Statement::make("s" + std::to_string(i), 0, 0, rng() % 50, 0), 1 + rng() % 6, i});
    const auto out = arrange(in);
    REQUIRE(out.size() == in.size());
    std::multiset<std::string> a, b;
    for (const auto& s : in) a.insert(s.statement.text);
    for (const auto& s : out) b.insert(s.statement.text);
    CHECK(a == b);
    for (std::size_t i = 1; i < out.size(); ++i) {
      const auto& p = out[i - 1];
      const auto& q = out[i];
      CHECK(std::pair(p.source_anchor, p.statement.generation_seq) <=
            std::pair(q.source_anchor, q.statement.generation_seq));
    }
  }
}

TEST_CASE("integrate with the mock engine") {
  MockBackend mock;
  CountingBackend counter(mock);
  Engine engine(counter);
  const std::vector<std::string> two = {"A.", "B."};
  const auto r = integrate(two, engine, params());
  CHECK(r.text == "A. B.");
  CHECK_FALSE(r.used_fallback);
  CHECK(r.engine_called);
  CHECK(counter.calls(Task::connect) == 1);

  const std::vector<std::string> one = {"Only statement."};
  const auto s = integrate(one, engine, params());
  CHECK(s.text == "Only statement.");
  CHECK_FALSE(s.engine_called);
  CHECK(counter.calls(Task::connect) == 1);
}

TEST_CASE("integrate accepts connectives that keep every statement") {
  RewritingBackend connective(
      "The storm hit the coast on Monday, and then thousands lost power across the region.");
  Engine engine(connective);
  const std::vector<std::string> s = {"The storm hit the coast on Monday.",
                                      "Thousands lost power across the region."};
  const auto r = integrate(s, engine, params());
  CHECK_FALSE(r.used_fallback);
  CHECK(r.text == connective.complete({}));
}

TEST_CASE("integrate falls back when the engine rewrites content") {
  const std::vector<std::string> s = {"The storm hit the coast on Monday.",
                                      "Thousands lost power across the region."};
  RewritingBackend rewrite("A weather event occurred. Utilities had problems somewhere.");
  const auto r = integrate(s, Engine(rewrite), params());
  CHECK(r.used_fallback);
  CHECK(r.engine_called);
  CHECK(r.text == "The storm hit the coast on Monday. Thousands lost power across the region.");
  CHECK_FALSE(r.note.empty());

  RewritingBackend reorder("Thousands lost power across the region. The storm hit the coast on Monday.");
  CHECK(integrate(s, Engine(reorder), params()).used_fallback);

  FailingBackend down;
  const auto f = integrate(s, Engine(down), params());
  CHECK(f.used_fallback);
  CHECK(f.text == "The storm hit the coast on Monday. Thousands lost power across the region.");
}

TEST_CASE("preserves_statements threshold") {
  const std::vector<std::string> s = {"one two three four five"};
  CHECK(preserves_statements(s, "one two three four and more"));       // recall 0.8
  CHECK_FALSE(preserves_statements(s, "one two three and more words"));  // recall 0.6
}
