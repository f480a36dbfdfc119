#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "slisum/error.hpp"
#include "slisum/lexical.hpp"
#include "synthetic.hpp"

using namespace slisum;

TEST_CASE("tokenize case-folds and strips edge punctuation") {
  CHECK(tokenize("The Cat, sat!") == std::vector<std::string>{"the", "cat", "sat"});
  CHECK(tokenize("\"x-ray\" -- (U.S.)") == std::vector<std::string>{"x-ray", "u.s"});
  CHECK(tokenize("  ").empty());
  CHECK(normalize_text("X won.") == normalize_text("x won"));
}

TEST_CASE("rouge1_f1 basics") {
  CHECK(rouge1_f1("the cat sat", "the cat sat") == 1.0);
  CHECK(rouge1_f1("the cat sat", "a dog ran") == 0.0);
  CHECK(rouge1_f1("the cat sat", "the cat ran") == doctest::Approx(2.0 * 2 / 6).epsilon(1e-12));
  CHECK(rouge1_f1("", "") == 1.0);
  CHECK(rouge1_f1("", "word") == 0.0);
  // clipped: "the" appears twice on one side only once on the other
  CHECK(rouge1_f1("the the cat", "the cat") == doctest::Approx(2.0 * 2 / 5).epsilon(1e-12));
}

TEST_CASE("distance") {
  CHECK(distance("a b c", "a b c") == 0.0);
  CHECK(distance("a b c", "d e f") == 1.0);
  CHECK(distance("the cat sat", "the cat ran") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(distance("", "") == 0.0);
  CHECK(distance("a", "") == 1.0);
}

TEST_CASE("rouge2 and rougeL") {
  CHECK(rouge2_f1("a b c d", "a b c d") == 1.0);
  CHECK(rougeL_f1("a b c d", "a b c d") == 1.0);
  CHECK(rougeL_f1("a b c d", "a c b d") == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(rouge2_f1("a b c", "x y z") == 0.0);
  CHECK(rougeL_f1("a b c", "x y z") == 0.0);
  CHECK(rouge2_f1("a b c d", "a c b d") == 0.0);
  CHECK(rouge2_f1("word", "word") == 1.0);
  CHECK(rouge2_f1("word", "other") == 0.0);
  CHECK(rouge2_f1("", "") == 1.0);
  CHECK(rougeL_f1("", "x") == 0.0);
}

TEST_CASE("metric properties on random token bags") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pair = synthetic::random_statements(rng, 2);
    const std::string& a = pair[0];
    const std::string& b = pair[1];
    const double d = distance(a, b);
    CHECK(d == distance(b, a));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    CHECK(d == doctest::Approx(1.0 - rouge1_f1(a, b)).epsilon(1e-15));
    CHECK(d == oracle::dist(a, b));
    CHECK(rouge1_f1(a, b) == doctest::Approx(oracle::rouge1(a, b)).epsilon(1e-15));
    CHECK(distance(a, a) == 0.0);
    CHECK(rouge1_f1(a, a) == 1.0);
    CHECK((d == 0.0) == (TokenBag(a) == TokenBag(b)));
    for (double v : {rouge2_f1(a, b), rougeL_f1(a, b)}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    const auto ta = oracle::words(a), tb = oracle::words(b);
    CHECK(lcs_length(ta, tb) == oracle::lcs_bruteforce(ta, tb));
  }
}

TEST_CASE("hausdorff") {
  const std::vector<std::string> x = {"the cat sat", "a dog ran"};
  CHECK(hausdorff(std::span<const std::string>(x), std::span<const std::string>(x)) == 0.0);
  const std::vector<std::string> a = {"the cat sat"}, b = {"the cat ran"};
  CHECK(hausdorff(std::span<const std::string>(a), std::span<const std::string>(b)) ==
        distance("the cat sat", "the cat ran"));
  const std::vector<std::string> empty;
  CHECK_THROWS_AS(hausdorff(std::span<const std::string>(empty), std::span<const std::string>(a)),
                  ArgumentError);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = synthetic::random_statements(rng, 3);
    const auto q = synthetic::random_statements(rng, 3);
    const double h = hausdorff(std::span<const std::string>(p), std::span<const std::string>(q));
    CHECK(h == oracle::hausdorff(p, q));
    CHECK(h == hausdorff(std::span<const std::string>(q), std::span<const std::string>(p)));
  }
}

TEST_CASE("parallel distance matrix equals the serial reference") {
  std::mt19937 rng(9);
  for (std::size_t n : {0u, 1u, 2u, 17u, 130u}) {
    std::vector<TokenBag> bags;
    for (const auto& s : synthetic::random_statements(rng, n)) bags.emplace_back(s);
    const DistanceMatrix serial = distance_matrix_serial(bags);
    for (int threads : {1, 2, 4, 0}) CHECK(distance_matrix(bags, threads) == serial);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(serial(i, i) == 0.0);
      for (std::size_t j = 0; j < n; ++j) CHECK(serial(i, j) == serial(j, i));
    }
  }
}
