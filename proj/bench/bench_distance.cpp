// Serial vs OpenMP distance matrix, plus a mock pipeline run for scale.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <omp.h>

#include "slisum/lexical.hpp"
#include "slisum/pipeline.hpp"

using namespace slisum;

namespace {

std::vector<TokenBag> random_bags(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> len(8, 30), word(0, 400);
  std::vector<TokenBag> bags;
  bags.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> tokens(static_cast<std::size_t>(len(rng)));
    for (auto& t : tokens) t = "w" + std::to_string(word(rng));
    bags.emplace_back(std::move(tokens));
  }
  return bags;
}

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
  std::mt19937 rng(1);
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%8s %12s %12s %9s %6s\n", "n", "serial ms", "openmp ms", "speedup", "same");
  for (std::size_t n : {100u, 400u, 1000u, 2000u, 4000u}) {
    const auto bags = random_bags(n, rng);
    DistanceMatrix a(0), b(0);
    const double s = best_ms(reps, [&] { a = distance_matrix_serial(bags); });
    const double p = best_ms(reps, [&] { b = distance_matrix(bags); });
    std::printf("%8zu %12.2f %12.2f %8.2fx %6s\n", n, s, p, s / p, a == b ? "yes" : "NO");
  }

  std::string text;
  std::uniform_int_distribution<int> len(8, 30), word(0, 3000);
  for (int s = 0; s < 400; ++s) {
    for (int w = 0, n = len(rng); w < n; ++w) text += (w ? " w" : (s ? " W" : "W")) + std::to_string(word(rng));
    text += ".";
  }
  const Article article = make_article("bench", text);
  MockBackend mock;
  std::vector<int> levels = {1};
  if (omp_get_max_threads() > 1) levels.push_back(omp_get_max_threads());
  for (int threads : levels) {
    PipelineConfig cfg = resolve_config(article.total_words, {});
    cfg.concurrency = threads;
    RunRecord r;
    const double ms = best_ms(reps, [&] { r = run(article, cfg, Engine(mock)); });
    std::printf("\nmock pipeline, %zu words, %zu generations, concurrency %d: %.2f ms", article.total_words,
                r.generations.size(), threads, ms);
  }
  std::printf("\n");
}
