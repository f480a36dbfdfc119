#include "slisum/pipeline.hpp"

#include <chrono>
#include <exception>

#include "slisum/error.hpp"

namespace slisum {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool all_equivalent(const Cluster& cluster) {
  const std::string first = normalize_text(cluster.front().text);
  for (const auto& s : cluster)
    if (normalize_text(s.text) != first) return false;
  return true;
}

std::vector<std::string> texts_of(const Cluster& cluster) {
  std::vector<std::string> out;
  out.reserve(cluster.size());
  for (const auto& s : cluster) out.push_back(s.text);
  return out;
}

}  // namespace

ProfileDefaults short_profile() { return {"short", 150, 50, 0.25, 2}; }
ProfileDefaults long_profile() { return {"long", 750, 150, 0.25, 3}; }

ProfileDefaults resolve_profile(std::size_t article_words) {
  return article_words < kLongProfileMinWords ? short_profile() : long_profile();
}

std::size_t PipelineConfig::effective_min_pts() const {
  return min_pts ? *min_pts : default_min_pts(k());
}

void PipelineConfig::validate() const {
  const std::size_t kr = k();
  if (kr * step_size != window_size)
    throw ConfigError("window_size " + std::to_string(window_size) +
                      " must be an integer multiple of step_size " + std::to_string(step_size));
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  const std::size_t mp = effective_min_pts();
  if (mp < 1 || mp > kr)
    throw ConfigError("min_pts " + std::to_string(mp) + " outside [1, K=" + std::to_string(kr) +
                      "]");
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
}

PipelineConfig resolve_config(std::size_t article_words, const ConfigOverrides& overrides,
                              PipelineConfig base) {
  ProfileDefaults profile = resolve_profile(article_words);
  if (overrides.profile && *overrides.profile != "auto") {
    if (*overrides.profile == "short")
      profile = short_profile();
    else if (*overrides.profile == "long")
      profile = long_profile();
    else
      throw ConfigError("unknown profile '" + *overrides.profile + "'");
  }
  base.window_size = overrides.window_size.value_or(profile.window_size);
  base.step_size = overrides.step_size.value_or(profile.step_size);
  base.eps = overrides.eps.value_or(profile.eps);
  base.min_pts = overrides.min_pts;
  base.validate();
  return base;
}

RunRecord run(const Article& article, const PipelineConfig& config, const Engine& engine) {
  config.validate();
  if (article.sentences.empty())
    throw ArgumentError("article '" + article.id + "' has no sentences");
  const auto t_start = Clock::now();

  RunRecord record;
  record.article_id = article.id;
  record.article_words = article.total_words;
  for (std::size_t i = 1; i <= article.sentences.size(); ++i)
    record.sentence_word_positions.push_back(article.first_word_position(i));
  record.config = config;
  record.plan = build_window_plan(article, config.window_size, config.step_size);

  const std::size_t k = record.plan.k_ratio;
  const std::size_t min_pts = config.effective_min_pts();

  record.cost.article_words = article.total_words;
  record.cost.full_context_quadratic_cost =
      static_cast<double>(article.total_words) * static_cast<double>(article.total_words);
  record.cost.breakeven_words = 1.36 * static_cast<double>(k * config.window_size);

  // Sliding generation.
  struct Job {
    const Window* window;
    std::size_t repetition;
  };
  std::vector<Job> jobs;
  for (const auto& w : record.plan.windows)
    for (std::size_t r = 0; r < w.repetitions; ++r) jobs.push_back({&w, r});

  std::vector<std::string> summaries(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  const auto t_gen = Clock::now();
  const auto job_count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.concurrency)
  for (std::ptrdiff_t j = 0; j < job_count; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    try {
      EngineParams params = config.params.summarize;
      if (params.seed) *params.seed += static_cast<std::int64_t>(jobs[idx].repetition);
      summaries[idx] = engine.summarize(window_text(article, *jobs[idx].window), params);
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }
  const double generation_ms = elapsed_ms(t_gen);

  std::size_t seq = 0;
  std::string first_error;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (failures[j]) {
      if (first_error.empty()) {
        try {
          std::rethrow_exception(failures[j]);
        } catch (const std::exception& e) {
          first_error = e.what();
        }
      }
      continue;
    }
    ++record.engine_calls.summarize;
    Generation g;
    g.window_ordinal = jobs[j].window->ordinal;
    g.repetition = jobs[j].repetition;
    g.local_summary = summaries[j];
    std::size_t position = 0;
    for (auto& sentence : segment_sentences(g.local_summary))
      g.statements.push_back(Statement::make(std::move(sentence.text), g.window_ordinal,
                                             g.repetition, ++seq, ++position));
    record.cost.summarize_input_words += jobs[j].window->word_count;
    record.cost.windowed_quadratic_cost += static_cast<double>(jobs[j].window->word_count) *
                                           static_cast<double>(jobs[j].window->word_count);
    record.generations.push_back(std::move(g));
  }
  if (!first_error.empty()) {
    record.status = "partial";
    record.error = first_error;
    throw RunAborted("sliding generation failed for article '" + article.id + "': " + first_error,
                     std::move(record));
  }

  // Filtration.
  const auto t_cluster = Clock::now();
  std::vector<Statement> statements;
  for (const auto& g : record.generations)
    statements.insert(statements.end(), g.statements.begin(), g.statements.end());
  ClusterSet clusters = dbscan(statements, config.eps, min_pts, config.concurrency);
  for (auto& c : clusters.clusters) {
    if (c.size() >= min_pts)
      record.retained_clusters.push_back(std::move(c));
    else
      record.discarded_clusters.push_back(std::move(c));
  }
  record.noise = std::move(clusters.noise);
  for (std::size_t i = 0; i < record.retained_clusters.size(); ++i) {
    if (record.retained_clusters[i].size() > k)
      record.flags.push_back("cluster " + std::to_string(i + 1) + " has " +
                             std::to_string(record.retained_clusters[i].size()) +
                             " statements, more than K=" + std::to_string(k));
  }
  const double clustering_ms = elapsed_ms(t_cluster);

  // Aggregation.
  const auto t_agg = Clock::now();
  const std::size_t cluster_count = record.retained_clusters.size();
  record.votes.resize(cluster_count);
  std::vector<std::exception_ptr> vote_failures(cluster_count);
  const auto cluster_jobs = static_cast<std::ptrdiff_t>(cluster_count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.concurrency)
  for (std::ptrdiff_t c = 0; c < cluster_jobs; ++c) {
    const auto idx = static_cast<std::size_t>(c);
    const Cluster& cluster = record.retained_clusters[idx];
    try {
      VoteRecord& vr = record.votes[idx];
      Partition partition;
      if (cluster.size() == 1 || all_equivalent(cluster)) {
        vr.classification_skipped = true;
        partition.emplace_back();
        for (std::size_t i = 1; i <= cluster.size(); ++i) partition.back().push_back(i);
      } else {
        auto result = engine.classify(texts_of(cluster), config.params.classify);
        partition = std::move(result.partition);
        vr.raw_response = std::move(result.raw_response);
      }
      vr.outcome = vote(cluster, partition, idx + 1);
    } catch (...) {
      vote_failures[idx] = std::current_exception();
    }
  }
  for (std::size_t c = 0; c < cluster_count; ++c) {
    if (vote_failures[c]) {
      try {
        std::rethrow_exception(vote_failures[c]);
      } catch (const EngineError& e) {
        record.status = "partial";
        record.error = e.what();
        record.votes.clear();
        throw RunAborted("classification failed for article '" + article.id + "': " + e.what(),
                         std::move(record));
      }
    }
    if (!record.votes[c].classification_skipped) ++record.engine_calls.classify;
  }

  std::vector<SelectedStatement> selected;
  for (const auto& vr : record.votes)
    selected.push_back({vr.outcome.winner_statement,
                        anchor(vr.outcome.winner_statement.token_bag, article),
                        vr.outcome.cluster_id});
  record.final_summary.statements = arrange(std::move(selected));

  if (record.final_summary.statements.empty()) {
    record.flags.emplace_back(kNoClusterSurvived);
  } else {
    std::vector<std::string> ordered;
    for (const auto& s : record.final_summary.statements) ordered.push_back(s.statement.text);
    IntegrationResult integrated = integrate(ordered, engine, config.params.connect);
    if (integrated.engine_called) ++record.engine_calls.connect;
    record.final_summary.connected_text = std::move(integrated.text);
    record.final_summary.integration_fallback = integrated.used_fallback;
    if (integrated.used_fallback) record.flags.push_back("integration fallback: " + integrated.note);
  }
  const double aggregation_ms = elapsed_ms(t_agg);

  record.timings = Timings{generation_ms, clustering_ms, aggregation_ms, elapsed_ms(t_start)};
  return record;
}

}  // namespace slisum
