#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slisum/cache.hpp"
#include "slisum/error.hpp"
#include "slisum/evalkit.hpp"
#include "slisum/http_backend.hpp"
#include "slisum/pipeline.hpp"

namespace slisum::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CorpusRecord {
  std::string id;
  std::string article;
  std::optional<std::string> reference;
};

struct HttpConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string model = "gpt-3.5-turbo";
  int timeout_s = 120;
  int max_inflight = 4;
  int max_tokens = 512;
};

// Everything `summarize` needs after merging file, environment and flags.
struct Settings {
  std::string backend = "mock";
  ConfigOverrides overrides;
  int jobs = 1;
  int concurrency = 4;
  std::optional<fs::path> cache_dir;
  std::optional<std::int64_t> seed;
  HttpConfig http;
  double temperature_summarize = 0.3;
  double temperature_classify = 0.0;
  double temperature_connect = 0.0;
  std::string api_key;
};

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << content;
}

void apply_config_file(const fs::path& path, Settings& s) {
  const json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ConfigError("config file " + path.string() + " is not a JSON object");
  try {
    if (j.contains("backend")) s.backend = j["backend"].get<std::string>();
    if (j.contains("profile")) s.overrides.profile = j["profile"].get<std::string>();
    if (j.contains("window_size")) s.overrides.window_size = j["window_size"].get<std::size_t>();
    if (j.contains("step_size")) s.overrides.step_size = j["step_size"].get<std::size_t>();
    if (j.contains("eps")) s.overrides.eps = j["eps"].get<double>();
    if (j.contains("min_pts")) s.overrides.min_pts = j["min_pts"].get<std::size_t>();
    if (j.contains("jobs")) s.jobs = j["jobs"].get<int>();
    if (j.contains("concurrency")) s.concurrency = j["concurrency"].get<int>();
    if (j.contains("cache_dir")) s.cache_dir = fs::path(j["cache_dir"].get<std::string>());
    if (j.contains("seed")) s.seed = j["seed"].get<std::int64_t>();
    if (j.contains("temperature")) {
      const auto& t = j["temperature"];
      s.temperature_summarize = t.value("summarize", s.temperature_summarize);
      s.temperature_classify = t.value("classify", s.temperature_classify);
      s.temperature_connect = t.value("connect", s.temperature_connect);
    }
    if (j.contains("http")) {
      const auto& h = j["http"];
      s.http.base_url = h.value("base_url", s.http.base_url);
      s.http.path = h.value("path", s.http.path);
      s.http.model = h.value("model", s.http.model);
      s.http.timeout_s = h.value("timeout_s", s.http.timeout_s);
      s.http.max_inflight = h.value("max_inflight", s.http.max_inflight);
      s.http.max_tokens = h.value("max_tokens", s.http.max_tokens);
    }
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

Settings resolve_settings(const SummarizeOptions& o) {
  Settings s;
  if (o.config_path) apply_config_file(*o.config_path, s);

  if (auto v = env("SLISUM_BASE_URL")) s.http.base_url = *v;
  if (auto v = env("SLISUM_MODEL")) s.http.model = *v;
  if (auto v = env("SLISUM_API_KEY")) s.api_key = *v;

  if (o.backend) s.backend = *o.backend;
  if (o.profile) s.overrides.profile = *o.profile;
  if (o.window_size) s.overrides.window_size = *o.window_size;
  if (o.step_size) s.overrides.step_size = *o.step_size;
  if (o.eps) s.overrides.eps = *o.eps;
  if (o.min_pts) s.overrides.min_pts = *o.min_pts;
  if (o.jobs) s.jobs = *o.jobs;
  if (o.concurrency) s.concurrency = *o.concurrency;
  if (o.cache_dir) s.cache_dir = *o.cache_dir;

  if (s.backend != "mock" && s.backend != "http")
    throw ConfigError("unknown backend '" + s.backend + "'");
  if (s.jobs < 1) throw ConfigError("--jobs must be >= 1");
  if (s.concurrency < 1) throw ConfigError("concurrency must be >= 1");
  return s;
}

PipelineConfig base_config(const Settings& s) {
  PipelineConfig c;
  c.backend = s.backend;
  c.concurrency = s.concurrency;
  c.seed = s.seed;
  c.params.set_model(s.backend == "http" ? s.http.model : "mock");
  c.params.summarize.temperature = s.temperature_summarize;
  c.params.classify.temperature = s.temperature_classify;
  c.params.connect.temperature = s.temperature_connect;
  for (EngineParams* p : {&c.params.summarize, &c.params.classify, &c.params.connect}) {
    p->max_tokens = s.http.max_tokens;
    p->seed = s.seed;
  }
  return c;
}

// Reads a JSONL corpus. Bad lines are reported and skipped.
std::vector<CorpusRecord> read_corpus(const fs::path& path, std::ostream& err,
                                      std::size_t& skipped) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path.string());
  std::vector<CorpusRecord> records;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    auto warn = [&](const std::string& why) {
      err << "warning: " << path.string() << ":" << line_no << ": " << why << ", skipped\n";
      ++skipped;
    };
    if (j.is_discarded() || !j.is_object()) {
      warn("malformed JSON");
      continue;
    }
    if (!j.contains("id") || !(j["id"].is_string() || j["id"].is_number_integer())) {
      warn("missing \"id\"");
      continue;
    }
    CorpusRecord r;
    r.id = j["id"].is_string() ? j["id"].get<std::string>() : std::to_string(j["id"].get<long long>());
    if (!j.contains("article") || !j["article"].is_string() ||
        j["article"].get<std::string>().find_first_not_of(" \t\r\n") == std::string::npos) {
      warn("missing or empty \"article\"");
      continue;
    }
    r.article = j["article"].get<std::string>();
    if (j.contains("reference") && j["reference"].is_string())
      r.reference = j["reference"].get<std::string>();
    if (!ids.insert(r.id).second) {
      warn("duplicate id '" + r.id + "'");
      continue;
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string file_stem_for(const std::string& id) {
  std::string out;
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

struct ArticleOutcome {
  std::optional<RunRecord> record;
  std::optional<RunRecord> partial;
  std::string error;
};

void print_dry_run(const CorpusRecord& rec, const Settings& settings, std::ostream& out) {
  const Article article = make_article(rec.id, rec.article);
  const PipelineConfig config =
      resolve_config(article.total_words, settings.overrides, base_config(settings));
  out << "article " << rec.id << ": " << article.sentences.size() << " sentences, "
      << article.total_words << " words\n";
  if (article.sentences.empty()) {
    out << "  (no sentences)\n";
    return;
  }
  const WindowPlan plan = build_window_plan(article, config.window_size, config.step_size);
  out << "  window_size=" << plan.window_size << " step_size=" << plan.step_size
      << " K=" << plan.k_ratio << " eps=" << config.eps
      << " min_pts=" << config.effective_min_pts() << "\n";
  for (const auto& w : plan.windows)
    out << "  window " << std::setw(3) << w.ordinal << "  sentences [" << w.start_sentence << ", "
        << w.end_sentence << "]  words " << w.word_count << "  x" << w.repetitions << "  "
        << to_string(w.kind) << "\n";
  out << "  summarize calls: " << plan.total_generations()
      << " (plus one classify per non-trivial retained cluster and at most one connect)\n";
}

// Sizing overrides that cannot work for a whole profile are usage errors, not
// per-article failures.
void check_overrides(const Settings& s) {
  const auto& profile = s.overrides.profile;
  if (!profile || *profile != "long") resolve_config(0, s.overrides, base_config(s)).validate();
  if (!profile || *profile != "short")
    resolve_config(kLongProfileMinWords, s.overrides, base_config(s)).validate();
}

}  // namespace

int cmd_summarize(const SummarizeOptions& options, std::ostream& out, std::ostream& err,
                  SummarizeStats* stats_out) {
  SummarizeStats stats;
  Settings settings;
  std::vector<CorpusRecord> corpus;
  try {
    settings = resolve_settings(options);
    check_overrides(settings);
    corpus = read_corpus(options.input, err, stats.lines_skipped);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (corpus.empty() && stats.lines_skipped == 0)
    err << "warning: " << options.input.string() << " contains no records\n";

  if (options.dry_run) {
    try {
      for (const auto& rec : corpus) print_dry_run(rec, settings, out);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    if (stats_out) *stats_out = stats;
    return stats.lines_skipped > 0 ? kExitPartial : kExitOk;
  }

  // Backend stack: base -> transport counter -> cache -> engine.
  MockBackend mock;
  std::unique_ptr<HttpTransport> transport;
  std::unique_ptr<FixtureReplay> replay;
  std::unique_ptr<FixtureRecorder> recorder;
  std::unique_ptr<HttpBackend> http;
  Backend* base = &mock;
  try {
    if (options.backend_override != nullptr) {
      base = options.backend_override;
    } else if (settings.backend == "http") {
      HttpTransport* t = nullptr;
      if (options.replay_fixtures) {
        replay = std::make_unique<FixtureReplay>(*options.replay_fixtures);
        t = replay.get();
      } else {
        transport = std::make_unique<HttplibTransport>(
            settings.http.base_url, std::chrono::seconds(settings.http.timeout_s));
        t = transport.get();
      }
      if (options.record_fixtures) {
        recorder = std::make_unique<FixtureRecorder>(*t, *options.record_fixtures);
        t = recorder.get();
      }
      HttpSettings hs;
      hs.path = settings.http.path;
      hs.api_key = settings.api_key;
      hs.max_inflight = settings.http.max_inflight;
      http = std::make_unique<HttpBackend>(*t, std::move(hs));
      base = http.get();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  CountingBackend counted(*base);
  std::unique_ptr<ResponseCache> cache;
  std::unique_ptr<CachingBackend> caching;
  Backend* top = &counted;
  try {
    if (settings.cache_dir) {
      cache = std::make_unique<ResponseCache>(*settings.cache_dir);
      caching = std::make_unique<CachingBackend>(counted, *cache);
      top = caching.get();
    }
    fs::create_directories(options.out_dir / "runs");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const Engine engine(*top);

  std::vector<ArticleOutcome> outcomes(corpus.size());
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(settings.jobs)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const Article article = make_article(corpus[idx].id, corpus[idx].article);
      const PipelineConfig config =
          resolve_config(article.total_words, settings.overrides, base_config(settings));
      outcomes[idx].record = run(article, config, engine);
    } catch (const RunAborted& e) {
      outcomes[idx].partial = e.partial();
      outcomes[idx].error = e.what();
    } catch (const std::exception& e) {
      outcomes[idx].error = e.what();
    }
  }

  std::string summaries;
  std::set<std::string> stems;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::string stem = file_stem_for(corpus[i].id);
    for (int k = 2; !stems.insert(stem).second; ++k) stem = file_stem_for(corpus[i].id) + "-" + std::to_string(k);
    auto& o = outcomes[i];
    if (o.record) {
      write_file(options.out_dir / "runs" / (stem + ".json"), to_json(*o.record, options.record_timing));
      summaries += json{{"id", corpus[i].id}, {"summary", o.record->final_summary.connected_text}}.dump() + "\n";
      ++stats.articles_ok;
    } else {
      err << "error: article '" << corpus[i].id << "': " << o.error << "\n";
      if (o.partial)
        write_file(options.out_dir / "runs" / (stem + ".partial.json"), to_json(*o.partial, options.record_timing));
      ++stats.articles_failed;
    }
  }
  write_file(options.out_dir / "summaries.jsonl", summaries);

  stats.transport_calls = counted.total_calls();
  if (cache) {
    stats.cache_hits = cache->hits();
    stats.cache_misses = cache->misses();
  }
  err << "summarized " << stats.articles_ok << " article(s), " << stats.articles_failed
      << " failed, " << stats.lines_skipped << " line(s) skipped; transport calls "
      << stats.transport_calls;
  if (cache) err << ", cache hits " << stats.cache_hits << ", misses " << stats.cache_misses;
  err << "\n";
  if (stats_out) *stats_out = stats;
  return (stats.articles_failed > 0 || stats.lines_skipped > 0) ? kExitPartial : kExitOk;
}

namespace {

// id -> text for a JSONL file with `field` (summaries: "summary").
std::vector<std::pair<std::string, std::string>> read_pairs(const fs::path& path,
                                                            const std::string& field,
                                                            std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains(field) ||
        !j[field].is_string()) {
      err << "warning: " << path.string() << ":" << line_no << ": no \"" << field
          << "\" record, skipped\n";
      continue;
    }
    const std::string id =
        j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    out.emplace_back(id, j[field].get<std::string>());
  }
  return out;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

json unavailable_json() {
  json u;
  for (const char* m : kUnavailableMetrics)
    u[m] = "unavailable: requires an external learned model, not computed";
  return u;
}

json report_json(const ScoreReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"id", p.id}, {"rouge1", p.rouge1}, {"rouge2", p.rouge2}, {"rougeL", p.rougeL}});
  json means = nullptr;
  if (r.mean_rouge1)
    means = {{"rouge1", *r.mean_rouge1}, {"rouge2", *r.mean_rouge2}, {"rougeL", *r.mean_rougeL}};
  return {{"count", r.count()},
          {"pairs", pairs},
          {"means", means},
          {"unmatched_ids", r.unmatched_ids},
          {"unavailable_metrics", unavailable_json()}};
}

std::string report_text(const ScoreReport& r) {
  std::size_t width = 2;
  for (const auto& p : r.pairs) width = std::max(width, p.id.size());
  std::ostringstream s;
  s << std::left << std::setw(static_cast<int>(width)) << "id" << "  " << std::right
    << std::setw(8) << "R-1" << std::setw(8) << "R-2" << std::setw(8) << "R-L" << "\n";
  for (const auto& p : r.pairs)
    s << std::left << std::setw(static_cast<int>(width)) << p.id << "  " << std::right
      << std::setw(8) << fixed(p.rouge1) << std::setw(8) << fixed(p.rouge2) << std::setw(8)
      << fixed(p.rougeL) << "\n";
  if (r.mean_rouge1)
    s << std::left << std::setw(static_cast<int>(width)) << "mean" << "  " << std::right
      << std::setw(8) << fixed(*r.mean_rouge1) << std::setw(8) << fixed(*r.mean_rouge2)
      << std::setw(8) << fixed(*r.mean_rougeL) << "\n";
  s << "pairs: " << r.count() << "\n";
  for (const auto& id : r.unmatched_ids) s << "unmatched: " << id << "\n";
  s << "factcc/summac/bertscore: unavailable\n";
  return s.str();
}

void emit(const std::string& content, const std::optional<fs::path>& path, std::ostream& out) {
  if (path)
    write_file(*path, content);
  else
    out << content;
}

}  // namespace

int cmd_evaluate(const EvaluateOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.format != "json" && options.format != "text")
      throw ArgumentError("--format must be json or text");
    const auto summaries = read_pairs(options.summaries, "summary", err);
    const auto references = read_pairs(options.references, "reference", err);
    std::map<std::string, std::string> ref_by_id(references.begin(), references.end());
    std::set<std::string> summary_ids;

    std::vector<std::string> ids, hyp, ref;
    ScoreReport report;
    std::vector<std::string> unmatched;
    for (const auto& [id, text] : summaries) {
      summary_ids.insert(id);
      auto it = ref_by_id.find(id);
      if (it == ref_by_id.end()) {
        unmatched.push_back(id);
        continue;
      }
      ids.push_back(id);
      hyp.push_back(text);
      ref.push_back(it->second);
    }
    for (const auto& [id, text] : references)
      if (!summary_ids.count(id)) unmatched.push_back(id);

    if (ids.empty()) {
      err << "error: no ids shared between " << options.summaries.string() << " and "
          << options.references.string() << "\n";
      return kExitUsage;
    }
    report = score(hyp, ref, ids);
    report.unmatched_ids = unmatched;
    for (const auto& id : unmatched) err << "warning: unmatched id '" << id << "'\n";
    emit(options.format == "json" ? report_json(report).dump(2) + "\n" : report_text(report),
         options.out, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

namespace {

json histogram_json(const PositionHistogram& h) {
  json bins = json::array();
  for (std::size_t b = 0; b < h.bin_starts.size(); ++b)
    bins.push_back({{"range", h.bin_label(b)}, {"count", h.counts[b]}, {"percent", h.percentages[b]}});
  return {{"bins", bins}, {"statements", h.total}, {"empty", h.empty()}};
}

json diagnostics_json(const std::optional<DistanceDiagnostics>& d) {
  if (!d) return nullptr;
  return {{"same_cluster_pairs", d->same_cluster_pairs},
          {"mean_same_cluster", d->mean_same_cluster},
          {"max_same_cluster", d->max_same_cluster},
          {"cluster_pairs", d->cluster_pairs},
          {"mean_hausdorff", d->mean_hausdorff ? json(*d->mean_hausdorff) : json(nullptr)}};
}

std::string histogram_text(const PositionHistogram& h) {
  std::ostringstream s;
  for (std::size_t b = 0; b < h.bin_starts.size(); ++b)
    s << "    " << std::left << std::setw(12) << h.bin_label(b) << std::right << std::setw(6)
      << h.counts[b] << std::setw(9) << fixed(h.percentages[b], 2) << "%\n";
  return s.str();
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.format != "json" && options.format != "text")
      throw ArgumentError("--format must be json or text");
    fs::path dir = options.runs_dir;
    if (!fs::is_directory(dir)) {
      err << "error: " << dir.string() << " is not a directory\n";
      return kExitUsage;
    }
    std::vector<fs::path> files;
    auto collect = [&](const fs::path& d) {
      for (const auto& e : fs::directory_iterator(d)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && e.path().extension() == ".json" &&
            name.find(".partial.") == std::string::npos)
          files.push_back(e.path());
      }
    };
    collect(dir);
    if (files.empty() && fs::is_directory(dir / "runs")) collect(dir / "runs");
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      err << "error: no run records in " << dir.string() << "\n";
      return kExitUsage;
    }

    const auto bins = default_position_bins();
    std::vector<PositionHistogram> histograms;
    json articles = json::array();
    std::string text;
    double same_sum = 0.0, haus_sum = 0.0;
    std::size_t same_n = 0, haus_n = 0;
    double max_same = 0.0;
    for (const auto& f : files) {
      const RunRecord record = run_record_from_json(read_file(f));
      const PositionHistogram h = position_histogram(record, bins);
      histograms.push_back(h);
      std::optional<DistanceDiagnostics> d;
      if (!record.retained_clusters.empty()) {
        d = distance_diagnostics(record);
        same_sum += d->mean_same_cluster;
        ++same_n;
        max_same = std::max(max_same, d->max_same_cluster);
        if (d->mean_hausdorff) {
          haus_sum += *d->mean_hausdorff;
          ++haus_n;
        }
      }
      articles.push_back({{"id", record.article_id},
                          {"position_histogram", histogram_json(h)},
                          {"distance", diagnostics_json(d)}});
      text += "article " + record.article_id + "\n" + histogram_text(h);
      if (d) {
        text += "    same-cluster mean " + fixed(d->mean_same_cluster) + "  max " +
                fixed(d->max_same_cluster) + "  hausdorff " +
                (d->mean_hausdorff ? fixed(*d->mean_hausdorff) : std::string("n/a")) + "\n";
      } else {
        text += "    no retained cluster\n";
      }
    }
    const PositionHistogram merged = merge_histograms(histograms);
    json aggregate = {{"articles", files.size()},
                      {"position_histogram", histogram_json(merged)},
                      {"mean_same_cluster", same_n ? json(same_sum / static_cast<double>(same_n)) : json(nullptr)},
                      {"max_same_cluster", same_n ? json(max_same) : json(nullptr)},
                      {"mean_hausdorff", haus_n ? json(haus_sum / static_cast<double>(haus_n)) : json(nullptr)}};
    text += "aggregate (" + std::to_string(files.size()) + " articles)\n" + histogram_text(merged);

    const json report = {{"articles", articles}, {"aggregate", aggregate}};
    emit(options.format == "json" ? report.dump(2) + "\n" : text, options.out, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_cache(const std::string& action, const fs::path& cache_dir, std::ostream& out,
              std::ostream& err) {
  if (action == "stats") {
    const CacheStats s = cache_stats(cache_dir);
    out << "entries " << s.entries << "\nbytes " << s.bytes << "\nquarantined " << s.quarantined
        << "\n";
    return kExitOk;
  }
  if (action == "clear") {
    out << "removed " << cache_clear(cache_dir) << " file(s)\n";
    return kExitOk;
  }
  err << "error: unknown cache action '" << action << "'\n";
  return kExitUsage;
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sliding-window faithful summarization"};
  app.require_subcommand(1);

  SummarizeOptions so;
  std::string input, out_dir, config, cache_dir, record_fx, replay_fx;
  auto* sum = app.add_subcommand("summarize", "Summarize a JSONL corpus");
  sum->add_option("input", input, "JSONL corpus with id/article[/reference]")->required();
  sum->add_option("-o,--out", out_dir, "Output directory")->default_val("slisum-out");
  sum->add_option("--config", config, "JSON config file");
  sum->add_option("--backend", so.backend, "mock or http")->check(CLI::IsMember({"mock", "http"}));
  sum->add_option("--window-size", so.window_size, "Window size in words");
  sum->add_option("--step-size", so.step_size, "Step size in words");
  sum->add_option("--eps", so.eps, "DBSCAN distance threshold");
  sum->add_option("--min-pts", so.min_pts, "DBSCAN MinPts");
  sum->add_option("--profile", so.profile, "short, long or auto")
      ->check(CLI::IsMember({"short", "long", "auto"}));
  sum->add_option("--jobs", so.jobs, "Articles processed concurrently");
  sum->add_option("--concurrency", so.concurrency, "Concurrent engine requests per article");
  sum->add_option("--cache-dir", cache_dir, "Response cache directory");
  sum->add_option("--record-fixtures", record_fx, "Append HTTP exchanges to this JSONL file");
  sum->add_option("--replay-fixtures", replay_fx, "Serve HTTP exchanges from this JSONL file");
  sum->add_flag("--dry-run", so.dry_run, "Print window plans and call estimates only");
  sum->add_flag("--record-timing", so.record_timing, "Include timings in run records");

  EvaluateOptions eo;
  std::string eval_out;
  auto* eval = app.add_subcommand("evaluate", "ROUGE-score summaries against references");
  eval->add_option("summaries", eo.summaries, "JSONL with id/summary")->required();
  eval->add_option("references", eo.references, "JSONL with id/reference")->required();
  eval->add_option("-o,--out", eval_out, "Report file (default stdout)");
  eval->add_option("--format", eo.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  AnalyzeOptions ao;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Position and distance diagnostics of run records");
  analyze->add_option("runs", ao.runs_dir, "Directory of run records")->required();
  analyze->add_option("-o,--out", analyze_out, "Report file (default stdout)");
  analyze->add_option("--format", ao.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string cache_action, cache_path;
  auto* cache = app.add_subcommand("cache", "Inspect or clear the response cache");
  cache->add_option("action", cache_action, "stats or clear")
      ->required()
      ->check(CLI::IsMember({"stats", "clear"}));
  cache->add_option("--cache-dir", cache_path, "Cache directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*sum) {
    so.input = input;
    so.out_dir = out_dir;
    if (!config.empty()) so.config_path = config;
    if (!cache_dir.empty()) so.cache_dir = cache_dir;
    if (!record_fx.empty()) so.record_fixtures = record_fx;
    if (!replay_fx.empty()) so.replay_fixtures = replay_fx;
    return cmd_summarize(so, out, err);
  }
  if (*eval) {
    if (!eval_out.empty()) eo.out = eval_out;
    return cmd_evaluate(eo, out, err);
  }
  if (*analyze) {
    if (!analyze_out.empty()) ao.out = analyze_out;
    return cmd_analyze(ao, out, err);
  }
  return cmd_cache(cache_action, cache_path, out, err);
}

}  // namespace slisum::cli
