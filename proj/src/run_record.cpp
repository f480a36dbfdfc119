#include <json.hpp>

#include "slisum/error.hpp"
#include "slisum/pipeline.hpp"

namespace slisum {
namespace {

using nlohmann::json;

json statement_json(const Statement& s) {
  return {{"generation_seq", s.generation_seq},
          {"window_ordinal", s.window_ordinal},
          {"repetition", s.repetition},
          {"position_in_summary", s.position_in_summary},
          {"text", s.text}};
}

Statement statement_from(const json& j) {
  return Statement::make(j.at("text").get<std::string>(), j.at("window_ordinal").get<std::size_t>(),
                         j.at("repetition").get<std::size_t>(),
                         j.at("generation_seq").get<std::size_t>(),
                         j.at("position_in_summary").get<std::size_t>());
}

json statements_json(const std::vector<Statement>& list) {
  json out = json::array();
  for (const auto& s : list) out.push_back(statement_json(s));
  return out;
}

std::vector<Statement> statements_from(const json& j) {
  std::vector<Statement> out;
  for (const auto& s : j) out.push_back(statement_from(s));
  return out;
}

json clusters_json(const std::vector<Cluster>& clusters) {
  json out = json::array();
  for (std::size_t i = 0; i < clusters.size(); ++i)
    out.push_back({{"cluster_id", i + 1},
                   {"size", clusters[i].size()},
                   {"members", statements_json(clusters[i])}});
  return out;
}

std::vector<Cluster> clusters_from(const json& j) {
  std::vector<Cluster> out;
  for (const auto& c : j) out.push_back(statements_from(c.at("members")));
  return out;
}

json params_json(const EngineParams& p) {
  json j = {{"model", p.model}, {"temperature", p.temperature}, {"max_tokens", p.max_tokens}};
  j["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  return j;
}

EngineParams params_from(const json& j) {
  EngineParams p;
  p.model = j.at("model").get<std::string>();
  p.temperature = j.at("temperature").get<double>();
  p.max_tokens = j.at("max_tokens").get<int>();
  if (!j.at("seed").is_null()) p.seed = j.at("seed").get<std::int64_t>();
  return p;
}

WindowKind kind_from(const std::string& s) {
  if (s == "whole") return WindowKind::whole;
  if (s == "prefix") return WindowKind::prefix;
  if (s == "suffix") return WindowKind::suffix;
  return WindowKind::base;
}

VoteRationale rationale_from(const std::string& s) {
  if (s == "cross-category-tie") return VoteRationale::cross_category_tie;
  if (s == "within-category-latest") return VoteRationale::within_category_latest;
  return VoteRationale::unique_majority;
}

}  // namespace

std::string to_json(const RunRecord& r, bool include_timings) {
  json j;
  j["status"] = r.status;
  if (!r.error.empty()) j["error"] = r.error;
  j["article"] = {{"id", r.article_id},
                  {"total_words", r.article_words},
                  {"sentence_count", r.sentence_word_positions.size()},
                  {"sentence_word_positions", r.sentence_word_positions}};

  const auto& c = r.config;
  j["config"] = {{"window_size", c.window_size},
                 {"step_size", c.step_size},
                 {"k_ratio", r.plan.k_ratio},
                 {"eps", c.eps},
                 {"min_pts", c.effective_min_pts()},
                 {"min_pts_explicit", c.min_pts.has_value()},
                 {"backend", c.backend},
                 {"seed", c.seed ? json(*c.seed) : json(nullptr)},
                 {"params",
                  {{"summarize", params_json(c.params.summarize)},
                   {"classify", params_json(c.params.classify)},
                   {"connect", params_json(c.params.connect)}}}};

  json windows = json::array();
  for (const auto& w : r.plan.windows)
    windows.push_back({{"ordinal", w.ordinal},
                       {"start_sentence", w.start_sentence},
                       {"end_sentence", w.end_sentence},
                       {"word_count", w.word_count},
                       {"repetitions", w.repetitions},
                       {"kind", std::string(to_string(w.kind))}});
  j["plan"] = {{"k_ratio", r.plan.k_ratio},
               {"window_size", r.plan.window_size},
               {"step_size", r.plan.step_size},
               {"total_generations", r.plan.total_generations()},
               {"windows", windows}};

  json gens = json::array();
  for (const auto& g : r.generations)
    gens.push_back({{"window_ordinal", g.window_ordinal},
                    {"repetition", g.repetition},
                    {"local_summary", g.local_summary},
                    {"statements", statements_json(g.statements)}});
  j["generations"] = gens;

  j["clusters"] = {{"retained", clusters_json(r.retained_clusters)},
                   {"discarded", clusters_json(r.discarded_clusters)},
                   {"noise", statements_json(r.noise)}};

  json votes = json::array();
  for (const auto& v : r.votes)
    votes.push_back({{"cluster_id", v.outcome.cluster_id},
                     {"partition", v.outcome.partition},
                     {"winner_category", v.outcome.winner_category + 1},
                     {"winner_generation_seq", v.outcome.winner_statement.generation_seq},
                     {"winner", statement_json(v.outcome.winner_statement)},
                     {"rationale", std::string(to_string(v.outcome.rationale))},
                     {"classification_skipped", v.classification_skipped},
                     {"raw_response", v.raw_response}});
  j["votes"] = votes;

  json selected = json::array();
  for (const auto& s : r.final_summary.statements)
    selected.push_back({{"statement", statement_json(s.statement)},
                        {"source_anchor", s.source_anchor},
                        {"cluster_id", s.cluster_id}});
  j["final_summary"] = {{"statements", selected},
                        {"connected_text", r.final_summary.connected_text},
                        {"integration_fallback", r.final_summary.integration_fallback}};

  j["engine_calls"] = {{"summarize", r.engine_calls.summarize},
                       {"classify", r.engine_calls.classify},
                       {"connect", r.engine_calls.connect},
                       {"total", r.engine_calls.total()}};
  j["cost"] = {{"article_words", r.cost.article_words},
               {"summarize_input_words", r.cost.summarize_input_words},
               {"windowed_quadratic_cost", r.cost.windowed_quadratic_cost},
               {"full_context_quadratic_cost", r.cost.full_context_quadratic_cost},
               {"breakeven_words", r.cost.breakeven_words}};
  j["flags"] = r.flags;
  if (include_timings && r.timings)
    j["timings_ms"] = {{"generation", r.timings->generation_ms},
                       {"clustering", r.timings->clustering_ms},
                       {"aggregation", r.timings->aggregation_ms},
                       {"total", r.timings->total_ms}};
  return j.dump(2) + "\n";
}

RunRecord run_record_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    RunRecord r;
    r.status = j.at("status").get<std::string>();
    r.error = j.value("error", std::string{});
    const auto& a = j.at("article");
    r.article_id = a.at("id").get<std::string>();
    r.article_words = a.at("total_words").get<std::size_t>();
    r.sentence_word_positions = a.at("sentence_word_positions").get<std::vector<std::size_t>>();

    const auto& c = j.at("config");
    r.config.window_size = c.at("window_size").get<std::size_t>();
    r.config.step_size = c.at("step_size").get<std::size_t>();
    r.config.eps = c.at("eps").get<double>();
    if (c.at("min_pts_explicit").get<bool>()) r.config.min_pts = c.at("min_pts").get<std::size_t>();
    r.config.backend = c.at("backend").get<std::string>();
    if (!c.at("seed").is_null()) r.config.seed = c.at("seed").get<std::int64_t>();
    r.config.params.summarize = params_from(c.at("params").at("summarize"));
    r.config.params.classify = params_from(c.at("params").at("classify"));
    r.config.params.connect = params_from(c.at("params").at("connect"));

    const auto& p = j.at("plan");
    r.plan.k_ratio = p.at("k_ratio").get<std::size_t>();
    r.plan.window_size = p.at("window_size").get<std::size_t>();
    r.plan.step_size = p.at("step_size").get<std::size_t>();
    for (const auto& w : p.at("windows")) {
      Window win;
      win.ordinal = w.at("ordinal").get<std::size_t>();
      win.start_sentence = w.at("start_sentence").get<std::size_t>();
      win.end_sentence = w.at("end_sentence").get<std::size_t>();
      win.word_count = w.at("word_count").get<std::size_t>();
      win.repetitions = w.at("repetitions").get<std::size_t>();
      win.kind = kind_from(w.at("kind").get<std::string>());
      r.plan.windows.push_back(win);
    }

    for (const auto& g : j.at("generations")) {
      Generation gen;
      gen.window_ordinal = g.at("window_ordinal").get<std::size_t>();
      gen.repetition = g.at("repetition").get<std::size_t>();
      gen.local_summary = g.at("local_summary").get<std::string>();
      gen.statements = statements_from(g.at("statements"));
      r.generations.push_back(std::move(gen));
    }

    const auto& cl = j.at("clusters");
    r.retained_clusters = clusters_from(cl.at("retained"));
    r.discarded_clusters = clusters_from(cl.at("discarded"));
    r.noise = statements_from(cl.at("noise"));

    for (const auto& v : j.at("votes")) {
      VoteRecord vr;
      vr.outcome.cluster_id = v.at("cluster_id").get<std::size_t>();
      vr.outcome.partition = v.at("partition").get<Partition>();
      vr.outcome.winner_category = v.at("winner_category").get<std::size_t>() - 1;
      vr.outcome.winner_statement = statement_from(v.at("winner"));
      vr.outcome.rationale = rationale_from(v.at("rationale").get<std::string>());
      vr.classification_skipped = v.at("classification_skipped").get<bool>();
      vr.raw_response = v.at("raw_response").get<std::string>();
      r.votes.push_back(std::move(vr));
    }

    const auto& fs = j.at("final_summary");
    for (const auto& s : fs.at("statements"))
      r.final_summary.statements.push_back({statement_from(s.at("statement")),
                                            s.at("source_anchor").get<std::size_t>(),
                                            s.at("cluster_id").get<std::size_t>()});
    r.final_summary.connected_text = fs.at("connected_text").get<std::string>();
    r.final_summary.integration_fallback = fs.at("integration_fallback").get<bool>();

    const auto& ec = j.at("engine_calls");
    r.engine_calls = {ec.at("summarize").get<std::size_t>(), ec.at("classify").get<std::size_t>(),
                      ec.at("connect").get<std::size_t>()};
    const auto& cost = j.at("cost");
    r.cost.article_words = cost.at("article_words").get<std::size_t>();
    r.cost.summarize_input_words = cost.at("summarize_input_words").get<std::size_t>();
    r.cost.windowed_quadratic_cost = cost.at("windowed_quadratic_cost").get<double>();
    r.cost.full_context_quadratic_cost = cost.at("full_context_quadratic_cost").get<double>();
    r.cost.breakeven_words = cost.at("breakeven_words").get<double>();
    r.flags = j.at("flags").get<std::vector<std::string>>();
    if (j.contains("timings_ms")) {
      const auto& t = j.at("timings_ms");
      r.timings = Timings{t.at("generation").get<double>(), t.at("clustering").get<double>(),
                          t.at("aggregation").get<double>(), t.at("total").get<double>()};
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed run record: ") + e.what());
  }
}

}  // namespace slisum
