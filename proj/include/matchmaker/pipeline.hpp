#ifndef MATCHMAKER_PIPELINE_HPP
#define MATCHMAKER_PIPELINE_HPP

// Stage orchestration shared by the CLI. Each stage loads what it needs,
// writes its reports under the output directory and returns a JSON summary.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "matchmaker/corpus.hpp"
#include "matchmaker/discovery.hpp"
#include "matchmaker/error.hpp"
#include "matchmaker/matching.hpp"
#include "matchmaker/report.hpp"
#include "matchmaker/scheduling.hpp"
#include "matchmaker/seating.hpp"
#include "matchmaker/survey.hpp"

namespace matchmaker {

namespace fs = std::filesystem;

struct PipelineConfig {
  fs::path researchers;
  fs::path documents;
  fs::path surveys;
  fs::path catalog;
  std::optional<fs::path> keywords;
  fs::path output_dir = "out";
  MatchWeights weights;
  EventWindow window{3, 3, 10};
  int tables = 0;  // 0: as many as needed for `capacity`
  int capacity = 8;
  int per_attendee_k = 3;
  int expand_top_k = 10;
  std::uint64_t seed = 42;
  int trials = 10000;
  int max_iters = 10000;
  int perturbations = 64;

  void validate() const {
    weights.validate();
    window.validate();
    if (tables < 0) throw InputError("tables must be >= 0");
    if (capacity < 2) throw InputError("capacity must be >= 2");
    if (per_attendee_k < 1) throw InputError("k must be >= 1");
    if (expand_top_k < 1) throw InputError("expand_top_k must be >= 1");
    if (trials < 1) throw InputError("trials must be >= 1");
    if (max_iters < 0) throw InputError("max_iters must be >= 0");
    if (perturbations < 0) throw InputError("perturbations must be >= 0");
  }
};

/// Relative paths in the config resolve against the config file's directory.
inline PipelineConfig parse_config(const nlohmann::json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  PipelineConfig cfg;
  auto path = [&](const char* key, bool required) -> std::optional<fs::path> {
    auto it = j.find(key);
    if (it == j.end()) {
      if (required) throw InputError(std::string("config is missing `") + key + "`");
      return std::nullopt;
    }
    if (!it->is_string()) throw InputError(std::string("config field `") + key + "` must be a string");
    fs::path p = it->get<std::string>();
    return p.is_absolute() ? p : base_dir / p;
  };
  auto integer = [&](const char* key, auto& slot) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number_integer()) throw InputError(std::string("config field `") + key + "` must be an integer");
    slot = it->get<std::remove_reference_t<decltype(slot)>>();
  };

  cfg.researchers = *path("researchers", true);
  cfg.documents = *path("documents", true);
  cfg.surveys = *path("surveys", true);
  cfg.catalog = *path("catalog", true);
  cfg.keywords = path("keywords", false);
  if (auto out = path("output_dir", false)) cfg.output_dir = *out;
  if (auto it = j.find("weights"); it != j.end()) cfg.weights = MatchWeights::from_json(*it);
  integer("rounds", cfg.window.rounds);
  integer("rooms", cfg.window.rooms);
  integer("round_minutes", cfg.window.round_minutes);
  integer("tables", cfg.tables);
  integer("capacity", cfg.capacity);
  integer("k", cfg.per_attendee_k);
  integer("expand_top_k", cfg.expand_top_k);
  integer("trials", cfg.trials);
  integer("max_iters", cfg.max_iters);
  integer("perturbations", cfg.perturbations);
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) throw InputError("config field `seed` must be a non-negative integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  return cfg;
}

inline PipelineConfig load_config(const fs::path& path) {
  auto in = open_input(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_config(j, path.parent_path());
}

/// Runs `fn`, prefixing any error message with the stage name.
template <typename Fn>
decltype(auto) run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const InputError& e) {
    throw InputError(std::string(stage) + ": " + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(std::string(stage) + ": " + e.what());
  }
}

/// Loads inputs on first use and caches them across stages of one run.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config) : cfg_(std::move(config)) { cfg_.validate(); }

  const PipelineConfig& config() const { return cfg_; }

  const Corpus& corpus() {
    if (!corpus_) {
      corpus_ = run_stage("ingest", [&] { return load_corpus(cfg_.researchers, cfg_.documents); });
      graph_ = build_collaboration_graph(*corpus_);
    }
    return *corpus_;
  }
  const CollaborationGraph& graph() {
    corpus();
    return *graph_;
  }
  const SurveySet& surveys() {
    if (!surveys_) {
      const auto& c = corpus();
      surveys_ = run_stage("surveys", [&] {
        auto catalog = load_topic_catalog(cfg_.catalog);
        return load_surveys(cfg_.surveys, catalog, c);
      });
    }
    return *surveys_;
  }
  const std::vector<MatchEdge>& edges() {
    if (!edges_) {
      const auto& s = surveys();
      edges_ = run_stage("match", [&] { return all_matches(s.responses, corpus(), graph(), cfg_.weights); });
    }
    return *edges_;
  }

  nlohmann::ordered_json ingest() {
    const auto& c = corpus();
    write("collaborations.csv", report::collaborations_csv(graph()));
    return {{"researchers", c.researchers().size()},
            {"documents", c.documents().size()},
            {"collaboration_edges", graph().edge_count()}};
  }

  nlohmann::ordered_json discover() {
    if (!cfg_.keywords) throw InputError("discover: config has no `keywords` file");
    const auto& c = corpus();
    return run_stage("discover", [&] {
      auto spec = load_keyword_spec(*cfg_.keywords);
      auto index = build_index(c);
      auto hits = find_experts(index, c, spec);
      auto expansion = expand_keywords(index, spec, cfg_.expand_top_k);
      write("experts.csv", report::experts_csv(hits, c));
      write("expansion.csv", report::expansion_csv(expansion));
      return nlohmann::ordered_json{{"vocabulary", index.vocabulary().size()},
                                    {"experts", hits.size()},
                                    {"expansion_terms", expansion.size()}};
    });
  }

  nlohmann::ordered_json match() {
    const auto& e = edges();
    return run_stage("match", [&] {
      write("matches.csv", report::matches_csv(e));
      write("rankings.csv", report::rankings_csv(rank_matches(e, cfg_.per_attendee_k)));
      std::size_t reciprocal = 0, excluded = 0;
      for (const auto& edge : e) {
        reciprocal += edge.reciprocal;
        excluded += edge.excluded_prior_collaboration;
      }
      return nlohmann::ordered_json{{"attendees", surveys().responses.size()},
                                    {"duplicate_survey_rows", surveys().duplicate_warnings},
                                    {"edges", e.size()},
                                    {"reciprocal_edges", reciprocal},
                                    {"excluded_edges", excluded}};
    });
  }

  nlohmann::ordered_json seat() {
    const auto& e = edges();
    return run_stage("seat", [&] {
      auto attendees = attendee_ids();
      int tables = cfg_.tables;
      if (tables == 0) tables = static_cast<int>((attendees.size() + cfg_.capacity - 1) / cfg_.capacity);
      auto plan = assign_tables(e, attendees, std::max(tables, 1), cfg_.capacity, cfg_.seed, cfg_.max_iters,
                                cfg_.perturbations);
      if (auto problems = validate_seating(plan, attendees, e); !problems.empty()) {
        throw InvariantError("seating plan invalid: " + problems.front());
      }
      write("seating.csv", report::seating_csv(plan, corpus()));
      return nlohmann::ordered_json{{"tables", plan.tables.size()},
                                    {"capacity", plan.capacity},
                                    {"objective", plan.objective},
                                    {"construction_objective", plan.construction_objective}};
    });
  }

  nlohmann::ordered_json schedule() {
    const auto& e = edges();
    return run_stage("schedule", [&] {
      auto s = build_schedule(e, cfg_.window);
      if (auto problems = validate_schedule(s, e, cfg_.window); !problems.empty()) {
        throw InvariantError("schedule invalid: " + problems.front());
      }
      write("schedule.csv", report::schedule_csv(s));
      return nlohmann::ordered_json{{"rounds", cfg_.window.rounds},
                                    {"rooms", cfg_.window.rooms},
                                    {"round_minutes", cfg_.window.round_minutes},
                                    {"meetings", s.meetings.size()},
                                    {"total_score", s.total_score}};
    });
  }

  nlohmann::ordered_json export_graph() {
    const auto& e = edges();
    return run_stage("export-graph", [&] {
      auto dot = report::export_interest_graph(surveys().responses, e, corpus());
      write("interests.dot", dot);
      return nlohmann::ordered_json{{"nodes", surveys().responses.size()}};
    });
  }

  nlohmann::ordered_json baseline() {
    const auto& e = edges();
    return run_stage("baseline", [&] {
      auto r = baseline_comparison(e, cfg_.trials, cfg_.seed);
      auto j = report::baseline_json(r);
      write("baseline.json", j.dump(2) + "\n");
      return j;
    });
  }

  /// Every stage in order plus summary.json. Discovery runs only when a
  /// keyword file is configured.
  nlohmann::ordered_json run_all() {
    nlohmann::ordered_json summary;
    summary["ingest"] = ingest();
    if (cfg_.keywords) summary["discover"] = discover();
    summary["match"] = match();
    summary["seat"] = seat();
    summary["schedule"] = schedule();
    summary["export_graph"] = export_graph();
    summary["baseline"] = baseline();
    write("summary.json", summary.dump(2) + "\n");
    return summary;
  }

 private:
  std::vector<ResearcherId> attendee_ids() {
    std::vector<ResearcherId> ids;
    for (const auto& r : surveys().responses) ids.push_back(r.researcher_id);
    return ids;
  }

  void write(const std::string& name, const std::string& content) {
    std::error_code ec;
    fs::create_directories(cfg_.output_dir, ec);
    if (ec) throw InputError("cannot create output directory " + cfg_.output_dir.string());
    report::write_file_atomic(cfg_.output_dir / name, content);
  }

  PipelineConfig cfg_;
  std::optional<Corpus> corpus_;
  std::optional<CollaborationGraph> graph_;
  std::optional<SurveySet> surveys_;
  std::optional<std::vector<MatchEdge>> edges_;
};

}  // namespace matchmaker

#endif  // MATCHMAKER_PIPELINE_HPP
