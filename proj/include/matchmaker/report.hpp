#ifndef MATCHMAKER_REPORT_HPP
#define MATCHMAKER_REPORT_HPP

// Report writers. All output is UTF-8 with `\n` line endings; set-valued
// columns are `;`-joined in sorted order.

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "matchmaker/corpus.hpp"
#include "matchmaker/csv.hpp"
#include "matchmaker/discovery.hpp"
#include "matchmaker/error.hpp"
#include "matchmaker/matching.hpp"
#include "matchmaker/scheduling.hpp"
#include "matchmaker/seating.hpp"
#include "matchmaker/survey.hpp"

namespace matchmaker::report {

/// Writes via a sibling temp file and rename, so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw InputError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move " + tmp.string() + " into place");
  }
}

template <typename Range>
std::string join(const Range& items, std::string_view sep = ";") {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

inline std::string boolean(bool b) { return b ? "true" : "false"; }

inline std::string collaborations_csv(const CollaborationGraph& graph) {
  std::string out = "researcher_a,researcher_b,document_ids\n";
  for (const auto& [pair, docs] : graph.edges()) {
    out += csv::join_row({pair.first, pair.second, join(docs)});
  }
  return out;
}

inline std::string experts_csv(const std::vector<ExpertHit>& hits, const Corpus& corpus) {
  std::string out = "rank,researcher_id,name,score,supporting_document_ids\n";
  std::size_t rank = 0;
  for (const auto& hit : hits) {
    std::vector<std::string> ids;
    for (const auto& doc : hit.supporting_documents) ids.push_back(doc.document_id);
    out += csv::join_row({std::to_string(++rank), hit.researcher_id, corpus.researcher(hit.researcher_id).name,
                          csv::format_number(hit.score), join(ids)});
  }
  return out;
}

inline std::string expansion_csv(const std::vector<ExpansionCandidate>& terms) {
  std::string out = "rank,term,score\n";
  std::size_t rank = 0;
  for (const auto& t : terms) out += csv::join_row({std::to_string(++rank), t.term, std::to_string(t.score)});
  return out;
}

inline std::string matches_csv(const std::vector<MatchEdge>& edges) {
  std::string out =
      "researcher_a,researcher_b,shared_strong_interests,methods_a_needs_b_offers,"
      "methods_b_needs_a_offers,reciprocal,excluded,base_score,adjusted_score\n";
  for (const auto& e : edges) {
    out += csv::join_row({e.a, e.b, join(e.shared_strong_interests), join(e.directed_ab), join(e.directed_ba),
                          boolean(e.reciprocal), boolean(e.excluded_prior_collaboration),
                          csv::format_number(e.base_score), csv::format_number(e.adjusted_score)});
  }
  return out;
}

inline std::string rankings_csv(const MatchRanking& ranking) {
  std::string out = "researcher_id,rank,partner_id,adjusted_score,base_score,reciprocal\n";
  for (const auto& [id, list] : ranking) {
    std::size_t rank = 0;
    for (const auto& e : list) {
      out += csv::join_row({id, std::to_string(++rank), e.other(id), csv::format_number(e.adjusted_score),
                            csv::format_number(e.base_score), boolean(e.reciprocal)});
    }
  }
  return out;
}

inline std::string seating_csv(const SeatingPlan& plan, const Corpus& corpus) {
  std::string out = "table_index,researcher_id,name,institution\n";
  for (std::size_t t = 0; t < plan.tables.size(); ++t) {
    for (const auto& id : plan.tables[t]) {
      const auto& r = corpus.researcher(id);
      out += csv::join_row({std::to_string(t), id, r.name, r.institution});
    }
  }
  out += "# objective=" + csv::format_number(plan.objective) + "\n";
  return out;
}

inline std::string schedule_csv(const Schedule& schedule) {
  std::string out = "round,room,researcher_a,researcher_b,adjusted_score,cross_institution\n";
  for (const auto& m : schedule.meetings) {
    out += csv::join_row({std::to_string(m.round), std::to_string(m.room), m.a, m.b,
                          csv::format_number(m.adjusted_score), boolean(m.cross_institution)});
  }
  return out;
}

inline nlohmann::ordered_json baseline_json(const BaselineReport& r) {
  return {{"engine_total", r.engine_total}, {"random_mean", r.random_mean}, {"random_stddev", r.random_stddev},
          {"ratio", r.ratio},               {"attendees", r.attendees},    {"trials", r.trials},
          {"seed", r.seed}};
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c == '\n' || c == '\r' ? ' ' : c);
  }
  out.push_back('"');
  return out;
}

/// Undirected DOT graph: one node per attendee, one edge per pair sharing a
/// strong interest. Prior collaborators are drawn dashed.
inline std::string export_interest_graph(const std::vector<SurveyResponse>& surveys,
                                         const std::vector<MatchEdge>& edges, const Corpus& corpus) {
  if (surveys.empty()) throw InputError("interest graph needs at least one survey response");
  std::map<ResearcherId, std::set<std::string>> strong;
  for (const auto& s : surveys) strong[s.researcher_id] = s.strong_interests();
  std::set<ResearcherPair> excluded;
  for (const auto& e : edges) {
    if (e.excluded_prior_collaboration) excluded.insert(e.key());
  }

  std::string out = "graph interests {\n";
  for (const auto& [id, topics] : strong) {
    out += "  " + dot_quote(id) + " [label=" + dot_quote(corpus.researcher(id).name) + "];\n";
  }
  for (auto i = strong.begin(); i != strong.end(); ++i) {
    for (auto j = std::next(i); j != strong.end(); ++j) {
      std::vector<std::string> shared;
      std::set_intersection(i->second.begin(), i->second.end(), j->second.begin(), j->second.end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      out += "  " + dot_quote(i->first) + " -- " + dot_quote(j->first) + " [label=" + dot_quote(join(shared)) +
             ", weight=" + std::to_string(shared.size());
      if (excluded.count({i->first, j->first})) out += ", style=dashed";
      out += "];\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace matchmaker::report

#endif  // MATCHMAKER_REPORT_HPP
