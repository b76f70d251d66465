#ifndef MATCHMAKER_SURVEY_HPP
#define MATCHMAKER_SURVEY_HPP

#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matchmaker/corpus.hpp"
#include "matchmaker/csv.hpp"
#include "matchmaker/error.hpp"
#include "matchmaker/text.hpp"

namespace matchmaker {

enum class InterestStrength { mild, strong };

inline std::string_view to_string(InterestStrength s) {
  return s == InterestStrength::strong ? "strong" : "mild";
}

/// One attendee's answers. Every string is stored in normalize_and_stem form.
/// A method may be both offered and needed.
struct SurveyResponse {
  ResearcherId researcher_id;
  std::map<std::string, InterestStrength> interests;
  std::set<std::string> methods_offered;
  std::set<std::string> methods_needed;

  bool operator==(const SurveyResponse&) const = default;

  std::set<std::string> strong_interests() const {
    std::set<std::string> out;
    for (const auto& [topic, strength] : interests) {
      if (strength == InterestStrength::strong) out.insert(topic);
    }
    return out;
  }
};

class TopicCatalog {
 public:
  explicit TopicCatalog(const std::vector<std::string>& topics) {
    for (const auto& t : topics) allowed_.insert(text::normalize_and_stem(t));
    if (allowed_.empty()) throw InputError("topic catalog is empty");
  }

  bool contains(const std::string& normalized) const { return allowed_.count(normalized) != 0; }
  const std::set<std::string>& topics() const { return allowed_; }

 private:
  std::set<std::string> allowed_;
};

/// One topic per line; blank lines and `#` comments are ignored.
inline TopicCatalog parse_topic_catalog(std::istream& in) {
  std::vector<std::string> topics;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    topics.push_back(line);
  }
  return TopicCatalog(topics);
}

inline TopicCatalog load_topic_catalog(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_topic_catalog(in);
}

struct SurveySet {
  std::vector<SurveyResponse> responses;  // sorted by researcher id
  std::size_t duplicate_warnings = 0;     // rows replaced by a later row for the same researcher
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& cell) {
  std::vector<std::string> items;
  std::string current;
  std::istringstream in(cell);
  while (std::getline(in, current, ';')) {
    if (current.find_first_not_of(" \t") != std::string::npos) items.push_back(current);
  }
  return items;
}

}  // namespace detail

inline SurveySet parse_surveys(std::istream& in, const std::string& source, const TopicCatalog& catalog,
                               const Corpus& corpus) {
  static const std::vector<std::string> kColumns = {"researcher_id", "interests", "methods_offered",
                                                    "methods_needed"};
  auto records = csv::read_all(in, source);
  if (records.empty()) throw InputError(source + ": missing header");
  expect_header(records.front(), kColumns, source);

  std::map<ResearcherId, SurveyResponse> by_id;
  SurveySet set;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    auto where = source + ":" + std::to_string(rec.line);
    if (rec.fields.size() != kColumns.size()) {
      throw InputError(where + ": expected 4 fields, found " + std::to_string(rec.fields.size()));
    }
    SurveyResponse r;
    r.researcher_id = rec.fields[0];
    if (!corpus.contains(r.researcher_id)) {
      throw InputError(where + ": unknown researcher_id " + r.researcher_id);
    }
    for (const auto& item : detail::split_list(rec.fields[1])) {
      auto colon = item.rfind(':');
      if (colon == std::string::npos) {
        throw InputError(where + ": field `interests` entry \"" + item + "\" is not topic:strength");
      }
      auto topic = text::normalize_and_stem(item.substr(0, colon));
      auto strength_text = item.substr(colon + 1);
      auto first = strength_text.find_first_not_of(" \t");
      auto last = strength_text.find_last_not_of(" \t");
      strength_text = first == std::string::npos ? "" : strength_text.substr(first, last - first + 1);
      InterestStrength strength;
      if (strength_text == "strong") {
        strength = InterestStrength::strong;
      } else if (strength_text == "mild") {
        strength = InterestStrength::mild;
      } else {
        throw InputError(where + ": field `interests` has invalid strength \"" + strength_text +
                         "\" (expected strong or mild)");
      }
      if (!catalog.contains(topic)) throw InputError(where + ": topic not in catalog: " + topic);
      r.interests[topic] = strength;
    }
    for (const auto& m : detail::split_list(rec.fields[2])) r.methods_offered.insert(text::normalize_and_stem(m));
    for (const auto& m : detail::split_list(rec.fields[3])) r.methods_needed.insert(text::normalize_and_stem(m));

    auto id = r.researcher_id;
    auto [it, inserted] = by_id.insert_or_assign(id, std::move(r));
    if (!inserted) ++set.duplicate_warnings;
  }
  for (auto& [id, r] : by_id) set.responses.push_back(std::move(r));
  return set;
}

inline SurveySet load_surveys(const std::filesystem::path& path, const TopicCatalog& catalog,
                              const Corpus& corpus) {
  auto in = open_input(path);
  return parse_surveys(in, path.string(), catalog, corpus);
}

/// Writes responses back in the survey CSV format (sets in sorted order).
inline std::string write_surveys(const std::vector<SurveyResponse>& responses) {
  std::string out = "researcher_id,interests,methods_offered,methods_needed\n";
  auto join = [](const auto& items) {
    std::string s;
    for (const auto& item : items) s += (s.empty() ? "" : ";") + item;
    return s;
  };
  for (const auto& r : responses) {
    std::vector<std::string> interests;
    for (const auto& [topic, strength] : r.interests) {
      interests.push_back(topic + ":" + std::string(to_string(strength)));
    }
    out += csv::join_row({r.researcher_id, join(interests), join(r.methods_offered), join(r.methods_needed)});
  }
  return out;
}

}  // namespace matchmaker

#endif  // MATCHMAKER_SURVEY_HPP
