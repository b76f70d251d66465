#ifndef MATCHMAKER_DISCOVERY_HPP
#define MATCHMAKER_DISCOVERY_HPP

// Keyword-driven expert discovery over titles and abstracts.
//
// Keywords are normalized with text::normalize_and_stem. A multi-word keyword
// is present in a document when all of its tokens are; its frequency there is
// the smallest token frequency. There are no phrase or proximity queries.

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "matchmaker/corpus.hpp"
#include "matchmaker/error.hpp"
#include "matchmaker/text.hpp"

namespace matchmaker {

struct Posting {
  DocumentId document_id;
  std::size_t term_frequency = 0;

  bool operator==(const Posting&) const = default;
};

class TermIndex {
 public:
  using TermCounts = std::map<std::string, std::size_t>;

  const std::set<std::string>& vocabulary() const { return vocabulary_; }
  const std::map<std::string, std::vector<Posting>>& postings() const { return postings_; }
  std::size_t doc_count() const { return doc_ids_.size(); }

  const std::vector<DocumentId>& document_ids() const { return doc_ids_; }
  /// Per-document term counts, parallel to document_ids().
  const TermCounts& terms_of(std::size_t doc) const { return doc_terms_[doc]; }

  /// Frequency of a normalized (possibly multi-word) term in document `doc`.
  std::size_t frequency(std::size_t doc, const std::string& term) const {
    const auto& counts = doc_terms_[doc];
    std::size_t tf = 0;
    bool first = true;
    for (const auto& word : text::split_words(term)) {
      auto it = counts.find(word);
      if (it == counts.end()) return 0;
      tf = first ? it->second : std::min(tf, it->second);
      first = false;
    }
    return tf;
  }

  bool in_vocabulary(const std::string& term) const {
    auto words = text::split_words(term);
    return !words.empty() && std::all_of(words.begin(), words.end(), [&](const auto& w) {
      return vocabulary_.count(w) != 0;
    });
  }

  /// Index terms of a text: tokens minus stopwords, stemmed, length >= 2.
  static std::vector<std::string> index_terms(std::string_view text) {
    std::vector<std::string> out;
    for (auto& token : text::tokenize(text)) {
      if (text::is_stopword(token)) continue;
      auto stem = text::stem_token(std::move(token));
      if (stem.size() < 2) continue;
      out.push_back(std::move(stem));
    }
    return out;
  }

  static TermIndex build(const Corpus& corpus) {
    TermIndex index;
    for (const auto& doc : corpus.documents()) {
      TermCounts counts;
      for (auto& term : index_terms(doc.title)) ++counts[term];
      for (auto& term : index_terms(doc.abstract_text)) ++counts[term];
      for (const auto& [term, tf] : counts) {
        index.vocabulary_.insert(term);
        index.postings_[term].push_back({doc.id, tf});
      }
      index.doc_ids_.push_back(doc.id);
      index.doc_terms_.push_back(std::move(counts));
    }
    return index;
  }

 private:
  std::set<std::string> vocabulary_;
  std::map<std::string, std::vector<Posting>> postings_;
  std::vector<DocumentId> doc_ids_;
  std::vector<TermCounts> doc_terms_;
};

inline TermIndex build_index(const Corpus& corpus) { return TermIndex::build(corpus); }

/// Include/exclude keyword lists as typed by the organizer.
struct KeywordSpec {
  std::vector<std::string> include_terms;
  std::vector<std::string> exclude_terms;
};

/// KeywordSpec after normalization: deduplicated, first occurrence order kept.
struct NormalizedKeywords {
  std::vector<std::string> include;
  std::vector<std::string> exclude;
};

inline NormalizedKeywords normalize_keywords(const KeywordSpec& spec) {
  auto normalize_list = [](const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& term : raw) {
      auto norm = text::normalize_and_stem(term);
      if (std::find(out.begin(), out.end(), norm) == out.end()) out.push_back(std::move(norm));
    }
    return out;
  };
  NormalizedKeywords nk{normalize_list(spec.include_terms), normalize_list(spec.exclude_terms)};
  for (const auto& term : nk.include) {
    if (std::find(nk.exclude.begin(), nk.exclude.end(), term) != nk.exclude.end()) {
      throw InputError("keyword \"" + term + "\" is both included and excluded");
    }
  }
  return nk;
}

inline KeywordSpec parse_keyword_spec(const nlohmann::json& j, const std::string& source) {
  if (!j.is_object()) throw InputError(source + ": keyword spec must be a JSON object");
  KeywordSpec spec;
  auto read = [&](const char* key, std::vector<std::string>& out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_array()) throw InputError(source + ": `" + key + "` must be an array of strings");
    for (const auto& v : *it) {
      if (!v.is_string()) throw InputError(source + ": `" + key + "` must be an array of strings");
      out.push_back(v.get<std::string>());
    }
  };
  read("include", spec.include_terms);
  read("exclude", spec.exclude_terms);
  normalize_keywords(spec);  // rejects overlap at load time
  return spec;
}

inline KeywordSpec load_keyword_spec(const std::filesystem::path& path) {
  auto in = open_input(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_keyword_spec(j, path.string());
}

struct ExpansionCandidate {
  std::string term;
  std::size_t score = 0;

  bool operator==(const ExpansionCandidate&) const = default;
};

/// Ranks terms co-occurring with the include keywords. A candidate's score is
/// the sum, over documents holding it and at least one include keyword, of
/// min(tf(candidate), total include-keyword tf in that document). Include and
/// exclude keywords and their constituent words are never candidates.
inline std::vector<ExpansionCandidate> expand_keywords(const TermIndex& index, const KeywordSpec& spec,
                                                       int top_k) {
  if (top_k < 1) throw InputError("top_k must be >= 1, got " + std::to_string(top_k));
  auto keywords = normalize_keywords(spec);

  std::set<std::string> blocked;
  for (const auto* list : {&keywords.include, &keywords.exclude}) {
    for (const auto& term : *list) {
      blocked.insert(term);
      for (auto& w : text::split_words(term)) blocked.insert(std::move(w));
    }
  }

  std::map<std::string, std::size_t> scores;
  for (std::size_t d = 0; d < index.doc_count(); ++d) {
    std::size_t include_tf = 0;
    for (const auto& term : keywords.include) include_tf += index.frequency(d, term);
    if (include_tf == 0) continue;
    for (const auto& [term, tf] : index.terms_of(d)) {
      if (blocked.count(term)) continue;
      scores[term] += std::min(tf, include_tf);
    }
  }

  std::vector<ExpansionCandidate> out;
  out.reserve(scores.size());
  for (const auto& [term, score] : scores) out.push_back({term, score});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.score > b.score;  // map order already gives lexicographic ties
  });
  if (out.size() > static_cast<std::size_t>(top_k)) out.resize(static_cast<std::size_t>(top_k));
  return out;
}

struct SupportingDocument {
  DocumentId document_id;
  std::vector<std::string> matched_terms;

  bool operator==(const SupportingDocument&) const = default;
};

struct ExpertHit {
  ResearcherId researcher_id;
  double score = 0.0;
  std::vector<SupportingDocument> supporting_documents;

  bool operator==(const ExpertHit&) const = default;
};

/// A document matches when it holds at least one include keyword and no
/// exclude keyword. Each author earns the number of distinct include keywords
/// of every matching document they are on.
inline std::vector<ExpertHit> find_experts(const TermIndex& index, const Corpus& corpus,
                                           const KeywordSpec& spec) {
  auto keywords = normalize_keywords(spec);
  std::map<ResearcherId, ExpertHit> hits;

  for (std::size_t d = 0; d < index.doc_count(); ++d) {
    bool excluded = std::any_of(keywords.exclude.begin(), keywords.exclude.end(),
                                [&](const auto& t) { return index.frequency(d, t) > 0; });
    if (excluded) continue;
    std::vector<std::string> matched;
    for (const auto& term : keywords.include) {
      if (index.frequency(d, term) > 0) matched.push_back(term);
    }
    if (matched.empty()) continue;

    const auto* doc = corpus.find_document(index.document_ids()[d]);
    if (doc == nullptr) throw InputError("index document " + index.document_ids()[d] + " not in corpus");
    for (const auto& author : doc->author_ids) {
      auto& hit = hits[author];
      hit.researcher_id = author;
      hit.score += static_cast<double>(matched.size());
      hit.supporting_documents.push_back({doc->id, matched});
    }
  }

  std::vector<ExpertHit> out;
  for (auto& [id, hit] : hits) out.push_back(std::move(hit));
  std::stable_sort(out.begin(), out.end(),
                   [](const ExpertHit& a, const ExpertHit& b) { return a.score > b.score; });
  return out;
}

}  // namespace matchmaker

#endif  // MATCHMAKER_DISCOVERY_HPP
