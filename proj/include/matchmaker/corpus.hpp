#ifndef MATCHMAKER_CORPUS_HPP
#define MATCHMAKER_CORPUS_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matchmaker/csv.hpp"
#include "matchmaker/error.hpp"

namespace matchmaker {

using ResearcherId = std::string;
using DocumentId = std::string;

struct Researcher {
  ResearcherId id;
  std::string name;
  std::string institution;
  std::optional<std::string> department;

  bool operator==(const Researcher&) const = default;
};

enum class DocumentKind { publication, sponsored_project };

inline std::string_view to_string(DocumentKind kind) {
  return kind == DocumentKind::publication ? "publication" : "sponsored_project";
}

struct Document {
  DocumentId id;
  DocumentKind kind = DocumentKind::publication;
  std::string title;
  std::string abstract_text;
  std::vector<ResearcherId> author_ids;  // order preserved, never used in scoring
};

/// Researchers keyed by id plus documents in file order. Immutable once loaded.
class Corpus {
 public:
  Corpus() = default;

  /// Validates ids and cross-references; throws InputError on the first problem.
  Corpus(std::vector<Researcher> researchers, std::vector<Document> documents) {
    for (auto& r : researchers) add_researcher(std::move(r));
    for (auto& d : documents) add_document(std::move(d));
  }

  const std::map<ResearcherId, Researcher>& researchers() const { return researchers_; }
  const std::vector<Document>& documents() const { return documents_; }

  const Researcher& researcher(const ResearcherId& id) const {
    auto it = researchers_.find(id);
    if (it == researchers_.end()) throw InputError("unknown researcher " + id);
    return it->second;
  }
  bool contains(const ResearcherId& id) const { return researchers_.count(id) != 0; }

  const Document* find_document(const DocumentId& id) const {
    auto it = document_index_.find(id);
    return it == document_index_.end() ? nullptr : &documents_[it->second];
  }

 private:
  void add_researcher(Researcher r) {
    if (r.id.empty()) throw InputError("researcher id must be non-empty");
    if (r.institution.empty()) throw InputError("researcher " + r.id + " has no institution");
    auto id = r.id;
    if (!researchers_.emplace(id, std::move(r)).second) {
      throw InputError("duplicate researcher id " + id);
    }
  }

  void add_document(Document d) {
    if (d.id.empty()) throw InputError("document id must be non-empty");
    if (document_index_.count(d.id)) throw InputError("duplicate document id " + d.id);
    if (d.author_ids.empty()) throw InputError("document " + d.id + " has no authors");
    std::set<ResearcherId> seen;
    for (const auto& a : d.author_ids) {
      if (!researchers_.count(a)) throw InputError("unknown author " + a + " in document " + d.id);
      if (!seen.insert(a).second) throw InputError("duplicate author " + a + " in document " + d.id);
    }
    document_index_.emplace(d.id, documents_.size());
    documents_.push_back(std::move(d));
  }

  std::map<ResearcherId, Researcher> researchers_;
  std::vector<Document> documents_;
  std::map<DocumentId, std::size_t> document_index_;
};

/// Unordered researcher pair, stored with first < second.
using ResearcherPair = std::pair<ResearcherId, ResearcherId>;

inline ResearcherPair make_pair_key(const ResearcherId& a, const ResearcherId& b) {
  return a < b ? ResearcherPair{a, b} : ResearcherPair{b, a};
}

/// Co-authorship / co-participation graph. No time decay: any shared
/// document counts, however old.
class CollaborationGraph {
 public:
  CollaborationGraph() = default;

  /// Adds every author pair of `doc`. Returns nothing; adding never removes edges.
  void add_document(const Document& doc) {
    const auto& authors = doc.author_ids;
    for (std::size_t i = 0; i < authors.size(); ++i) {
      known_.insert(authors[i]);
      for (std::size_t j = i + 1; j < authors.size(); ++j) {
        if (authors[i] == authors[j]) continue;
        auto& docs = edges_[make_pair_key(authors[i], authors[j])];
        if (std::find(docs.begin(), docs.end(), doc.id) == docs.end()) docs.push_back(doc.id);
      }
    }
  }

  void add_researcher(const ResearcherId& id) { known_.insert(id); }

  /// Throws InputError for unknown ids or a == b.
  bool has_prior_collaboration(const ResearcherId& a, const ResearcherId& b) const {
    if (a == b) throw InputError("collaboration query needs two distinct researchers, got " + a + " twice");
    for (const auto* id : {&a, &b}) {
      if (!known_.count(*id)) throw InputError("unknown researcher " + *id);
    }
    return edges_.count(make_pair_key(a, b)) != 0;
  }

  /// Provenance document ids for a pair, empty if the pair never collaborated.
  const std::vector<DocumentId>& provenance(const ResearcherId& a, const ResearcherId& b) const {
    static const std::vector<DocumentId> kNone;
    auto it = edges_.find(make_pair_key(a, b));
    return it == edges_.end() ? kNone : it->second;
  }

  const std::map<ResearcherPair, std::vector<DocumentId>>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

 private:
  std::set<ResearcherId> known_;
  std::map<ResearcherPair, std::vector<DocumentId>> edges_;
};

inline CollaborationGraph build_collaboration_graph(const Corpus& corpus) {
  CollaborationGraph graph;
  for (const auto& [id, r] : corpus.researchers()) graph.add_researcher(id);
  for (const auto& doc : corpus.documents()) graph.add_document(doc);
  return graph;
}

// ---------------------------------------------------------------------------
// File ingestion

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

inline void expect_header(const csv::Record& header, const std::vector<std::string>& expected,
                          const std::string& source) {
  if (header.fields != expected) {
    std::string want;
    for (const auto& f : expected) want += (want.empty() ? "" : ",") + f;
    throw InputError(source + ":" + std::to_string(header.line) + ": expected header `" + want + "`");
  }
}

inline std::vector<Researcher> parse_researchers(std::istream& in, const std::string& source) {
  static const std::vector<std::string> kColumns = {"id", "name", "institution", "department"};
  auto records = csv::read_all(in, source);
  if (records.empty()) throw InputError(source + ": missing header");
  // Tolerate a UTF-8 byte-order mark on the header.
  auto& first = records.front().fields.front();
  if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
  expect_header(records.front(), kColumns, source);

  std::vector<Researcher> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    auto where = source + ":" + std::to_string(rec.line);
    if (rec.fields.size() != kColumns.size()) {
      throw InputError(where + ": expected 4 fields, found " + std::to_string(rec.fields.size()));
    }
    Researcher r{rec.fields[0], rec.fields[1], rec.fields[2], std::nullopt};
    if (!rec.fields[3].empty()) r.department = rec.fields[3];
    if (r.id.empty()) throw InputError(where + ": field `id` is empty");
    if (r.institution.empty()) throw InputError(where + ": field `institution` is empty");
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<Document> parse_documents(std::istream& in, const std::string& source) {
  std::vector<Document> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto where = source + ":" + std::to_string(lineno);

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) throw InputError(where + ": record is not a JSON object");

    auto string_field = [&](const char* key) -> std::string {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_string()) {
        throw InputError(where + ": field `" + key + "` missing or not a string");
      }
      return it->get<std::string>();
    };

    Document d;
    d.id = string_field("id");
    auto kind = string_field("kind");
    if (kind == "publication") {
      d.kind = DocumentKind::publication;
    } else if (kind == "sponsored_project") {
      d.kind = DocumentKind::sponsored_project;
    } else {
      throw InputError(where + ": field `kind` has invalid value \"" + kind + "\"");
    }
    d.title = string_field("title");
    d.abstract_text = string_field("abstract");
    auto authors = obj.find("authors");
    if (authors == obj.end() || !authors->is_array()) {
      throw InputError(where + ": field `authors` missing or not an array");
    }
    for (const auto& a : *authors) {
      if (!a.is_string()) throw InputError(where + ": field `authors` contains a non-string entry");
      d.author_ids.push_back(a.get<std::string>());
    }
    out.push_back(std::move(d));
  }
  return out;
}

inline Corpus load_corpus(const std::filesystem::path& researchers_path,
                          const std::filesystem::path& documents_path) {
  auto rin = open_input(researchers_path);
  auto researchers = parse_researchers(rin, researchers_path.string());
  auto din = open_input(documents_path);
  auto documents = parse_documents(din, documents_path.string());
  return Corpus(std::move(researchers), std::move(documents));
}

}  // namespace matchmaker

#endif  // MATCHMAKER_CORPUS_HPP
