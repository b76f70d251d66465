#ifndef MATCHMAKER_TEXT_HPP
#define MATCHMAKER_TEXT_HPP

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "matchmaker/error.hpp"

namespace matchmaker::text {

/// Fixed English stopword list applied when indexing titles and abstracts.
/// Compared against the lowercased token before stemming. Sorted for binary search.
inline constexpr std::array<std::string_view, 128> kStopwords = {
    "a",       "about",   "above",  "after",   "again",  "against", "all",     "also",
    "am",      "an",      "and",    "any",     "are",    "as",      "at",      "be",
    "because", "been",    "before", "being",   "below",  "between", "both",    "but",
    "by",      "can",     "could",  "did",     "do",     "does",    "doing",   "down",
    "during",  "each",    "either", "few",     "for",    "from",    "further", "had",
    "has",     "have",    "having", "he",      "her",    "here",    "hers",    "him",
    "his",     "how",     "however","i",       "if",     "in",      "into",    "is",
    "it",      "its",     "itself", "just",    "may",    "me",      "might",   "more",
    "most",    "must",    "my",     "no",      "nor",    "not",     "now",     "of",
    "off",     "on",      "once",   "only",    "or",     "other",   "our",     "ours",
    "out",     "over",    "own",    "same",    "she",    "should",  "so",      "some",
    "such",    "than",    "that",   "the",     "their",  "them",    "then",    "there",
    "these",   "they",    "this",   "those",   "through","to",      "too",     "under",
    "until",   "up",      "upon",   "us",      "using",  "very",    "via",     "was",
    "we",      "were",    "what",   "when",    "where",  "which",   "while",   "who",
    "whom",    "why",     "will",   "with",    "within", "would",   "you",     "your",
};

inline bool is_stopword(std::string_view lowered) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), lowered);
}

/// Bytes >= 0x80 count as word characters so UTF-8 sequences stay intact.
inline bool is_word_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

/// Splits on non-word characters and lowercases ASCII letters.
inline std::vector<std::string> tokenize(std::string_view input) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : input) {
    if (is_word_char(c)) {
      current.push_back(ascii_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

namespace detail {

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
  std::size_t min_stem;  // characters that must remain before the suffix
};

// Checked in order; the first rule whose suffix matches and whose minimum
// stem length holds is applied.
inline constexpr std::array<SuffixRule, 9> kSuffixRules = {{
    {"ations", "", 1},
    {"ation", "", 1},
    {"izes", "", 1},
    {"ized", "", 1},
    {"ize", "", 1},
    {"ies", "y", 1},
    {"ing", "", 4},
    {"ed", "", 3},
    {"s", "", 3},
}};

inline bool strip_once(std::string& word) {
  for (const auto& rule : kSuffixRules) {
    if (word.size() < rule.suffix.size() + rule.min_stem) continue;
    if (std::string_view(word).substr(word.size() - rule.suffix.size()) != rule.suffix) continue;
    word.resize(word.size() - rule.suffix.size());
    word += rule.replacement;
    return true;
  }
  return false;
}

}  // namespace detail

/// Suffix-strips one lowercase token. Rules are reapplied until none fires,
/// so stem_token(stem_token(w)) == stem_token(w).
inline std::string stem_token(std::string word) {
  while (detail::strip_once(word)) {
  }
  return word;
}

/// Lowercases, strips punctuation, stems each token and rejoins with single
/// spaces. Throws InputError if nothing but whitespace/punctuation is left.
inline std::string normalize_and_stem(std::string_view term) {
  auto tokens = tokenize(term);
  if (tokens.empty()) {
    throw InputError("empty term after normalization: \"" + std::string(term) + "\"");
  }
  std::string out;
  for (auto& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += stem_token(std::move(token));
  }
  return out;
}

/// Splits a normalized term into its space-separated tokens.
inline std::vector<std::string> split_words(std::string_view normalized) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    auto next = normalized.find(' ', pos);
    if (next == std::string_view::npos) next = normalized.size();
    if (next > pos) words.emplace_back(normalized.substr(pos, next - pos));
    pos = next + 1;
  }
  return words;
}

}  // namespace matchmaker::text

#endif  // MATCHMAKER_TEXT_HPP
