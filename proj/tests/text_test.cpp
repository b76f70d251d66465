#include <gtest/gtest.h>

#include <algorithm>

#include "test_support.hpp"

namespace mm = matchmaker;
namespace ts = testing_support;

TEST(Stemmer, AppliesSuffixRules) {
  EXPECT_EQ(mm::text::normalize_and_stem("Genomics"), "genomic");
  EXPECT_EQ(mm::text::normalize_and_stem("x"), "x");
  EXPECT_EQ(mm::text::stem_token("learning"), "learn");
  EXPECT_EQ(mm::text::stem_token("editing"), "edit");
  EXPECT_EQ(mm::text::stem_token("studies"), "study");
  EXPECT_EQ(mm::text::stem_token("organizations"), "organiz");
  EXPECT_EQ(mm::text::stem_token("relation"), "rel");
  EXPECT_EQ(mm::text::stem_token("optimizes"), "optim");
  EXPECT_EQ(mm::text::stem_token("randomized"), "random");
  EXPECT_EQ(mm::text::stem_token("tumors"), "tumor");
}

TEST(Stemmer, RespectsMinimumStemLengths) {
  EXPECT_EQ(mm::text::stem_token("sing"), "sing");    // "ing" would leave 1 char
  EXPECT_EQ(mm::text::stem_token("thing"), "thing");  // 2 chars < 4
  EXPECT_EQ(mm::text::stem_token("bring"), "bring");  // 2 chars < 4
  EXPECT_EQ(mm::text::stem_token("bed"), "bed");
  EXPECT_EQ(mm::text::stem_token("gas"), "gas");
  EXPECT_EQ(mm::text::stem_token("ies"), "ies");
}

TEST(Stemmer, ReachesFixedPoint) {
  // A single pass would stop at "speed" / "painting".
  EXPECT_EQ(mm::text::stem_token("speeds"), "spe");
  EXPECT_EQ(mm::text::stem_token("paintings"), "paint");
}

TEST(Normalize, StripsPunctuationAndJoinsTokens) {
  EXPECT_EQ(mm::text::normalize_and_stem("  Flow   Cytometry! "), "flow cytometry");
  EXPECT_EQ(mm::text::normalize_and_stem("gene-editing"), "gene edit");
  EXPECT_EQ(mm::text::normalize_and_stem("Machine Learning"), "machine learn");
}

TEST(Normalize, RejectsEmptyInput) {
  EXPECT_THROW(mm::text::normalize_and_stem(""), mm::InputError);
  EXPECT_THROW(mm::text::normalize_and_stem("   \t"), mm::InputError);
  EXPECT_THROW(mm::text::normalize_and_stem("?!"), mm::InputError);
}

TEST(Normalize, IdempotentOverFixtureVocabulary) {
  const auto& corpus = ts::fixture_data().corpus;
  std::size_t checked = 0;
  for (const auto& d : corpus.documents()) {
    for (const auto* field : {&d.title, &d.abstract_text}) {
      for (const auto& token : mm::text::tokenize(*field)) {
        auto once = mm::text::normalize_and_stem(token);
        EXPECT_EQ(mm::text::normalize_and_stem(once), once) << token;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(Normalize, IdempotentOnGeneratedWords) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "aeinostdgrzy";
  const std::vector<std::string> tails = {"ations", "ation", "izes", "ized", "ize", "ies", "ing", "ed", "s", ""};
  for (int i = 0; i < 5000; ++i) {
    std::string w;
    auto len = 1 + rng() % 6;
    for (std::size_t k = 0; k < len; ++k) w.push_back(alphabet[rng() % alphabet.size()]);
    w += tails[rng() % tails.size()];
    w += tails[rng() % tails.size()];
    auto once = mm::text::normalize_and_stem(w);
    ASSERT_EQ(mm::text::normalize_and_stem(once), once) << w;
  }
}

TEST(Stopwords, ListIsSortedAndUnique) {
  const auto& words = mm::text::kStopwords;
  EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
  EXPECT_EQ(std::adjacent_find(words.begin(), words.end()), words.end());
  EXPECT_TRUE(mm::text::is_stopword("the"));
  EXPECT_FALSE(mm::text::is_stopword("oncology"));
}

TEST(Tokenize, KeepsUtf8Bytes) {
  auto tokens = mm::text::tokenize("Müller-Lyon, 2024");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[0], "müller");
  EXPECT_EQ(tokens[2], "2024");
}
