#include <gtest/gtest.h>

#include "test_support.hpp"

namespace mm = matchmaker;
namespace ts = testing_support;

namespace {

struct PairFixture {
  mm::Corpus corpus{{{"a", "A", "UM", std::nullopt}, {"b", "B", "MDA", std::nullopt},
                     {"c", "C", "UM", std::nullopt}},
                    {}};
  mm::CollaborationGraph graph = mm::build_collaboration_graph(corpus);

  static mm::SurveyResponse response(const std::string& id, std::set<std::string> offered,
                                     std::set<std::string> needed, std::set<std::string> strong = {}) {
    mm::SurveyResponse r;
    r.researcher_id = id;
    for (const auto& t : strong) r.interests[t] = mm::InterestStrength::strong;
    r.methods_offered = std::move(offered);
    r.methods_needed = std::move(needed);
    return r;
  }
};

}  // namespace

TEST(ScorePair, ReciprocalHandEvaluated) {
  PairFixture f;
  auto a = PairFixture::response("a", {"flow"}, {"biostat"}, {"oncology"});
  auto b = PairFixture::response("b", {"biostat"}, {"flow"}, {"oncology"});
  auto e = mm::score_pair(a, b, f.corpus, f.graph, {});
  EXPECT_EQ(e.directed_ab, (std::set<std::string>{"biostat"}));
  EXPECT_EQ(e.directed_ba, (std::set<std::string>{"flow"}));
  EXPECT_TRUE(e.reciprocal);
  EXPECT_TRUE(e.cross_institution);
  EXPECT_EQ(e.base_score, 10.0);
  EXPECT_EQ(e.adjusted_score, 11.0);
}

TEST(ScorePair, OneDirectionOnly) {
  PairFixture f;
  auto a = PairFixture::response("a", {"flow"}, {"biostat"}, {"oncology"});
  auto b = PairFixture::response("b", {"biostat"}, {}, {"oncology"});
  auto e = mm::score_pair(a, b, f.corpus, f.graph, {});
  EXPECT_FALSE(e.reciprocal);
  EXPECT_EQ(e.base_score, 3.0);
}

TEST(ScorePair, NoOverlap) {
  PairFixture f;
  auto e = mm::score_pair(PairFixture::response("a", {"x"}, {"y"}), PairFixture::response("c", {"z"}, {"w"}),
                          f.corpus, f.graph, {});
  EXPECT_TRUE(e.shared_strong_interests.empty());
  EXPECT_TRUE(e.directed_ab.empty());
  EXPECT_TRUE(e.directed_ba.empty());
  EXPECT_FALSE(e.reciprocal);
  EXPECT_EQ(e.base_score, 0.0);
  EXPECT_EQ(e.adjusted_score, 0.0);  // same institution
}

TEST(ScorePair, MildInterestDoesNotCount) {
  PairFixture f;
  auto a = PairFixture::response("a", {}, {}, {"oncology"});
  auto b = PairFixture::response("b", {}, {});
  b.interests["oncology"] = mm::InterestStrength::mild;
  EXPECT_EQ(mm::score_pair(a, b, f.corpus, f.graph, {}).base_score, 0.0);
}

TEST(ScorePair, SameIdIsError) {
  PairFixture f;
  auto a = PairFixture::response("a", {}, {});
  EXPECT_THROW(mm::score_pair(a, a, f.corpus, f.graph, {}), mm::InputError);
}

TEST(ScorePair, SwapSymmetryOnRandomInstances) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = ts::random_instance(rng, 6, 0.3, true);
    mm::MatchWeights w{1.5, 2.0, 4.0, 0.5};
    for (std::size_t i = 0; i < inst.surveys.size(); ++i) {
      for (std::size_t j = i + 1; j < inst.surveys.size(); ++j) {
        auto ab = mm::score_pair(inst.surveys[i], inst.surveys[j], inst.corpus, inst.graph, w);
        auto ba = mm::score_pair(inst.surveys[j], inst.surveys[i], inst.corpus, inst.graph, w);
        EXPECT_EQ(ab.key(), ba.key());
        EXPECT_EQ(ab.directed_ab, ba.directed_ba);
        EXPECT_EQ(ab.directed_ba, ba.directed_ab);
        EXPECT_EQ(ab.base_score, ba.base_score);
        EXPECT_EQ(ab.adjusted_score, ba.adjusted_score);
        EXPECT_EQ(ab.excluded_prior_collaboration, ba.excluded_prior_collaboration);
        EXPECT_EQ(ab.reciprocal, !ab.directed_ab.empty() && !ab.directed_ba.empty());
        EXPECT_GE(ab.adjusted_score, ab.base_score);
        EXPECT_EQ(ab.adjusted_score == ab.base_score, !ab.cross_institution || w.cross_institution_bonus == 0.0);
      }
    }
  }
}

TEST(ScorePair, ReciprocalPremium) {
  PairFixture f;
  mm::MatchWeights w;
  auto a = PairFixture::response("a", {"flow"}, {"biostat"}, {"oncology"});
  auto one_way = PairFixture::response("b", {"biostat"}, {}, {"oncology"});
  auto both_ways = PairFixture::response("b", {"biostat"}, {"flow"}, {"oncology"});
  auto e1 = mm::score_pair(a, one_way, f.corpus, f.graph, w);
  auto e2 = mm::score_pair(a, both_ways, f.corpus, f.graph, w);
  EXPECT_GE(e2.base_score - e1.base_score, w.w_directed + w.w_reciprocal);
}

TEST(Weights, JsonDefaultsAndValidation) {
  auto w = mm::MatchWeights::from_json(nlohmann::json::parse(R"({"w_reciprocal": 7})"));
  EXPECT_EQ(w.w_interest, 1.0);
  EXPECT_EQ(w.w_directed, 2.0);
  EXPECT_EQ(w.w_reciprocal, 7.0);
  EXPECT_EQ(w.cross_institution_bonus, 1.0);
  EXPECT_THROW(mm::MatchWeights::from_json(nlohmann::json::parse(R"({"w_interest": -1})")), mm::InputError);
  EXPECT_THROW(mm::MatchWeights::from_json(nlohmann::json::parse(R"({"w_bogus": 1})")), mm::InputError);
  EXPECT_THROW(mm::MatchWeights::from_json(nlohmann::json::parse(R"({"w_interest": "1"})")), mm::InputError);
}

TEST(AllMatches, CountsAndOrder) {
  const auto& data = ts::fixture_data();
  EXPECT_EQ(data.edges.size(), 66u);
  for (std::size_t i = 1; i < data.edges.size(); ++i) EXPECT_LT(data.edges[i - 1].key(), data.edges[i].key());

  std::vector<mm::SurveyResponse> three(data.surveys.responses.begin(), data.surveys.responses.begin() + 3);
  EXPECT_EQ(mm::all_matches(three, data.corpus, data.graph, {}).size(), 3u);
  std::vector<mm::SurveyResponse> one(data.surveys.responses.begin(), data.surveys.responses.begin() + 1);
  EXPECT_THROW(mm::all_matches(one, data.corpus, data.graph, {}), mm::InputError);
}

TEST(AllMatches, EqualsPairwiseScoring) {
  const auto& data = ts::fixture_data();
  std::map<std::string, const mm::SurveyResponse*> by_id;
  for (const auto& r : data.surveys.responses) by_id[r.researcher_id] = &r;
  for (const auto& e : data.edges) {
    EXPECT_EQ(e, mm::score_pair(*by_id[e.a], *by_id[e.b], data.corpus, data.graph, {}));
  }
}

TEST(AllMatches, FixtureHandChecks) {
  const auto& data = ts::fixture_data();
  auto find = [&](const std::string& a, const std::string& b) {
    return *std::find_if(data.edges.begin(), data.edges.end(),
                         [&](const auto& e) { return e.key() == mm::make_pair_key(a, b); });
  };
  auto r1r2 = find("r1", "r2");
  EXPECT_EQ(r1r2.shared_strong_interests, (std::set<std::string>{"oncology"}));
  EXPECT_TRUE(r1r2.reciprocal);
  EXPECT_FALSE(r1r2.excluded_prior_collaboration);
  EXPECT_EQ(r1r2.base_score, 10.0);
  EXPECT_EQ(r1r2.adjusted_score, 11.0);

  auto r3r7 = find("r3", "r7");
  EXPECT_TRUE(r3r7.reciprocal);
  EXPECT_TRUE(r3r7.excluded_prior_collaboration);
  EXPECT_FALSE(r3r7.cross_institution);
  EXPECT_EQ(r3r7.adjusted_score, 10.0);
}

TEST(RankMatches, SingleEdgeListedForBoth) {
  auto ranking = mm::rank_matches({ts::make_edge("r1", "r2", 3.0)}, 1);
  ASSERT_EQ(ranking.at("r1").size(), 1u);
  ASSERT_EQ(ranking.at("r2").size(), 1u);
  EXPECT_EQ(ranking.at("r1")[0].other("r1"), "r2");
}

TEST(RankMatches, ExcludedEdgesDroppedByDefault) {
  std::vector<mm::MatchEdge> edges = {ts::make_edge("r1", "r2", 9.0, true), ts::make_edge("r1", "r3", 2.0)};
  auto ranking = mm::rank_matches(edges, 5);
  ASSERT_EQ(ranking.at("r1").size(), 1u);
  EXPECT_EQ(ranking.at("r1")[0].b, "r3");
  EXPECT_TRUE(ranking.at("r2").empty());
  auto with = mm::rank_matches(edges, 5, true);
  EXPECT_EQ(with.at("r1").size(), 2u);
  EXPECT_EQ(with.at("r1")[0].b, "r2");
  EXPECT_THROW(mm::rank_matches(edges, 0), mm::InputError);
}

TEST(RankMatches, TieBreaksAndZeroScores) {
  std::vector<mm::MatchEdge> edges = {ts::make_edge("r1", "r4", 5.0, false, true, 4.0),
                                      ts::make_edge("r1", "r3", 5.0, false, false, 5.0),
                                      ts::make_edge("r1", "r2", 5.0, false, false, 5.0),
                                      ts::make_edge("r1", "r5", 0.0)};
  auto list = mm::rank_matches(edges, 10).at("r1");
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[0].b, "r2");
  EXPECT_EQ(list[1].b, "r3");
  EXPECT_EQ(list[2].b, "r4");
}

TEST(RankMatches, FixtureEqualsBruteForceSort) {
  const auto& data = ts::fixture_data();
  auto ranking = mm::rank_matches(data.edges, 3);
  for (const auto& [id, r] : data.corpus.researchers()) {
    std::vector<mm::MatchEdge> mine;
    for (const auto& e : data.edges) {
      if ((e.a == id || e.b == id) && !e.excluded_prior_collaboration && e.adjusted_score > 0) mine.push_back(e);
    }
    std::sort(mine.begin(), mine.end(), [](const auto& x, const auto& y) {
      return std::make_tuple(-x.adjusted_score, -x.base_score, x.key()) <
             std::make_tuple(-y.adjusted_score, -y.base_score, y.key());
    });
    if (mine.size() > 3) mine.resize(3);
    EXPECT_EQ(ranking.at(id), mine) << id;
  }
}

TEST(RankMatches, WeightScalingPreservesOrder) {
  const auto& data = ts::fixture_data();
  for (double c : {0.5, 2.0, 3.0, 10.0}) {
    auto scaled = mm::all_matches(data.surveys.responses, data.corpus, data.graph, mm::MatchWeights{}.scaled(c));
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      EXPECT_DOUBLE_EQ(scaled[i].base_score, c * data.edges[i].base_score);
      EXPECT_DOUBLE_EQ(scaled[i].adjusted_score, c * data.edges[i].adjusted_score);
    }
    auto r1 = mm::rank_matches(data.edges, 4);
    auto r2 = mm::rank_matches(scaled, 4);
    for (const auto& [id, list] : r1) {
      ASSERT_EQ(list.size(), r2.at(id).size());
      for (std::size_t i = 0; i < list.size(); ++i) EXPECT_EQ(list[i].key(), r2.at(id)[i].key());
    }
    auto g1 = mm::greedy_matching(data.edges);
    auto g2 = mm::greedy_matching(scaled);
    ASSERT_EQ(g1.size(), g2.size());
    for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_EQ(g1[i].key(), g2[i].key());
  }
}

TEST(Baseline, AllZeroScores) {
  auto edges = ts::complete_edges({"a", "b", "c", "d"}, [](auto, auto) { return 0.0; });
  auto r = mm::baseline_comparison(edges, 100, 1);
  EXPECT_EQ(r.engine_total, 0.0);
  EXPECT_EQ(r.random_mean, 0.0);
  EXPECT_EQ(r.ratio, 0.0);
}

TEST(Baseline, FourAttendeeEnumeration) {
  // Only the matching {ab, cd} has positive weight; it is one of 3 perfect matchings.
  auto edges = ts::complete_edges({"a", "b", "c", "d"}, [](std::size_t i, std::size_t j) {
    if (i == 0 && j == 1) return 3.0;
    if (i == 2 && j == 3) return 2.0;
    return 0.0;
  });
  auto r = mm::baseline_comparison(edges, 20000, 9);
  EXPECT_EQ(r.engine_total, 5.0);
  EXPECT_NEAR(r.random_mean, 5.0 / 3.0, 0.05 * 5.0 / 3.0);
  EXPECT_NEAR(r.ratio, 3.0, 0.15);
}

TEST(Baseline, ExcludedPairsEarnNothing) {
  auto edges = ts::complete_edges({"a", "b", "c", "d"}, [](auto, auto) { return 1.0; });
  for (auto& e : edges) e.excluded_prior_collaboration = true;
  auto r = mm::baseline_comparison(edges, 50, 1);
  EXPECT_EQ(r.engine_total, 0.0);
  EXPECT_EQ(r.random_mean, 0.0);
}

TEST(Baseline, OddCountSitsOneOut) {
  auto edges = ts::complete_edges({"a", "b", "c", "d", "e"}, [](auto, auto) { return 1.0; });
  auto r = mm::baseline_comparison(edges, 200, 4);
  EXPECT_EQ(r.engine_total, 2.0);
  EXPECT_EQ(r.random_mean, 2.0);
  EXPECT_EQ(r.random_stddev, 0.0);
}

TEST(Baseline, ErrorsAndDeterminism) {
  auto three = ts::complete_edges({"a", "b", "c"}, [](auto, auto) { return 1.0; });
  EXPECT_THROW(mm::baseline_comparison(three, 10, 1), mm::InputError);
  const auto& data = ts::fixture_data();
  EXPECT_THROW(mm::baseline_comparison(data.edges, 0, 1), mm::InputError);
  auto r1 = mm::baseline_comparison(data.edges, 500, 42);
  auto r2 = mm::baseline_comparison(data.edges, 500, 42);
  EXPECT_EQ(r1, r2);
  EXPECT_NE(r1.random_mean, mm::baseline_comparison(data.edges, 500, 43).random_mean);
}

TEST(GreedyMatching, TakesHeaviestFreePairs) {
  auto edges = ts::complete_edges({"a", "b", "c", "d"}, [](std::size_t i, std::size_t j) {
    if (i == 0 && j == 1) return 5.0;
    if (i == 1 && j == 2) return 4.0;
    if (i == 2 && j == 3) return 1.0;
    return 0.0;
  });
  auto chosen = mm::greedy_matching(edges);
  ASSERT_EQ(chosen.size(), 2u);
  EXPECT_EQ(chosen[0].key(), mm::make_pair_key("a", "b"));
  EXPECT_EQ(chosen[1].key(), mm::make_pair_key("c", "d"));
}
