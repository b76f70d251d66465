// Scores one pair of attendees in memory and prints the resulting edge.

#include <iostream>

#include "matchmaker/matchmaker.hpp"

int main() {
  using namespace matchmaker;

  Corpus corpus({{"r1", "Ada Brooks", "University of Michigan", std::nullopt},
                 {"r2", "Ben Carter", "MD Anderson Cancer Center", std::nullopt}},
                {});
  auto graph = build_collaboration_graph(corpus);

  SurveyResponse a{"r1", {{"oncology", InterestStrength::strong}}, {"biostatistic"}, {"flow cytometry"}};
  SurveyResponse b{"r2", {{"oncology", InterestStrength::strong}}, {"flow cytometry"}, {"biostatistic"}};

  auto edge = score_pair(a, b, corpus, graph, MatchWeights{});
  std::cout << report::matches_csv({edge});
  return 0;
}
