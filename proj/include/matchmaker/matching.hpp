#ifndef MATCHMAKER_MATCHING_HPP
#define MATCHMAKER_MATCHING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "matchmaker/corpus.hpp"
#include "matchmaker/error.hpp"
#include "matchmaker/survey.hpp"

namespace matchmaker {

/// Linear weights for pair scoring. The defaults order interest-only below a
/// one-way method match below a reciprocal method match.
struct MatchWeights {
  double w_interest = 1.0;
  double w_directed = 2.0;
  double w_reciprocal = 5.0;
  double cross_institution_bonus = 1.0;

  void validate() const {
    for (auto [name, value] : {std::pair{"w_interest", w_interest}, std::pair{"w_directed", w_directed},
                               std::pair{"w_reciprocal", w_reciprocal},
                               std::pair{"cross_institution_bonus", cross_institution_bonus}}) {
      if (!std::isfinite(value) || value < 0.0) {
        throw InputError(std::string("weight ") + name + " must be finite and >= 0");
      }
    }
  }

  MatchWeights scaled(double c) const {
    return {w_interest * c, w_directed * c, w_reciprocal * c, cross_institution_bonus * c};
  }

  /// Missing fields keep their defaults; unknown fields are rejected.
  static MatchWeights from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("weights must be a JSON object");
    MatchWeights w;
    for (const auto& [key, value] : j.items()) {
      double* slot = key == "w_interest"                ? &w.w_interest
                     : key == "w_directed"              ? &w.w_directed
                     : key == "w_reciprocal"            ? &w.w_reciprocal
                     : key == "cross_institution_bonus" ? &w.cross_institution_bonus
                                                        : nullptr;
      if (slot == nullptr) throw InputError("unknown weight field `" + key + "`");
      if (!value.is_number()) throw InputError("weight field `" + key + "` must be a number");
      *slot = value.get<double>();
    }
    w.validate();
    return w;
  }
};

/// Scored pair of attendees. `directed_ab` holds methods `a` needs and `b`
/// offers; `directed_ba` the reverse.
struct MatchEdge {
  ResearcherId a;
  ResearcherId b;
  std::set<std::string> shared_strong_interests;
  std::set<std::string> directed_ab;
  std::set<std::string> directed_ba;
  bool reciprocal = false;
  bool excluded_prior_collaboration = false;
  bool cross_institution = false;
  double base_score = 0.0;
  double adjusted_score = 0.0;

  bool operator==(const MatchEdge&) const = default;

  ResearcherPair key() const { return make_pair_key(a, b); }
  bool involves(const ResearcherId& id) const { return a == id || b == id; }
  const ResearcherId& other(const ResearcherId& id) const { return a == id ? b : a; }
};

namespace detail {

inline std::set<std::string> intersect(const std::set<std::string>& x, const std::set<std::string>& y) {
  std::set<std::string> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::inserter(out, out.end()));
  return out;
}

}  // namespace detail

/// Recomputes base and adjusted scores from the edge's sets and flags.
inline void rescore(MatchEdge& e, const MatchWeights& w) {
  e.reciprocal = !e.directed_ab.empty() && !e.directed_ba.empty();
  auto directed = static_cast<double>(e.directed_ab.size() + e.directed_ba.size());
  e.base_score = w.w_interest * static_cast<double>(e.shared_strong_interests.size()) +
                 w.w_directed * directed + (e.reciprocal ? w.w_reciprocal : 0.0);
  e.adjusted_score = e.base_score + (e.cross_institution ? w.cross_institution_bonus : 0.0);
}

inline MatchEdge score_pair(const SurveyResponse& a, const SurveyResponse& b, const Corpus& corpus,
                            const CollaborationGraph& graph, const MatchWeights& w) {
  if (a.researcher_id == b.researcher_id) {
    throw InputError("cannot score researcher " + a.researcher_id + " against itself");
  }
  MatchEdge e;
  e.a = a.researcher_id;
  e.b = b.researcher_id;
  e.shared_strong_interests = detail::intersect(a.strong_interests(), b.strong_interests());
  e.directed_ab = detail::intersect(a.methods_needed, b.methods_offered);
  e.directed_ba = detail::intersect(b.methods_needed, a.methods_offered);
  e.excluded_prior_collaboration = graph.has_prior_collaboration(e.a, e.b);
  e.cross_institution = corpus.researcher(e.a).institution != corpus.researcher(e.b).institution;
  rescore(e, w);
  return e;
}

/// Every unordered pair, ordered by (a, b) with a < b.
inline std::vector<MatchEdge> all_matches(std::vector<SurveyResponse> surveys, const Corpus& corpus,
                                          const CollaborationGraph& graph, const MatchWeights& w) {
  if (surveys.size() < 2) throw InputError("matching needs at least 2 survey responses");
  w.validate();
  std::sort(surveys.begin(), surveys.end(),
            [](const auto& x, const auto& y) { return x.researcher_id < y.researcher_id; });
  std::vector<MatchEdge> edges;
  edges.reserve(surveys.size() * (surveys.size() - 1) / 2);
  for (std::size_t i = 0; i < surveys.size(); ++i) {
    for (std::size_t j = i + 1; j < surveys.size(); ++j) {
      edges.push_back(score_pair(surveys[i], surveys[j], corpus, graph, w));
    }
  }
  return edges;
}

/// adjusted desc, then base desc, then unordered pair id ascending.
inline bool match_priority_less(const MatchEdge& x, const MatchEdge& y) {
  if (x.adjusted_score != y.adjusted_score) return x.adjusted_score > y.adjusted_score;
  if (x.base_score != y.base_score) return x.base_score > y.base_score;
  return x.key() < y.key();
}

using MatchRanking = std::map<ResearcherId, std::vector<MatchEdge>>;

/// Top-k partners per attendee. Every attendee seen in `edges` gets an entry,
/// possibly empty. Zero-score and (by default) excluded edges are dropped.
inline MatchRanking rank_matches(const std::vector<MatchEdge>& edges, int per_attendee_k,
                                 bool include_excluded = false) {
  if (per_attendee_k < 1) throw InputError("k must be >= 1, got " + std::to_string(per_attendee_k));
  MatchRanking ranking;
  for (const auto& e : edges) {
    auto& la = ranking[e.a];
    auto& lb = ranking[e.b];
    if (e.excluded_prior_collaboration && !include_excluded) continue;
    if (!(e.adjusted_score > 0.0)) continue;
    la.push_back(e);
    lb.push_back(e);
  }
  auto k = static_cast<std::size_t>(per_attendee_k);
  for (auto& [id, list] : ranking) {
    std::sort(list.begin(), list.end(), match_priority_less);
    if (list.size() > k) list.resize(k);
  }
  return ranking;
}

/// Greedy maximum-weight matching over non-excluded positive edges, taken in
/// match_priority_less order. A 1/2-approximation, not an optimum.
inline std::vector<MatchEdge> greedy_matching(const std::vector<MatchEdge>& edges) {
  std::vector<MatchEdge> eligible;
  for (const auto& e : edges) {
    if (!e.excluded_prior_collaboration && e.adjusted_score > 0.0) eligible.push_back(e);
  }
  std::sort(eligible.begin(), eligible.end(), match_priority_less);
  std::set<ResearcherId> used;
  std::vector<MatchEdge> chosen;
  for (auto& e : eligible) {
    if (used.count(e.a) || used.count(e.b)) continue;
    used.insert(e.a);
    used.insert(e.b);
    chosen.push_back(std::move(e));
  }
  return chosen;
}

struct BaselineReport {
  double engine_total = 0.0;
  double random_mean = 0.0;
  double random_stddev = 0.0;
  double ratio = 0.0;
  std::size_t attendees = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  bool operator==(const BaselineReport&) const = default;
};

namespace detail {

/// Unbiased draw in [0, n) from raw 64-bit engine output.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

/// Independent stream per trial, derived from (seed, trial).
inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace detail

inline constexpr double kBaselineEpsilon = 1e-9;

/// Compares the greedy matching total with uniformly random pairings. Random
/// pairings earn adjusted scores of non-excluded pairs only. With an odd
/// attendee count one uniformly chosen attendee sits out of each random trial.
inline BaselineReport baseline_comparison(const std::vector<MatchEdge>& edges, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be >= 1, got " + std::to_string(trials));
  std::vector<ResearcherId> ids;
  for (const auto& e : edges) {
    ids.push_back(e.a);
    ids.push_back(e.b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const std::size_t n = ids.size();
  if (n < 4) throw InputError("baseline needs at least 4 attendees, got " + std::to_string(n));

  auto index_of = [&](const ResearcherId& id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<double> weight(n * n, 0.0);
  for (const auto& e : edges) {
    if (e.excluded_prior_collaboration) continue;
    auto i = index_of(e.a), j = index_of(e.b);
    weight[i * n + j] = weight[j * n + i] = e.adjusted_score;
  }

  BaselineReport report;
  report.attendees = n;
  report.trials = trials;
  report.seed = seed;
  for (const auto& e : greedy_matching(edges)) report.engine_total += e.adjusted_score;

  // Welford accumulation over trial totals.
  double mean = 0.0, m2 = 0.0;
  std::vector<std::size_t> order(n);
  for (int t = 0; t < trials; ++t) {
    auto rng = detail::trial_engine(seed, static_cast<std::uint64_t>(t));
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(order[i], order[detail::bounded(rng, i + 1)]);
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; i += 2) total += weight[order[i] * n + order[i + 1]];
    double delta = total - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (total - mean);
  }
  report.random_mean = mean;
  report.random_stddev = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1)) : 0.0;
  report.ratio = report.engine_total / std::max(report.random_mean, kBaselineEpsilon);
  return report;
}

}  // namespace matchmaker

#endif  // MATCHMAKER_MATCHING_HPP
