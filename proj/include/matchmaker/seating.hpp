#ifndef MATCHMAKER_SEATING_HPP
#define MATCHMAKER_SEATING_HPP

// Table assignment: greedy construction followed by best-improvement local
// search over single moves and cross-table swaps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "matchmaker/error.hpp"
#include "matchmaker/matching.hpp"

namespace matchmaker {

struct SeatingPlan {
  std::vector<std::vector<ResearcherId>> tables;  // each sorted; some may be empty
  int capacity = 0;
  double objective = 0.0;
  double construction_objective = 0.0;  // before local search
  std::size_t accepted_moves = 0;
};

/// Pair weight used by seating: adjusted score, or 0 for prior collaborators.
inline double seating_weight(const MatchEdge& e) {
  return e.excluded_prior_collaboration ? 0.0 : e.adjusted_score;
}

/// Sum over tables of within-table pair weights, in a fixed summation order.
inline double seating_objective(const std::vector<std::vector<ResearcherId>>& tables,
                                const std::vector<MatchEdge>& edges) {
  std::map<ResearcherPair, double> weight;
  for (const auto& e : edges) weight[e.key()] = seating_weight(e);
  double total = 0.0;
  for (const auto& table : tables) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (std::size_t j = i + 1; j < table.size(); ++j) {
        if (auto it = weight.find(make_pair_key(table[i], table[j])); it != weight.end()) total += it->second;
      }
    }
  }
  return total;
}

namespace detail {

class SeatingState {
 public:
  SeatingState(std::size_t n, int table_count, int capacity, std::vector<double> weight)
      : n_(n), tables_(static_cast<std::size_t>(table_count)), capacity_(static_cast<std::size_t>(capacity)),
        weight_(std::move(weight)), table_of_(n, kUnseated), size_(tables_, 0), gain_(n * tables_, 0.0) {}

  static constexpr std::size_t kUnseated = static_cast<std::size_t>(-1);

  double w(std::size_t u, std::size_t v) const { return weight_[u * n_ + v]; }
  double gain(std::size_t v, std::size_t t) const { return gain_[v * tables_ + t]; }
  std::size_t table_of(std::size_t v) const { return table_of_[v]; }
  std::size_t free(std::size_t t) const { return capacity_ - size_[t]; }
  std::size_t tables() const { return tables_; }
  std::size_t n() const { return n_; }

  /// Running objective; drifts by float rounding, so only used for comparisons.
  double value() const { return value_; }

  void seat(std::size_t v, std::size_t t) {
    if (table_of_[v] != kUnseated) unseat(v);
    value_ += gain(v, t);
    table_of_[v] = t;
    ++size_[t];
    for (std::size_t x = 0; x < n_; ++x) gain_[x * tables_ + t] += w(x, v);
  }

  void unseat(std::size_t v) {
    auto t = table_of_[v];
    --size_[t];
    table_of_[v] = kUnseated;
    for (std::size_t x = 0; x < n_; ++x) gain_[x * tables_ + t] -= w(x, v);
    value_ -= gain(v, t);
  }

 private:
  std::size_t n_;
  std::size_t tables_;
  std::size_t capacity_;
  std::vector<double> weight_;
  std::vector<std::size_t> table_of_;
  std::vector<std::size_t> size_;
  std::vector<double> gain_;  // gain_[v * tables + t] = sum of w(v, u) over u seated at t
  double value_ = 0.0;
};

// Improvements below this are treated as float noise and not accepted.
inline constexpr double kMinImprovement = 1e-9;

/// Best-improvement descent over single moves and cross-table swaps. Applies
/// at most `budget` moves (decremented) and returns how many it applied.
inline std::size_t descend(SeatingState& state, std::size_t& budget) {
  constexpr auto kNone = SeatingState::kUnseated;
  const std::size_t n = state.n();
  std::size_t applied = 0;
  while (budget > 0) {
    double best_delta = kMinImprovement;
    std::size_t move_v = kNone, move_t = kNone, swap_u = kNone, swap_v = kNone;
    for (std::size_t v = 0; v < n; ++v) {
      auto from = state.table_of(v);
      for (std::size_t t = 0; t < state.tables(); ++t) {
        if (t == from || state.free(t) == 0) continue;
        double delta = state.gain(v, t) - state.gain(v, from);
        if (delta > best_delta) {
          best_delta = delta;
          move_v = v;
          move_t = t;
        }
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        auto tu = state.table_of(u), tv = state.table_of(v);
        if (tu == tv) continue;
        double delta = state.gain(u, tv) - state.gain(u, tu) + state.gain(v, tu) - state.gain(v, tv) -
                       2.0 * state.w(u, v);
        if (delta > best_delta) {
          best_delta = delta;
          swap_u = u;
          swap_v = v;
        }
      }
    }
    if (swap_u != kNone) {
      auto tu = state.table_of(swap_u), tv = state.table_of(swap_v);
      state.unseat(swap_u);
      state.seat(swap_v, tu);
      state.seat(swap_u, tv);
    } else if (move_v != kNone) {
      state.seat(move_v, move_t);
    } else {
      break;
    }
    --budget;
    ++applied;
  }
  return applied;
}

/// Applies `strength` random moves (into free seats) or cross-table swaps.
inline void perturb(SeatingState& state, std::mt19937_64& rng, int strength) {
  const std::size_t n = state.n();
  for (int k = 0; k < strength; ++k) {
    auto u = static_cast<std::size_t>(bounded(rng, n));
    auto t = static_cast<std::size_t>(bounded(rng, state.tables()));
    if (t == state.table_of(u)) continue;
    if (state.free(t) > 0 && bounded(rng, 2) == 0) {
      state.seat(u, t);
      continue;
    }
    std::vector<std::size_t> there;
    for (std::size_t v = 0; v < n; ++v) {
      if (state.table_of(v) == t) there.push_back(v);
    }
    if (there.empty()) {
      state.seat(u, t);
      continue;
    }
    auto v = there[bounded(rng, there.size())];
    auto tu = state.table_of(u);
    state.unseat(u);
    state.seat(v, tu);
    state.seat(u, t);
  }
}

}  // namespace detail

/// Seats `attendees` at `table_count` tables of at most `capacity` each,
/// maximizing the summed seating_weight of co-seated pairs.
///
/// Greedy construction seats edges in (adjusted score desc, pair id) order,
/// then best-improvement descent over single moves and cross-table swaps runs
/// to a local optimum, followed by `perturbations` kick-and-descend rounds.
/// `max_iters` caps the total number of accepted improving moves. `seed`
/// drives construction tie-breaks and the kicks; output is deterministic.
inline SeatingPlan assign_tables(const std::vector<MatchEdge>& edges, std::vector<ResearcherId> attendees,
                                 int table_count, int capacity, std::uint64_t seed, int max_iters = 10000,
                                 int perturbations = 64) {
  if (table_count < 1) throw InputError("table count must be >= 1");
  if (capacity < 2) throw InputError("table capacity must be >= 2, got " + std::to_string(capacity));
  std::sort(attendees.begin(), attendees.end());
  if (std::adjacent_find(attendees.begin(), attendees.end()) != attendees.end()) {
    throw InputError("duplicate attendee in seating input");
  }
  if (static_cast<std::size_t>(table_count) * static_cast<std::size_t>(capacity) < attendees.size()) {
    throw InputError("insufficient seating: " + std::to_string(table_count) + " tables x " +
                     std::to_string(capacity) + " seats for " + std::to_string(attendees.size()) + " attendees");
  }

  const std::size_t n = attendees.size();
  auto index_of = [&](const ResearcherId& id) -> std::size_t {
    auto it = std::lower_bound(attendees.begin(), attendees.end(), id);
    return (it != attendees.end() && *it == id) ? static_cast<std::size_t>(it - attendees.begin()) : n;
  };

  struct Candidate {
    std::size_t u, v;
    double score;
    ResearcherPair key;
  };
  std::vector<double> weight(n * n, 0.0);
  std::vector<Candidate> candidates;
  for (const auto& e : edges) {
    auto u = index_of(e.a), v = index_of(e.b);
    if (u == n || v == n || u == v) continue;
    double w = seating_weight(e);
    weight[u * n + v] = weight[v * n + u] = w;
    if (w > 0.0) candidates.push_back({u, v, w, e.key()});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.score != y.score) return x.score > y.score;
    return x.key < y.key;
  });

  detail::SeatingState state(n, table_count, capacity, std::move(weight));
  std::mt19937_64 rng(seed);

  // Best table for a set of attendees needing `seats` places; ties broken by rng.
  auto best_table = [&](std::initializer_list<std::size_t> who, std::size_t seats) {
    std::vector<std::size_t> best;
    double best_gain = 0.0;
    for (std::size_t t = 0; t < state.tables(); ++t) {
      if (state.free(t) < seats) continue;
      double g = 0.0;
      for (auto v : who) g += state.gain(v, t);
      if (best.empty() || g > best_gain) {
        best.assign(1, t);
        best_gain = g;
      } else if (g == best_gain) {
        best.push_back(t);
      }
    }
    if (best.empty()) return detail::SeatingState::kUnseated;
    return best.size() == 1 ? best.front() : best[detail::bounded(rng, best.size())];
  };

  constexpr auto kUnseated = detail::SeatingState::kUnseated;
  for (const auto& c : candidates) {
    bool u_seated = state.table_of(c.u) != kUnseated;
    bool v_seated = state.table_of(c.v) != kUnseated;
    if (u_seated && v_seated) continue;
    if (!u_seated && !v_seated) {
      if (auto t = best_table({c.u, c.v}, 2); t != kUnseated) {
        state.seat(c.u, t);
        state.seat(c.v, t);
      } else {
        state.seat(c.u, best_table({c.u}, 1));
        state.seat(c.v, best_table({c.v}, 1));
      }
      continue;
    }
    auto seated = u_seated ? c.u : c.v;
    auto other = u_seated ? c.v : c.u;
    auto t = state.table_of(seated);
    state.seat(other, state.free(t) > 0 ? t : best_table({other}, 1));
  }

  std::size_t cursor = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (state.table_of(v) != kUnseated) continue;
    while (state.free(cursor % state.tables()) == 0) ++cursor;
    state.seat(v, cursor % state.tables());
    ++cursor;
  }

  auto snapshot = [&](const detail::SeatingState& st) {
    std::vector<std::vector<ResearcherId>> tables(st.tables());
    for (std::size_t v = 0; v < n; ++v) tables[st.table_of(v)].push_back(attendees[v]);
    return tables;
  };

  SeatingPlan plan;
  plan.capacity = capacity;
  plan.construction_objective = seating_objective(snapshot(state), edges);

  std::size_t budget = static_cast<std::size_t>(std::max(max_iters, 0));
  plan.accepted_moves = detail::descend(state, budget);

  // Iterated local search: kick the best plan with a few random swaps or
  // moves, descend again, keep the result only if it is strictly better.
  detail::SeatingState best = state;
  double best_value = best.value();
  for (int round = 0; round < perturbations && budget > 0 && n >= 2; ++round) {
    detail::SeatingState trial = best;
    detail::perturb(trial, rng, 1 + round % 3);
    plan.accepted_moves += detail::descend(trial, budget);
    if (trial.value() > best_value + detail::kMinImprovement) {
      best = std::move(trial);
      best_value = best.value();
    }
  }

  plan.tables = snapshot(best);
  plan.objective = seating_objective(plan.tables, edges);
  return plan;
}

/// Checks partition, capacity and objective consistency. Empty = valid.
inline std::vector<std::string> validate_seating(const SeatingPlan& plan, std::vector<ResearcherId> attendees,
                                                 const std::vector<MatchEdge>& edges) {
  std::vector<std::string> problems;
  std::vector<ResearcherId> seated;
  for (std::size_t t = 0; t < plan.tables.size(); ++t) {
    if (plan.tables[t].size() > static_cast<std::size_t>(plan.capacity)) {
      problems.push_back("table " + std::to_string(t) + " exceeds capacity");
    }
    seated.insert(seated.end(), plan.tables[t].begin(), plan.tables[t].end());
  }
  std::sort(seated.begin(), seated.end());
  std::sort(attendees.begin(), attendees.end());
  if (seated != attendees) problems.push_back("tables do not partition the attendee set");
  if (std::abs(seating_objective(plan.tables, edges) - plan.objective) > 1e-9 * std::max(1.0, std::abs(plan.objective))) {
    problems.push_back("objective does not match table contents");
  }
  return problems;
}

}  // namespace matchmaker

#endif  // MATCHMAKER_SEATING_HPP
