#ifndef MATCHMAKER_SCHEDULING_HPP
#define MATCHMAKER_SCHEDULING_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "matchmaker/error.hpp"
#include "matchmaker/matching.hpp"

namespace matchmaker {

struct EventWindow {
  int rounds = 1;
  int rooms = 1;
  int round_minutes = 10;  // informational only

  void validate() const {
    if (rounds < 1) throw InputError("rounds must be >= 1");
    if (rooms < 1) throw InputError("rooms must be >= 1");
    if (round_minutes < 1) throw InputError("round_minutes must be > 0");
  }
};

struct Meeting {
  int round = 0;
  int room = 0;
  ResearcherId a;
  ResearcherId b;
  double adjusted_score = 0.0;
  bool cross_institution = false;

  bool operator==(const Meeting&) const = default;
};

struct Schedule {
  std::vector<Meeting> meetings;  // ordered by (round, room)
  double total_score = 0.0;
};

/// Candidate order: cross-institution pairs first, then adjusted score
/// descending, then pair id.
inline bool schedule_priority_less(const MatchEdge& x, const MatchEdge& y) {
  if (x.cross_institution != y.cross_institution) return x.cross_institution;
  if (x.adjusted_score != y.adjusted_score) return x.adjusted_score > y.adjusted_score;
  return x.key() < y.key();
}

/// Greedily places each candidate edge in the earliest round where both
/// attendees and a room are free. Excluded and zero-score edges are never
/// candidates.
inline Schedule build_schedule(const std::vector<MatchEdge>& edges, const EventWindow& window) {
  window.validate();
  std::vector<const MatchEdge*> candidates;
  for (const auto& e : edges) {
    if (!e.excluded_prior_collaboration && e.adjusted_score > 0.0) candidates.push_back(&e);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const MatchEdge* x, const MatchEdge* y) { return schedule_priority_less(*x, *y); });

  const auto rounds = static_cast<std::size_t>(window.rounds);
  const auto rooms = static_cast<std::size_t>(window.rooms);
  std::vector<std::set<ResearcherId>> busy(rounds);
  std::vector<std::size_t> rooms_used(rounds, 0);
  std::set<ResearcherPair> met;
  std::size_t open_cells = rounds * rooms;

  Schedule schedule;
  for (const auto* e : candidates) {
    if (open_cells == 0) break;
    if (!met.insert(e->key()).second) continue;  // duplicate edge in input
    for (std::size_t r = 0; r < rounds; ++r) {
      if (rooms_used[r] == rooms || busy[r].count(e->a) || busy[r].count(e->b)) continue;
      busy[r].insert(e->a);
      busy[r].insert(e->b);
      schedule.meetings.push_back({static_cast<int>(r), static_cast<int>(rooms_used[r]), e->a, e->b,
                                   e->adjusted_score, e->cross_institution});
      ++rooms_used[r];
      --open_cells;
      break;
    }
  }
  std::sort(schedule.meetings.begin(), schedule.meetings.end(), [](const Meeting& x, const Meeting& y) {
    return std::pair{x.round, x.room} < std::pair{y.round, y.room};
  });
  for (const auto& m : schedule.meetings) schedule.total_score += m.adjusted_score;
  return schedule;
}

/// Lists every broken Schedule invariant; an empty result means valid.
inline std::vector<std::string> validate_schedule(const Schedule& s, const std::vector<MatchEdge>& edges,
                                                  const EventWindow& window) {
  std::vector<std::string> violations;
  std::map<ResearcherPair, const MatchEdge*> by_pair;
  for (const auto& e : edges) by_pair[e.key()] = &e;

  std::set<std::pair<int, int>> cells;
  std::set<std::pair<int, ResearcherId>> seen_in_round;
  std::set<ResearcherPair> pairs;
  double total = 0.0;
  for (const auto& m : s.meetings) {
    auto where = "round " + std::to_string(m.round) + " room " + std::to_string(m.room);
    if (m.round < 0 || m.round >= window.rounds) violations.push_back(where + ": round out of range");
    if (m.room < 0 || m.room >= window.rooms) violations.push_back(where + ": room out of range");
    if (!cells.insert({m.round, m.room}).second) violations.push_back(where + ": cell holds two meetings");
    if (m.a == m.b) {
      violations.push_back(where + ": " + m.a + " meets themself");
      continue;
    }
    for (const auto* id : {&m.a, &m.b}) {
      if (!seen_in_round.insert({m.round, *id}).second) {
        violations.push_back("researcher " + *id + " double-booked in round " + std::to_string(m.round));
      }
    }
    auto key = make_pair_key(m.a, m.b);
    auto pair_name = key.first + "-" + key.second;
    if (!pairs.insert(key).second) violations.push_back("pair " + pair_name + " meets more than once");
    auto it = by_pair.find(key);
    if (it == by_pair.end()) {
      violations.push_back("pair " + pair_name + " has no match edge");
      continue;
    }
    if (it->second->excluded_prior_collaboration) {
      violations.push_back("pair " + pair_name + " are prior collaborators");
    }
    total += it->second->adjusted_score;
  }
  if (std::abs(total - s.total_score) > 1e-9 * std::max(1.0, std::abs(total))) {
    violations.push_back("total_score does not equal the sum of scheduled adjusted scores");
  }
  return violations;
}

}  // namespace matchmaker

#endif  // MATCHMAKER_SCHEDULING_HPP
