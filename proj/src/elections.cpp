#include <algorithm>

#include "condorcet/errors.hpp"
#include "condorcet/profiles.hpp"

namespace condorcet::profiles {

std::string to_string(ElectionMethod m) {
  switch (m) {
    case ElectionMethod::Plurality: return "plurality";
    case ElectionMethod::TwoRound: return "two_round";
    case ElectionMethod::Pairwise: return "pairwise";
  }
  return "?";
}

ElectionMethod parse_election_method(const std::string& name) {
  if (name == "plurality") return ElectionMethod::Plurality;
  if (name == "two_round" || name == "two-round") return ElectionMethod::TwoRound;
  if (name == "pairwise") return ElectionMethod::Pairwise;
  throw InvalidArgument("unknown election method '" + name + "' (plurality, two_round, pairwise)");
}

namespace {

std::vector<int> first_places(const Profile& p) {
  std::vector<int> counts(p.candidates(), 0);
  for (const auto& b : p.ballots()) counts[b.ranking.order().front()] += b.count;
  return counts;
}

// Candidates sorted by count, descending; lower id first on ties.
std::vector<int> by_count(const std::vector<int>& counts) {
  std::vector<int> ids(counts.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  std::stable_sort(ids.begin(), ids.end(), [&](int x, int y) { return counts[x] > counts[y]; });
  return ids;
}

// Kahn's algorithm picking the least available id; nullopt on a cycle.
std::optional<std::vector<int>> topological_order(const CollectiveRelation& r) {
  const int c = r.candidates();
  std::vector<int> indegree(c, 0);
  for (int x = 0; x < c; ++x)
    for (int y = 0; y < c; ++y)
      if (r.prefers(x, y)) ++indegree[y];
  std::vector<bool> done(c, false);
  std::vector<int> order;
  for (int step = 0; step < c; ++step) {
    int pick = -1;
    for (int x = 0; x < c && pick < 0; ++x)
      if (!done[x] && indegree[x] == 0) pick = x;
    if (pick < 0) return std::nullopt;
    done[pick] = true;
    order.push_back(pick);
    for (int y = 0; y < c; ++y)
      if (r.prefers(pick, y)) --indegree[y];
  }
  return order;
}

}  // namespace

ElectionOutcome run_election(const Profile& p, ElectionMethod method) {
  ElectionOutcome out{method, std::nullopt, first_places(p), std::nullopt, std::nullopt,
                      std::nullopt, std::nullopt, pairwise_tally(p)};
  const int n = p.voters();
  switch (method) {
    case ElectionMethod::Plurality:
      out.winner = by_count(out.first_place).front();
      break;
    case ElectionMethod::TwoRound: {
      const auto ranked = by_count(out.first_place);
      if (2 * out.first_place[ranked.front()] > n || p.candidates() == 1) {
        out.winner = ranked.front();
        break;
      }
      int x = ranked[0], y = ranked[1];
      if (y < x) std::swap(x, y);
      out.finalists = {x, y};
      const int vx = out.tally[x][y], vy = out.tally[y][x];
      out.runoff_votes = {vx, vy};
      out.winner = vy > vx ? y : x;
      break;
    }
    case ElectionMethod::Pairwise: {
      const auto r = majority_relation(p);
      out.cycle = find_cycle(r);
      if (!out.cycle) {
        out.ranking = topological_order(r);
        for (int x = 0; x < p.candidates(); ++x) {
          bool beats_all = true;
          for (int y = 0; y < p.candidates(); ++y)
            if (y != x && !r.prefers(x, y)) beats_all = false;
          if (beats_all) out.winner = x;
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace condorcet::profiles
