#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "condorcet/coalitions.hpp"
#include "condorcet/rational.hpp"

namespace condorcet::profiles {

using coalitions::Coalition;
using coalitions::VotingSystem;

// Strict total order over candidates 0..c-1, best first.
class Ranking {
 public:
  explicit Ranking(std::vector<int> order);

  int candidates() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  int position(int candidate) const { return position_[candidate]; }
  bool prefers(int x, int y) const { return position_[x] < position_[y]; }

  bool operator==(const Ranking& other) const { return order_ == other.order_; }

 private:
  std::vector<int> order_;
  std::vector<int> position_;
};

struct Ballot {
  Ranking ranking;
  int count;
};

// Voter v (0-based) holds the ranking of the ballot group containing it;
// groups are expanded in ballot order.
class Profile {
 public:
  Profile(std::vector<std::string> candidate_names, std::vector<Ballot> ballots);
  static Profile from_rankings(int candidates, const std::vector<Ranking>& voters);

  int candidates() const { return static_cast<int>(names_.size()); }
  int voters() const { return static_cast<int>(voter_ballot_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Ballot>& ballots() const { return ballots_; }
  const Ranking& ranking_of(int voter) const { return ballots_[voter_ballot_[voter]].ranking; }

 private:
  std::vector<std::string> names_;
  std::vector<Ballot> ballots_;
  std::vector<int> voter_ballot_;
};

// {"candidates": [...], "ballots": [{"ranking": [...], "count": n}, ...]}
Profile profile_from_json_text(const std::string& text);
std::string to_json_text(const Profile& p);

// count[x][y] = number of voters ranking x above y.
using PairwiseTally = std::vector<std::vector<int>>;
PairwiseTally pairwise_tally(const Profile& p);

struct CollectiveRelation {
  // strict[x][y]: x collectively preferred to y.
  std::vector<std::vector<bool>> strict;

  int candidates() const { return static_cast<int>(strict.size()); }
  bool prefers(int x, int y) const { return strict[x][y]; }
  // Exactly one direction holds on every pair of distinct candidates.
  bool is_complete_and_asymmetric() const;
};

// x > y iff the coalition of voters preferring x to y is efficacious.
CollectiveRelation collective_relation(const Profile& p, const VotingSystem& vs);

// Strict-majority rule on raw tallies (x > y iff count[x][y] > n/2); usable for
// electorates larger than the assembly cap.
CollectiveRelation majority_relation(const Profile& p);

// Shortest directed cycle, rotated to start at its least candidate; among
// cycles of equal length the lexicographically least.
std::optional<std::vector<int>> find_cycle(const CollectiveRelation& r);

// Labels 1..6 of the orders of a candidate triple (a, b, c):
//   1 a>b>c   2 a>c>b   3 c>a>b   4 c>b>a   5 b>c>a   6 b>a>c
// Labels are added modulo 6; p and p+3 are reversed orders.
class RankLabel {
 public:
  explicit RankLabel(int label);
  int value() const { return label_; }
  RankLabel operator+(int k) const;
  bool operator==(const RankLabel&) const = default;

 private:
  int label_;
};

struct Triple {
  int a, b, c;
};

// Restriction of a ranking to the triple, as its label.
RankLabel label_of(const Ranking& r, const Triple& t);
// Order (best first) that a label denotes on the triple.
std::array<int, 3> order_of(RankLabel label, const Triple& t);

class LabelPartition {
 public:
  LabelPartition(coalitions::Assembly assembly, std::array<Mask, 6> classes);

  // K(p), K(p,q), K(p,q,r)
  Coalition k(RankLabel p) const;
  Coalition k(RankLabel p, RankLabel q) const;
  Coalition k(RankLabel p, RankLabel q, RankLabel r) const;
  int size(RankLabel p) const { return popcount(classes_[p.value() - 1]); }

 private:
  coalitions::Assembly assembly_;
  std::array<Mask, 6> classes_;
};

LabelPartition label_profile(const Profile& p, const Triple& t);
// Number of voters per label (index label-1); no assembly cap.
std::array<int, 6> label_counts(const Profile& p, const Triple& t);

enum class ProfileCondition { S, T, V };
std::string to_string(ProfileCondition c);

bool check_profile_condition(const Profile& p, const VotingSystem& vs, ProfileCondition cond,
                             const Triple& t = {0, 1, 2});

struct CoherenceReport {
  bool s = false;
  bool t = false;
  bool v = false;
  bool coherent = false;
  bool chain_ok = false;  // S => T, T => V and V <=> coherent
};

CoherenceReport coherence_theorem_check(const Profile& p, const VotingSystem& vs);

// Some candidate of the triple is never placed at some rank r in {1,2,3}.
bool sen_condition(const Profile& p, const Triple& t = {0, 1, 2});

inline constexpr int kMaxProbabilityVoters = 7;

// Fraction of the 6^voters assignments of orders on three candidates whose
// strict-majority relation has a cycle.
Rational cycle_probability(int voters);

enum class ElectionMethod { Plurality, TwoRound, Pairwise };
std::string to_string(ElectionMethod m);
ElectionMethod parse_election_method(const std::string& name);

struct ElectionOutcome {
  ElectionMethod method;
  std::optional<int> winner;
  std::vector<int> first_place;          // first-place counts per candidate
  std::optional<std::pair<int, int>> finalists;
  std::optional<std::pair<int, int>> runoff_votes;
  std::optional<std::vector<int>> ranking;  // pairwise: collective order, best first
  std::optional<std::vector<int>> cycle;    // pairwise: a cycle when incoherent
  PairwiseTally tally;
};

// plurality: most first places (lowest id on ties)
// two_round: absolute first-round majority wins outright, else the two
//   leaders meet in a runoff on full rankings; ties go to the lowest id
// pairwise: strict-majority relation, ranked when acyclic and complete
ElectionOutcome run_election(const Profile& p, ElectionMethod method);

}  // namespace condorcet::profiles
