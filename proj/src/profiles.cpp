#include "condorcet/profiles.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet::profiles {

Ranking::Ranking(std::vector<int> order) : order_(std::move(order)), position_(order_.size(), -1) {
  const int c = static_cast<int>(order_.size());
  if (c == 0) throw InvalidArgument("a ranking needs at least one candidate");
  for (int i = 0; i < c; ++i) {
    const int x = order_[i];
    if (x < 0 || x >= c) throw InvalidArgument("candidate id " + std::to_string(x) + " out of range");
    if (position_[x] != -1) throw InvalidArgument("candidate " + std::to_string(x) + " ranked twice");
    position_[x] = i;
  }
}

Profile::Profile(std::vector<std::string> candidate_names, std::vector<Ballot> ballots)
    : names_(std::move(candidate_names)), ballots_(std::move(ballots)) {
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw InvalidArgument("candidate names must be unique");
  for (std::size_t b = 0; b < ballots_.size(); ++b) {
    if (ballots_[b].ranking.candidates() != candidates())
      throw InvalidArgument("ballot " + std::to_string(b) + " does not rank every candidate");
    if (ballots_[b].count < 0) throw InvalidArgument("ballot counts must be nonnegative");
    for (int i = 0; i < ballots_[b].count; ++i) voter_ballot_.push_back(static_cast<int>(b));
  }
  if (voter_ballot_.empty()) throw InvalidArgument("a profile needs at least one voter");
}

Profile Profile::from_rankings(int candidates, const std::vector<Ranking>& voters) {
  std::vector<std::string> names;
  for (int i = 0; i < candidates; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<Ballot> ballots;
  for (const auto& r : voters) ballots.push_back(Ballot{r, 1});
  return Profile(std::move(names), std::move(ballots));
}

Profile profile_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("candidates") || !j.contains("ballots"))
    throw InvalidArgument("profile JSON needs fields 'candidates' and 'ballots'");
  std::vector<std::string> names;
  std::map<std::string, int> id;
  for (const auto& c : j["candidates"]) {
    if (!c.is_string()) throw InvalidArgument("candidate names must be strings");
    id.emplace(c.get<std::string>(), static_cast<int>(names.size()));
    names.push_back(c.get<std::string>());
  }
  std::vector<Ballot> ballots;
  for (const auto& b : j["ballots"]) {
    if (!b.is_object() || !b.contains("ranking"))
      throw InvalidArgument("each ballot needs a 'ranking'");
    std::vector<int> order;
    for (const auto& c : b["ranking"]) {
      if (c.is_array())
        throw InvalidArgument("tied rankings (preorders) are not supported; rankings must be strict");
      if (!c.is_string()) throw InvalidArgument("ranking entries must be candidate names");
      auto it = id.find(c.get<std::string>());
      if (it == id.end()) throw InvalidArgument("unknown candidate '" + c.get<std::string>() + "'");
      order.push_back(it->second);
    }
    int count = 1;
    if (b.contains("count")) {
      if (!b["count"].is_number_integer()) throw InvalidArgument("ballot count must be an integer");
      count = b["count"].get<int>();
    }
    ballots.push_back(Ballot{Ranking(std::move(order)), count});
  }
  return Profile(std::move(names), std::move(ballots));
}

std::string to_json_text(const Profile& p) {
  nlohmann::ordered_json j;
  j["candidates"] = p.names();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& b : p.ballots()) {
    nlohmann::ordered_json e;
    std::vector<std::string> r;
    for (int x : b.ranking.order()) r.push_back(p.names()[x]);
    e["ranking"] = r;
    e["count"] = b.count;
    arr.push_back(e);
  }
  j["ballots"] = arr;
  return j.dump();
}

PairwiseTally pairwise_tally(const Profile& p) {
  const int c = p.candidates();
  PairwiseTally t(c, std::vector<int>(c, 0));
  for (const auto& b : p.ballots())
    for (int x = 0; x < c; ++x)
      for (int y = 0; y < c; ++y)
        if (x != y && b.ranking.prefers(x, y)) t[x][y] += b.count;
  return t;
}

bool CollectiveRelation::is_complete_and_asymmetric() const {
  const int c = candidates();
  for (int x = 0; x < c; ++x)
    for (int y = x + 1; y < c; ++y)
      if (strict[x][y] == strict[y][x]) return false;
  return true;
}

CollectiveRelation collective_relation(const Profile& p, const VotingSystem& vs) {
  if (vs.size() != p.voters())
    throw InvalidArgument("voting system has " + std::to_string(vs.size()) + " members but the profile has " +
                          std::to_string(p.voters()) + " voters");
  const int c = p.candidates();
  CollectiveRelation r{std::vector<std::vector<bool>>(c, std::vector<bool>(c, false))};
  for (int x = 0; x < c; ++x)
    for (int y = 0; y < c; ++y) {
      if (x == y) continue;
      Mask supporters = 0;
      for (int v = 0; v < p.voters(); ++v)
        if (p.ranking_of(v).prefers(x, y)) supporters |= bit(v);
      r.strict[x][y] = vs.is_efficacious(supporters);
    }
  return r;
}

CollectiveRelation majority_relation(const Profile& p) {
  const auto t = pairwise_tally(p);
  const int c = p.candidates();
  CollectiveRelation r{std::vector<std::vector<bool>>(c, std::vector<bool>(c, false))};
  for (int x = 0; x < c; ++x)
    for (int y = 0; y < c; ++y)
      if (x != y) r.strict[x][y] = 2 * t[x][y] > p.voters();
  return r;
}

namespace {

// Depth-first search for a cycle of exactly `length` edges from `start`
// through candidates greater than `start`, in ascending order.
bool extend_cycle(const CollectiveRelation& r, int start, int length, std::vector<int>& path,
                  std::vector<bool>& used, const std::vector<int>& dist_back) {
  const int c = r.candidates();
  const int here = path.back();
  const int steps = static_cast<int>(path.size());
  if (steps == length) return r.prefers(here, start);
  for (int next = start + 1; next < c; ++next) {
    if (used[next] || !r.prefers(here, next)) continue;
    if (dist_back[next] < 0 || dist_back[next] > length - steps) continue;
    used[next] = true;
    path.push_back(next);
    if (extend_cycle(r, start, length, path, used, dist_back)) return true;
    path.pop_back();
    used[next] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_cycle(const CollectiveRelation& r) {
  const int c = r.candidates();
  for (int length = 2; length <= c; ++length) {
    for (int start = 0; start < c; ++start) {
      // Reverse BFS: edges back to `start` within candidates >= start.
      std::vector<int> dist(c, -1);
      std::vector<int> queue = {start};
      dist[start] = 0;
      for (std::size_t q = 0; q < queue.size(); ++q) {
        const int y = queue[q];
        for (int x = start; x < c; ++x)
          if (dist[x] < 0 && r.prefers(x, y)) {
            dist[x] = dist[y] + 1;
            queue.push_back(x);
          }
      }
      std::vector<int> path = {start};
      std::vector<bool> used(c, false);
      used[start] = true;
      if (extend_cycle(r, start, length, path, used, dist)) return path;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Labels

namespace {

// Index 0 = a, 1 = b, 2 = c.
constexpr std::array<std::array<int, 3>, 6> kLabelOrders = {{
    {0, 1, 2},  // 1 a>b>c
    {0, 2, 1},  // 2 a>c>b
    {2, 0, 1},  // 3 c>a>b
    {2, 1, 0},  // 4 c>b>a
    {1, 2, 0},  // 5 b>c>a
    {1, 0, 2},  // 6 b>a>c
}};

void check_triple(const Triple& t, int candidates) {
  for (int x : {t.a, t.b, t.c})
    if (x < 0 || x >= candidates) throw InvalidArgument("triple candidate out of range");
  if (t.a == t.b || t.b == t.c || t.a == t.c) throw InvalidArgument("triple candidates must be distinct");
}

}  // namespace

RankLabel::RankLabel(int label) : label_(label) {
  if (label < 1 || label > 6) throw InvalidArgument("rank labels are 1..6");
}

RankLabel RankLabel::operator+(int k) const {
  return RankLabel(((label_ - 1 + k) % 6 + 6) % 6 + 1);
}

RankLabel label_of(const Ranking& r, const Triple& t) {
  check_triple(t, r.candidates());
  std::array<int, 3> members = {t.a, t.b, t.c};
  std::array<int, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(),
            [&](int i, int j) { return r.position(members[i]) < r.position(members[j]); });
  for (int l = 0; l < 6; ++l)
    if (kLabelOrders[l] == idx) return RankLabel(l + 1);
  throw std::logic_error("unreachable: every order of three has a label");
}

std::array<int, 3> order_of(RankLabel label, const Triple& t) {
  const std::array<int, 3> members = {t.a, t.b, t.c};
  const auto& o = kLabelOrders[label.value() - 1];
  return {members[o[0]], members[o[1]], members[o[2]]};
}

LabelPartition::LabelPartition(coalitions::Assembly assembly, std::array<Mask, 6> classes)
    : assembly_(assembly), classes_(classes) {}

Coalition LabelPartition::k(RankLabel p) const { return Coalition(assembly_, classes_[p.value() - 1]); }

Coalition LabelPartition::k(RankLabel p, RankLabel q) const {
  return Coalition(assembly_, classes_[p.value() - 1] | classes_[q.value() - 1]);
}

Coalition LabelPartition::k(RankLabel p, RankLabel q, RankLabel r) const {
  return Coalition(assembly_,
                   classes_[p.value() - 1] | classes_[q.value() - 1] | classes_[r.value() - 1]);
}

LabelPartition label_profile(const Profile& p, const Triple& t) {
  if (p.candidates() < 3) throw InvalidArgument("labeling needs at least three candidates");
  coalitions::Assembly assembly(p.voters());
  std::array<Mask, 6> classes{};
  for (int v = 0; v < p.voters(); ++v) classes[label_of(p.ranking_of(v), t).value() - 1] |= bit(v);
  return LabelPartition(assembly, classes);
}

std::array<int, 6> label_counts(const Profile& p, const Triple& t) {
  if (p.candidates() < 3) throw InvalidArgument("labeling needs at least three candidates");
  std::array<int, 6> counts{};
  for (const auto& b : p.ballots()) counts[label_of(b.ranking, t).value() - 1] += b.count;
  return counts;
}

std::string to_string(ProfileCondition c) {
  switch (c) {
    case ProfileCondition::S: return "S";
    case ProfileCondition::T: return "T";
    case ProfileCondition::V: return "V";
  }
  return "?";
}

bool check_profile_condition(const Profile& p, const VotingSystem& vs, ProfileCondition cond,
                             const Triple& t) {
  using coalitions::Condition;
  if (vs.size() != p.voters()) throw InvalidArgument("voting system size does not match voter count");
  if (cond != ProfileCondition::S &&
      (!coalitions::check_condition(vs, Condition::C1) || !coalitions::check_condition(vs, Condition::C2)))
    throw PreconditionError("conditions T and V require a system satisfying C1 and C2");
  const auto part = label_profile(p, t);
  for (int l = 1; l <= 6; ++l) {
    const RankLabel q(l);
    switch (cond) {
      case ProfileCondition::S:
        if (part.k(q, q + 1).size() == 0 || part.k(q, q + 3).size() == 0) return true;
        break;
      case ProfileCondition::T:
        if (vs.is_efficacious(part.k(q, q + 1))) return true;
        break;
      case ProfileCondition::V:
        if (vs.is_efficacious(part.k(q, q + 1, q + 2)) && vs.is_efficacious(part.k(q + 1, q + 2, q + 3)))
          return true;
        break;
    }
  }
  return false;
}

CoherenceReport coherence_theorem_check(const Profile& p, const VotingSystem& vs) {
  if (p.candidates() != 3) throw PreconditionError("coherence_theorem_check needs exactly three candidates");
  CoherenceReport r;
  r.s = check_profile_condition(p, vs, ProfileCondition::S);
  r.t = check_profile_condition(p, vs, ProfileCondition::T);
  r.v = check_profile_condition(p, vs, ProfileCondition::V);
  r.coherent = !find_cycle(collective_relation(p, vs)).has_value();
  r.chain_ok = (!r.s || r.t) && (!r.t || r.v) && (r.v == r.coherent);
  return r;
}

bool sen_condition(const Profile& p, const Triple& t) {
  check_triple(t, p.candidates());
  const std::array<int, 3> members = {t.a, t.b, t.c};
  // used[rank][member]
  std::array<std::array<bool, 3>, 3> used{};
  for (const auto& b : p.ballots()) {
    if (b.count == 0) continue;
    const auto order = order_of(label_of(b.ranking, t), t);
    for (int rank = 0; rank < 3; ++rank)
      for (int m = 0; m < 3; ++m)
        if (order[rank] == members[m]) used[rank][m] = true;
  }
  for (int rank = 0; rank < 3; ++rank)
    for (int m = 0; m < 3; ++m)
      if (!used[rank][m]) return true;
  return false;
}

Rational cycle_probability(int voters) {
  if (voters < 1) throw InvalidArgument("cycle_probability needs at least one voter");
  if (voters > kMaxProbabilityVoters)
    throw ResourceLimit("cycle_probability supports up to " + std::to_string(kMaxProbabilityVoters) +
                        " voters");
  // Sum over label-count vectors weighted by multinomial coefficients.
  std::vector<BigInt> factorial(voters + 1, 1);
  for (int i = 1; i <= voters; ++i) factorial[i] = factorial[i - 1] * i;
  const Triple t{0, 1, 2};
  BigInt cyclic = 0;
  std::array<int, 6> counts{};
  auto visit = [&]() {
    CollectiveRelation r{std::vector<std::vector<bool>>(3, std::vector<bool>(3, false))};
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        if (x == y) continue;
        int support = 0;
        for (int l = 0; l < 6; ++l) {
          const auto o = order_of(RankLabel(l + 1), t);
          const int px = static_cast<int>(std::find(o.begin(), o.end(), x) - o.begin());
          const int py = static_cast<int>(std::find(o.begin(), o.end(), y) - o.begin());
          if (px < py) support += counts[l];
        }
        r.strict[x][y] = 2 * support > voters;
      }
    if (find_cycle(r)) {
      BigInt w = factorial[voters];
      for (int c : counts) w /= factorial[c];
      cyclic += w;
    }
  };
  auto recurse = [&](auto&& self, int slot, int left) -> void {
    if (slot == 5) {
      counts[5] = left;
      visit();
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[slot] = c;
      self(self, slot + 1, left - c);
    }
  };
  recurse(recurse, 0, voters);
  BigInt total = 1;
  for (int i = 0; i < voters; ++i) total *= 6;
  return Rational(cyclic, total);
}

}  // namespace condorcet::profiles
