#include "condorcet/fintop.hpp"

#include <stdexcept>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet::fintop {

namespace {

void check_points(int k, int limit, const char* what) {
  if (k < 1) throw InvalidArgument("a space needs at least one point");
  if (k > limit) throw ResourceLimit(std::string(what) + " is limited to " + std::to_string(limit) + " points");
}

}  // namespace

Relation compose(const Relation& a, const Relation& b) {
  Relation out(a.size(), 0);
  for (std::size_t x = 0; x < a.size(); ++x)
    for (int y : members_of(a[x])) out[x] |= b[y];
  return out;
}

Relation converse(const Relation& r) {
  Relation out(r.size(), 0);
  for (std::size_t x = 0; x < r.size(); ++x)
    for (int y : members_of(r[x])) out[y] |= bit(static_cast<int>(x));
  return out;
}

bool included(const Relation& a, const Relation& b) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (!is_subset(a[x], b[x])) return false;
  return true;
}

Preorder::Preorder(int k, Relation rows) : k_(k), rows_(std::move(rows)) {
  check_points(k, kMaxPoints, "a preorder");
  if (static_cast<int>(rows_.size()) != k) throw InvalidArgument("relation needs one row per point");
  for (int x = 0; x < k; ++x) {
    if (!is_subset(rows_[x], full_mask(k))) throw InvalidArgument("relation leaves the point set");
    if (!related(x, x)) throw InvalidArgument("relation is not reflexive at " + std::to_string(x));
  }
  if (!included(compose(rows_, rows_), rows_)) throw InvalidArgument("relation is not transitive");
}

Preorder Preorder::from_matrix(const std::vector<std::vector<int>>& m) {
  const int k = static_cast<int>(m.size());
  Relation rows(k, 0);
  for (int x = 0; x < k; ++x) {
    if (static_cast<int>(m[x].size()) != k) throw InvalidArgument("relation matrix must be square");
    for (int y = 0; y < k; ++y)
      if (m[x][y]) rows[x] |= bit(y);
  }
  return Preorder(k, rows);
}

std::vector<std::vector<int>> Preorder::matrix() const {
  std::vector<std::vector<int>> m(k_, std::vector<int>(k_, 0));
  for (int x = 0; x < k_; ++x)
    for (int y = 0; y < k_; ++y) m[x][y] = related(x, y);
  return m;
}

FiniteTopology::FiniteTopology(int k, SubsetFamily opens) : k_(k), opens_(std::move(opens)) {
  check_points(k, kMaxPoints, "a topology");
  if (opens_.ground_size() != k) throw InvalidArgument("open family is on a different point set");
  if (!opens_.contains(0)) throw InvalidArgument("the empty set must be open");
  if (!opens_.contains(full_mask(k))) throw InvalidArgument("the whole space must be open");
  const auto members = opens_.members();
  for (Mask u : members)
    for (Mask v : members) {
      if (!opens_.contains(u | v)) throw InvalidArgument("opens are not closed under union");
      if (!opens_.contains(u & v)) throw InvalidArgument("opens are not closed under intersection");
    }
}

FiniteTopology FiniteTopology::from_opens(int k, const std::vector<Mask>& opens) {
  check_points(k, kMaxPoints, "a topology");
  for (Mask u : opens)
    if (!is_subset(u, full_mask(k))) throw InvalidArgument("an open set leaves the point set");
  return FiniteTopology(k, SubsetFamily::from_masks(k, opens));
}

FiniteTopology FiniteTopology::discrete(int k) {
  check_points(k, kMaxPoints, "a topology");
  return FiniteTopology(k, SubsetFamily::from_predicate(k, [](Mask) { return true; }));
}

FiniteTopology FiniteTopology::indiscrete(int k) {
  std::vector<Mask> opens = {0, full_mask(k)};
  return from_opens(k, opens);
}

Mask FiniteTopology::closure(Mask s) const {
  Mask out = full_mask(k_);
  opens_.for_each([&](Mask u) {
    if ((u & s) == 0) out &= ~u;
  });
  return out;
}

Mask FiniteTopology::smallest_open(Mask s) const {
  Mask out = full_mask(k_);
  opens_.for_each([&](Mask u) {
    if (is_subset(s, u)) out &= u;
  });
  return out;
}

Preorder nasse_of(const FiniteTopology& t) {
  Relation rows(t.size(), 0);
  for (int x = 0; x < t.size(); ++x) rows[x] = t.smallest_open(bit(x));
  return Preorder(t.size(), rows);
}

FiniteTopology topo_of(const Preorder& p) {
  const int k = p.size();
  auto opens = SubsetFamily::from_predicate(k, [&](Mask u) {
    for (int x : members_of(u))
      if (!is_subset(p.rows()[x], u)) return false;
    return true;
  });
  return FiniteTopology(k, opens);
}

std::vector<FiniteTopology> enumerate_topologies(int k) {
  check_points(k, kMaxCountPoints, "topology enumeration");
  const int subsets = 1 << k;
  const Mask full = full_mask(k);
  std::vector<FiniteTopology> out;
  // Every family of subsets, as a bit string over the 2^k subsets.
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    auto in = [&](Mask s) { return (fam >> s) & 1U; };
    if (!in(0) || !in(full)) continue;
    bool ok = true;
    for (Mask u = 0; u < static_cast<Mask>(subsets) && ok; ++u)
      for (Mask v = 0; v < static_cast<Mask>(subsets) && ok; ++v)
        if (in(u) && in(v) && (!in(u | v) || !in(u & v))) ok = false;
    if (ok) out.emplace_back(k, SubsetFamily::from_bits(k, fam));
  }
  return out;
}

std::vector<Preorder> enumerate_preorders(int k) {
  check_points(k, kMaxCountPoints, "preorder enumeration");
  std::vector<std::pair<int, int>> cells;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      if (x != y) cells.emplace_back(x, y);
  std::vector<Preorder> out;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << cells.size()); ++pick) {
    std::vector<std::vector<bool>> m(k, std::vector<bool>(k, false));
    for (int x = 0; x < k; ++x) m[x][x] = true;
    for (std::size_t c = 0; c < cells.size(); ++c)
      if ((pick >> c) & 1U) m[cells[c].first][cells[c].second] = true;
    bool transitive = true;
    for (int x = 0; x < k && transitive; ++x)
      for (int y = 0; y < k && transitive; ++y)
        for (int z = 0; z < k && transitive; ++z)
          if (m[x][y] && m[y][z] && !m[x][z]) transitive = false;
    if (!transitive) continue;
    std::vector<std::vector<int>> mi(k, std::vector<int>(k));
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) mi[x][y] = m[x][y];
    out.push_back(Preorder::from_matrix(mi));
  }
  return out;
}

CorrespondenceCount count_correspondence(int k) {
  CorrespondenceCount c;
  c.k = k;
  c.topologies = static_cast<long long>(enumerate_topologies(k).size());
  c.preorders = static_cast<long long>(enumerate_preorders(k).size());
  c.equal = c.topologies == c.preorders;
  return c;
}

NormalityReport normality_check(const FiniteTopology& t) {
  check_points(t.size(), kMaxNormalityPoints, "the normality check");
  const auto opens = t.opens().members();
  std::vector<Mask> closed;
  for (Mask u : opens) closed.push_back(full_mask(t.size()) & ~u);

  NormalityReport r;
  r.normal_direct = true;
  for (Mask a : closed)
    for (Mask b : closed) {
      if ((a & b) != 0 || !r.normal_direct) continue;
      bool separated = false;
      for (Mask u : opens) {
        if (!is_subset(a, u)) continue;
        for (Mask v : opens)
          if (is_subset(b, v) && (u & v) == 0) {
            separated = true;
            break;
          }
        if (separated) break;
      }
      r.normal_direct = separated;
    }

  r.extremal_direct = true;
  for (Mask u : opens)
    if (!t.is_open(t.closure(u))) r.extremal_direct = false;

  const Relation tr = nasse_of(t).rows();
  const Relation inv = converse(tr);
  r.nasse_condition = included(compose(tr, inv), compose(inv, tr));
  r.extremal_condition = included(compose(inv, tr), compose(tr, inv));
  r.agree = r.normal_direct == r.nasse_condition;
  r.extremal_agree = r.extremal_direct == r.extremal_condition;
  return r;
}

FiniteTopology topology_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j["points"].is_number_integer() || !j.contains("opens") ||
      !j["opens"].is_array())
    throw InvalidArgument("topology JSON needs integer 'points' and array 'opens'");
  const int k = j["points"].get<int>();
  check_points(k, kMaxPoints, "a topology");
  std::vector<Mask> opens;
  for (const auto& s : j["opens"]) {
    if (!s.is_array()) throw InvalidArgument("each open must be an array of points");
    Mask m = 0;
    for (const auto& v : s) {
      if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= k)
        throw InvalidArgument("open set members must be points 0.." + std::to_string(k - 1));
      m |= bit(v.get<int>());
    }
    opens.push_back(m);
  }
  return FiniteTopology::from_opens(k, opens);
}

std::string to_json_text(const FiniteTopology& t) {
  nlohmann::ordered_json j;
  j["points"] = t.size();
  auto opens = nlohmann::ordered_json::array();
  t.opens().for_each([&](Mask u) { opens.push_back(members_of(u)); });
  j["opens"] = opens;
  return j.dump();
}

}  // namespace condorcet::fintop
