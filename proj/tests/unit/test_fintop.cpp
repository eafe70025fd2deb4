#include <doctest.h>

#include <random>
#include <set>

#include "condorcet/errors.hpp"
#include "condorcet/fintop.hpp"

using namespace condorcet;
using namespace condorcet::fintop;

namespace {

using Set = std::set<int>;
using Matrix = std::vector<std::vector<int>>;

// Literal specialization matrix from a list of open point sets.
Matrix oracle_nasse(int k, const std::vector<Set>& opens) {
  Matrix m(k, std::vector<int>(k, 1));
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (const auto& u : opens)
        if (u.count(x) && !u.count(y)) m[x][y] = 0;
  return m;
}

std::vector<Set> to_sets(const FiniteTopology& t) {
  std::vector<Set> out;
  for (Mask u : t.opens().members()) {
    auto v = members_of(u);
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

// Random preorder: random relation, then reflexive-transitive closure by
// Warshall on a bool matrix.
Preorder random_preorder(std::mt19937_64& rng, int k) {
  Matrix m(k, std::vector<int>(k, 0));
  const int density = 1 + static_cast<int>(rng() % 4);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) m[x][y] = x == y || static_cast<int>(rng() % 8) < density;
  for (int z = 0; z < k; ++z)
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        if (m[x][z] && m[z][y]) m[x][y] = 1;
  return Preorder::from_matrix(m);
}

}  // namespace

TEST_CASE("preorder validation") {
  CHECK_THROWS_AS(Preorder::from_matrix({{1, 0}, {0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(Preorder::from_matrix({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(Preorder::from_matrix({{1, 1}, {1}}), InvalidArgument);
  CHECK_NOTHROW(Preorder::from_matrix({{1, 1}, {1, 1}}));
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(FiniteTopology::from_opens(2, {0b01, 0b11}), InvalidArgument);
  CHECK_THROWS_AS(FiniteTopology::from_opens(2, {0, 0b01}), InvalidArgument);
  CHECK_THROWS_AS(FiniteTopology::from_opens(3, {0, 0b001, 0b010, 0b111}), InvalidArgument);
  CHECK_THROWS_AS(FiniteTopology::from_opens(3, {0, 0b011, 0b110, 0b111}), InvalidArgument);
  CHECK_THROWS_AS(FiniteTopology::from_opens(2, {0, 0b100, 0b11}), InvalidArgument);
}

TEST_CASE("nasse of the basic spaces") {
  CHECK(nasse_of(FiniteTopology::discrete(3)).matrix() == Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(nasse_of(FiniteTopology::indiscrete(2)).matrix() == Matrix{{1, 1}, {1, 1}});
  auto sierpinski = FiniteTopology::from_opens(2, {0, 0b01, 0b11});
  CHECK(nasse_of(sierpinski).matrix() == Matrix{{1, 0}, {1, 1}});
  CHECK(topo_of(Preorder::from_matrix({{1, 0}, {1, 1}})) == sierpinski);
  CHECK(topo_of(Preorder::from_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == FiniteTopology::discrete(3));
  CHECK(sierpinski.closure(0b01) == 0b11);
  CHECK(sierpinski.closure(0b10) == 0b10);
}

TEST_CASE("relation algebra") {
  Relation r = {0b011, 0b010, 0b110};
  CHECK(converse(r) == Relation{0b001, 0b111, 0b100});
  CHECK(compose(r, r) == Relation{0b011, 0b010, 0b110});
  Relation s = {0b100, 0b001, 0b000};
  // x (r;s) z: 0 r {0,1}, then s gives {2} | {0}.
  CHECK(compose(r, s) == Relation{0b101, 0b001, 0b001});
  CHECK(included(s, compose(r, s)));
}

TEST_CASE("counts agree for k <= 4") {
  const long long known[] = {1, 4, 29, 355};
  for (int k = 1; k <= 4; ++k) {
    auto c = count_correspondence(k);
    CHECK(c.topologies == known[k - 1]);
    CHECK(c.preorders == known[k - 1]);
    CHECK(c.equal);
  }
  CHECK_THROWS_AS(count_correspondence(5), ResourceLimit);
  CHECK_THROWS_AS(count_correspondence(0), InvalidArgument);
}

TEST_CASE("round trips are identities for k <= 3 and nasse matches the literal oracle") {
  for (int k = 1; k <= 3; ++k) {
    for (const auto& t : enumerate_topologies(k)) {
      CHECK(topo_of(nasse_of(t)) == t);
      CHECK(nasse_of(t).matrix() == oracle_nasse(k, to_sets(t)));
    }
    for (const auto& p : enumerate_preorders(k)) CHECK(nasse_of(topo_of(p)) == p);
  }
}

TEST_CASE("random round trips up to six points") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 6);
    auto p = random_preorder(rng, k);
    auto t = topo_of(p);
    CHECK(nasse_of(t) == p);
    CHECK(topo_of(nasse_of(t)) == t);
    CHECK(nasse_of(t).matrix() == oracle_nasse(k, to_sets(t)));
  }
}

TEST_CASE("normality and extremal disconnectedness characterizations") {
  auto d = normality_check(FiniteTopology::discrete(3));
  CHECK(d.normal_direct);
  CHECK(d.nasse_condition);
  auto s = normality_check(FiniteTopology::from_opens(2, {0, 0b01, 0b11}));
  CHECK(s.agree);
  CHECK(s.normal_direct);
  CHECK(s.extremal_direct);

  int normal = 0, not_normal = 0, ed = 0, not_ed = 0;
  for (int k = 1; k <= 4; ++k)
    for (const auto& t : enumerate_topologies(k)) {
      auto r = normality_check(t);
      CHECK(r.agree);
      CHECK(r.extremal_agree);
      (r.normal_direct ? normal : not_normal)++;
      (r.extremal_direct ? ed : not_ed)++;
    }
  // Both verdicts occur, so the agreement is not vacuous.
  CHECK(not_normal > 0);
  CHECK(normal > 0);
  CHECK(not_ed > 0);
  CHECK(ed > 0);

  // Three points, two closed points 1 and 2 whose smallest opens meet in 0.
  auto bad = FiniteTopology::from_opens(3, {0, 0b001, 0b011, 0b101, 0b111});
  auto rb = normality_check(bad);
  CHECK_FALSE(rb.normal_direct);
  CHECK_FALSE(rb.nasse_condition);

  CHECK_THROWS_AS(normality_check(FiniteTopology::discrete(6)), ResourceLimit);
}

TEST_CASE("topology json") {
  auto t = topology_from_json(R"({"points":2,"opens":[[],[0],[0,1]]})");
  CHECK(t == FiniteTopology::from_opens(2, {0, 0b01, 0b11}));
  CHECK(topology_from_json(to_json_text(t)) == t);
  CHECK_THROWS_AS(topology_from_json(R"({"points":2,"opens":[[],[2],[0,1]]})"), InvalidArgument);
  CHECK_THROWS_AS(topology_from_json(R"({"points":2})"), InvalidArgument);
  CHECK_THROWS_AS(topology_from_json("{"), InvalidArgument);
}
