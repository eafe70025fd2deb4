#include <doctest.h>

#include <cmath>
#include <random>

#include "condorcet/banach.hpp"
#include "condorcet/errors.hpp"

using namespace condorcet;
using namespace condorcet::banach;

namespace {

std::vector<Rational> rationals(std::initializer_list<long long> xs) {
  std::vector<Rational> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

// 0,1,0,0,1,1,0,0,0,1,1,1,...: blocks of k zeros then k ones.
std::vector<Rational> growing_blocks(int blocks) {
  std::vector<Rational> out;
  for (int k = 1; k <= blocks; ++k) {
    for (int i = 0; i < k; ++i) out.emplace_back(0);
    for (int i = 0; i < k; ++i) out.emplace_back(1);
  }
  return out;
}

SequenceWindow random_periodic(std::mt19937_64& rng) {
  std::vector<Rational> w, p;
  const int n = 1 + static_cast<int>(rng() % 6);
  const int l = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) w.emplace_back(static_cast<long long>(rng() % 11) - 5, 1 + rng() % 3);
  for (int i = 0; i < l; ++i) p.emplace_back(static_cast<long long>(rng() % 11) - 5, 1 + rng() % 3);
  return SequenceWindow(w, Tail{p});
}

}  // namespace

TEST_CASE("windows and tails") {
  SequenceWindow x(rationals({5, 6}), Tail{rationals({0, 1, 2})});
  CHECK(x.at(1) == 5);
  CHECK(x.at(3) == 0);
  CHECK(x.at(6) == 0);
  CHECK(x.at(7) == 1);
  CHECK_THROWS_AS(x.at(0), InvalidArgument);
  SequenceWindow bare(rationals({1, 2}));
  CHECK_THROWS_AS(bare.at(3), InvalidArgument);
  CHECK_THROWS_AS(SequenceWindow({}), InvalidArgument);
  CHECK_THROWS_AS(SequenceWindow(rationals({1}), Tail{}), InvalidArgument);

  auto s = shift(x);
  for (long long n = 1; n < 20; ++n) CHECK(s.at(n) == x.at(n + 1));
  CHECK_THROWS_AS(shift(SequenceWindow(rationals({1}))), InvalidArgument);

  auto c = combine(2, x, -1, SequenceWindow::periodic(rationals({1, 0})));
  for (long long n = 1; n < 30; ++n) CHECK(c.at(n) == 2 * x.at(n) - (n % 2 == 1 ? 1 : 0));
}

TEST_CASE("cesaro means") {
  auto c = cesaro(SequenceWindow::constant(1));
  CHECK(c.means == rationals({1}));
  CHECK(*c.limit == 1);
  auto alt = cesaro(SequenceWindow::periodic(rationals({0, 1})));
  CHECK(*alt.limit == Rational(1, 2));
  auto nat = SequenceWindow(rationals({1, 2, 3, 4}));
  auto cn = cesaro(nat);
  CHECK(cn.means == std::vector<Rational>{1, Rational(3, 2), 2, Rational(5, 2)});
  CHECK_FALSE(cn.limit.has_value());

  // Averaging: every mean sits between the window's min and max, and the
  // exact means agree with a double recomputation.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> w;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) w.emplace_back(static_cast<long long>(rng() % 21) - 10, 1 + rng() % 4);
    auto m = cesaro(SequenceWindow(w)).means;
    const auto lo = *std::min_element(w.begin(), w.end());
    const auto hi = *std::max_element(w.begin(), w.end());
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      CHECK(lo <= m[i]);
      CHECK(m[i] <= hi);
      sum += to_double(w[i]);
      CHECK(std::abs(sum / (i + 1) - to_double(m[i])) < 1e-12);
    }
  }
}

TEST_CASE("limit estimates") {
  auto alt = generalized_limit_estimate(SequenceWindow::periodic(rationals({0, 1})));
  CHECK(alt.status == LimitStatus::converged);
  CHECK(alt.analytic);
  CHECK(*alt.value == Rational(1, 2));
  CHECK(alt.liminf == 0);
  CHECK(alt.limsup == 1);

  auto nat = generalized_limit_estimate(SequenceWindow(rationals({1, 2, 3, 4, 5, 6, 7, 8})));
  CHECK(nat.status == LimitStatus::undetermined);
  CHECK_FALSE(nat.value.has_value());

  auto blocks = generalized_limit_estimate(SequenceWindow(growing_blocks(12)));
  CHECK(blocks.status == LimitStatus::undetermined);
  CHECK_FALSE(blocks.value.has_value());
  CHECK(blocks.mean_low < blocks.mean_high);
  CHECK(blocks.liminf <= blocks.limsup);
  CHECK(blocks.mean_low <= Rational(1, 2));
  CHECK(blocks.mean_high >= Rational(1, 2));

  auto flat = generalized_limit_estimate(SequenceWindow(rationals({9, 3, 3, 3, 3, 3, 3, 3})));
  CHECK(flat.status == LimitStatus::undetermined);
  auto settled = generalized_limit_estimate(SequenceWindow(rationals({3, 3, 3, 3})));
  CHECK(settled.status == LimitStatus::converged);
  CHECK(*settled.value == 3);

  std::vector<Rational> decay;
  for (int n = 1; n <= 10; ++n) decay.emplace_back(1, n);
  auto d = generalized_limit_estimate(SequenceWindow(decay, Tail{rationals({0})}));
  CHECK(*d.value == 0);
  CHECK(d.sup == 1);
  CHECK(d.inf == 0);
}

TEST_CASE("axioms on the declared-tail class") {
  auto one = SequenceWindow::constant(1);
  auto r1 = banach_axioms_check(one, one, 1, 1);
  CHECK(r1.all);
  CHECK(r1.lx == 1);

  auto alt = SequenceWindow::periodic(rationals({0, 1}));
  auto ra = banach_axioms_check(alt, one, 3, -2);
  CHECK(ra.all);
  CHECK(ra.lx == Rational(1, 2));
  CHECK(generalized_limit_estimate(shift(alt)).value == Rational(1, 2));

  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = random_periodic(rng);
    auto y = random_periodic(rng);
    const Rational a(static_cast<long long>(rng() % 9) - 4, 1 + rng() % 3);
    const Rational b(static_cast<long long>(rng() % 9) - 4, 1 + rng() % 3);
    auto r = banach_axioms_check(x, y, a, b);
    CHECK(r.all);
    // Exact: the linear combination's limit equals a L(x) + b L(y) with no slack.
    CHECK(*generalized_limit_estimate(combine(a, x, b, y)).value == a * r.lx + b * r.ly);
    CHECK(*generalized_limit_estimate(shift(x)).value == r.lx);
  }
}

TEST_CASE("baire bracket holds for undetermined inputs too") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> w;
    const int n = 1 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) w.emplace_back(static_cast<long long>(rng() % 7));
    auto e = generalized_limit_estimate(SequenceWindow(w));
    CHECK(e.inf <= e.liminf);
    CHECK(e.liminf <= e.limsup);
    CHECK(e.limsup <= e.sup);
    CHECK(e.inf <= e.mean_low);
    CHECK(e.mean_high <= e.sup);
  }
}

TEST_CASE("inputs outside the convergent class are rejected") {
  auto growing = SequenceWindow(growing_blocks(8));
  CHECK_THROWS_AS(banach_axioms_check(growing, SequenceWindow::constant(1), 1, 1), InvalidArgument);
}

TEST_CASE("sequence json") {
  auto x = sequence_from_json(R"({"window":[0,1,"1/3"],"tail":{"kind":"periodic","pattern":[0,1]}})");
  CHECK(x.size() == 3);
  CHECK(x.at(3) == Rational(1, 3));
  CHECK(x.at(5) == 1);
  CHECK_FALSE(x.floating());
  auto f = sequence_from_json(R"({"window":[0.5,0.25],"tail":{"kind":"constant","value":0.25,"from":2}})");
  CHECK(f.floating());
  CHECK(f.at(10) == Rational(1, 4));
  CHECK_THROWS_AS(sequence_from_json(R"({"window":[1,2],"tail":{"kind":"constant","value":1,"from":2}})"),
                  InvalidArgument);
  CHECK_THROWS_AS(sequence_from_json(R"({"window":[1],"tail":{"kind":"spiral"}})"), InvalidArgument);
  CHECK_THROWS_AS(sequence_from_json(R"({"window":[]})"), InvalidArgument);
  CHECK_THROWS_AS(sequence_from_json(R"({"window":[true]})"), InvalidArgument);
  auto rf = banach_axioms_check(f, SequenceWindow::constant(1), 2, 1);
  CHECK(rf.all);
}
