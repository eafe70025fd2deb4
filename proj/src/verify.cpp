#include "condorcet/verify.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "condorcet/additive.hpp"
#include "condorcet/banach.hpp"
#include "condorcet/coalitions.hpp"
#include "condorcet/fintop.hpp"
#include "condorcet/los.hpp"
#include "condorcet/profiles.hpp"
#include "condorcet/setlimits.hpp"

namespace condorcet::verify {

namespace {

using coalitions::Condition;
using coalitions::VotingSystem;
using profiles::Ballot;
using profiles::Profile;
using profiles::Ranking;

SuiteResult timed(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  SuiteResult r;
  r.id = id;
  r.name = name;
  std::ostringstream detail;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.passed = body(detail);
  } catch (const std::exception& e) {
    r.passed = false;
    detail << "exception: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.detail = detail.str();
  return r;
}

// Orders of {0,1,2} by label 1..6.
const std::array<std::vector<int>, 6> kLabelOrders = {{
    {0, 1, 2}, {0, 2, 1}, {2, 0, 1}, {2, 1, 0}, {1, 2, 0}, {1, 0, 2},
}};

Profile from_labels(const std::vector<int>& labels) {
  std::vector<Ranking> rs;
  for (int l : labels) rs.emplace_back(kLabelOrders[l - 1]);
  return Profile::from_rankings(3, rs);
}

Profile weighted_profile(const std::vector<std::pair<std::vector<int>, int>>& ballots) {
  std::vector<Ballot> bs;
  for (const auto& [order, count] : ballots) bs.push_back({Ranking(order), count});
  return Profile({"A", "B", "C"}, bs);
}

}  // namespace

SuiteResult ultrafilter_equivalence() {
  return timed(1, "ultrafilter equivalence", [](std::ostringstream& out) {
    long long families = 0, discrepancies = 0, ultrafilters = 0;
    for (int n = 1; n <= 4; ++n) {
      const std::uint64_t count = std::uint64_t{1} << (1U << n);
      for (std::uint64_t bits = 0; bits < count; ++bits) {
        VotingSystem vs(coalitions::Assembly(n), SubsetFamily::from_bits(n, bits));
        const bool c = coalitions::is_ultrafilter(vs);
        const bool u = check_condition(vs, Condition::U1) && check_condition(vs, Condition::U2);
        ++families;
        ultrafilters += c;
        discrepancies += c != u;
      }
    }
    out << families << " families, " << ultrafilters << " ultrafilters, " << discrepancies << " discrepancies";
    return discrepancies == 0 && ultrafilters == 1 + 2 + 3 + 4;
  });
}

SuiteResult guilbaud() {
  return timed(2, "guilbaud", [](std::ostringstream& out) {
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
      auto r = coalitions::guilbaud_report(n);
      out << (n > 1 ? "; " : "") << "n=" << n << ": " << r.systems << " systems, " << r.dictatorial
          << " dictatorial";
      ok = ok && r.holds && r.kernel_is_efficacious_singleton && r.dictatorial == r.systems &&
           r.systems == static_cast<std::size_t>(n);
    }
    return ok;
  });
}

SuiteResult condorcet_probability() {
  SuiteResult r = timed(3, "condorcet probability", [](std::ostringstream& out) {
    const Rational p = profiles::cycle_probability(3);
    out << "P(cycle, 3 voters) = " << to_string(p);
    return p == Rational(1, 18) && p == Rational(12, 216);
  });
  if (r.seconds >= 1.0) {
    r.passed = false;
    r.detail += " (too slow)";
  }
  return r;
}

SuiteResult historical_examples() {
  return timed(4, "historical examples", [](std::ostringstream& out) {
    using profiles::ElectionMethod;
    const auto ex1 = weighted_profile({{{0, 2, 1}, 23}, {{1, 2, 0}, 19}, {{2, 1, 0}, 16}, {{2, 0, 1}, 2}});
    const auto plurality = run_election(ex1, ElectionMethod::Plurality);
    const auto two_round = run_election(ex1, ElectionMethod::TwoRound);
    const auto pairwise = run_election(ex1, ElectionMethod::Pairwise);
    const auto& t1 = pairwise.tally;
    bool ok = plurality.winner == 0 && plurality.first_place[0] == 23;
    ok = ok && two_round.winner == 1 && two_round.runoff_votes && two_round.runoff_votes->second == 35 &&
         two_round.runoff_votes->first == 25;
    ok = ok && pairwise.ranking == std::vector<int>{2, 1, 0} && t1[1][0] == 35 && t1[2][1] == 41 && t1[2][0] == 37;
    out << "example 1: plurality A " << plurality.first_place[0] << ", two-round B "
        << (two_round.runoff_votes ? two_round.runoff_votes->second : -1) << ", pairwise C>B>A " << t1[1][0] << "/"
        << t1[2][1] << "/" << t1[2][0];

    const auto ex2 =
        weighted_profile({{{0, 1, 2}, 23}, {{1, 2, 0}, 17}, {{1, 0, 2}, 2}, {{2, 1, 0}, 8}, {{2, 0, 1}, 10}});
    const auto cyc = run_election(ex2, ElectionMethod::Pairwise);
    const auto& t2 = cyc.tally;
    ok = ok && cyc.cycle == std::vector<int>{0, 1, 2} && !cyc.winner && t2[0][1] == 33 && t2[1][2] == 42 &&
         t2[2][0] == 35;
    out << "; example 2: cycle A>B>C>A " << t2[0][1] << "/" << t2[1][2] << "/" << t2[2][0];
    return ok;
  });
}

SuiteResult separation() {
  return timed(5, "S/T/V separation", [](std::ostringstream& out) {
    using profiles::ProfileCondition;
    const auto maj = coalitions::make_majority(5);
    const auto p1 = from_labels({1, 1, 1, 3, 5});
    const auto p2 = from_labels({1, 2, 3, 4, 5});
    const bool t1 = check_profile_condition(p1, maj, ProfileCondition::T);
    const bool s1 = check_profile_condition(p1, maj, ProfileCondition::S);
    const bool v2 = check_profile_condition(p2, maj, ProfileCondition::V);
    const bool t2 = check_profile_condition(p2, maj, ProfileCondition::T);
    const auto rep = profiles::coherence_theorem_check(p2, maj);
    out << "labels 1,1,1,3,5: T=" << t1 << " S=" << s1 << "; labels 1..5: V=" << v2 << " T=" << t2
        << " coherent=" << rep.coherent;
    return t1 && !s1 && v2 && !t2 && rep.coherent;
  });
}

SuiteResult main_theorem() {
  SuiteResult r = timed(6, "main theorem", [](std::ostringstream& out) {
    long long checked = 0, violations = 0;
    for (int n = 1; n <= 4; ++n) {
      const auto systems = coalitions::enumerate_systems(n, {Condition::C1, Condition::C2});
      int total = 1;
      for (int i = 0; i < n; ++i) total *= 6;
      for (int code = 0; code < total; ++code) {
        std::vector<int> labels;
        for (int c = code, v = 0; v < n; ++v, c /= 6) labels.push_back(c % 6 + 1);
        const auto p = from_labels(labels);
        for (const auto& vs : systems) {
          const auto rel = profiles::collective_relation(p, vs);
          const bool acyclic = !profiles::find_cycle(rel).has_value();
          const auto rep = profiles::coherence_theorem_check(p, vs);
          const bool ok = rep.v == acyclic && rep.coherent == acyclic && (!rep.s || rep.t) && (!rep.t || rep.v);
          violations += !ok;
          ++checked;
        }
      }
    }
    out << checked << " (profile, system) pairs, " << violations << " violations";
    return violations == 0 && checked == 6 + 72 + 864 + 15552;
  });
  if (r.seconds >= 300) r.passed = false;
  return r;
}

SuiteResult fano() {
  return timed(7, "fano", [](std::ostringstream& out) {
    const auto f = coalitions::make_fano();
    const bool c1 = check_condition(f, Condition::C1);
    const bool c2 = check_condition(f, Condition::C2);
    const bool c3 = check_condition(f, Condition::C3);
    const bool dictator = coalitions::find_dictator(f).has_value();
    const bool weighted = coalitions::weight_representable(f).has_value();
    out << "C1=" << c1 << " C2=" << c2 << " C3=" << c3 << " dictator=" << (dictator ? "yes" : "none")
        << " weights=" << (weighted ? "yes" : "none");
    return c1 && c2 && !c3 && !dictator && !weighted;
  });
}

SuiteResult los_suite(std::uint64_t seed) {
  return timed(8, "los", [seed](std::ostringstream& out) {
    const auto r = los::run_los_suite(seed, 200);
    out << r.agreements << "/" << r.instances << " truth lemma, " << r.transfer_agreements << "/"
        << r.transfer_checks << " transfer";
    return r.instances == 200 && r.agreements == 200 && r.transfer_checks > 0 &&
           r.transfer_agreements == r.transfer_checks;
  });
}

SuiteResult set_limits_suite() {
  return timed(9, "set limits", [](std::ostringstream& out) {
    using namespace setlimits;
    long long cases = 0, failures = 0;
    for (int n = 1; n <= 3; ++n) {
      const auto fs = filters::enumerate_filters(n);
      for (int universe = 1; universe <= 4; ++universe) {
        const Mask all = full_mask(universe);
        std::vector<Mask> sets(n, 0);
        while (true) {
          const SetFamily fam(universe, sets);
          for (const auto& f : fs) {
            ++cases;
            bool ok = true;
            const auto p = set_limits(fam, f);  // throws if the three forms disagree
            ok = ok && is_subset(p.liminf, p.limsup);
            for (const auto& f2 : fs) {
              if (!f2.is_finer_than(f)) continue;
              const auto q = set_limits(fam, f2);
              ok = ok && is_subset(p.liminf, q.liminf) && is_subset(q.limsup, p.limsup);
            }
            if (f.is_ultrafilter()) {
              const filters::FiniteUltrafilter u(f);
              ok = ok && p.lim.has_value() && limit_lemma_check(fam, u);
            }
            failures += !ok;
          }
          int k = 0;
          while (k < n && sets[k] == all) sets[k++] = 0;
          if (k == n) break;
          ++sets[k];
        }
      }
    }
    out << cases << " (family, filter) cases, " << failures << " failures";
    return failures == 0;
  });
}

SuiteResult additive_diagonal() {
  return timed(10, "additive diagonal", [](std::ostringstream& out) {
    const auto fam = additive::half_interval_family({4, 8, 16, 32, 64});
    const auto d = additive::build_diagonal(fam, 16);
    const auto v = additive::validate_diagonal(fam, 16, d);
    out << "|D|=" << d.d.size() << ", N'=" << v.n_prime << ", s(D)=" << v.s_d << " <= " << v.s_bound;
    return d.ok && v.ok;
  });
}

SuiteResult topology_preorder() {
  return timed(11, "topology/preorder", [](std::ostringstream& out) {
    bool ok = true;
    for (int k = 1; k <= 3; ++k) {
      const auto c = fintop::count_correspondence(k);
      out << (k > 1 ? ", " : "") << "k=" << k << ": " << c.topologies << "=" << c.preorders;
      ok = ok && c.equal;
      for (const auto& t : fintop::enumerate_topologies(k)) ok = ok && fintop::topo_of(fintop::nasse_of(t)) == t;
      for (const auto& p : fintop::enumerate_preorders(k)) ok = ok && fintop::nasse_of(fintop::topo_of(p)) == p;
    }
    int agree = 0, total = 0;
    for (const auto& t : fintop::enumerate_topologies(3)) {
      ++total;
      agree += fintop::normality_check(t).agree;
    }
    out << "; normality agrees on " << agree << "/" << total;
    return ok && agree == total && total == 29;
  });
}

SuiteResult banach_suite(std::uint64_t seed) {
  return timed(12, "banach", [seed](std::ostringstream& out) {
    using banach::SequenceWindow;
    const auto alt = SequenceWindow::periodic({0, 1});
    const auto half = banach::generalized_limit_estimate(alt);
    bool ok = half.value == Rational(1, 2);
    std::mt19937_64 rng(seed);
    auto rnd = [&] { return Rational(static_cast<long long>(rng() % 11) - 5, 1 + static_cast<long long>(rng() % 4)); };
    int passed = 0;
    const int trials = 200;
    for (int i = 0; i < trials; ++i) {
      auto make = [&] {
        std::vector<Rational> w(1 + rng() % 5), p(1 + rng() % 4);
        for (auto& v : w) v = rnd();
        for (auto& v : p) v = rnd();
        return SequenceWindow(w, banach::Tail{p});
      };
      const auto x = make();
      const auto y = make();
      const auto r = banach::banach_axioms_check(x, y, rnd(), rnd());
      passed += r.all;
    }
    const auto r1 = banach::banach_axioms_check(alt, SequenceWindow::constant(1), 1, 1);
    out << "alternating 0/1 -> " << to_string(*half.value) << ", axioms " << passed << "/" << trials;
    return ok && r1.all && passed == trials;
  });
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  return {ultrafilter_equivalence(), guilbaud(),   condorcet_probability(), historical_examples(),
          separation(),              main_theorem(), fano(),                 los_suite(seed),
          set_limits_suite(),        additive_diagonal(), topology_preorder(), banach_suite(seed)};
}

}  // namespace condorcet::verify
