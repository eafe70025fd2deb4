#pragma once

#include <cstdint>
#include <string>
#include <vector>

// The fixed verification suites behind `condorcet verify all`.
namespace condorcet::verify {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

SuiteResult ultrafilter_equivalence();
SuiteResult guilbaud();
SuiteResult condorcet_probability();
SuiteResult historical_examples();
SuiteResult separation();
SuiteResult main_theorem();
SuiteResult fano();
SuiteResult los_suite(std::uint64_t seed);
SuiteResult set_limits_suite();
SuiteResult additive_diagonal();
SuiteResult topology_preorder();
SuiteResult banach_suite(std::uint64_t seed);

// All twelve, in id order.
std::vector<SuiteResult> run_all(std::uint64_t seed = kDefaultSeed);

}  // namespace condorcet::verify
