#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "condorcet/filters.hpp"
#include "condorcet/formula.hpp"
#include "condorcet/structures.hpp"

// Finite ultraproducts and the truth lemma. An indexed family is a list of
// structures over a common signature, indexed by I = {0..|I|-1}.
namespace condorcet::los {

using Family = std::vector<Structure>;
// One element of the i-th structure per index i.
using IndexedChoice = std::vector<int>;
using Choices = std::map<std::string, IndexedChoice>;

inline constexpr std::size_t kMaxProductSize = 4096;

// V(phi) = {i : phi holds in structure i under the i-th coordinates}.
Mask truth_set(const Family& family, const Formula& phi, const Choices& choices);

// truth_set is a member of U.
bool holds_along(const filters::FiniteUltrafilter& u, const Family& family, const Formula& phi,
                 const Choices& choices);

// x and y agree on a member of U.
bool equivalent_mod(const filters::FiniteUltrafilter& u, const IndexedChoice& x, const IndexedChoice& y);

struct Ultraproduct {
  Structure quotient;
  // Least member (in product order, index 0 most significant) of each class.
  std::vector<IndexedChoice> representatives;
  // quotient element -> element of the factor at the ultrafilter's point.
  std::vector<int> isomorphism;

  int class_of(const filters::FiniteUltrafilter& u, const IndexedChoice& x) const;
};

// Product of the universes divided by equivalence mod U. Throws ResourceLimit
// when the product exceeds kMaxProductSize elements.
Ultraproduct ultraproduct(const Family& family, const filters::FiniteUltrafilter& u);

struct LosReport {
  bool lhs = false;  // truth in the ultraproduct
  bool rhs = false;  // truth along U
  bool agree = false;
  // Every subformula visited agreed, and every existential step satisfied
  // W subset of V(T;c) for the completed witness c and V(T;c') subset of W
  // for every collective choice c'.
  bool induction_ok = false;
  int subformulas_checked = 0;
  int existential_steps = 0;
};

// Witnesses are completed with the least element of the universe where
// the existential fails.
LosReport los_verify(const Family& family, const filters::FiniteUltrafilter& u, const Formula& phi,
                     const Choices& choices);

struct LosInstance {
  Family family;
  filters::FiniteUltrafilter ultra;
  Formula formula;
  Choices choices;
};

// Signature {P/1, R/2}; free variables among x, y. Only rng() is consumed,
// so instances are reproducible across standard libraries.
LosInstance random_los_instance(std::mt19937_64& rng, int max_index, int max_universe, int max_height);

struct LosSuiteResult {
  int instances = 0;
  int agreements = 0;
  int transfer_checks = 0;
  int transfer_agreements = 0;
};

// Random instances plus the transfer check (sentences on constant families).
LosSuiteResult run_los_suite(std::uint64_t seed, int instances);

}  // namespace condorcet::los
