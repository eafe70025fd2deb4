#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condorcet/filters.hpp"

// Limits of an indexed family of subsets (E_i)_{i in I} of a finite universe
// E along a filter on I, in the discrete case.
namespace condorcet::setlimits {

using filters::FiniteFilter;
using filters::FiniteUltrafilter;

class SetFamily {
 public:
  // sets[i] is E_i as a mask over the universe {0..universe-1}.
  SetFamily(int universe, std::vector<Mask> sets);

  int universe() const { return universe_; }
  int index_count() const { return static_cast<int>(sets_.size()); }
  Mask set(int i) const { return sets_[i]; }
  const std::vector<Mask>& sets() const { return sets_; }

  std::vector<std::string> labels;  // names of universe elements

 private:
  int universe_;
  std::vector<Mask> sets_;
};

// {"universe": [...], "sets": {"0": [...], ...}} or "sets": [[...], ...].
SetFamily set_family_from_json(const std::string& text);
std::string to_json_text(const SetFamily& fam);

// I(x) = {i : x in E_i}.
Mask index_set(const SetFamily& fam, int x);

struct LimitPair {
  Mask liminf = 0;
  Mask limsup = 0;
  std::optional<Mask> lim;  // present iff liminf == limsup
};

// liminf = meet over J in grille(F) of the union of E_i, i in J;
// limsup = meet over J in F of the same unions. Cross-checked against
// dual_limits and membership_limits; a mismatch throws std::logic_error.
LimitPair set_limits(const SetFamily& fam, const FiniteFilter& f);

// liminf = join over J in F of the meet of E_i, i in J;
// limsup = join over J in grille(F) of the same meets.
LimitPair dual_limits(const SetFamily& fam, const FiniteFilter& f);

// x in liminf iff I(x) in F; x in limsup iff I(x) in grille(F).
LimitPair membership_limits(const SetFamily& fam, const FiniteFilter& f);

// lim along an ultrafilter.
Mask limit_along(const SetFamily& fam, const FiniteUltrafilter& u);

// I[F,M] = {i : F n M = F n E_i}, with F a subset of the universe.
Mask i_bracket(const SetFamily& fam, Mask f_set, Mask m);

// The same set as an intersection: I(x) for x in F n L, I \ I(x) for x in F \ L.
Mask i_bracket_decomposed(const SetFamily& fam, Mask f_set, Mask l);

inline constexpr int kMaxLemmaUniverse = 20;

// I[F, lim_U] in U for every F subset of the universe.
bool limit_lemma_check(const SetFamily& fam, const FiniteUltrafilter& u);

// |I[F, D]| >= q for every F subset of the universe: the finite stand-in for
// "I[F,D] is as large as I".
bool is_diagonal_truncated(Mask d, const SetFamily& fam, int q);

// lim_U is a diagonal at threshold 1.
bool limit_is_diagonal_check(const SetFamily& fam, const FiniteUltrafilter& u);

}  // namespace condorcet::setlimits
