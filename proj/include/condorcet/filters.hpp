#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condorcet/subsets.hpp"

// Filters, ultrafilters and grilles on a finite index set I = {0..k-1}.
namespace condorcet::filters {

inline constexpr int kMaxFilterGround = 24;
inline constexpr int kMaxEnumerateGround = 16;

// Nonempty, without the empty set, upward closed and closed under pairwise
// intersection.
bool is_filter_family(const SubsetFamily& sets);

class FiniteFilter {
 public:
  // Throws InvalidArgument unless `sets` is a filter on {0..k-1}.
  explicit FiniteFilter(SubsetFamily sets);
  // Smallest filter containing every generator; {I} for no generators.
  static FiniteFilter generated_by(int ground, const std::vector<Mask>& generators);

  int ground_size() const { return sets_.ground_size(); }
  const SubsetFamily& sets() const { return sets_; }
  bool contains(Mask x) const { return sets_.contains(x); }
  // Intersection of all members; the filter is exactly its supersets.
  Mask kernel() const { return kernel_; }
  bool is_ultrafilter() const { return popcount(kernel_) == 1; }
  // Every member of `coarser` belongs to this filter.
  bool is_finer_than(const FiniteFilter& coarser) const;

  bool operator==(const FiniteFilter& other) const { return sets_ == other.sets_; }

 private:
  SubsetFamily sets_;
  Mask kernel_ = 0;
};

class FiniteUltrafilter {
 public:
  // Throws InvalidArgument unless `sets` is a filter holding exactly one of X,
  // I \ X for every X.
  explicit FiniteUltrafilter(SubsetFamily sets);
  explicit FiniteUltrafilter(const FiniteFilter& f);

  int ground_size() const { return filter_.ground_size(); }
  const SubsetFamily& sets() const { return filter_.sets(); }
  const FiniteFilter& filter() const { return filter_; }
  bool contains(Mask x) const { return filter_.contains(x); }
  // The unique x with U = {X : x in X}.
  int point() const;

  bool operator==(const FiniteUltrafilter& other) const { return filter_ == other.filter_; }

 private:
  FiniteFilter filter_;
};

FiniteUltrafilter principal(int ground, int x);

// Every filter on {0..k-1} (one per nonempty kernel), ascending by kernel mask.
std::vector<FiniteFilter> enumerate_filters(int ground);

// Every filter tested against the exactly-one-of-X-and-complement law; on a
// finite ground only the principal ones pass.
std::vector<FiniteUltrafilter> enumerate_ultrafilters(int ground);

class Grille {
 public:
  Grille(int ground, SubsetFamily sets) : ground_(ground), sets_(std::move(sets)) {}
  int ground_size() const { return ground_; }
  const SubsetFamily& sets() const { return sets_; }
  bool contains(Mask y) const { return sets_.contains(y); }

 private:
  int ground_;
  SubsetFamily sets_;
};

// All Y meeting every member of F.
Grille grille(const FiniteFilter& f);

// The ultrafilters containing F, ascending by point.
std::vector<FiniteUltrafilter> finer_ultrafilters(const FiniteFilter& f);

// One assembly of a Grimeisen sum: global members listed so that local index
// t is global element members[t], with an ultrafilter on the local indices.
struct SumPart {
  std::vector<int> members;
  FiniteUltrafilter ultra;
};

// On the disjoint union of the parts (which must cover {0..n-1}): K is
// efficacious iff {p : K n I_p in U_p} is in the master ultrafilter.
FiniteUltrafilter grimeisen_sum(const FiniteUltrafilter& master, const std::vector<SumPart>& parts);

// Pair (i, j) of I x J is element i * |J| + j.
inline int pair_index(int i, int j, int j_size) { return i * j_size + j; }

// K efficacious iff {j : {i : (i,j) in K} in U} is in V.
FiniteUltrafilter ordinal_product(const FiniteUltrafilter& u, const FiniteUltrafilter& v);

// The same product rebuilt as a Grimeisen sum over the horizontal slices
// I_j = I x {j}, with master V.
FiniteUltrafilter ordinal_product_by_slices(const FiniteUltrafilter& u, const FiniteUltrafilter& v);

// Image of a family on I x J under (i, j) -> (j, i), as a family on J x I.
SubsetFamily transpose(const SubsetFamily& family, int i_size, int j_size);

// {X : |I \ X| < |I|}, i.e. the nonempty subsets on a finite ground. A filter
// only on a singleton.
SubsetFamily cofinite_like_family(int ground);

// The only filter whose members all have the cardinality of I is {I}.
FiniteFilter uniform_filter(int ground);
// Uniform ultrafilters exist on a finite ground only when it is a singleton.
bool has_uniform_ultrafilter(int ground);

// {"ground": k, "sets": [[...], ...]}
std::string to_json_text(const SubsetFamily& family);
SubsetFamily family_from_json_text(const std::string& text);

}  // namespace condorcet::filters
