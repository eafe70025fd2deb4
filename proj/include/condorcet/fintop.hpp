#pragma once

#include <string>
#include <vector>

#include "condorcet/subsets.hpp"

// Finite topologies and their specialization preorders.
namespace condorcet::fintop {

inline constexpr int kMaxPoints = 16;
inline constexpr int kMaxCountPoints = 4;
inline constexpr int kMaxNormalityPoints = 5;

// Relation on {0..k-1} as rows: rows[x] = {y : x R y}.
using Relation = std::vector<Mask>;

// Diagrammatic: x (a;b) z iff x a y and y b z for some y.
Relation compose(const Relation& a, const Relation& b);
Relation converse(const Relation& r);
bool included(const Relation& a, const Relation& b);

class Preorder {
 public:
  // Throws InvalidArgument unless reflexive and transitive.
  Preorder(int k, Relation rows);
  static Preorder from_matrix(const std::vector<std::vector<int>>& m);

  int size() const { return k_; }
  bool related(int x, int y) const { return has(rows_[x], y); }
  const Relation& rows() const { return rows_; }
  std::vector<std::vector<int>> matrix() const;

  bool operator==(const Preorder&) const = default;

 private:
  int k_;
  Relation rows_;
};

class FiniteTopology {
 public:
  // Throws InvalidArgument unless the family holds the empty and full sets
  // and is closed under pairwise union and intersection.
  FiniteTopology(int k, SubsetFamily opens);
  static FiniteTopology from_opens(int k, const std::vector<Mask>& opens);
  static FiniteTopology discrete(int k);
  static FiniteTopology indiscrete(int k);

  int size() const { return k_; }
  const SubsetFamily& opens() const { return opens_; }
  bool is_open(Mask s) const { return opens_.contains(s); }
  bool is_closed(Mask s) const { return opens_.contains(full_mask(k_) & ~s); }
  Mask closure(Mask s) const;
  Mask smallest_open(Mask s) const;  // intersection of the opens containing s

  bool operator==(const FiniteTopology&) const = default;

 private:
  int k_;
  SubsetFamily opens_;
};

// x T y iff every open containing x contains y.
Preorder nasse_of(const FiniteTopology& t);
// Opens are the sets U with x in U and x T y implying y in U.
FiniteTopology topo_of(const Preorder& p);

// Both enumerations are literal: families of subsets checked for closure,
// and relation matrices checked for reflexivity and transitivity.
std::vector<FiniteTopology> enumerate_topologies(int k);
std::vector<Preorder> enumerate_preorders(int k);

struct CorrespondenceCount {
  int k = 0;
  long long topologies = 0;
  long long preorders = 0;
  bool equal = false;
};
CorrespondenceCount count_correspondence(int k);

struct NormalityReport {
  bool normal_direct = false;   // disjoint closed sets have disjoint open neighbourhoods
  bool nasse_condition = false; // T;T^-1 included in T^-1;T
  bool agree = false;
  bool extremal_direct = false;     // closure of every open is open
  bool extremal_condition = false;  // T^-1;T included in T;T^-1
  bool extremal_agree = false;
};
NormalityReport normality_check(const FiniteTopology& t);

// {"points": 3, "opens": [[], [0], [0,1,2]]}
FiniteTopology topology_from_json(const std::string& text);
std::string to_json_text(const FiniteTopology& t);

}  // namespace condorcet::fintop
