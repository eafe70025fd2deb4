#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "condorcet/rational.hpp"
#include "condorcet/subsets.hpp"

// Generalized voting systems on finite assemblies.
//
// A voting system is an explicit family E of "efficacious" coalitions. The
// conditions checked here are
//   C1  K in E  <=>  complement(K) not in E
//   C2  K in E, K subset of L  =>  L in E        (upward closure)
//   C3  K, L in E  =>  K n L in E
//   U1  E nonempty, empty set not in E, and  K n L in E <=> (K in E and L in E)
//   U2  K u L in E <=> (K in E or L in E)
// C1+C2+C3 and U1+U2 are both definitions of an ultrafilter on the assembly.
namespace condorcet::coalitions {

inline constexpr int kMaxAssembly = 24;

class Assembly {
 public:
  explicit Assembly(int size);
  int size() const { return n_; }
  Mask everyone() const { return full_mask(n_); }
  bool operator==(const Assembly&) const = default;

 private:
  int n_;
};

class Coalition {
 public:
  Coalition(Assembly assembly, Mask members);
  Coalition(Assembly assembly, const std::vector<int>& members);

  Mask members() const { return members_; }
  const Assembly& assembly() const { return assembly_; }
  int size() const { return popcount(members_); }
  bool contains(int member) const { return has(members_, member); }
  std::vector<int> member_list() const { return members_of(members_); }

  bool operator==(const Coalition&) const = default;

 private:
  Assembly assembly_;
  Mask members_;
};

Coalition complement(const Coalition& c);

enum class Condition { C1, C2, C3, U1, U2 };

std::string to_string(Condition c);
Condition parse_condition(const std::string& name);

class VotingSystem {
 public:
  VotingSystem(Assembly assembly, SubsetFamily efficacious);
  VotingSystem(Assembly assembly, const std::vector<Coalition>& efficacious);

  const Assembly& assembly() const { return assembly_; }
  int size() const { return assembly_.size(); }
  const SubsetFamily& family() const { return efficacious_; }
  bool is_efficacious(Mask k) const { return efficacious_.contains(k); }
  bool is_efficacious(const Coalition& k) const { return efficacious_.contains(k.members()); }
  std::size_t efficacious_count() const { return efficacious_.count(); }
  std::vector<Coalition> efficacious() const;

  bool operator==(const VotingSystem&) const = default;

 private:
  Assembly assembly_;
  SubsetFamily efficacious_;
};

bool check_condition(const VotingSystem& vs, Condition cond);
bool is_ultrafilter(const VotingSystem& vs);
std::optional<int> find_dictator(const VotingSystem& vs);

VotingSystem make_majority(int n, std::optional<int> chair = std::nullopt);
VotingSystem make_dictator(int n, int dictator);

// The seven-point projective plane: K is efficacious iff |K| >= 5 or K
// contains a line.
VotingSystem make_fano();
const std::vector<std::vector<int>>& fano_lines();

class WeightVector {
 public:
  explicit WeightVector(std::vector<Rational> weights);
  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<Rational>& values() const { return weights_; }
  Rational weight_of(Mask k) const;

 private:
  std::vector<Rational> weights_;
};

// K efficacious iff p(K) > p(K^c).
VotingSystem make_weighted(int n, const WeightVector& w);
// True when no coalition ties its complement.
bool weighted_is_valid(int n, const WeightVector& w);

inline constexpr int kMaxWeightAssembly = 10;

// Exact decision procedure: nonnegative rational weights reproducing vs, if any.
std::optional<WeightVector> weight_representable(const VotingSystem& vs);

// Systems on n members satisfying every condition in `required`, each once,
// in ascending order of the family's bit pattern (subset mask s <-> bit s).
void for_each_system(int n, const std::set<Condition>& required,
                     const std::function<void(const VotingSystem&)>& visit);
std::vector<VotingSystem> enumerate_systems(int n, const std::set<Condition>& required);

struct GuilbaudReport {
  int n = 0;
  std::size_t systems = 0;     // number of C1+C2+C3 systems found
  std::size_t dictatorial = 0;
  bool kernel_is_efficacious_singleton = true;
  bool holds = false;
};

GuilbaudReport guilbaud_report(int n);
bool guilbaud_verify(int n);

struct IncoherenceWitness {
  Coalition first;
  Coalition second;
  Coalition meet;
};

std::optional<IncoherenceWitness> incoherence_witness(const VotingSystem& vs);

// JSON: {"n": 3, "efficacious": [[0,1],[0,2],...]} in ascending mask order.
std::string to_json_text(const VotingSystem& vs);
VotingSystem voting_system_from_json_text(const std::string& text);

}  // namespace condorcet::coalitions
