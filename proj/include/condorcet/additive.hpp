#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Interval bases, representation counts and prefix diagonals in (N, +).
namespace condorcet::additive {

// Sorted, duplicate-free finite set of naturals.
using IntSet = std::vector<int>;

IntSet make_set(std::vector<int> values);

// B subset of [0,m] and [0,m] subset of B + B.
bool is_interval_basis(const IntSet& b, int m);

// r(A,n): ordered pairs (x, y) of A with x + y = n.
std::int64_t rep_count(const IntSet& a, int n);
// max of r(A,n) over 0 <= n <= horizon.
std::int64_t s_max(const IntSet& a, int horizon);

// B_m for m in a finite sample M; every B_m is an interval basis of [0,m].
class IntervalBasisFamily {
 public:
  explicit IntervalBasisFamily(std::map<int, IntSet> bases);
  const std::map<int, IntSet>& bases() const { return bases_; }
  int max_m() const { return bases_.rbegin()->first; }
  // max over m of s_max(B_m, m)
  std::int64_t s_bound() const;

 private:
  std::map<int, IntSet> bases_;
};

// {"bases": {"4": [0,1,2], ...}}
IntervalBasisFamily basis_family_from_json(const std::string& text);
std::string to_json_text(const IntervalBasisFamily& fam);

// B_m = [0, ceil(m/2)] for each m.
IntervalBasisFamily half_interval_family(const std::vector<int>& sample);

// Survivor rule for prefix patterns at depth n: while n <= horizon/2 a
// pattern needs early_witnesses members (capped at |M|) with m >= early_factor*n;
// afterwards one member with m >= n.
struct DiagonalOptions {
  int early_witnesses = 2;
  int early_factor = 2;
};

struct DiagonalResult {
  bool ok = false;
  int depth_reached = -1;   // deepest level with a surviving pattern
  IntSet d;                 // subset of [0, horizon]
  // witnesses[n]: every m >= n with B_m n [0,n] = D n [0,n].
  std::vector<std::vector<int>> witnesses;
  std::string message;
};

// Breadth-first search over prefix patterns; among the survivors at the
// horizon the pattern that contains the smaller element first wins (patterns
// compared position by position, membership before absence).
DiagonalResult build_diagonal(const IntervalBasisFamily& fam, int horizon, const DiagonalOptions& opt = {});

struct DiagonalValidation {
  bool witnesses_ok = false;  // each listed m is in M, m >= n, prefixes agree; lists nonempty
  int n_prime = -1;           // largest N' with a witness m >= n at every n <= N'
  bool covers = false;        // [0, N'] subset of D + D
  std::int64_t s_d = 0;       // s_max(D, N')
  std::int64_t s_bound = 0;   // max over m of s_max(B_m, m)
  bool bound_ok = false;
  bool ok = false;
};

// Independent re-check of a built diagonal.
DiagonalValidation validate_diagonal(const IntervalBasisFamily& fam, int horizon, const DiagonalResult& r);

}  // namespace condorcet::additive
