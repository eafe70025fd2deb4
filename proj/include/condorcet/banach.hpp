#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condorcet/rational.hpp"

// Cesaro means and generalized limits on finitely described sequences.
namespace condorcet::banach {

// Values past the window repeat `pattern` forever; a constant tail is a
// pattern of length one.
struct Tail {
  std::vector<Rational> pattern;
};

// x_1..x_N, optionally followed by a declared tail. Floating inputs are stored
// exactly as the rationals their doubles denote, but are checked with a looser
// tolerance.
class SequenceWindow {
 public:
  SequenceWindow(std::vector<Rational> values, std::optional<Tail> tail = std::nullopt, bool floating = false);
  static SequenceWindow constant(const Rational& c);
  static SequenceWindow periodic(const std::vector<Rational>& pattern);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<Rational>& values() const { return values_; }
  const std::optional<Tail>& tail() const { return tail_; }
  bool floating() const { return floating_; }

  // 1-based; past the window only with a tail.
  Rational at(long long n) const;

 private:
  std::vector<Rational> values_;
  std::optional<Tail> tail_;
  bool floating_;
};

SequenceWindow shift(const SequenceWindow& x);
// a x + b y. With two tails the result has a tail of period lcm; otherwise it
// is cut to the shortest tail-less window.
SequenceWindow combine(const Rational& a, const SequenceWindow& x, const Rational& b, const SequenceWindow& y);

struct CesaroMeans {
  std::vector<Rational> means;     // t_n for n = 1..N
  std::optional<Rational> limit;   // period average when a tail is declared
};
CesaroMeans cesaro(const SequenceWindow& x);

enum class LimitStatus { converged, undetermined };
std::string to_string(LimitStatus s);

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kFloatTolerance = 1e-6;

struct LimitEstimate {
  LimitStatus status = LimitStatus::undetermined;
  std::optional<Rational> value;
  bool analytic = false;  // value comes from the declared tail
  // Sequence bounds: inf and sup over everything known, liminf and limsup
  // over the tail or, without one, over the last quarter of the window.
  Rational inf, liminf, limsup, sup;
  // Spread of the last quarter of the means.
  Rational mean_low, mean_high;
};
LimitEstimate generalized_limit_estimate(const SequenceWindow& x);

struct AxiomCheck {
  bool passed = false;
  bool applicable = true;
  std::string detail;
};

struct AxiomsReport {
  Rational lx, ly;
  AxiomCheck linearity, positivity, shift_invariance, normalization, sandwich;
  bool all = false;
};

// Throws InvalidArgument when x, y or a x + b y has no Cesaro limit here.
AxiomsReport banach_axioms_check(const SequenceWindow& x, const SequenceWindow& y, const Rational& a,
                                 const Rational& b);

// {"window":[0,1,"1/3",0.5], "tail":{"kind":"periodic","pattern":[0,1]}}
// or "tail":{"kind":"constant","value":2,"from":3}.
SequenceWindow sequence_from_json(const std::string& text);

}  // namespace condorcet::banach
