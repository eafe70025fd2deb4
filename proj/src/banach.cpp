#include "condorcet/banach.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet::banach {

using condorcet::to_string;

SequenceWindow::SequenceWindow(std::vector<Rational> values, std::optional<Tail> tail, bool floating)
    : values_(std::move(values)), tail_(std::move(tail)), floating_(floating) {
  if (values_.empty()) throw InvalidArgument("a sequence window needs at least one value");
  if (tail_ && tail_->pattern.empty()) throw InvalidArgument("a declared tail needs a nonempty pattern");
}

SequenceWindow SequenceWindow::constant(const Rational& c) { return SequenceWindow({c}, Tail{{c}}); }

SequenceWindow SequenceWindow::periodic(const std::vector<Rational>& pattern) {
  if (pattern.empty()) throw InvalidArgument("a periodic sequence needs a nonempty pattern");
  return SequenceWindow(pattern, Tail{pattern});
}

Rational SequenceWindow::at(long long n) const {
  if (n < 1) throw InvalidArgument("sequence indices start at 1");
  if (n <= size()) return values_[n - 1];
  if (!tail_) throw InvalidArgument("index " + std::to_string(n) + " is past a window with no declared tail");
  const auto& p = tail_->pattern;
  return p[(n - size() - 1) % static_cast<long long>(p.size())];
}

SequenceWindow shift(const SequenceWindow& x) {
  std::vector<Rational> v;
  if (x.tail()) {
    for (long long n = 2; n <= x.size() + 1; ++n) v.push_back(x.at(n));
    auto p = x.tail()->pattern;
    std::rotate(p.begin(), p.begin() + 1, p.end());
    return SequenceWindow(v, Tail{p}, x.floating());
  }
  if (x.size() < 2) throw InvalidArgument("shifting a one-value window with no tail leaves nothing");
  v.assign(x.values().begin() + 1, x.values().end());
  return SequenceWindow(v, std::nullopt, x.floating());
}

SequenceWindow combine(const Rational& a, const SequenceWindow& x, const Rational& b, const SequenceWindow& y) {
  const bool floating = x.floating() || y.floating();
  int n = std::max(x.size(), y.size());
  if (!x.tail()) n = std::min(n, x.size());
  if (!y.tail()) n = std::min(n, y.size());
  std::vector<Rational> v;
  for (long long i = 1; i <= n; ++i) v.push_back(a * x.at(i) + b * y.at(i));
  if (!x.tail() || !y.tail()) return SequenceWindow(v, std::nullopt, floating);
  const long long period = std::lcm<long long>(x.tail()->pattern.size(), y.tail()->pattern.size());
  std::vector<Rational> p;
  for (long long j = 1; j <= period; ++j) p.push_back(a * x.at(n + j) + b * y.at(n + j));
  return SequenceWindow(v, Tail{p}, floating);
}

CesaroMeans cesaro(const SequenceWindow& x) {
  CesaroMeans c;
  Rational sum = 0;
  for (int n = 1; n <= x.size(); ++n) {
    sum += x.values()[n - 1];
    c.means.push_back(sum / n);
  }
  if (x.tail()) {
    const auto& p = x.tail()->pattern;
    c.limit = std::accumulate(p.begin(), p.end(), Rational(0)) / static_cast<long long>(p.size());
  }
  return c;
}

std::string to_string(LimitStatus s) { return s == LimitStatus::converged ? "converged" : "undetermined"; }

LimitEstimate generalized_limit_estimate(const SequenceWindow& x) {
  LimitEstimate e;
  const auto& w = x.values();
  const auto c = cesaro(x);
  e.inf = *std::min_element(w.begin(), w.end());
  e.sup = *std::max_element(w.begin(), w.end());
  const int q = (x.size() + 3) / 4;
  e.mean_low = *std::min_element(c.means.end() - q, c.means.end());
  e.mean_high = *std::max_element(c.means.end() - q, c.means.end());
  if (x.tail()) {
    const auto& p = x.tail()->pattern;
    e.liminf = *std::min_element(p.begin(), p.end());
    e.limsup = *std::max_element(p.begin(), p.end());
    e.inf = std::min(e.inf, e.liminf);
    e.sup = std::max(e.sup, e.limsup);
    e.value = c.limit;
    e.analytic = true;
    e.status = LimitStatus::converged;
    e.mean_low = e.mean_high = *c.limit;
    return e;
  }
  e.liminf = *std::min_element(w.end() - q, w.end());
  e.limsup = *std::max_element(w.end() - q, w.end());
  if (e.mean_high - e.mean_low <= Rational(kExactTolerance)) {
    e.status = LimitStatus::converged;
    e.value = c.means.back();
  }
  return e;
}

namespace {

Rational tolerance_for(bool floating) { return Rational(floating ? kFloatTolerance : kExactTolerance); }

bool close(const Rational& a, const Rational& b, const Rational& tol) { return abs(a - b) <= tol; }

Rational limit_or_reject(const SequenceWindow& x, const char* what) {
  auto e = generalized_limit_estimate(x);
  if (e.status != LimitStatus::converged)
    throw InvalidArgument(std::string(what) + " has no Cesaro limit on its window; the axioms are only checked on "
                          "the convergent class");
  return *e.value;
}

bool nonnegative(const SequenceWindow& x) {
  for (const auto& v : x.values())
    if (v < 0) return false;
  if (x.tail())
    for (const auto& v : x.tail()->pattern)
      if (v < 0) return false;
  return true;
}

AxiomCheck sandwich_of(const SequenceWindow& x, const Rational& tol) {
  const auto e = generalized_limit_estimate(x);
  const Rational& l = *e.value;
  AxiomCheck c;
  c.passed = e.inf <= e.liminf + tol && e.liminf <= l + tol && l <= e.limsup + tol && e.limsup <= e.sup + tol;
  c.detail = to_string(e.inf) + " <= " + to_string(e.liminf) + " <= " + to_string(l) + " <= " +
             to_string(e.limsup) + " <= " + to_string(e.sup);
  return c;
}

}  // namespace

AxiomsReport banach_axioms_check(const SequenceWindow& x, const SequenceWindow& y, const Rational& a,
                                 const Rational& b) {
  const Rational tol = tolerance_for(x.floating() || y.floating());
  AxiomsReport r;
  r.lx = limit_or_reject(x, "x");
  r.ly = limit_or_reject(y, "y");
  const Rational lc = limit_or_reject(combine(a, x, b, y), "a x + b y");
  r.linearity.passed = close(lc, a * r.lx + b * r.ly, tol);
  r.linearity.detail = "L(ax+by) = " + to_string(lc) + ", aL(x)+bL(y) = " + to_string(a * r.lx + b * r.ly);

  r.positivity.applicable = nonnegative(x);
  r.positivity.passed = !r.positivity.applicable || r.lx >= -tol;
  r.positivity.detail = r.positivity.applicable ? "x >= 0, L(x) = " + to_string(r.lx) : "x takes negative values";

  if (x.tail() || x.size() >= 2) {
    const Rational ls = limit_or_reject(shift(x), "shift(x)");
    r.shift_invariance.passed = close(ls, r.lx, tol);
    r.shift_invariance.detail = "L(shift x) = " + to_string(ls);
  } else {
    r.shift_invariance.applicable = false;
    r.shift_invariance.passed = true;
    r.shift_invariance.detail = "window too short to shift";
  }

  const Rational one = limit_or_reject(SequenceWindow::constant(1), "1");
  r.normalization.passed = one == 1;
  r.normalization.detail = "L(1) = " + to_string(one);

  r.sandwich = sandwich_of(x, tol);
  const auto sy = sandwich_of(y, tol);
  if (!sy.passed) {
    r.sandwich.passed = false;
    r.sandwich.detail = "y: " + sy.detail;
  }

  r.all = r.linearity.passed && r.positivity.passed && r.shift_invariance.passed && r.normalization.passed &&
          r.sandwich.passed;
  return r;
}

namespace {

Rational number_of(const nlohmann::json& v, bool& floating) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number_float()) {
    floating = true;
    return Rational(v.get<double>());
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InvalidArgument("sequence values must be integers, floats or \"p/q\" strings");
}

}  // namespace

SequenceWindow sequence_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("window") || !j["window"].is_array())
    throw InvalidArgument("sequence JSON needs an array 'window'");
  bool floating = false;
  std::vector<Rational> values;
  for (const auto& v : j["window"]) values.push_back(number_of(v, floating));
  std::optional<Tail> tail;
  if (j.contains("tail") && !j["tail"].is_null()) {
    const auto& t = j["tail"];
    const std::string kind = t.value("kind", "");
    if (kind == "periodic") {
      if (!t.contains("pattern") || !t["pattern"].is_array())
        throw InvalidArgument("a periodic tail needs an array 'pattern'");
      Tail tl;
      for (const auto& v : t["pattern"]) tl.pattern.push_back(number_of(v, floating));
      tail = tl;
    } else if (kind == "constant") {
      if (!t.contains("value")) throw InvalidArgument("a constant tail needs a 'value'");
      const Rational c = number_of(t["value"], floating);
      if (t.contains("from")) {
        if (!t["from"].is_number_integer() || t["from"].get<long long>() < 1)
          throw InvalidArgument("'from' must be a positive index");
        const long long from = t["from"].get<long long>();
        for (long long n = from; n <= static_cast<long long>(values.size()); ++n)
          if (values[n - 1] != c)
            throw InvalidArgument("window value at index " + std::to_string(n) + " contradicts the constant tail");
      }
      tail = Tail{{c}};
    } else {
      throw InvalidArgument("tail kind must be \"periodic\" or \"constant\"");
    }
  }
  return SequenceWindow(values, tail, floating);
}

}  // namespace condorcet::banach
