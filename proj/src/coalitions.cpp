#include "condorcet/coalitions.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet::coalitions {

Assembly::Assembly(int size) : n_(size) {
  if (size < 1 || size > kMaxAssembly)
    throw InvalidArgument("assembly size " + std::to_string(size) + " outside 1.." +
                          std::to_string(kMaxAssembly));
}

Coalition::Coalition(Assembly assembly, Mask members) : assembly_(assembly), members_(members) {
  if (!is_subset(members, assembly.everyone()))
    throw InvalidArgument("coalition " + format_mask(members) + " not inside assembly of size " +
                          std::to_string(assembly.size()));
}

Coalition::Coalition(Assembly assembly, const std::vector<int>& members)
    : assembly_(assembly), members_(0) {
  for (int x : members) {
    if (x < 0 || x >= assembly.size())
      throw InvalidArgument("member " + std::to_string(x) + " outside assembly of size " +
                            std::to_string(assembly.size()));
    members_ |= bit(x);
  }
}

Coalition complement(const Coalition& c) {
  return Coalition(c.assembly(), c.assembly().everyone() & ~c.members());
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::C3: return "C3";
    case Condition::U1: return "U1";
    case Condition::U2: return "U2";
  }
  return "?";
}

Condition parse_condition(const std::string& name) {
  static const std::map<std::string, Condition> table = {
      {"C1", Condition::C1}, {"C2", Condition::C2}, {"C3", Condition::C3},
      {"U1", Condition::U1}, {"U2", Condition::U2}};
  auto it = table.find(name);
  if (it == table.end()) throw InvalidArgument("unknown condition '" + name + "'");
  return it->second;
}

VotingSystem::VotingSystem(Assembly assembly, SubsetFamily efficacious)
    : assembly_(assembly), efficacious_(std::move(efficacious)) {
  if (efficacious_.ground_size() != assembly.size())
    throw InvalidArgument("efficacious family is over a different assembly size");
}

VotingSystem::VotingSystem(Assembly assembly, const std::vector<Coalition>& efficacious)
    : assembly_(assembly), efficacious_(assembly.size()) {
  for (const auto& k : efficacious) {
    if (!(k.assembly() == assembly))
      throw InvalidArgument("coalition assembly size does not match the system");
    efficacious_.insert(k.members());
  }
}

std::vector<Coalition> VotingSystem::efficacious() const {
  std::vector<Coalition> out;
  efficacious_.for_each([&](Mask m) { out.emplace_back(assembly_, m); });
  return out;
}

namespace {

bool check_c1(const VotingSystem& vs) {
  const Mask full = vs.assembly().everyone();
  for (Mask k = 0; k <= full; ++k)
    if (vs.is_efficacious(k) == vs.is_efficacious(full & ~k)) return false;
  return true;
}

// Upward closure. Adding one member at a time reaches every superset, so the
// one-step check is equivalent to the quantifier over all supersets.
bool check_c2(const VotingSystem& vs) {
  const int n = vs.size();
  bool ok = true;
  vs.family().for_each([&](Mask k) {
    if (!ok) return;
    for (int x = 0; x < n; ++x)
      if (!has(k, x) && !vs.is_efficacious(k | bit(x))) {
        ok = false;
        return;
      }
  });
  return ok;
}

bool check_c3(const VotingSystem& vs) {
  const auto members = vs.family().members();
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (!vs.is_efficacious(members[a] & members[b])) return false;
  return true;
}

bool check_u1(const VotingSystem& vs) {
  if (vs.family().empty() || vs.is_efficacious(Mask{0})) return false;
  const Mask full = vs.assembly().everyone();
  for (Mask k = 0; k <= full; ++k) {
    const bool in_k = vs.is_efficacious(k);
    for (Mask l = 0; l <= full; ++l)
      if (vs.is_efficacious(k & l) != (in_k && vs.is_efficacious(l))) return false;
  }
  return true;
}

bool check_u2(const VotingSystem& vs) {
  const Mask full = vs.assembly().everyone();
  for (Mask k = 0; k <= full; ++k) {
    const bool in_k = vs.is_efficacious(k);
    for (Mask l = 0; l <= full; ++l)
      if (vs.is_efficacious(k | l) != (in_k || vs.is_efficacious(l))) return false;
  }
  return true;
}

}  // namespace

bool check_condition(const VotingSystem& vs, Condition cond) {
  switch (cond) {
    case Condition::C1: return check_c1(vs);
    case Condition::C2: return check_c2(vs);
    case Condition::C3: return check_c3(vs);
    case Condition::U1: return check_u1(vs);
    case Condition::U2: return check_u2(vs);
  }
  return false;
}

bool is_ultrafilter(const VotingSystem& vs) {
  return check_c1(vs) && check_c2(vs) && check_c3(vs);
}

std::optional<int> find_dictator(const VotingSystem& vs) {
  for (int d = 0; d < vs.size(); ++d)
    if (vs.is_efficacious(bit(d)) && vs == make_dictator(vs.size(), d)) return d;
  return std::nullopt;
}

VotingSystem make_majority(int n, std::optional<int> chair) {
  Assembly a(n);
  if (chair && (*chair < 0 || *chair >= n))
    throw InvalidArgument("chair " + std::to_string(*chair) + " outside assembly");
  auto fam = SubsetFamily::from_predicate(n, [&](Mask k) {
    const int size = popcount(k);
    if (2 * size > n) return true;
    return chair && 2 * size == n && has(k, *chair);
  });
  return VotingSystem(a, std::move(fam));
}

VotingSystem make_dictator(int n, int dictator) {
  Assembly a(n);
  if (dictator < 0 || dictator >= n)
    throw InvalidArgument("dictator " + std::to_string(dictator) + " outside assembly");
  return VotingSystem(a, SubsetFamily::from_predicate(n, [&](Mask k) { return has(k, dictator); }));
}

const std::vector<std::vector<int>>& fano_lines() {
  static const std::vector<std::vector<int>> lines = {
      {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  return lines;
}

VotingSystem make_fano() {
  std::vector<Mask> lines;
  for (const auto& l : fano_lines()) lines.push_back(mask_of(l));
  return VotingSystem(Assembly(7), SubsetFamily::from_predicate(7, [&](Mask k) {
                        if (popcount(k) >= 5) return true;
                        return std::any_of(lines.begin(), lines.end(),
                                           [&](Mask l) { return is_subset(l, k); });
                      }));
}

// ---------------------------------------------------------------------------
// Weighted systems

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (weights_[i] < 0)
      throw InvalidArgument("weight of member " + std::to_string(i) + " is negative");
}

Rational WeightVector::weight_of(Mask k) const {
  Rational total = 0;
  for (int x : members_of(k)) total += weights_.at(x);
  return total;
}

namespace {

// Weights scaled to a common denominator: p(K) > p(K^c) iff 2 p(K) > total.
struct IntegerWeights {
  std::vector<BigInt> w;
  BigInt total;
};

IntegerWeights to_integers(const WeightVector& wv) {
  BigInt lcm = 1;
  for (const auto& r : wv.values()) lcm = boost::multiprecision::lcm(lcm, denominator(r));
  IntegerWeights out;
  out.total = 0;
  for (const auto& r : wv.values()) {
    out.w.push_back(numerator(r) * (lcm / denominator(r)));
    out.total += out.w.back();
  }
  return out;
}

// Calls f(mask, sign of p(mask) - p(complement)) for every coalition.
template <class F>
void for_each_margin(int n, const WeightVector& wv, F&& f) {
  if (static_cast<int>(wv.size()) != n)
    throw InvalidArgument("weight vector has " + std::to_string(wv.size()) +
                          " entries, assembly has " + std::to_string(n));
  const IntegerWeights iw = to_integers(wv);
  const BigInt limit = BigInt(1) << 60;
  if (iw.total < limit) {
    std::vector<std::int64_t> w;
    for (const auto& x : iw.w) w.push_back(x.convert_to<std::int64_t>());
    const auto total = iw.total.convert_to<std::int64_t>();
    for (Mask k = 0; k <= full_mask(n); ++k) {
      std::int64_t sum = 0;
      for (Mask rest = k; rest; rest &= rest - 1) sum += w[std::countr_zero(rest)];
      const std::int64_t m = 2 * sum - total;
      f(k, (m > 0) - (m < 0));
    }
    return;
  }
  for (Mask k = 0; k <= full_mask(n); ++k) {
    BigInt s = 0;
    for (int x : members_of(k)) s += iw.w[x];
    const BigInt m = 2 * s - iw.total;
    f(k, (m > 0) - (m < 0));
  }
}

}  // namespace

VotingSystem make_weighted(int n, const WeightVector& w) {
  Assembly a(n);
  SubsetFamily fam(n);
  for_each_margin(n, w, [&](Mask k, int sign) {
    if (sign > 0) fam.insert(k);
  });
  return VotingSystem(a, std::move(fam));
}

bool weighted_is_valid(int n, const WeightVector& w) {
  Assembly a(n);
  bool valid = true;
  for_each_margin(n, w, [&](Mask, int sign) {
    if (sign == 0) valid = false;
  });
  return valid;
}

namespace {

// Homogeneous linear constraint  sum_j coeff[j] * w_j  (> or >=)  0.
struct Constraint {
  std::vector<BigInt> coeff;
  bool strict = false;
  std::vector<std::uint64_t> history;  // original constraints combined into this one

  std::size_t ancestors() const {
    std::size_t c = 0;
    for (auto h : history) c += std::popcount(h);
    return c;
  }
};

void make_primitive(std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs(x));
  if (g > 1)
    for (auto& x : v) x /= g;
}

bool history_subset(const Constraint& a, const Constraint& b) {
  for (std::size_t i = 0; i < a.history.size(); ++i)
    if (a.history[i] & ~b.history[i]) return false;
  return true;
}

constexpr std::size_t kMaxConstraints = 200000;

// Drops duplicates (keeping the strict variant), trivially true rows, and rows
// whose ancestor set strictly contains another row's with the same coefficients.
// Returns false when a row reads 0 > 0.
bool normalize(std::vector<Constraint>& rows) {
  std::map<std::vector<BigInt>, Constraint> unique;
  for (auto& r : rows) {
    bool zero = std::all_of(r.coeff.begin(), r.coeff.end(), [](const BigInt& x) { return x == 0; });
    if (zero) {
      if (r.strict) return false;
      continue;
    }
    make_primitive(r.coeff);
    auto it = unique.find(r.coeff);
    if (it == unique.end()) {
      unique.emplace(r.coeff, std::move(r));
    } else if (r.strict && !it->second.strict) {
      it->second = std::move(r);
    } else if (r.strict == it->second.strict && history_subset(r, it->second)) {
      it->second = std::move(r);
    }
  }
  rows.clear();
  for (auto& [k, v] : unique) rows.push_back(std::move(v));
  return true;
}

struct Bound {
  Rational value;
  bool strict;
};

}  // namespace

std::optional<WeightVector> weight_representable(const VotingSystem& vs) {
  const int n = vs.size();
  if (n > kMaxWeightAssembly)
    throw ResourceLimit("weight_representable supports assemblies up to " +
                        std::to_string(kMaxWeightAssembly) + " members");
  // Nonnegative weights always give C1-valid systems only when no ties occur,
  // and always give upward-closed families, so both conditions are necessary.
  if (!check_c1(vs) || !check_c2(vs)) return std::nullopt;

  // With C1 the non-efficacious constraints are the negations of the
  // efficacious ones; with nonnegative weights only minimal efficacious
  // coalitions need their own row.
  std::vector<Mask> minimal;
  vs.family().for_each([&](Mask k) {
    for (int x : members_of(k))
      if (vs.is_efficacious(k & ~bit(x))) return;
    minimal.push_back(k);
  });

  const std::size_t original = minimal.size() + static_cast<std::size_t>(n);
  const std::size_t words = (original + 63) / 64;
  std::vector<Constraint> rows;
  std::size_t idx = 0;
  auto add_row = [&](std::vector<BigInt> coeff, bool strict) {
    Constraint c;
    c.coeff = std::move(coeff);
    c.strict = strict;
    c.history.assign(words, 0);
    c.history[idx / 64] |= 1ULL << (idx % 64);
    ++idx;
    rows.push_back(std::move(c));
  };
  for (Mask k : minimal) {
    std::vector<BigInt> coeff(n);
    for (int j = 0; j < n; ++j) coeff[j] = has(k, j) ? 1 : -1;
    add_row(std::move(coeff), true);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<BigInt> coeff(n, 0);
    coeff[j] = 1;
    add_row(std::move(coeff), false);
  }

  if (!normalize(rows)) return std::nullopt;

  // stages[j] holds the system over variables j..n-1, before eliminating j.
  std::vector<std::vector<Constraint>> stages;
  for (int j = 0; j < n; ++j) {
    stages.push_back(rows);
    std::vector<Constraint> pos, neg, next;
    for (auto& r : rows) {
      if (r.coeff[j] > 0)
        pos.push_back(std::move(r));
      else if (r.coeff[j] < 0)
        neg.push_back(std::move(r));
      else
        next.push_back(std::move(r));
    }
    const std::size_t eliminated = static_cast<std::size_t>(j) + 1;
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Constraint c;
        c.history.resize(words);
        for (std::size_t w = 0; w < words; ++w) c.history[w] = p.history[w] | q.history[w];
        // Chernikov: more than (eliminated + 1) ancestors means redundant.
        if (c.ancestors() > eliminated + 1) continue;
        const BigInt a = p.coeff[j];
        const BigInt b = -q.coeff[j];
        c.coeff.resize(n);
        for (int t = 0; t < n; ++t) c.coeff[t] = p.coeff[t] * b + q.coeff[t] * a;
        c.coeff[j] = 0;
        c.strict = p.strict || q.strict;
        next.push_back(std::move(c));
        if (next.size() > kMaxConstraints)
          throw ResourceLimit("Fourier-Motzkin elimination exceeded " +
                              std::to_string(kMaxConstraints) + " constraints");
      }
    }
    rows = std::move(next);
    if (!normalize(rows)) return std::nullopt;
  }

  // Back-substitution, last eliminated variable first.
  std::vector<Rational> w(n, 0);
  for (int j = n - 1; j >= 0; --j) {
    std::optional<Bound> lo, hi;
    for (const auto& r : stages[j]) {
      Rational rest = 0;
      for (int t = j + 1; t < n; ++t) rest += Rational(r.coeff[t]) * w[t];
      if (r.coeff[j] == 0) continue;
      const Rational v = -rest / Rational(r.coeff[j]);
      if (r.coeff[j] > 0) {
        if (!lo || v > lo->value || (v == lo->value && r.strict)) lo = Bound{v, r.strict};
      } else {
        if (!hi || v < hi->value || (v == hi->value && r.strict)) hi = Bound{v, r.strict};
      }
    }
    Rational value = 0;
    if (lo && hi) {
      value = (lo->value < hi->value) ? (lo->value + hi->value) / 2 : lo->value;
    } else if (lo) {
      value = lo->strict ? lo->value + 1 : lo->value;
    } else if (hi) {
      value = hi->strict ? hi->value - 1 : hi->value;
    }
    w[j] = value;
  }

  // Scale to a primitive integer vector.
  BigInt lcm = 1;
  for (const auto& x : w) lcm = boost::multiprecision::lcm(lcm, denominator(x));
  std::vector<BigInt> ints;
  for (const auto& x : w) ints.push_back(numerator(x) * (lcm / denominator(x)));
  make_primitive(ints);
  std::vector<Rational> scaled;
  for (const auto& x : ints) scaled.emplace_back(x);
  WeightVector result(std::move(scaled));

  if (!(make_weighted(n, result) == vs))
    throw std::logic_error("Fourier-Motzkin back-substitution produced inconsistent weights");
  return result;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

bool satisfies_all(const VotingSystem& vs, const std::set<Condition>& required) {
  for (auto c : required)
    if (!check_condition(vs, c)) return false;
  return true;
}

}  // namespace

void for_each_system(int n, const std::set<Condition>& required,
                     const std::function<void(const VotingSystem&)>& visit) {
  Assembly a(n);
  const bool c1 = required.count(Condition::C1) > 0;
  const bool c2 = required.count(Condition::C2) > 0;
  const bool ultra = required.count(Condition::U1) && required.count(Condition::U2);
  const int cap = ((c1 && c2) || ultra) ? 5 : 4;
  if (n > cap)
    throw ResourceLimit("enumerate_systems with these conditions supports n <= " +
                        std::to_string(cap));

  const std::size_t subsets = std::size_t{1} << n;
  if (!c1 && !ultra) {
    const std::uint64_t families = std::uint64_t{1} << subsets;
    for (std::uint64_t bits = 0; bits < families; ++bits) {
      VotingSystem vs(a, SubsetFamily::from_bits(n, bits));
      if (satisfies_all(vs, required)) visit(vs);
    }
    return;
  }

  // C1 (or U1+U2, which implies it) picks exactly one coalition from each
  // complementary pair. Pairs are keyed by the member without n-1.
  const Mask full = a.everyone();
  const std::size_t pairs = subsets / 2;
  std::vector<std::uint64_t> found;
  for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << pairs); ++choice) {
    std::uint64_t bits = 0;
    for (std::size_t p = 0; p < pairs; ++p) {
      const Mask k = static_cast<Mask>(p);
      const Mask chosen = ((choice >> p) & 1) ? (full & ~k) : k;
      bits |= std::uint64_t{1} << chosen;
    }
    VotingSystem vs(a, SubsetFamily::from_bits(n, bits));
    if (satisfies_all(vs, required)) found.push_back(bits);
  }
  std::sort(found.begin(), found.end());
  for (auto bits : found) visit(VotingSystem(a, SubsetFamily::from_bits(n, bits)));
}

std::vector<VotingSystem> enumerate_systems(int n, const std::set<Condition>& required) {
  std::vector<VotingSystem> out;
  for_each_system(n, required, [&](const VotingSystem& vs) { out.push_back(vs); });
  return out;
}

GuilbaudReport guilbaud_report(int n) {
  if (n > 4) throw ResourceLimit("guilbaud_verify supports n <= 4");
  GuilbaudReport r;
  r.n = n;
  for_each_system(n, {Condition::C1, Condition::C2, Condition::C3}, [&](const VotingSystem& vs) {
    ++r.systems;
    if (find_dictator(vs)) ++r.dictatorial;
    Mask kernel = vs.assembly().everyone();
    vs.family().for_each([&](Mask k) { kernel &= k; });
    if (!vs.is_efficacious(kernel) || popcount(kernel) != 1) r.kernel_is_efficacious_singleton = false;
  });
  r.holds = r.systems > 0 && r.dictatorial == r.systems && r.kernel_is_efficacious_singleton;
  return r;
}

bool guilbaud_verify(int n) { return guilbaud_report(n).holds; }

std::optional<IncoherenceWitness> incoherence_witness(const VotingSystem& vs) {
  if (!check_c1(vs) || !check_c2(vs))
    throw PreconditionError("incoherence_witness requires a system satisfying C1 and C2");
  const auto members = vs.family().members();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Mask meet = members[i] & members[j];
      if (!vs.is_efficacious(meet))
        return IncoherenceWitness{Coalition(vs.assembly(), members[i]),
                                  Coalition(vs.assembly(), members[j]),
                                  Coalition(vs.assembly(), meet)};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json_text(const VotingSystem& vs) {
  nlohmann::ordered_json j;
  j["n"] = vs.size();
  auto arr = nlohmann::ordered_json::array();
  vs.family().for_each([&](Mask k) { arr.push_back(members_of(k)); });
  j["efficacious"] = std::move(arr);
  return j.dump();
}

VotingSystem voting_system_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("efficacious"))
    throw InvalidArgument("voting system JSON needs fields 'n' and 'efficacious'");
  if (!j["n"].is_number_integer()) throw InvalidArgument("'n' must be an integer");
  Assembly a(j["n"].get<int>());
  SubsetFamily fam(a.size());
  if (!j["efficacious"].is_array()) throw InvalidArgument("'efficacious' must be an array");
  for (const auto& c : j["efficacious"]) {
    if (!c.is_array()) throw InvalidArgument("each coalition must be an array of members");
    std::vector<int> members;
    for (const auto& x : c) {
      if (!x.is_number_integer()) throw InvalidArgument("coalition members must be integers");
      members.push_back(x.get<int>());
    }
    fam.insert(Coalition(a, members).members());
  }
  return VotingSystem(a, std::move(fam));
}

}  // namespace condorcet::coalitions
