#include "condorcet/additive.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet::additive {

IntSet make_set(std::vector<int> values) {
  for (int v : values)
    if (v < 0) throw InvalidArgument("sets of naturals cannot hold negative values");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

bool is_interval_basis(const IntSet& b, int m) {
  if (m < 0) return false;
  for (int x : b)
    if (x < 0 || x > m) return false;
  std::vector<bool> reached(m + 1, false);
  for (int x : b)
    for (int y : b)
      if (x + y <= m) reached[x + y] = true;
  return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });
}

std::int64_t rep_count(const IntSet& a, int n) {
  std::int64_t count = 0;
  for (int x : a) {
    if (x > n) break;
    count += std::binary_search(a.begin(), a.end(), n - x);
  }
  return count;
}

std::int64_t s_max(const IntSet& a, int horizon) {
  std::int64_t best = 0;
  for (int n = 0; n <= horizon; ++n) best = std::max(best, rep_count(a, n));
  return best;
}

IntervalBasisFamily::IntervalBasisFamily(std::map<int, IntSet> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw InvalidArgument("an interval basis family needs at least one member");
  for (auto& [m, b] : bases_) {
    b = make_set(b);
    if (!is_interval_basis(b, m))
      throw InvalidArgument("B_" + std::to_string(m) + " is not a basis of [0," + std::to_string(m) + "]");
  }
}

std::int64_t IntervalBasisFamily::s_bound() const {
  std::int64_t best = 0;
  for (const auto& [m, b] : bases_) best = std::max(best, s_max(b, m));
  return best;
}

IntervalBasisFamily basis_family_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("bases") || !j["bases"].is_object())
    throw InvalidArgument("basis family JSON needs an object 'bases'");
  std::map<int, IntSet> bases;
  for (const auto& [key, vals] : j["bases"].items()) {
    int m = 0;
    try {
      std::size_t used = 0;
      m = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InvalidArgument("basis keys must be integers, got '" + key + "'");
    }
    if (!vals.is_array()) throw InvalidArgument("B_" + key + " must be an array");
    std::vector<int> b;
    for (const auto& v : vals) {
      if (!v.is_number_integer()) throw InvalidArgument("B_" + key + " must hold integers");
      b.push_back(v.get<int>());
    }
    bases[m] = make_set(b);
  }
  return IntervalBasisFamily(bases);
}

std::string to_json_text(const IntervalBasisFamily& fam) {
  nlohmann::ordered_json bases = nlohmann::ordered_json::object();
  for (const auto& [m, b] : fam.bases()) bases[std::to_string(m)] = b;
  nlohmann::ordered_json j;
  j["bases"] = bases;
  return j.dump();
}

IntervalBasisFamily half_interval_family(const std::vector<int>& sample) {
  std::map<int, IntSet> bases;
  for (int m : sample) {
    if (m < 0) throw InvalidArgument("sample members must be natural numbers");
    IntSet b;
    for (int x = 0; x <= (m + 1) / 2; ++x) b.push_back(x);
    bases[m] = b;
  }
  return IntervalBasisFamily(bases);
}

namespace {

// Characteristic string of B n [0,n]: '1' for members.
std::string prefix_pattern(const IntSet& b, int n) {
  std::string s(n + 1, '0');
  for (int x : b)
    if (x <= n) s[x] = '1';
  return s;
}

// Membership before absence at the first difference.
bool pattern_less(const std::string& a, const std::string& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] == '1';
  return false;
}

}  // namespace

DiagonalResult build_diagonal(const IntervalBasisFamily& fam, int horizon, const DiagonalOptions& opt) {
  if (horizon < 0) throw InvalidArgument("horizon must be a natural number");
  if (opt.early_witnesses < 1 || opt.early_factor < 1) throw InvalidArgument("survivor rule parameters must be >= 1");
  if (fam.max_m() < 2 * horizon)
    throw InvalidArgument("the sample needs some m >= 2N = " + std::to_string(2 * horizon));
  const int early_needed = std::min<int>(opt.early_witnesses, static_cast<int>(fam.bases().size()));

  DiagonalResult out;
  std::set<std::string> survivors;  // patterns of length n + 1
  for (int n = 0; n <= horizon; ++n) {
    const bool early = 2 * n <= horizon;
    const int needed = early ? early_needed : 1;
    const long long min_m = early ? static_cast<long long>(opt.early_factor) * n : n;
    std::map<std::string, int> counts;
    for (const auto& [m, b] : fam.bases())
      if (m >= min_m) ++counts[prefix_pattern(b, n)];
    std::set<std::string> next;
    for (const auto& [pattern, c] : counts) {
      if (c < needed) continue;
      if (n > 0 && !survivors.count(pattern.substr(0, n))) continue;
      next.insert(pattern);
    }
    if (next.empty()) {
      out.message = "no prefix pattern survives at depth " + std::to_string(n) + "; the sample is too thin";
      return out;
    }
    survivors = std::move(next);
    out.depth_reached = n;
  }
  std::string best = *survivors.begin();
  for (const auto& p : survivors)
    if (pattern_less(p, best)) best = p;
  for (int x = 0; x <= horizon; ++x)
    if (best[x] == '1') out.d.push_back(x);
  out.witnesses.resize(horizon + 1);
  for (int n = 0; n <= horizon; ++n)
    for (const auto& [m, b] : fam.bases())
      if (m >= n && prefix_pattern(b, n) == best.substr(0, n + 1)) out.witnesses[n].push_back(m);
  out.ok = true;
  return out;
}

DiagonalValidation validate_diagonal(const IntervalBasisFamily& fam, int horizon, const DiagonalResult& r) {
  DiagonalValidation v;
  if (!r.ok) return v;
  const std::set<int> d(r.d.begin(), r.d.end());
  bool in_range = true;
  for (int x : d) in_range = in_range && x >= 0 && x <= horizon;

  // Witness lists: each m must exist, be >= n and agree with D on [0,n].
  bool witnesses_ok = in_range && static_cast<int>(r.witnesses.size()) == horizon + 1;
  v.n_prime = -1;
  bool prefix_run = true;
  for (int n = 0; n <= horizon && witnesses_ok; ++n) {
    bool has_good = false;
    for (int m : r.witnesses[n]) {
      auto it = fam.bases().find(m);
      if (it == fam.bases().end() || m < n) {
        witnesses_ok = false;
        break;
      }
      std::set<int> bm;
      for (int x : it->second)
        if (x <= n) bm.insert(x);
      std::set<int> dn;
      for (int x : d)
        if (x <= n) dn.insert(x);
      if (bm != dn) {
        witnesses_ok = false;
        break;
      }
      has_good = true;
    }
    if (!has_good) witnesses_ok = false;
    if (prefix_run && has_good)
      v.n_prime = n;
    else
      prefix_run = false;
  }
  v.witnesses_ok = witnesses_ok;

  // [0, N'] in D + D, and the representation bound, by direct double loops.
  std::vector<std::int64_t> reps(std::max(v.n_prime, 0) + 1, 0);
  for (int x : d)
    for (int y : d)
      if (x + y <= v.n_prime) ++reps[x + y];
  v.covers = v.n_prime >= 0 && std::all_of(reps.begin(), reps.end(), [](std::int64_t c) { return c > 0; });
  v.s_d = v.n_prime >= 0 ? *std::max_element(reps.begin(), reps.end()) : 0;
  v.s_bound = 0;
  for (const auto& [m, b] : fam.bases()) {
    std::vector<std::int64_t> rb(2 * m + 1, 0);
    for (int x : b)
      for (int y : b) ++rb[x + y];
    for (int n = 0; n <= m; ++n) v.s_bound = std::max(v.s_bound, rb[n]);
  }
  v.bound_ok = v.s_d <= v.s_bound;
  v.ok = v.witnesses_ok && v.n_prime == horizon && v.covers && v.bound_ok;
  return v;
}

}  // namespace condorcet::additive
