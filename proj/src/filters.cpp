#include "condorcet/filters.hpp"

#include <set>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet::filters {

namespace {

void check_ground(int ground, int limit = kMaxFilterGround) {
  if (ground < 1 || ground > limit)
    throw InvalidArgument("index set size must be in 1.." + std::to_string(limit));
}

Mask kernel_of(const SubsetFamily& sets) {
  Mask k = full_mask(sets.ground_size());
  sets.for_each([&](Mask x) { k &= x; });
  return k;
}

SubsetFamily supersets_of(int ground, Mask kernel) {
  SubsetFamily f(ground);
  const Mask rest = full_mask(ground) & ~kernel;
  // Enumerate the subsets of the complement of the kernel.
  Mask s = 0;
  do {
    f.insert(kernel | s);
    s = (s - rest) & rest;
  } while (s != 0);
  return f;
}

}  // namespace

bool is_filter_family(const SubsetFamily& sets) {
  const int k = sets.ground_size();
  if (sets.empty() || sets.contains(0)) return false;
  bool upward = true;
  sets.for_each([&](Mask x) {
    for (int e = 0; e < k && upward; ++e)
      if (!has(x, e) && !sets.contains(x | bit(e))) upward = false;
  });
  // Given upward closure, closure under pairwise intersection is equivalent
  // to the intersection of all members being a member.
  return upward && sets.contains(kernel_of(sets));
}

FiniteFilter::FiniteFilter(SubsetFamily sets) : sets_(std::move(sets)) {
  check_ground(sets_.ground_size());
  if (!is_filter_family(sets_)) throw InvalidArgument("family is not a filter");
  kernel_ = kernel_of(sets_);
}

FiniteFilter FiniteFilter::generated_by(int ground, const std::vector<Mask>& generators) {
  check_ground(ground);
  Mask k = full_mask(ground);
  for (Mask g : generators) {
    if (g & ~full_mask(ground)) throw InvalidArgument("generator outside the index set");
    k &= g;
  }
  if (k == 0) throw InvalidArgument("generators have empty intersection; no proper filter contains them");
  return FiniteFilter(supersets_of(ground, k));
}

bool FiniteFilter::is_finer_than(const FiniteFilter& coarser) const {
  return coarser.sets().is_subfamily_of(sets_);
}

FiniteUltrafilter::FiniteUltrafilter(SubsetFamily sets) : FiniteUltrafilter(FiniteFilter(std::move(sets))) {}

FiniteUltrafilter::FiniteUltrafilter(const FiniteFilter& f) : filter_(f) {
  const Mask all = full_mask(f.ground_size());
  for (std::size_t x = 0; x < f.sets().universe(); ++x)
    if (f.contains(static_cast<Mask>(x)) == f.contains(all & ~static_cast<Mask>(x)))
      throw InvalidArgument("filter is not an ultrafilter: " + format_mask(static_cast<Mask>(x)) +
                            " and its complement are both " + (f.contains(static_cast<Mask>(x)) ? "in" : "out"));
}

int FiniteUltrafilter::point() const {
  const Mask k = filter_.kernel();
  if (popcount(k) != 1) throw std::logic_error("ultrafilter kernel is not a singleton");
  return std::countr_zero(k);
}

FiniteUltrafilter principal(int ground, int x) {
  check_ground(ground);
  if (x < 0 || x >= ground) throw InvalidArgument("point " + std::to_string(x) + " is not in the index set");
  return FiniteUltrafilter(supersets_of(ground, bit(x)));
}

std::vector<FiniteFilter> enumerate_filters(int ground) {
  check_ground(ground, kMaxEnumerateGround);
  std::vector<FiniteFilter> out;
  for (Mask k = 1; k <= full_mask(ground); ++k) out.emplace_back(supersets_of(ground, k));
  return out;
}

std::vector<FiniteUltrafilter> enumerate_ultrafilters(int ground) {
  if (ground < 1 || ground > kMaxEnumerateGround)
    throw ResourceLimit("ultrafilter enumeration supports index sets of size 1.." +
                        std::to_string(kMaxEnumerateGround));
  std::vector<FiniteUltrafilter> out;
  const Mask all = full_mask(ground);
  for (Mask k = 1; k <= all; ++k) {
    auto sets = supersets_of(ground, k);
    bool law = true;
    for (Mask x = 0; x <= all && law; ++x)
      if (sets.contains(x) == sets.contains(all & ~x)) law = false;
    if (law) out.emplace_back(std::move(sets));
  }
  return out;
}

Grille grille(const FiniteFilter& f) {
  // Y meets every member iff it meets the kernel, which is the least member.
  const Mask k = f.kernel();
  return Grille(f.ground_size(),
                SubsetFamily::from_predicate(f.ground_size(), [&](Mask y) { return (y & k) != 0; }));
}

std::vector<FiniteUltrafilter> finer_ultrafilters(const FiniteFilter& f) {
  std::vector<FiniteUltrafilter> out;
  for (int x = 0; x < f.ground_size(); ++x) {
    auto u = principal(f.ground_size(), x);
    if (u.filter().is_finer_than(f)) out.push_back(std::move(u));
  }
  return out;
}

FiniteUltrafilter grimeisen_sum(const FiniteUltrafilter& master, const std::vector<SumPart>& parts) {
  if (static_cast<int>(parts.size()) != master.ground_size())
    throw InvalidArgument("need one part per point of the master index set");
  int n = 0;
  for (const auto& part : parts) {
    if (static_cast<int>(part.members.size()) != part.ultra.ground_size())
      throw InvalidArgument("part member list does not match its ultrafilter's index set");
    n += static_cast<int>(part.members.size());
  }
  check_ground(n);
  std::set<int> seen;
  for (const auto& part : parts)
    for (int m : part.members) {
      if (m < 0 || m >= n) throw InvalidArgument("parts must cover 0..n-1 exactly");
      if (!seen.insert(m).second) throw InvalidArgument("parts are not disjoint: " + std::to_string(m) + " repeats");
    }
  auto sets = SubsetFamily::from_predicate(n, [&](Mask k) {
    Mask deciding = 0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      Mask local = 0;
      for (std::size_t t = 0; t < parts[p].members.size(); ++t)
        if (has(k, parts[p].members[t])) local |= bit(static_cast<int>(t));
      if (parts[p].ultra.contains(local)) deciding |= bit(static_cast<int>(p));
    }
    return master.contains(deciding);
  });
  return FiniteUltrafilter(std::move(sets));
}

FiniteUltrafilter ordinal_product(const FiniteUltrafilter& u, const FiniteUltrafilter& v) {
  const int ni = u.ground_size(), nj = v.ground_size();
  check_ground(ni * nj);
  auto sets = SubsetFamily::from_predicate(ni * nj, [&](Mask k) {
    Mask l = 0;
    for (int j = 0; j < nj; ++j) {
      Mask column = 0;
      for (int i = 0; i < ni; ++i)
        if (has(k, pair_index(i, j, nj))) column |= bit(i);
      if (u.contains(column)) l |= bit(j);
    }
    return v.contains(l);
  });
  return FiniteUltrafilter(std::move(sets));
}

FiniteUltrafilter ordinal_product_by_slices(const FiniteUltrafilter& u, const FiniteUltrafilter& v) {
  const int ni = u.ground_size(), nj = v.ground_size();
  std::vector<SumPart> parts;
  for (int j = 0; j < nj; ++j) {
    std::vector<int> members;
    for (int i = 0; i < ni; ++i) members.push_back(pair_index(i, j, nj));
    parts.push_back(SumPart{members, u});
  }
  return grimeisen_sum(v, parts);
}

SubsetFamily transpose(const SubsetFamily& family, int i_size, int j_size) {
  if (family.ground_size() != i_size * j_size) throw InvalidArgument("family is not on I x J");
  SubsetFamily out(i_size * j_size);
  family.for_each([&](Mask k) {
    Mask t = 0;
    for (int i = 0; i < i_size; ++i)
      for (int j = 0; j < j_size; ++j)
        if (has(k, pair_index(i, j, j_size))) t |= bit(pair_index(j, i, i_size));
    out.insert(t);
  });
  return out;
}

SubsetFamily cofinite_like_family(int ground) {
  check_ground(ground);
  return SubsetFamily::from_predicate(ground, [&](Mask x) {
    return popcount(full_mask(ground) & ~x) < ground;
  });
}

FiniteFilter uniform_filter(int ground) {
  check_ground(ground);
  return FiniteFilter(supersets_of(ground, full_mask(ground)));
}

bool has_uniform_ultrafilter(int ground) {
  check_ground(ground);
  return ground == 1;
}

std::string to_json_text(const SubsetFamily& family) {
  nlohmann::ordered_json j;
  j["ground"] = family.ground_size();
  auto sets = nlohmann::ordered_json::array();
  family.for_each([&](Mask x) { sets.push_back(members_of(x)); });
  j["sets"] = sets;
  return j.dump();
}

SubsetFamily family_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("ground") || !j["ground"].is_number_integer() || !j.contains("sets") ||
      !j["sets"].is_array())
    throw InvalidArgument("set family JSON needs an integer 'ground' and an array 'sets'");
  const int k = j["ground"].get<int>();
  check_ground(k);
  SubsetFamily f(k);
  for (const auto& s : j["sets"]) {
    Mask m = 0;
    if (!s.is_array()) throw InvalidArgument("each set must be an array of indices");
    for (const auto& e : s) {
      if (!e.is_number_integer() || e.get<int>() < 0 || e.get<int>() >= k)
        throw InvalidArgument("set element outside 0.." + std::to_string(k - 1));
      m |= bit(e.get<int>());
    }
    f.insert(m);
  }
  return f;
}

}  // namespace condorcet::filters
