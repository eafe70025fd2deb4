#include "condorcet/setlimits.hpp"

#include <map>
#include <stdexcept>

#include <json.hpp>

#include "condorcet/errors.hpp"

namespace condorcet::setlimits {

SetFamily::SetFamily(int universe, std::vector<Mask> sets) : universe_(universe), sets_(std::move(sets)) {
  if (universe < 1 || universe > kMaxGround)
    throw InvalidArgument("universe size must be in 1.." + std::to_string(kMaxGround));
  if (sets_.empty() || static_cast<int>(sets_.size()) > filters::kMaxFilterGround)
    throw InvalidArgument("index set size must be in 1.." + std::to_string(filters::kMaxFilterGround));
  for (Mask s : sets_)
    if (!is_subset(s, full_mask(universe))) throw InvalidArgument("a member set leaves the universe");
  for (int x = 0; x < universe; ++x) labels.push_back(std::to_string(x));
}

namespace {

std::string label_of(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InvalidArgument("universe entries must be strings or integers");
}

void check_index(const SetFamily& fam, const FiniteFilter& f) {
  if (f.ground_size() != fam.index_count()) throw InvalidArgument("filter is not on the family's index set");
}

Mask union_over(const SetFamily& fam, Mask j) {
  Mask out = 0;
  for (int i = 0; i < fam.index_count(); ++i)
    if (has(j, i)) out |= fam.set(i);
  return out;
}

Mask meet_over(const SetFamily& fam, Mask j) {
  Mask out = full_mask(fam.universe());
  for (int i = 0; i < fam.index_count(); ++i)
    if (has(j, i)) out &= fam.set(i);
  return out;
}

LimitPair finish(Mask liminf, Mask limsup) {
  LimitPair p{liminf, limsup, std::nullopt};
  if (liminf == limsup) p.lim = liminf;
  return p;
}

}  // namespace

SetFamily set_family_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("universe") || !j["universe"].is_array() || !j.contains("sets"))
    throw InvalidArgument("set family JSON needs 'universe' and 'sets'");
  std::map<std::string, int> id;
  std::vector<std::string> labels;
  for (const auto& v : j["universe"]) {
    if (!id.emplace(label_of(v), static_cast<int>(labels.size())).second)
      throw InvalidArgument("universe entry '" + label_of(v) + "' repeats");
    labels.push_back(label_of(v));
  }
  auto to_mask = [&](const nlohmann::json& s) {
    if (!s.is_array()) throw InvalidArgument("each member set must be an array");
    Mask m = 0;
    for (const auto& v : s) {
      auto it = id.find(label_of(v));
      if (it == id.end()) throw InvalidArgument("'" + label_of(v) + "' is not in the universe");
      m |= bit(it->second);
    }
    return m;
  };
  std::vector<Mask> sets;
  const auto& js = j["sets"];
  if (js.is_array()) {
    for (const auto& s : js) sets.push_back(to_mask(s));
  } else if (js.is_object()) {
    sets.assign(js.size(), 0);
    std::vector<bool> seen(js.size(), false);
    for (const auto& [key, s] : js.items()) {
      std::size_t i = 0;
      try {
        i = std::stoul(key);
      } catch (const std::exception&) {
        throw InvalidArgument("set keys must be indices 0..n-1");
      }
      if (i >= sets.size() || seen[i]) throw InvalidArgument("set keys must be the indices 0..n-1, each once");
      seen[i] = true;
      sets[i] = to_mask(s);
    }
  } else {
    throw InvalidArgument("'sets' must be an array or an object keyed by index");
  }
  SetFamily fam(static_cast<int>(labels.size()), sets);
  fam.labels = labels;
  return fam;
}

std::string to_json_text(const SetFamily& fam) {
  nlohmann::ordered_json j;
  j["universe"] = fam.labels;
  auto sets = nlohmann::ordered_json::array();
  for (Mask s : fam.sets()) {
    std::vector<std::string> row;
    for (int x : members_of(s)) row.push_back(fam.labels[x]);
    sets.push_back(row);
  }
  j["sets"] = sets;
  return j.dump();
}

Mask index_set(const SetFamily& fam, int x) {
  if (x < 0 || x >= fam.universe()) throw InvalidArgument("element is not in the universe");
  Mask out = 0;
  for (int i = 0; i < fam.index_count(); ++i)
    if (has(fam.set(i), x)) out |= bit(i);
  return out;
}

LimitPair dual_limits(const SetFamily& fam, const FiniteFilter& f) {
  check_index(fam, f);
  Mask liminf = 0, limsup = 0;
  f.sets().for_each([&](Mask j) { liminf |= meet_over(fam, j); });
  filters::grille(f).sets().for_each([&](Mask j) { limsup |= meet_over(fam, j); });
  return finish(liminf, limsup);
}

LimitPair membership_limits(const SetFamily& fam, const FiniteFilter& f) {
  check_index(fam, f);
  const auto g = filters::grille(f);
  Mask liminf = 0, limsup = 0;
  for (int x = 0; x < fam.universe(); ++x) {
    const Mask ix = index_set(fam, x);
    if (f.contains(ix)) liminf |= bit(x);
    if (g.contains(ix)) limsup |= bit(x);
  }
  return finish(liminf, limsup);
}

LimitPair set_limits(const SetFamily& fam, const FiniteFilter& f) {
  check_index(fam, f);
  Mask liminf = full_mask(fam.universe()), limsup = full_mask(fam.universe());
  filters::grille(f).sets().for_each([&](Mask j) { liminf &= union_over(fam, j); });
  f.sets().for_each([&](Mask j) { limsup &= union_over(fam, j); });
  auto primal = finish(liminf, limsup);
  const auto dual = dual_limits(fam, f);
  const auto member = membership_limits(fam, f);
  if (dual.liminf != primal.liminf || dual.limsup != primal.limsup || member.liminf != primal.liminf ||
      member.limsup != primal.limsup)
    throw std::logic_error("primal, dual and membership forms of the set limits disagree");
  return primal;
}

Mask limit_along(const SetFamily& fam, const FiniteUltrafilter& u) {
  auto p = set_limits(fam, u.filter());
  if (!p.lim) throw std::logic_error("liminf and limsup differ along an ultrafilter");
  return *p.lim;
}

Mask i_bracket(const SetFamily& fam, Mask f_set, Mask m) {
  Mask out = 0;
  for (int i = 0; i < fam.index_count(); ++i)
    if ((f_set & m) == (f_set & fam.set(i))) out |= bit(i);
  return out;
}

Mask i_bracket_decomposed(const SetFamily& fam, Mask f_set, Mask l) {
  const Mask all = full_mask(fam.index_count());
  Mask out = all;
  for (int x = 0; x < fam.universe(); ++x) {
    if (!has(f_set, x)) continue;
    const Mask ix = index_set(fam, x);
    out &= has(l, x) ? ix : (all & ~ix);
  }
  return out;
}

bool limit_lemma_check(const SetFamily& fam, const FiniteUltrafilter& u) {
  if (fam.universe() > kMaxLemmaUniverse)
    throw ResourceLimit("the lemma check visits every subset; universe limited to " +
                        std::to_string(kMaxLemmaUniverse));
  const Mask l = limit_along(fam, u);
  for (Mask f = 0; f <= full_mask(fam.universe()); ++f)
    if (!u.contains(i_bracket(fam, f, l))) return false;
  return true;
}

bool is_diagonal_truncated(Mask d, const SetFamily& fam, int q) {
  if (q < 1) throw InvalidArgument("threshold q must be at least 1");
  if (fam.universe() > kMaxLemmaUniverse)
    throw ResourceLimit("the diagonal check visits every subset; universe limited to " +
                        std::to_string(kMaxLemmaUniverse));
  for (Mask f = 0; f <= full_mask(fam.universe()); ++f)
    if (popcount(i_bracket(fam, f, d)) < q) return false;
  return true;
}

bool limit_is_diagonal_check(const SetFamily& fam, const FiniteUltrafilter& u) {
  return is_diagonal_truncated(limit_along(fam, u), fam, 1);
}

}  // namespace condorcet::setlimits
