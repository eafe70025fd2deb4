#include "condorcet/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "condorcet/additive.hpp"
#include "condorcet/banach.hpp"
#include "condorcet/coalitions.hpp"
#include "condorcet/errors.hpp"
#include "condorcet/filters.hpp"
#include "condorcet/fintop.hpp"
#include "condorcet/formula.hpp"
#include "condorcet/los.hpp"
#include "condorcet/profiles.hpp"
#include "condorcet/setlimits.hpp"
#include "condorcet/structures.hpp"
#include "condorcet/verify.hpp"

namespace condorcet::cli {

namespace {

using Json = nlohmann::ordered_json;
using coalitions::Condition;
using los::Formula;
using los::ParseError;

class FileNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input errors carry the file they came from.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ctx {
  std::ostream& out;
  bool json = false;
  bool color = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto load(const std::string& path, F&& parse) {
  const std::string text = slurp(path);
  try {
    return parse(text);
  } catch (const InvalidArgument& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(Ctx& c, const Json& j) { c.out << j.dump(2) << "\n"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string verdict(const Ctx& c, bool ok) {
  if (!c.color) return ok ? "PASS" : "FAIL";
  return ok ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("expected a comma-separated list of integers, got '" + s + "'");
    }
  }
  return out;
}

Json mask_json(Mask m) { return members_of(m); }

// ---- vote -------------------------------------------------------------

int vote_check(Ctx& c, const std::string& path) {
  const auto vs = load(path, coalitions::voting_system_from_json_text);
  const Condition all[] = {Condition::C1, Condition::C2, Condition::C3, Condition::U1, Condition::U2};
  const auto dictator = coalitions::find_dictator(vs);
  if (c.json) {
    Json j;
    j["n"] = vs.size();
    j["efficacious"] = vs.efficacious_count();
    for (auto cond : all) j[coalitions::to_string(cond)] = check_condition(vs, cond);
    j["ultrafilter"] = coalitions::is_ultrafilter(vs);
    j["dictator"] = dictator ? Json(*dictator) : Json(nullptr);
    emit(c, j);
  } else {
    c.out << "members: " << vs.size() << ", efficacious coalitions: " << vs.efficacious_count() << "\n";
    for (auto cond : all) c.out << coalitions::to_string(cond) << ": " << yes_no(check_condition(vs, cond)) << "\n";
    c.out << "ultrafilter: " << yes_no(coalitions::is_ultrafilter(vs)) << "\n";
    c.out << "dictator: " << (dictator ? std::to_string(*dictator) : "none") << "\n";
  }
  return kExitOk;
}

int vote_dictator(Ctx& c, const std::string& path) {
  const auto vs = load(path, coalitions::voting_system_from_json_text);
  const auto d = coalitions::find_dictator(vs);
  if (c.json) {
    Json j;
    j["dictator"] = d ? Json(*d) : Json(nullptr);
    emit(c, j);
  } else {
    c.out << "dictator: " << (d ? std::to_string(*d) : "none") << "\n";
  }
  return kExitOk;
}

int vote_weights(Ctx& c, const std::string& path) {
  const auto vs = load(path, coalitions::voting_system_from_json_text);
  const auto w = coalitions::weight_representable(vs);
  std::vector<std::string> ws;
  if (w)
    for (const auto& x : w->values()) ws.push_back(to_string(x));
  if (c.json) {
    Json j;
    j["representable"] = w.has_value();
    j["weights"] = w ? Json(ws) : Json(nullptr);
    emit(c, j);
  } else if (w) {
    c.out << "weights:";
    for (const auto& s : ws) c.out << " " << s;
    c.out << "\n";
  } else {
    c.out << "weights: none\n";
  }
  return kExitOk;
}

int vote_fano(Ctx& c) {
  const auto f = coalitions::make_fano();
  const bool c1 = check_condition(f, Condition::C1);
  const bool c2 = check_condition(f, Condition::C2);
  const bool c3 = check_condition(f, Condition::C3);
  const auto dictator = coalitions::find_dictator(f);
  const auto weights = coalitions::weight_representable(f);
  const auto witness = coalitions::incoherence_witness(f);
  const bool expected = c1 && c2 && !c3 && !dictator && !weights;
  if (c.json) {
    Json j;
    j["members"] = f.size();
    j["lines"] = coalitions::fano_lines();
    j["efficacious"] = f.efficacious_count();
    j["C1"] = c1;
    j["C2"] = c2;
    j["C3"] = c3;
    j["dictator"] = dictator ? Json(*dictator) : Json(nullptr);
    j["weights"] = weights ? Json("found") : Json(nullptr);
    if (witness) {
      j["C3_witness"] = {{"first", witness->first.member_list()},
                         {"second", witness->second.member_list()},
                         {"meet", witness->meet.member_list()}};
    }
    j["expected"] = expected;
    emit(c, j);
  } else {
    c.out << "fano plane on 7 members, " << f.efficacious_count() << " efficacious coalitions\n";
    c.out << "lines:";
    for (const auto& l : coalitions::fano_lines()) c.out << " " << format_mask(mask_of(l));
    c.out << "\n";
    c.out << "C1: " << yes_no(c1) << "\nC2: " << yes_no(c2) << "\nC3: " << yes_no(c3) << "\n";
    if (witness)
      c.out << "C3 fails: " << format_mask(witness->first.members()) << " and "
            << format_mask(witness->second.members()) << " are efficacious, their meet "
            << format_mask(witness->meet.members()) << " is not\n";
    c.out << "dictator: " << (dictator ? std::to_string(*dictator) : "none") << "\n";
    c.out << "weights: " << (weights ? "found" : "none") << "\n";
  }
  return expected ? kExitOk : kExitViolation;
}

int vote_guilbaud(Ctx& c, int n) {
  const auto r = coalitions::guilbaud_report(n);
  const bool all = r.dictatorial == r.systems;
  if (c.json) {
    Json j;
    j["n"] = n;
    j["systems"] = r.systems;
    j["dictatorial"] = r.dictatorial;
    j["kernel_singleton"] = r.kernel_is_efficacious_singleton;
    j["holds"] = r.holds;
    emit(c, j);
  } else {
    c.out << r.systems << " systems, " << (all ? "all dictatorial" : std::to_string(r.dictatorial) + " dictatorial")
          << "\n";
  }
  return r.holds ? kExitOk : kExitViolation;
}

// ---- elect ------------------------------------------------------------

std::string ranking_text(const profiles::Profile& p, const std::vector<int>& order, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? sep : "") + p.names()[order[i]];
  return s;
}

Json outcome_json(const profiles::Profile& p, const profiles::ElectionOutcome& o) {
  Json j;
  j["method"] = profiles::to_string(o.method);
  j["winner"] = o.winner ? Json(p.names()[*o.winner]) : Json(nullptr);
  Json fp = Json::object();
  for (int x = 0; x < p.candidates(); ++x) fp[p.names()[x]] = o.first_place[x];
  j["first_place"] = fp;
  if (o.finalists) {
    j["finalists"] = {p.names()[o.finalists->first], p.names()[o.finalists->second]};
    j["runoff_votes"] = {o.runoff_votes->first, o.runoff_votes->second};
  }
  if (o.ranking) {
    Json r = Json::array();
    for (int x : *o.ranking) r.push_back(p.names()[x]);
    j["ranking"] = r;
  }
  if (o.cycle) {
    Json cy = Json::array();
    for (int x : *o.cycle) cy.push_back(p.names()[x]);
    j["cycle"] = cy;
    Json sup = Json::array();
    for (std::size_t i = 0; i < o.cycle->size(); ++i)
      sup.push_back(o.tally[(*o.cycle)[i]][(*o.cycle)[(i + 1) % o.cycle->size()]]);
    j["cycle_support"] = sup;
  }
  return j;
}

void outcome_text(Ctx& c, const profiles::Profile& p, const profiles::ElectionOutcome& o) {
  using profiles::ElectionMethod;
  const auto& names = p.names();
  c.out << profiles::to_string(o.method) << ": ";
  switch (o.method) {
    case ElectionMethod::Plurality: {
      c.out << "winner " << names[*o.winner] << " (first places";
      for (int x = 0; x < p.candidates(); ++x) c.out << (x ? ", " : " ") << names[x] << " " << o.first_place[x];
      c.out << ")\n";
      break;
    }
    case ElectionMethod::TwoRound: {
      if (!o.finalists) {
        c.out << "winner " << names[*o.winner] << " (absolute majority, " << o.first_place[*o.winner]
              << " first places)\n";
      } else {
        c.out << "winner " << names[*o.winner] << " (runoff " << names[o.finalists->first] << " "
              << o.runoff_votes->first << ", " << names[o.finalists->second] << " " << o.runoff_votes->second
              << ")\n";
      }
      break;
    }
    case ElectionMethod::Pairwise: {
      if (o.cycle) {
        c.out << "no winner, cycle ";
        for (std::size_t i = 0; i < o.cycle->size(); ++i) {
          const int x = (*o.cycle)[i], y = (*o.cycle)[(i + 1) % o.cycle->size()];
          c.out << names[x] << " >" << o.tally[x][y] << "> ";
        }
        c.out << names[o.cycle->front()] << "\n";
      } else {
        const auto& r = *o.ranking;
        c.out << "ranking ";
        for (std::size_t i = 0; i < r.size(); ++i) {
          c.out << names[r[i]];
          if (i + 1 < r.size()) c.out << " >" << o.tally[r[i]][r[i + 1]] << "> ";
        }
        c.out << (o.winner ? ", winner " + names[*o.winner] : ", no winner") << "\n";
      }
      break;
    }
  }
}

int elect_run(Ctx& c, const std::string& path, const std::string& method) {
  const auto p = load(path, profiles::profile_from_json_text);
  std::vector<profiles::ElectionMethod> methods;
  if (method == "all")
    methods = {profiles::ElectionMethod::Plurality, profiles::ElectionMethod::TwoRound,
               profiles::ElectionMethod::Pairwise};
  else
    methods = {profiles::parse_election_method(method)};
  if (c.json) {
    Json j;
    j["candidates"] = p.names();
    j["voters"] = p.voters();
    Json rs = Json::array();
    for (auto m : methods) rs.push_back(outcome_json(p, profiles::run_election(p, m)));
    j["outcomes"] = rs;
    emit(c, j);
  } else {
    c.out << "candidates: " << ranking_text(p, [&] {
      std::vector<int> all(p.candidates());
      for (int i = 0; i < p.candidates(); ++i) all[i] = i;
      return all;
    }(), " ") << ", voters: " << p.voters() << "\n";
    for (auto m : methods) outcome_text(c, p, profiles::run_election(p, m));
  }
  return kExitOk;
}

int elect_tally(Ctx& c, const std::string& path) {
  const auto p = load(path, profiles::profile_from_json_text);
  const auto t = profiles::pairwise_tally(p);
  if (c.json) {
    Json j;
    j["candidates"] = p.names();
    j["tally"] = t;
    emit(c, j);
    return kExitOk;
  }
  std::size_t w = 3;
  for (const auto& n : p.names()) w = std::max(w, n.size() + 1);
  c.out << std::setw(static_cast<int>(w)) << "";
  for (const auto& n : p.names()) c.out << std::setw(static_cast<int>(w)) << n;
  c.out << "\n";
  for (int x = 0; x < p.candidates(); ++x) {
    c.out << std::left << std::setw(static_cast<int>(w)) << p.names()[x] << std::right;
    for (int y = 0; y < p.candidates(); ++y)
      c.out << std::setw(static_cast<int>(w)) << (x == y ? std::string("-") : std::to_string(t[x][y]));
    c.out << "\n";
  }
  return kExitOk;
}

profiles::CollectiveRelation relation_for(const profiles::Profile& p, const std::string& system_path) {
  if (system_path.empty()) return profiles::majority_relation(p);
  return profiles::collective_relation(p, load(system_path, coalitions::voting_system_from_json_text));
}

int elect_cycles(Ctx& c, const std::string& path, const std::string& system_path) {
  const auto p = load(path, profiles::profile_from_json_text);
  const auto rel = relation_for(p, system_path);
  const auto cycle = profiles::find_cycle(rel);
  if (c.json) {
    Json j;
    j["acyclic"] = !cycle.has_value();
    if (cycle) {
      Json cy = Json::array();
      for (int x : *cycle) cy.push_back(p.names()[x]);
      j["cycle"] = cy;
    } else {
      j["cycle"] = nullptr;
    }
    emit(c, j);
  } else if (cycle) {
    c.out << "cycle: " << ranking_text(p, *cycle, " > ") << " > " << p.names()[cycle->front()] << "\n";
  } else {
    c.out << "no cycle\n";
  }
  return kExitOk;
}

int elect_conditions(Ctx& c, const std::string& path, const std::string& system_path, const std::string& triple) {
  const auto p = load(path, profiles::profile_from_json_text);
  const auto vs = system_path.empty() ? coalitions::make_majority(p.voters())
                                      : load(system_path, coalitions::voting_system_from_json_text);
  profiles::Triple t{0, 1, 2};
  if (!triple.empty()) {
    const auto v = parse_int_list(triple);
    if (v.size() != 3) throw InvalidArgument("--triple needs three candidate indices");
    t = {v[0], v[1], v[2]};
  }
  using profiles::ProfileCondition;
  const bool s = check_profile_condition(p, vs, ProfileCondition::S, t);
  const bool tt = check_profile_condition(p, vs, ProfileCondition::T, t);
  const bool v = check_profile_condition(p, vs, ProfileCondition::V, t);
  const bool sen = profiles::sen_condition(p, t);
  const auto counts = profiles::label_counts(p, t);
  const bool three = p.candidates() == 3;
  std::optional<profiles::CoherenceReport> rep;
  if (three) rep = profiles::coherence_theorem_check(p, vs);
  const bool chain_ok = (!s || tt) && (!tt || v) && (!rep || rep->chain_ok);
  if (c.json) {
    Json j;
    j["triple"] = {p.names()[t.a], p.names()[t.b], p.names()[t.c]};
    j["label_counts"] = counts;
    j["S"] = s;
    j["T"] = tt;
    j["V"] = v;
    j["sen"] = sen;
    j["coherent"] = rep ? Json(rep->coherent) : Json(nullptr);
    j["chain_ok"] = chain_ok;
    emit(c, j);
  } else {
    c.out << "triple: " << p.names()[t.a] << " " << p.names()[t.b] << " " << p.names()[t.c] << "\n";
    c.out << "label counts:";
    for (int l = 0; l < 6; ++l) c.out << " " << l + 1 << ":" << counts[l];
    c.out << "\n";
    c.out << "S: " << yes_no(s) << "\nT: " << yes_no(tt) << "\nV: " << yes_no(v) << "\nsen: " << yes_no(sen) << "\n";
    if (rep) c.out << "coherent: " << yes_no(rep->coherent) << "\n";
    c.out << "chain: " << verdict(c, chain_ok) << "\n";
  }
  return chain_ok ? kExitOk : kExitViolation;
}

int elect_prob(Ctx& c, int voters) {
  const Rational p = profiles::cycle_probability(voters);
  if (c.json) {
    Json j;
    j["voters"] = voters;
    j["probability"] = to_string(p);
    j["approx"] = to_double(p);
    emit(c, j);
  } else {
    std::ostringstream approx;
    approx << std::setprecision(6) << to_double(p);
    c.out << "P(cycle, " << voters << " voters) = " << to_string(p) << " ~ " << approx.str() << "\n";
  }
  return kExitOk;
}

// ---- ultra ------------------------------------------------------------

int ultra_enumerate(Ctx& c, int k) {
  const auto fs = filters::enumerate_filters(k);
  const auto us = filters::enumerate_ultrafilters(k);
  bool ok = static_cast<int>(us.size()) == k;
  std::vector<int> points;
  for (const auto& u : us) points.push_back(u.point());
  if (c.json) {
    Json j;
    j["ground"] = k;
    j["filters"] = fs.size();
    j["ultrafilters"] = us.size();
    j["points"] = points;
    emit(c, j);
  } else {
    c.out << "ground " << k << ": " << fs.size() << " filters, " << us.size() << " ultrafilters, all principal\n";
    for (int x : points) c.out << "  principal at " << x << "\n";
  }
  return ok ? kExitOk : kExitViolation;
}

int ultra_sum(Ctx& c, const std::string& path) {
  const auto text = slurp(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
  auto bad = [&](const std::string& m) { return InputError(path + ": " + m); };
  if (!j.contains("master") || !j.contains("parts") || !j["parts"].is_array())
    throw bad("sum JSON needs 'master' and 'parts'");
  auto principal_of = [&](const Json& u, int ground) {
    if (!u.contains("point") || !u["point"].is_number_integer()) throw bad("ultrafilters are given by 'point'");
    const int pt = u["point"].get<int>();
    if (pt < 0 || pt >= ground) throw bad("point out of range");
    return filters::principal(ground, pt);
  };
  std::vector<filters::SumPart> parts;
  for (const auto& part : j["parts"]) {
    if (!part.contains("members") || !part["members"].is_array()) throw bad("each part needs 'members'");
    std::vector<int> members = part["members"].get<std::vector<int>>();
    if (members.empty()) throw bad("parts must be nonempty");
    parts.push_back({members, principal_of(part, static_cast<int>(members.size()))});
  }
  const int m = static_cast<int>(parts.size());
  if (m == 0) throw bad("a sum needs at least one part");
  const auto master = principal_of(j["master"], m);
  filters::FiniteUltrafilter sum = [&] {
    try {
      return filters::grimeisen_sum(master, parts);
    } catch (const InvalidArgument& e) {
      throw bad(e.what());
    }
  }();
  const auto& chosen = parts[master.point()];
  const int expected = chosen.members[chosen.ultra.point()];
  const bool ok = sum.point() == expected;
  if (c.json) {
    Json o;
    o["ground"] = sum.ground_size();
    o["point"] = sum.point();
    o["expected"] = expected;
    o["members"] = sum.sets().count();
    emit(c, o);
  } else {
    c.out << "sum on " << sum.ground_size() << " points is principal at " << sum.point() << " ("
          << sum.sets().count() << " sets)\n";
  }
  return ok ? kExitOk : kExitViolation;
}

int ultra_product(Ctx& c, int i_size, int j_size, int u_point, int v_point) {
  if (i_size < 1 || j_size < 1 || i_size * j_size > filters::kMaxEnumerateGround)
    throw InvalidArgument("need |I|,|J| >= 1 and |I|*|J| <= " + std::to_string(filters::kMaxEnumerateGround));
  if (u_point < 0 || u_point >= i_size || v_point < 0 || v_point >= j_size)
    throw InvalidArgument("ultrafilter points out of range");
  const auto u = filters::principal(i_size, u_point);
  const auto v = filters::principal(j_size, v_point);
  const auto p = filters::ordinal_product(u, v);
  const auto slices = filters::ordinal_product_by_slices(u, v);
  const auto swapped = filters::ordinal_product(v, u);
  const bool transpose_equal = filters::transpose(p.sets(), i_size, j_size) == swapped.sets();
  const bool ok = p == slices && p.point() == filters::pair_index(u_point, v_point, j_size) && transpose_equal;
  if (c.json) {
    Json j;
    j["point"] = p.point();
    j["pair"] = {u_point, v_point};
    j["by_slices_equal"] = p == slices;
    j["transpose_equal"] = transpose_equal;
    emit(c, j);
  } else {
    c.out << "product on " << i_size << "x" << j_size << " is principal at (" << u_point << "," << v_point
          << ") = " << p.point() << "\n";
    c.out << "slice construction: " << (p == slices ? "same" : "different") << "\n";
    c.out << "transposed product: " << (transpose_equal ? "same" : "different") << "\n";
  }
  return ok ? kExitOk : kExitViolation;
}

// ---- los --------------------------------------------------------------

Formula parse_formula_arg(const std::string& text) {
  try {
    return los::parse_formula(text);
  } catch (const ParseError& e) {
    throw InputError(std::string("formula: ") + e.what());
  }
}

int los_parse(Ctx& c, const std::string& text) {
  const auto f = parse_formula_arg(text);
  const auto fv = los::free_variables(f);
  if (c.json) {
    Json j;
    j["formula"] = los::print(f);
    j["height"] = los::height(f);
    j["free"] = std::vector<std::string>(fv.begin(), fv.end());
    emit(c, j);
  } else {
    c.out << los::print(f) << "\nheight: " << los::height(f) << "\nfree:";
    for (const auto& v : fv) c.out << " " << v;
    c.out << "\n";
  }
  return kExitOk;
}

int los_eval(Ctx& c, const std::string& path, const std::string& text, const std::string& assign) {
  const auto st = load(path, los::structure_from_json);
  const auto f = parse_formula_arg(text);
  los::Environment env;
  std::stringstream ss(assign);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--assign entries look like x=label");
    const std::string var = item.substr(0, eq), label = item.substr(eq + 1);
    const auto it = std::find(st.labels.begin(), st.labels.end(), label);
    if (it == st.labels.end()) throw InvalidArgument("'" + label + "' is not an element of the structure");
    env[var] = static_cast<int>(it - st.labels.begin());
  }
  const bool value = los::eval(st, f, env);
  if (c.json) {
    Json j;
    j["formula"] = los::print(f);
    j["value"] = value;
    emit(c, j);
  } else {
    c.out << (value ? "true" : "false") << "\n";
  }
  return kExitOk;
}

int los_check(Ctx& c, std::uint64_t seed, int instances) {
  if (instances < 1) throw InvalidArgument("--instances must be positive");
  const auto r = los::run_los_suite(seed, instances);
  const bool ok = r.agreements == r.instances && r.transfer_agreements == r.transfer_checks;
  if (c.json) {
    Json j;
    j["seed"] = seed;
    j["instances"] = r.instances;
    j["agreements"] = r.agreements;
    j["transfer_checks"] = r.transfer_checks;
    j["transfer_agreements"] = r.transfer_agreements;
    emit(c, j);
  } else {
    c.out << "truth lemma: " << r.agreements << "/" << r.instances << "\ntransfer: " << r.transfer_agreements << "/"
          << r.transfer_checks << "\n";
  }
  return ok ? kExitOk : kExitViolation;
}

// ---- setlim -----------------------------------------------------------

std::string labelled(const setlimits::SetFamily& fam, Mask m) {
  std::string s = "{";
  bool first = true;
  for (int x : members_of(m)) {
    s += (first ? "" : ",") + fam.labels[x];
    first = false;
  }
  return s + "}";
}

Json labelled_json(const setlimits::SetFamily& fam, Mask m) {
  Json a = Json::array();
  for (int x : members_of(m)) a.push_back(fam.labels[x]);
  return a;
}

int setlim_limits(Ctx& c, const std::string& path, const std::string& filter_path, const std::string& kernel) {
  const auto fam = load(path, setlimits::set_family_from_json);
  const int n = fam.index_count();
  filters::FiniteFilter f = [&] {
    if (!filter_path.empty()) {
      auto sets = load(filter_path, filters::family_from_json_text);
      try {
        return filters::FiniteFilter(sets);
      } catch (const InvalidArgument& e) {
        throw InputError(filter_path + ": " + e.what());
      }
    }
    Mask k = full_mask(n);
    if (!kernel.empty()) {
      k = 0;
      for (int i : parse_int_list(kernel)) {
        if (i < 0 || i >= n) throw InvalidArgument("kernel index out of range");
        k |= bit(i);
      }
    }
    return filters::FiniteFilter::generated_by(n, {k});
  }();
  const auto p = setlimits::set_limits(fam, f);
  if (c.json) {
    Json j;
    j["kernel"] = mask_json(f.kernel());
    j["liminf"] = labelled_json(fam, p.liminf);
    j["limsup"] = labelled_json(fam, p.limsup);
    j["lim"] = p.lim ? labelled_json(fam, *p.lim) : Json(nullptr);
    emit(c, j);
  } else {
    c.out << "filter kernel: " << format_mask(f.kernel()) << "\n";
    c.out << "liminf: " << labelled(fam, p.liminf) << "\nlimsup: " << labelled(fam, p.limsup) << "\n";
    c.out << "lim: " << (p.lim ? labelled(fam, *p.lim) : "none") << "\n";
  }
  return kExitOk;
}

int setlim_lemma(Ctx& c, const std::string& path, int point) {
  const auto fam = load(path, setlimits::set_family_from_json);
  if (point < 0 || point >= fam.index_count()) throw InvalidArgument("--point must be an index of the family");
  const auto u = filters::principal(fam.index_count(), point);
  const Mask l = setlimits::limit_along(fam, u);
  const bool lemma = setlimits::limit_lemma_check(fam, u);
  const bool diagonal = setlimits::limit_is_diagonal_check(fam, u);
  if (c.json) {
    Json j;
    j["point"] = point;
    j["lim"] = labelled_json(fam, l);
    j["lemma"] = lemma;
    j["diagonal"] = diagonal;
    emit(c, j);
  } else {
    c.out << "lim along U_" << point << ": " << labelled(fam, l) << "\n";
    c.out << "I[F,lim] in U for every F: " << verdict(c, lemma) << "\n";
    c.out << "lim is a diagonal: " << verdict(c, diagonal) << "\n";
  }
  return lemma && diagonal ? kExitOk : kExitViolation;
}

// ---- diag -------------------------------------------------------------

additive::IntervalBasisFamily basis_family(const std::string& path, const std::string& sample) {
  if (!path.empty() && !sample.empty()) throw InvalidArgument("give either --family or --sample, not both");
  if (!path.empty()) return load(path, additive::basis_family_from_json);
  if (sample.empty()) throw InvalidArgument("give --family FILE or --sample m1,m2,...");
  return additive::half_interval_family(parse_int_list(sample));
}

Json diagonal_json(const additive::DiagonalResult& r) {
  Json j;
  j["ok"] = r.ok;
  j["depth_reached"] = r.depth_reached;
  j["D"] = r.d;
  j["witnesses"] = r.witnesses;
  if (!r.ok) j["message"] = r.message;
  return j;
}

std::string set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

additive::DiagonalResult result_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("D") || !j.contains("witnesses"))
    throw InvalidArgument("a diagonal result needs 'D' and 'witnesses'");
  additive::DiagonalResult r;
  try {
    r.d = j["D"].get<std::vector<int>>();
    r.witnesses = j["witnesses"].get<std::vector<std::vector<int>>>();
  } catch (const Json::exception&) {
    throw InvalidArgument("'D' must be a list of integers and 'witnesses' a list of integer lists");
  }
  r.ok = true;
  r.depth_reached = static_cast<int>(r.witnesses.size()) - 1;
  return r;
}

int diag_build(Ctx& c, const std::string& path, const std::string& sample, int horizon, bool validate,
               const std::string& result_path) {
  const auto fam = basis_family(path, sample);
  const auto r = result_path.empty() ? additive::build_diagonal(fam, horizon) : load(result_path, result_from_json);
  if (!r.ok) {
    if (c.json) {
      emit(c, diagonal_json(r));
    } else {
      c.out << "no diagonal: " << r.message << "\n";
    }
    return kExitUsage;
  }
  if (!validate) {
    if (c.json) {
      emit(c, diagonal_json(r));
    } else {
      c.out << "D = " << set_text(r.d) << "\n";
      for (int n = 0; n <= horizon; ++n) c.out << "  n=" << n << " witnesses " << set_text(r.witnesses[n]) << "\n";
    }
    return kExitOk;
  }
  const auto v = additive::validate_diagonal(fam, horizon, r);
  if (c.json) {
    Json j = diagonal_json(r);
    j["witnesses_ok"] = v.witnesses_ok;
    j["n_prime"] = v.n_prime;
    j["covers"] = v.covers;
    j["s_D"] = v.s_d;
    j["s_bound"] = v.s_bound;
    j["valid"] = v.ok;
    emit(c, j);
  } else {
    c.out << "D = " << set_text(r.d) << "\n";
    c.out << "witness lists: " << verdict(c, v.witnesses_ok) << "\n";
    c.out << "N' = " << v.n_prime << "\n";
    c.out << "[0,N'] in D+D: " << verdict(c, v.covers) << "\n";
    c.out << "s(D) = " << v.s_d << " <= " << v.s_bound << ": " << verdict(c, v.bound_ok) << "\n";
  }
  return v.ok ? kExitOk : kExitViolation;
}

// ---- topo -------------------------------------------------------------

int topo_count(Ctx& c, int k) {
  const auto r = fintop::count_correspondence(k);
  if (c.json) {
    Json j;
    j["k"] = k;
    j["topologies"] = r.topologies;
    j["preorders"] = r.preorders;
    j["equal"] = r.equal;
    emit(c, j);
  } else {
    c.out << "k=" << k << ": " << r.topologies << " topologies, " << r.preorders << " preorders\n";
  }
  return r.equal ? kExitOk : kExitViolation;
}

int topo_normal(Ctx& c, const std::string& path) {
  const auto t = load(path, fintop::topology_from_json);
  const auto r = fintop::normality_check(t);
  const auto m = fintop::nasse_of(t).matrix();
  if (c.json) {
    Json j;
    j["nasse"] = m;
    j["normal_direct"] = r.normal_direct;
    j["nasse_condition"] = r.nasse_condition;
    j["agree"] = r.agree;
    j["extremal_direct"] = r.extremal_direct;
    j["extremal_condition"] = r.extremal_condition;
    j["extremal_agree"] = r.extremal_agree;
    emit(c, j);
  } else {
    c.out << "nasse:\n";
    for (const auto& row : m) {
      c.out << " ";
      for (int v : row) c.out << " " << v;
      c.out << "\n";
    }
    c.out << "normal: " << yes_no(r.normal_direct) << " (relation test " << yes_no(r.nasse_condition) << ")\n";
    c.out << "extremally disconnected: " << yes_no(r.extremal_direct) << " (relation test "
          << yes_no(r.extremal_condition) << ")\n";
  }
  return r.agree && r.extremal_agree ? kExitOk : kExitViolation;
}

int topo_roundtrip(Ctx& c, int k, int random, std::uint64_t seed) {
  long long checked = 0, failures = 0;
  if (random > 0) {
    if (k < 1 || k > fintop::kMaxPoints) throw InvalidArgument("--k out of range");
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < random; ++trial) {
      const int size = 1 + static_cast<int>(rng() % k);
      fintop::Relation rows(size, 0);
      for (int x = 0; x < size; ++x) {
        rows[x] = bit(x);
        for (int y = 0; y < size; ++y)
          if (rng() % 4 == 0) rows[x] |= bit(y);
      }
      // Transitive closure by repeated squaring.
      for (fintop::Relation next = fintop::compose(rows, rows); !fintop::included(next, rows);
           next = fintop::compose(rows, rows))
        for (int x = 0; x < size; ++x) rows[x] |= next[x];
      const fintop::Preorder p(size, rows);
      const auto t = fintop::topo_of(p);
      ++checked;
      failures += !(fintop::nasse_of(t) == p && fintop::topo_of(fintop::nasse_of(t)) == t);
    }
  } else {
    for (const auto& t : fintop::enumerate_topologies(k)) {
      ++checked;
      failures += !(fintop::topo_of(fintop::nasse_of(t)) == t);
    }
    for (const auto& p : fintop::enumerate_preorders(k)) {
      ++checked;
      failures += !(fintop::nasse_of(fintop::topo_of(p)) == p);
    }
  }
  if (c.json) {
    Json j;
    j["checked"] = checked;
    j["failures"] = failures;
    emit(c, j);
  } else {
    c.out << "round trips: " << checked - failures << "/" << checked << " identities\n";
  }
  return failures == 0 ? kExitOk : kExitViolation;
}

// ---- banach -----------------------------------------------------------

int banach_check(Ctx& c, const std::string& path, const std::string& other, const std::string& a_text,
                 const std::string& b_text) {
  const auto x = load(path, banach::sequence_from_json);
  const auto y = other.empty() ? banach::SequenceWindow::constant(1) : load(other, banach::sequence_from_json);
  const Rational a = parse_rational(a_text), b = parse_rational(b_text);
  const auto e = banach::generalized_limit_estimate(x);
  std::optional<banach::AxiomsReport> rep;
  std::string rejected;
  if (e.status == banach::LimitStatus::converged) {
    try {
      rep = banach::banach_axioms_check(x, y, a, b);
    } catch (const InvalidArgument& ex) {
      rejected = ex.what();
    }
  } else {
    rejected = "no Cesaro limit on the window; axioms not checked";
  }
  auto axiom_json = [](const banach::AxiomCheck& a) {
    Json j;
    j["passed"] = a.passed;
    j["applicable"] = a.applicable;
    j["detail"] = a.detail;
    return j;
  };
  if (c.json) {
    Json j;
    j["status"] = banach::to_string(e.status);
    j["value"] = e.value ? Json(to_string(*e.value)) : Json(nullptr);
    j["analytic"] = e.analytic;
    j["inf"] = to_string(e.inf);
    j["liminf"] = to_string(e.liminf);
    j["limsup"] = to_string(e.limsup);
    j["sup"] = to_string(e.sup);
    j["mean_low"] = to_string(e.mean_low);
    j["mean_high"] = to_string(e.mean_high);
    if (rep) {
      Json ax;
      ax["linearity"] = axiom_json(rep->linearity);
      ax["positivity"] = axiom_json(rep->positivity);
      ax["shift_invariance"] = axiom_json(rep->shift_invariance);
      ax["normalization"] = axiom_json(rep->normalization);
      ax["sandwich"] = axiom_json(rep->sandwich);
      ax["all"] = rep->all;
      j["axioms"] = ax;
    } else {
      j["axioms"] = nullptr;
      j["note"] = rejected;
    }
    emit(c, j);
  } else {
    c.out << "status: " << banach::to_string(e.status);
    if (e.value) c.out << ", L = " << to_string(*e.value) << (e.analytic ? " (declared tail)" : "");
    c.out << "\n";
    c.out << "bounds: " << to_string(e.inf) << " <= " << to_string(e.liminf) << " .. " << to_string(e.limsup)
          << " <= " << to_string(e.sup) << "\n";
    if (!e.value) c.out << "late means: " << to_string(e.mean_low) << " .. " << to_string(e.mean_high) << "\n";
    if (rep) {
      auto line = [&](const char* name, const banach::AxiomCheck& a) {
        c.out << "  " << std::left << std::setw(17) << name << std::right << verdict(c, a.passed) << "  " << a.detail
              << "\n";
      };
      c.out << "axioms:\n";
      line("linearity", rep->linearity);
      line("positivity", rep->positivity);
      line("shift invariance", rep->shift_invariance);
      line("normalization", rep->normalization);
      line("sandwich", rep->sandwich);
    } else {
      c.out << rejected << "\n";
    }
  }
  return !rep || rep->all ? kExitOk : kExitViolation;
}

// ---- verify -----------------------------------------------------------

int verify_all(Ctx& c, std::uint64_t seed) {
  const auto results = verify::run_all(seed);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (c.json) {
    Json j;
    j["seed"] = seed;
    Json arr = Json::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    j["suites"] = arr;
    j["passed"] = all;
    emit(c, j);
  } else {
    for (const auto& r : results)
      c.out << verdict(c, r.passed) << " " << std::setw(2) << r.id << " " << r.name << ": " << r.detail << "\n";
  }
  return all ? kExitOk : kExitViolation;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool tty) {
  const char* no_color = std::getenv("NO_COLOR");
  Ctx ctx{out, false, tty && (no_color == nullptr || *no_color == '\0')};

  CLI::App app{"Voting systems, ultrafilters and their finite shadows", "condorcet"};
  app.require_subcommand(1);
  std::function<int()> action;

  // Shared option storage; each leaf binds what it needs.
  std::string system, profile, method = "all", family, filter, kernel, formula, structure, assign, sample, file,
                                   seq, other, a_text = "1", b_text = "1", triple;
  int n = 3, k = 3, voters = 3, point = 0, horizon = 16, instances = 200, random = 0;
  int i_size = 2, j_size = 2, u_point = 0, v_point = 0;
  std::uint64_t seed = verify::kDefaultSeed;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    auto* s = parent->add_subcommand(name, desc);
    s->add_flag("--json", ctx.json, "machine-readable output");
    return s;
  };

  auto* vote = app.add_subcommand("vote", "voting systems on a finite assembly");
  vote->require_subcommand(1);
  auto* s = leaf(vote, "check", "report C1, C2, C3, U1, U2 and a dictator");
  s->add_option("--system", system, "voting system JSON")->required();
  s->callback([&] { action = [&] { return vote_check(ctx, system); }; });
  s = leaf(vote, "dictator", "find a dictator");
  s->add_option("--system", system, "voting system JSON")->required();
  s->callback([&] { action = [&] { return vote_dictator(ctx, system); }; });
  s = leaf(vote, "weights", "exact weighted-majority representation");
  s->add_option("--system", system, "voting system JSON")->required();
  s->callback([&] { action = [&] { return vote_weights(ctx, system); }; });
  s = leaf(vote, "fano", "report on the seven-point plane");
  s->callback([&] { action = [&] { return vote_fano(ctx); }; });
  s = leaf(vote, "guilbaud", "enumerate C1+C2+C3 systems and test for dictators");
  s->add_option("--n", n, "assembly size (1..4)")->required();
  s->callback([&] { action = [&] { return vote_guilbaud(ctx, n); }; });

  auto* elect = app.add_subcommand("elect", "elections on ranked profiles");
  elect->require_subcommand(1);
  s = leaf(elect, "run", "run plurality, two-round and pairwise majority");
  s->add_option("--profile", profile, "profile JSON")->required();
  s->add_option("--method", method, "plurality, two-round, pairwise or all");
  s->callback([&] { action = [&] { return elect_run(ctx, profile, method); }; });
  s = leaf(elect, "tally", "pairwise tally matrix");
  s->add_option("--profile", profile, "profile JSON")->required();
  s->callback([&] { action = [&] { return elect_tally(ctx, profile); }; });
  s = leaf(elect, "cycles", "find a cycle in the collective relation");
  s->add_option("--profile", profile, "profile JSON")->required();
  s->add_option("--system", system, "voting system JSON (default: simple majority)");
  s->callback([&] { action = [&] { return elect_cycles(ctx, profile, system); }; });
  s = leaf(elect, "stv-conditions", "conditions S, T, V on a candidate triple");
  s->add_option("--profile", profile, "profile JSON")->required();
  s->add_option("--system", system, "voting system JSON (default: simple majority)");
  s->add_option("--triple", triple, "three candidate indices, e.g. 0,1,2");
  s->callback([&] { action = [&] { return elect_conditions(ctx, profile, system, triple); }; });
  s = leaf(elect, "prob", "exact probability of a majority cycle on three candidates");
  s->add_option("--voters", voters, "number of voters (1..7)");
  s->callback([&] { action = [&] { return elect_prob(ctx, voters); }; });

  auto* ultra = app.add_subcommand("ultra", "filters and ultrafilters");
  ultra->require_subcommand(1);
  s = leaf(ultra, "enumerate", "enumerate filters and ultrafilters on k points");
  s->add_option("--k", k, "ground size")->required();
  s->callback([&] { action = [&] { return ultra_enumerate(ctx, k); }; });
  s = leaf(ultra, "sum", "Grimeisen sum of principal ultrafilters");
  s->add_option("--file", file, "sum JSON")->required();
  s->callback([&] { action = [&] { return ultra_sum(ctx, file); }; });
  s = leaf(ultra, "product", "ordinal product of two principal ultrafilters");
  s->add_option("--i", i_size, "|I|");
  s->add_option("--j", j_size, "|J|");
  s->add_option("--u", u_point, "point of U on I");
  s->add_option("--v", v_point, "point of V on J");
  s->callback([&] { action = [&] { return ultra_product(ctx, i_size, j_size, u_point, v_point); }; });

  auto* los_cmd = app.add_subcommand("los", "first-order formulas and ultraproducts");
  los_cmd->require_subcommand(1);
  s = leaf(los_cmd, "parse", "parse and print a formula");
  s->add_option("--formula", formula, "formula text")->required();
  s->callback([&] { action = [&] { return los_parse(ctx, formula); }; });
  s = leaf(los_cmd, "eval", "evaluate a formula in a structure");
  s->add_option("--structure", structure, "structure JSON")->required();
  s->add_option("--formula", formula, "formula text")->required();
  s->add_option("--assign", assign, "x=label,y=label");
  s->callback([&] { action = [&] { return los_eval(ctx, structure, formula, assign); }; });
  s = leaf(los_cmd, "check", "random truth-lemma and transfer checks");
  s->add_option("--seed", seed, "random seed");
  s->add_option("--instances", instances, "number of instances");
  s->callback([&] { action = [&] { return los_check(ctx, seed, instances); }; });

  auto* setlim = app.add_subcommand("setlim", "limits of set families along filters");
  setlim->require_subcommand(1);
  s = leaf(setlim, "limits", "liminf, limsup and lim along a filter");
  s->add_option("--family", family, "set family JSON")->required();
  s->add_option("--filter", filter, "filter JSON");
  s->add_option("--kernel", kernel, "filter kernel as indices, e.g. 0,2");
  s->callback([&] { action = [&] { return setlim_limits(ctx, family, filter, kernel); }; });
  s = leaf(setlim, "diagonal-lemma", "check I[F,lim] in U along a principal ultrafilter");
  s->add_option("--family", family, "set family JSON")->required();
  s->add_option("--point", point, "index of the principal ultrafilter");
  s->callback([&] { action = [&] { return setlim_lemma(ctx, family, point); }; });

  auto* diag = app.add_subcommand("diag", "prefix diagonals of interval bases");
  diag->require_subcommand(1);
  for (const char* name : {"build", "validate"}) {
    const bool validate = std::string(name) == "validate";
    s = leaf(diag, name, validate ? "build and independently validate" : "build a diagonal");
    s->add_option("--family", family, "basis family JSON");
    s->add_option("--sample", sample, "half-interval bases for m1,m2,...");
    s->add_option("--n", horizon, "horizon N");
    if (validate) s->add_option("--result", file, "validate this result JSON instead of building one");
    s->callback([&, validate] {
      action = [&, validate] { return diag_build(ctx, family, sample, horizon, validate, file); };
    });
  }

  auto* topo = app.add_subcommand("topo", "finite topologies and preorders");
  topo->require_subcommand(1);
  s = leaf(topo, "count", "count topologies and preorders");
  s->add_option("--k", k, "points (1..4)")->required();
  s->callback([&] { action = [&] { return topo_count(ctx, k); }; });
  s = leaf(topo, "normal", "normality and extremal disconnectedness");
  s->add_option("--file", file, "topology JSON")->required();
  s->callback([&] { action = [&] { return topo_normal(ctx, file); }; });
  s = leaf(topo, "roundtrip", "topology/preorder round trips");
  s->add_option("--k", k, "points (exhaustive: 1..4; random: max size)");
  s->add_option("--random", random, "number of random preorders instead of exhaustive");
  s->add_option("--seed", seed, "random seed");
  s->callback([&] { action = [&] { return topo_roundtrip(ctx, k, random, seed); }; });

  auto* ban = app.add_subcommand("banach", "Cesaro limits and Banach-limit axioms");
  ban->require_subcommand(1);
  s = leaf(ban, "check", "limit estimate and axiom checks");
  s->add_option("--seq", seq, "sequence JSON")->required();
  s->add_option("--other", other, "second sequence for linearity (default: constant 1)");
  s->add_option("--a", a_text, "coefficient of the first sequence");
  s->add_option("--b", b_text, "coefficient of the second sequence");
  s->callback([&] { action = [&] { return banach_check(ctx, seq, other, a_text, b_text); }; });

  auto* ver = app.add_subcommand("verify", "verification suites");
  ver->require_subcommand(1);
  s = leaf(ver, "all", "run every suite");
  s->add_option("--seed", seed, "seed for the randomized suites");
  s->callback([&] { action = [&] { return verify_all(ctx, seed); }; });

  std::vector<std::string> argv_store = {"condorcet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  if (!action) {
    err << "usage error: no command given\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const FileNotFound& e) {
    err << "error: file not found: " << e.what() << "\n";
  } catch (const InputError& e) {
    err << "error: invalid input in " << e.what() << "\n";
  } catch (const ResourceLimit& e) {
    err << "error: resource limit: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "error: precondition not met: " << e.what() << "\n";
  } catch (const InvalidArgument& e) {
    err << "error: invalid argument: " << e.what() << "\n";
  } catch (const std::logic_error& e) {
    err << "property violation: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace condorcet::cli
