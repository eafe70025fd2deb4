#include "condorcet/structures.hpp"

#include <json.hpp>

namespace condorcet::los {

Structure::Structure(int size, Signature signature) : size_(size), signature_(std::move(signature)) {
  if (size < 1) throw InvalidArgument("a structure needs a nonempty universe");
  for (const auto& [name, arity] : signature_.relations) {
    if (arity < 1) throw InvalidArgument("relation '" + name + "' must have arity >= 1");
    relations_[name];
  }
  for (int i = 0; i < size; ++i) labels.push_back(std::to_string(i));
}

void Structure::add(const std::string& relation, const Tuple& tuple) {
  auto it = signature_.relations.find(relation);
  if (it == signature_.relations.end()) throw InvalidArgument("unknown relation '" + relation + "'");
  if (static_cast<int>(tuple.size()) != it->second)
    throw InvalidArgument("relation '" + relation + "' has arity " + std::to_string(it->second));
  for (int x : tuple)
    if (x < 0 || x >= size_) throw InvalidArgument("tuple element outside the universe");
  relations_[relation].insert(tuple);
}

bool Structure::holds(const std::string& relation, const Tuple& tuple) const {
  return tuples(relation).count(tuple) > 0;
}

const std::set<Tuple>& Structure::tuples(const std::string& relation) const {
  auto it = relations_.find(relation);
  if (it == relations_.end()) throw InvalidArgument("unknown relation '" + relation + "'");
  return it->second;
}

void Structure::set_constant(const std::string& name, int element) {
  if (!signature_.constants.count(name)) throw InvalidArgument("unknown constant '@" + name + "'");
  if (element < 0 || element >= size_) throw InvalidArgument("constant value outside the universe");
  constants_[name] = element;
}

int Structure::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) throw InvalidArgument("constant '@" + name + "' is not interpreted");
  return it->second;
}

namespace {

int value_of(const Structure& st, const Term& t, const Environment& env) {
  if (t.kind == Term::Kind::Constant) return st.constant(t.name);
  auto it = env.find(t.name);
  if (it == env.end()) throw InvalidArgument("unbound variable '" + t.name + "'");
  return it->second;
}

bool eval_in(const Structure& st, const Formula& f, Environment& env) {
  using K = FormulaNode::Kind;
  switch (f->kind) {
    case K::Eq: return value_of(st, f->terms[0], env) == value_of(st, f->terms[1], env);
    case K::Rel: {
      auto it = st.signature().relations.find(f->name);
      if (it == st.signature().relations.end()) throw InvalidArgument("unknown relation '" + f->name + "'");
      if (it->second != static_cast<int>(f->terms.size()))
        throw InvalidArgument("relation '" + f->name + "' used with the wrong number of arguments");
      Tuple t;
      for (const auto& term : f->terms) t.push_back(value_of(st, term, env));
      return st.holds(f->name, t);
    }
    case K::Not: return !eval_in(st, f->children[0], env);
    case K::Or: return eval_in(st, f->children[0], env) || eval_in(st, f->children[1], env);
    case K::Exists: {
      const auto outer = env.find(f->name);
      const bool shadows = outer != env.end();
      const int saved = shadows ? outer->second : 0;
      bool found = false;
      for (int e = 0; e < st.size() && !found; ++e) {
        env[f->name] = e;
        found = eval_in(st, f->children[0], env);
      }
      if (shadows)
        env[f->name] = saved;
      else
        env.erase(f->name);
      return found;
    }
  }
  return false;
}

}  // namespace

bool eval(const Structure& st, const Formula& f, const Environment& env) {
  Environment scratch = env;
  return eval_in(st, f, scratch);
}

namespace {

std::string label_of(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw InvalidArgument("universe entries must be strings or integers");
}

Structure parse_structure(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("universe") || !j["universe"].is_array())
    throw InvalidArgument("structure JSON needs a 'universe' array");
  std::map<std::string, int> id;
  std::vector<std::string> labels;
  for (const auto& v : j["universe"]) {
    auto l = label_of(v);
    if (!id.emplace(l, static_cast<int>(labels.size())).second)
      throw InvalidArgument("universe entry '" + l + "' repeats");
    labels.push_back(l);
  }
  auto lookup = [&](const nlohmann::json& v) {
    auto it = id.find(label_of(v));
    if (it == id.end()) throw InvalidArgument("'" + label_of(v) + "' is not in the universe");
    return it->second;
  };
  Signature sig;
  if (j.contains("arities"))
    for (const auto& [name, a] : j["arities"].items()) sig.relations[name] = a.get<int>();
  if (j.contains("relations")) {
    for (const auto& [name, tuples] : j["relations"].items()) {
      if (!tuples.is_array()) throw InvalidArgument("relation '" + name + "' must be an array of tuples");
      for (const auto& t : tuples) {
        if (!t.is_array() || t.empty()) throw InvalidArgument("relation '" + name + "' has a malformed tuple");
        auto [it, fresh] = sig.relations.emplace(name, static_cast<int>(t.size()));
        if (!fresh && it->second != static_cast<int>(t.size()))
          throw InvalidArgument("relation '" + name + "' has tuples of different lengths");
      }
      if (!sig.relations.count(name))
        throw InvalidArgument("empty relation '" + name + "' needs an entry under 'arities'");
    }
  }
  if (j.contains("constants"))
    for (const auto& [name, v] : j["constants"].items()) sig.constants.insert(name);
  Structure st(static_cast<int>(labels.size()), sig);
  st.labels = labels;
  if (j.contains("relations"))
    for (const auto& [name, tuples] : j["relations"].items())
      for (const auto& t : tuples) {
        Tuple tuple;
        for (const auto& v : t) tuple.push_back(lookup(v));
        st.add(name, tuple);
      }
  if (j.contains("constants"))
    for (const auto& [name, v] : j["constants"].items()) st.set_constant(name, lookup(v));
  return st;
}

nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Structure structure_from_json(const std::string& text) { return parse_structure(parse_json(text)); }

std::vector<Structure> structures_from_json(const std::string& text) {
  auto j = parse_json(text);
  std::vector<Structure> out;
  if (j.is_object() && j.contains("structures")) {
    if (!j["structures"].is_array()) throw InvalidArgument("'structures' must be an array");
    for (const auto& s : j["structures"]) out.push_back(parse_structure(s));
  } else {
    out.push_back(parse_structure(j));
  }
  if (out.empty()) throw InvalidArgument("no structures given");
  return out;
}

std::string to_json_text(const Structure& st) {
  nlohmann::ordered_json j;
  j["universe"] = st.labels;
  nlohmann::ordered_json arities = nlohmann::ordered_json::object();
  nlohmann::ordered_json rels = nlohmann::ordered_json::object();
  for (const auto& [name, arity] : st.signature().relations) {
    arities[name] = arity;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : st.tuples(name)) {
      std::vector<std::string> row;
      for (int x : t) row.push_back(st.labels[x]);
      arr.push_back(row);
    }
    rels[name] = arr;
  }
  j["arities"] = arities;
  j["relations"] = rels;
  if (!st.signature().constants.empty()) {
    nlohmann::ordered_json cs = nlohmann::ordered_json::object();
    for (const auto& c : st.signature().constants) cs[c] = st.labels[st.constant(c)];
    j["constants"] = cs;
  }
  return j.dump();
}

}  // namespace condorcet::los
