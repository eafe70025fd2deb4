#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "condorcet/formula.hpp"

namespace condorcet::los {

struct Signature {
  std::map<std::string, int> relations;  // symbol -> arity >= 1
  std::set<std::string> constants;

  bool operator==(const Signature&) const = default;
};

using Tuple = std::vector<int>;

// A finite structure on the universe {0..size-1}; `labels` keeps the names
// used in files.
class Structure {
 public:
  Structure(int size, Signature signature);

  int size() const { return size_; }
  const Signature& signature() const { return signature_; }

  void add(const std::string& relation, const Tuple& tuple);
  bool holds(const std::string& relation, const Tuple& tuple) const;
  const std::set<Tuple>& tuples(const std::string& relation) const;

  void set_constant(const std::string& name, int element);
  int constant(const std::string& name) const;

  std::vector<std::string> labels;

  bool operator==(const Structure& other) const {
    return size_ == other.size_ && signature_ == other.signature_ && relations_ == other.relations_ &&
           constants_ == other.constants_;
  }

 private:
  int size_;
  Signature signature_;
  std::map<std::string, std::set<Tuple>> relations_;
  std::map<std::string, int> constants_;
};

using Environment = std::map<std::string, int>;

// Tarskian evaluation. Throws InvalidArgument on an unbound variable, an
// unknown symbol or an arity mismatch.
bool eval(const Structure& st, const Formula& f, const Environment& env = {});

// {"universe": [...], "relations": {"R": [[a, b], ...]}, "constants": {"c": a}}
// Universe entries are strings or integers; tuples refer to them by value.
// Relation arities are read from the tuples; an empty relation needs an
// "arities" entry.
Structure structure_from_json(const std::string& text);
std::string to_json_text(const Structure& st);

// A file holding either one structure or {"structures": [...]}.
std::vector<Structure> structures_from_json(const std::string& text);

}  // namespace condorcet::los
