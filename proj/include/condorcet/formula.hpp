#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "condorcet/errors.hpp"

// First-order formulas over a relational signature with equality, stored in
// core form: not, or, exists, =, R(...). The connectives and, implies and
// forall are abbreviations expanded at construction:
//   p and q      ->  not (not p or not q)
//   p implies q  ->  not p or q
//   forall v. p  ->  not exists v. not p
//
// Concrete grammar (keywords are reserved; constants carry an '@'):
//   formula  := or_expr [ "implies" formula ]
//   or_expr  := and_expr { "or" and_expr }
//   and_expr := unary { "and" unary }
//   unary    := "not" unary | ("exists" | "forall") VAR "." formula | atom
//   atom     := "(" formula ")" | term "=" term | REL "(" term { "," term } ")"
//   term     := VAR | "@" NAME
// A quantifier's body extends as far to the right as possible.
namespace condorcet::los {

struct Term {
  enum class Kind { Variable, Constant };
  Kind kind;
  std::string name;

  static Term var(std::string n) { return Term{Kind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return Term{Kind::Constant, std::move(n)}; }
  bool operator==(const Term&) const = default;
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind { Not, Or, Exists, Eq, Rel };
  Kind kind;
  std::string name;          // bound variable (Exists) or relation symbol (Rel)
  std::vector<Term> terms;   // Eq: two terms; Rel: the arguments
  std::vector<Formula> children;
};

Formula make_not(Formula p);
Formula make_or(Formula p, Formula q);
Formula make_exists(std::string var, Formula body);
Formula make_eq(Term a, Term b);
Formula make_rel(std::string symbol, std::vector<Term> args);

Formula make_and(Formula p, Formula q);
Formula make_implies(Formula p, Formula q);
Formula make_forall(std::string var, Formula body);

bool equal(const Formula& a, const Formula& b);
// Height of the core syntax tree; atoms have height 0.
int height(const Formula& f);
std::set<std::string> free_variables(const Formula& f);

class ParseError : public InvalidArgument {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Formula parse_formula(const std::string& text);
// Core syntax; parse_formula(print(f)) is structurally equal to f.
std::string print(const Formula& f);

}  // namespace condorcet::los
