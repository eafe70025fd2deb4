#include "condorcet/formula.hpp"

#include <algorithm>
#include <cctype>

namespace condorcet::los {

Formula make_not(Formula p) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaNode::Kind::Not, "", {}, {std::move(p)}});
}

Formula make_or(Formula p, Formula q) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaNode::Kind::Or, "", {}, {std::move(p), std::move(q)}});
}

Formula make_exists(std::string var, Formula body) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaNode::Kind::Exists, std::move(var), {}, {std::move(body)}});
}

Formula make_eq(Term a, Term b) {
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaNode::Kind::Eq, "", {std::move(a), std::move(b)}, {}});
}

Formula make_rel(std::string symbol, std::vector<Term> args) {
  if (args.empty()) throw InvalidArgument("relation '" + symbol + "' needs at least one argument");
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaNode::Kind::Rel, std::move(symbol), std::move(args), {}});
}

Formula make_and(Formula p, Formula q) { return make_not(make_or(make_not(std::move(p)), make_not(std::move(q)))); }

Formula make_implies(Formula p, Formula q) { return make_or(make_not(std::move(p)), std::move(q)); }

Formula make_forall(std::string var, Formula body) {
  return make_not(make_exists(std::move(var), make_not(std::move(body))));
}

bool equal(const Formula& a, const Formula& b) {
  if (a->kind != b->kind || a->name != b->name || a->terms != b->terms ||
      a->children.size() != b->children.size())
    return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!equal(a->children[i], b->children[i])) return false;
  return true;
}

int height(const Formula& f) {
  int h = 0;
  for (const auto& c : f->children) h = std::max(h, 1 + height(c));
  return h;
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = FormulaNode::Kind;
  switch (f->kind) {
    case K::Eq:
    case K::Rel:
      for (const auto& t : f->terms)
        if (t.kind == Term::Kind::Variable && !bound.count(t.name)) out.insert(t.name);
      break;
    case K::Not:
    case K::Or:
      for (const auto& c : f->children) collect_free(c, bound, out);
      break;
    case K::Exists: {
      const bool fresh = bound.insert(f->name).second;
      collect_free(f->children[0], bound, out);
      if (fresh) bound.erase(f->name);
      break;
    }
  }
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

ParseError::ParseError(int line, int column, const std::string& message)
    : InvalidArgument(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  enum class Kind { Ident, Constant, LParen, RParen, Comma, Dot, Equals, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

bool is_keyword(const std::string& s) {
  return s == "not" || s == "or" || s == "and" || s == "exists" || s == "forall" || s == "implies";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&]() {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    const int l = line, col = column;
    auto single = [&](Token::Kind k) {
      out.push_back(Token{k, std::string(1, c), l, col});
      advance();
    };
    switch (c) {
      case '(': single(Token::Kind::LParen); continue;
      case ')': single(Token::Kind::RParen); continue;
      case ',': single(Token::Kind::Comma); continue;
      case '.': single(Token::Kind::Dot); continue;
      case '=': single(Token::Kind::Equals); continue;
      default: break;
    }
    const bool constant = c == '@';
    if (constant) advance();
    if (i >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_'))
      throw ParseError(line, column, constant ? "expected a constant name after '@'"
                                              : std::string("unexpected character '") + c + "'");
    std::string word;
    while (i < text.size() && ident_char(text[i])) {
      word += text[i];
      advance();
    }
    out.push_back(Token{constant ? Token::Kind::Constant : Token::Kind::Ident, word, l, col});
  }
  out.push_back(Token{Token::Kind::End, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse_all() {
    auto f = formula();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_keyword(const char* kw) const { return peek().kind == Token::Kind::Ident && peek().text == kw; }
  [[noreturn]] void fail(const std::string& message) const {
    const auto& t = peek();
    throw ParseError(t.line, t.column, t.kind == Token::Kind::End ? message + " (at end of input)" : message);
  }
  const Token& expect(Token::Kind kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  Formula formula() {
    auto lhs = or_expr();
    if (at_keyword("implies")) {
      ++pos_;
      return make_implies(lhs, formula());
    }
    return lhs;
  }

  Formula or_expr() {
    auto lhs = and_expr();
    while (at_keyword("or")) {
      ++pos_;
      lhs = make_or(lhs, and_expr());
    }
    return lhs;
  }

  Formula and_expr() {
    auto lhs = unary();
    while (at_keyword("and")) {
      ++pos_;
      lhs = make_and(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    if (at_keyword("not")) {
      ++pos_;
      return make_not(unary());
    }
    if (at_keyword("exists") || at_keyword("forall")) {
      const bool universal = peek().text == "forall";
      ++pos_;
      if (peek().kind != Token::Kind::Ident || is_keyword(peek().text)) fail("expected a variable after quantifier");
      std::string var = tokens_[pos_++].text;
      expect(Token::Kind::Dot, "'.' after quantified variable");
      auto body = formula();
      return universal ? make_forall(var, body) : make_exists(var, body);
    }
    return atom();
  }

  Term term() {
    const auto& t = peek();
    if (t.kind == Token::Kind::Constant) {
      ++pos_;
      return Term::constant(t.text);
    }
    if (t.kind == Token::Kind::Ident && !is_keyword(t.text)) {
      ++pos_;
      return Term::var(t.text);
    }
    fail("expected a variable or @constant");
  }

  Formula atom() {
    if (peek().kind == Token::Kind::LParen) {
      ++pos_;
      auto f = formula();
      expect(Token::Kind::RParen, "')'");
      return f;
    }
    if (peek().kind == Token::Kind::Ident && !is_keyword(peek().text) && peek(1).kind == Token::Kind::LParen) {
      std::string symbol = tokens_[pos_].text;
      pos_ += 2;
      std::vector<Term> args = {term()};
      while (peek().kind == Token::Kind::Comma) {
        ++pos_;
        args.push_back(term());
      }
      expect(Token::Kind::RParen, "',' or ')' in relation arguments");
      return make_rel(symbol, args);
    }
    if (peek().kind == Token::Kind::End) fail("expected a formula");
    auto a = term();
    expect(Token::Kind::Equals, "'=' or a relation application");
    return make_eq(a, term());
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string print_term(const Term& t) { return t.kind == Term::Kind::Constant ? "@" + t.name : t.name; }

// Ends in a quantifier whose body would swallow a following "or".
bool open_ended(const Formula& f) {
  if (f->kind == FormulaNode::Kind::Exists) return true;
  if (f->kind == FormulaNode::Kind::Not) return open_ended(f->children[0]);
  return false;
}

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(lex(text)).parse_all(); }

std::string print(const Formula& f) {
  using K = FormulaNode::Kind;
  switch (f->kind) {
    case K::Eq: return print_term(f->terms[0]) + " = " + print_term(f->terms[1]);
    case K::Rel: {
      std::string out = f->name + "(";
      for (std::size_t i = 0; i < f->terms.size(); ++i) out += (i ? "," : "") + print_term(f->terms[i]);
      return out + ")";
    }
    case K::Not: {
      const auto& c = f->children[0];
      // Parenthesize equations so "not x = y" is never misread by a human.
      if (c->kind == K::Eq) return "not (" + print(c) + ")";
      return "not " + print(c);
    }
    case K::Or: {
      std::string lhs = print(f->children[0]);
      if (open_ended(f->children[0])) lhs = "(" + lhs + ")";
      return "(" + lhs + " or " + print(f->children[1]) + ")";
    }
    case K::Exists: return "exists " + f->name + ". " + print(f->children[0]);
  }
  return "";
}

}  // namespace condorcet::los
