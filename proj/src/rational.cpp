#include "condorcet/rational.hpp"

#include <cctype>

#include "condorcet/errors.hpp"

namespace condorcet {

namespace {

BigInt parse_integer(const std::string& s) {
  if (s.empty()) throw InvalidArgument("empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw InvalidArgument("bad integer '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw InvalidArgument("bad integer '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw InvalidArgument("zero denominator in '" + text + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace condorcet
