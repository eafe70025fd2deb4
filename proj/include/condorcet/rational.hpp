#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace condorcet {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q" or "p"; accepts a leading '-'.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace condorcet
