#pragma once

// Exact arithmetic used everywhere: arbitrary-precision integers and
// normalized rationals. GMP-backed, expression templates off so the types
// behave like ordinary value types.

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace gradedsim {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

// Parses "p" or "p/q" in decimal (optional leading '-'); the denominator must
// be positive. Throws SemanticError on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

// Formats as "p/q", always with an explicit denominator.
std::string format_rational(const Rational& value);

}  // namespace gradedsim
