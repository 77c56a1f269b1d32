#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace overlap {

/// Exact rational number (GMP backed, expression templates disabled so that
/// `auto` always yields a value).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Canonical "num/den" form; integers are written with denominator 1.
std::string to_string(const Rational& r);

/// Parses "num/den" or a bare integer. Throws std::invalid_argument on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Nearest double; only used for sizing heuristics and display.
double to_double(const Rational& r);

int sign(const Rational& r);

}  // namespace overlap
