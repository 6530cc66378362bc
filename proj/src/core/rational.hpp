#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace fairorient {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q", decimal strings ("1.25", "-0.5"), and plain integers ("17").
// Returns nullopt on malformed input or zero denominator.
std::optional<Rational> parse_rational(const std::string& text);

// "p" when the denominator is 1, "p/q" otherwise. Round-trips through
// parse_rational exactly.
std::string format_rational(const Rational& r);

}  // namespace fairorient
