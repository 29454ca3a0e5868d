#pragma once

// Exact rational arithmetic used for every count-derived quantity.
//
// Rates are fractions of record counts, and the identities the auditor
// checks (posterior = p*TPR + (1-p)*FPR, the parity factorization, the
// representativity equivalence) hold exactly over the rationals. Values are
// converted to double only when they are reported.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace fairaudit {

using Rational = boost::multiprecision::cpp_rational;

// A rate that may be undefined (e.g. TPR of a group with no positives).
// Undefined is its own state; it is never encoded as 0 or NaN.
using Rate = std::optional<Rational>;

// Parses "7/75", "-3", "0.3", "1e-9", "2.5E+2". Decimal input is converted
// exactly: "0.3" becomes 3/10, not the nearest double.
Rational parse_rational(std::string_view text);

// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double value);

// "7/75", "-1/2", "3". Always in lowest terms.
std::string to_fraction_string(const Rational& value);

double to_double(const Rational& value);

// Shortest round-trip decimal, locale-independent ('.' separator).
std::string format_decimal(double value);

// Fixed-point decimal with `digits` fractional digits, locale-independent.
std::string format_fixed(double value, int digits);

inline bool in_unit_interval(const Rational& value) {
  return value >= 0 && value <= 1;
}

inline Rational abs(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

}  // namespace fairaudit
