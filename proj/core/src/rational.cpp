#include "fairaudit/rational.hpp"

#include "fairaudit/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>

namespace fairaudit {
namespace {

using boost::multiprecision::cpp_int;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error("not a number: '" + std::string(text) + "'");
}

// Boost reads a leading zero as octal, so strip them first.
cpp_int decimal_digits(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return cpp_int{std::string(s.substr(first))};
}

cpp_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad_number(whole);
  cpp_int v = decimal_digits(s);
  return negative ? cpp_int(-v) : v;
}

cpp_int pow10(std::int64_t n) {
  cpp_int r = 1;
  for (std::int64_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad_number(text);

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const cpp_int num = parse_integer(trim(s.substr(0, slash)), text);
    const cpp_int den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return den < 0 ? Rational(-num, -den) : Rational(num, den);
  }

  std::string_view rest = s;
  bool negative = false;
  if (rest.front() == '-' || rest.front() == '+') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  std::string_view exponent_part;
  if (const auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    exponent_part = rest.substr(e + 1);
    rest = rest.substr(0, e);
  }

  std::string digits;
  std::int64_t fraction_digits = 0;
  if (const auto dot = rest.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = rest.substr(0, dot);
    const std::string_view frac = rest.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      bad_number(text);
    }
    digits = std::string(whole) + std::string(frac);
    fraction_digits = static_cast<std::int64_t>(frac.size());
  } else {
    if (!all_digits(rest)) bad_number(text);
    digits = std::string(rest);
  }

  std::int64_t exponent = 0;
  if (!exponent_part.empty() || s.find_first_of("eE") != std::string_view::npos) {
    std::string_view ep = exponent_part;
    bool exp_negative = false;
    if (!ep.empty() && (ep.front() == '-' || ep.front() == '+')) {
      exp_negative = ep.front() == '-';
      ep.remove_prefix(1);
    }
    if (!all_digits(ep) || ep.size() > 6) bad_number(text);
    std::from_chars(ep.data(), ep.data() + ep.size(), exponent);
    if (exp_negative) exponent = -exponent;
  }

  cpp_int mantissa = decimal_digits(digits);
  if (negative) mantissa = -mantissa;
  const std::int64_t scale = exponent - fraction_digits;
  if (scale >= 0) return Rational(mantissa * pow10(scale));
  return Rational(mantissa, pow10(-scale));
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  const double fraction = std::frexp(value, &exponent);  // |fraction| in [0.5, 1)
  const auto mantissa = static_cast<std::int64_t>(std::ldexp(fraction, 53));
  exponent -= 53;
  cpp_int num(mantissa);
  if (exponent >= 0) return Rational(num << exponent);
  return Rational(num, cpp_int(1) << -exponent);
}

std::string to_fraction_string(const Rational& value) {
  const cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) {
  const cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  const cpp_int limit = cpp_int(1) << 53;
  const cpp_int abs_num = num < 0 ? cpp_int(-num) : num;
  if (abs_num <= limit && den <= limit) {
    // Both operands exact in double, so the division rounds correctly.
    return num.convert_to<double>() / den.convert_to<double>();
  }
  return value.convert_to<double>();
}

std::string format_decimal(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string format_fixed(double value, int digits) {
  std::array<char, 64> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
  std::string out(buf.data(), end);
  // "-0.00" prints as "0.00"
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

}  // namespace fairaudit
