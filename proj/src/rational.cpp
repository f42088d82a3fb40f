#include "patrolgame/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace patrolgame {

Rational to_rational(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("to_rational: value is not finite");
  }
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt num(scaled);
  BigInt den(1);
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num, den);
}

namespace {

BigInt parse_integer(const std::string& digits) {
  if (digits.empty()) throw std::invalid_argument("parse_rational: empty integer");
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("parse_rational: bad digit in '" + digits + "'");
  }
  // A leading zero would make the BigInt parser read octal.
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
}

Rational parse_decimal(std::string text) {
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.erase(0, 1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    exponent = std::stol(text.substr(e + 1));
    text.erase(e);
  }
  std::string digits = text;
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    digits = text.substr(0, dot) + text.substr(dot + 1);
    exponent -= static_cast<long>(text.size() - dot - 1);
  }
  if (digits.empty()) throw std::invalid_argument("parse_rational: no digits");
  Rational value(parse_integer(digits));
  BigInt ten_pow = 1;
  for (long i = 0; i < std::labs(exponent); ++i) ten_pow *= 10;
  value = exponent >= 0 ? value * Rational(ten_pow) : value / Rational(ten_pow);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return num / den;
  }
  return parse_decimal(text);
}

Rational decimal_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("decimal_rational: value is not finite");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return parse_rational(std::string(buf, res.ptr));
}

}  // namespace patrolgame
