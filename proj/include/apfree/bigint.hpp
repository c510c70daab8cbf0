#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "apfree/error.hpp"

namespace apfree {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

// Strict parse: a non-empty run of ASCII digits, nothing else.
inline BigInt parse_decimal(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorKind::parse_error, "empty integer token");
  }
  BigInt out = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorKind::parse_error, "not a decimal integer: '" + std::string(text) + "'");
    }
    out *= 10;
    out += c - '0';
  }
  return out;
}

inline BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

/// Largest y with y^r <= x, for x >= 0 and r >= 1.
inline BigInt iroot(const BigInt& x, unsigned r) {
  if (x < 0 || r == 0) {
    throw std::invalid_argument("iroot: need x >= 0 and r >= 1");
  }
  if (x < 2 || r == 1) return x;

  // Newton iteration from above converges monotonically to the floor root.
  const auto bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
  BigInt y = BigInt(1) << ((bits + r - 1) / r);
  for (;;) {
    BigInt next = ((r - 1) * y + x / pow(y, r - 1)) / r;
    if (next >= y) break;
    y = std::move(next);
  }
  while (pow(y, r) > x) --y;
  while (pow(y + 1, r) <= x) ++y;
  return y;
}

}  // namespace apfree
