#pragma once

#include <string>
#include <string_view>

#include "apfree/bigint.hpp"

namespace apfree {

enum class Rounding { down, nearest, up };

// Fixed-point decimal: scaled / 10^digits.
struct DecimalRoot {
  BigInt scaled;
  unsigned digits = 0;

  std::string text() const {
    std::string s = to_decimal(scaled);
    if (digits == 0) return s;
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, 1, '.');
    return s;
  }

  bool operator==(const DecimalRoot&) const = default;
};

inline BigInt pow10(unsigned k) { return pow(BigInt(10), k); }

// radicand^(1/root) to `digits` decimal places, exact integer arithmetic only.
inline DecimalRoot root_decimal(const BigInt& radicand, unsigned root, unsigned digits,
                                Rounding mode) {
  const BigInt target = radicand * pow10(digits * root);
  BigInt q = iroot(target, root);
  switch (mode) {
    case Rounding::down:
      break;
    case Rounding::up:
      if (pow(q, root) != target) ++q;
      break;
    case Rounding::nearest:
      // Round half up: q+1 iff (q + 1/2)^root <= target.
      if (pow(2 * q + 1, root) <= target * pow(BigInt(2), root)) ++q;
      break;
  }
  return {std::move(q), digits};
}

/// Exact check that `q` is the `mode`-rounding of radicand^(1/root).
inline bool brackets(const BigInt& radicand, unsigned root, const DecimalRoot& q, Rounding mode) {
  const BigInt target = radicand * pow10(q.digits * root);
  switch (mode) {
    case Rounding::down:
      return pow(q.scaled, root) <= target && target < pow(q.scaled + 1, root);
    case Rounding::up:
      return (q.scaled == 0 || pow(q.scaled - 1, root) < target) && target <= pow(q.scaled, root);
    case Rounding::nearest: {
      const BigInt twice = target * pow(BigInt(2), root);
      const BigInt lo = q.scaled == 0 ? BigInt(0) : pow(2 * q.scaled - 1, root);
      return lo <= twice && twice < pow(2 * q.scaled + 1, root);
    }
  }
  return false;
}

// Parses "123.4500" style text back into a DecimalRoot (digits = fractional length).
inline DecimalRoot parse_fixed(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return {parse_decimal(text), 0};
  std::string digits_only(text.substr(0, dot));
  const auto frac = text.substr(dot + 1);
  digits_only += frac;
  return {parse_decimal(digits_only), static_cast<unsigned>(frac.size())};
}

}  // namespace apfree
