#pragma once

#include <string>
#include <vector>

#include "apfree/bigint.hpp"
#include "apfree/decimal_root.hpp"
#include "apfree/error.hpp"
#include "apfree/theta_table.hpp"

namespace apfree {

inline constexpr unsigned kDefaultDisplayDigits = 11;

// Lower bounds are truncated so the printed value stays a valid lower bound;
// upper bounds are rounded to nearest.
inline constexpr Rounding kLowerBoundRounding = Rounding::down;
inline constexpr Rounding kUpperBoundRounding = Rounding::nearest;

inline int subsequence_index(int m, int t) {
  if (m < 1 || t < 0 || t > 24) {
    throw std::invalid_argument("need m >= 1 and 0 <= t <= 24, got m=" + std::to_string(m) +
                                ", t=" + std::to_string(t));
  }
  return m << t;
}

/// b_t(m) = theta(n)^(1/n) with n = m * 2^t.
struct SubsequencePoint {
  int m = 0;
  int t = 0;
  int n = 0;
  DecimalRoot value;  // truncated at precision_digits
  unsigned precision_digits = 0;
};

inline SubsequencePoint b_value(int m, int t, const ThetaTable& table, unsigned digits) {
  const int n = subsequence_index(m, t);
  return {m, t, n, root_decimal(table.at(n), static_cast<unsigned>(n), digits, Rounding::down), digits};
}

/// Bracket on L_m = lim_t b_t(m) from a single point n = m * 2^t:
/// lower_radicand^(1/root) <= L_m <= upper_radicand^(1/root).
struct GrowthBound {
  int m = 0;
  int t = 0;
  BigInt lower_radicand;  // 2 * theta(n)
  BigInt upper_radicand;  // 21 * theta(n)
  unsigned root = 0;      // n

  DecimalRoot lower_decimal(unsigned digits = kDefaultDisplayDigits) const {
    return root_decimal(lower_radicand, root, digits, kLowerBoundRounding);
  }
  DecimalRoot upper_decimal(unsigned digits = kDefaultDisplayDigits) const {
    return root_decimal(upper_radicand, root, digits, kUpperBoundRounding);
  }
};

inline GrowthBound bound_L(int m, int t, const ThetaTable& table) {
  const int n = subsequence_index(m, t);
  const BigInt& theta = table.at(n);
  return {m, t, 2 * theta, 21 * theta, static_cast<unsigned>(n)};
}

struct SeparationCertificate {
  int m_low = 0;
  int m_high = 0;
  GrowthBound lower_bound;  // taken from bound_L(m_low, .)
  GrowthBound upper_bound;  // taken from bound_L(m_high, .)
  Provenance low_provenance = Provenance::builtin;
  Provenance high_provenance = Provenance::builtin;
  BigInt lhs;  // A^b
  BigInt rhs;  // B^a
  bool separated = false;
};

/// Proves L_{m_low} > L_{m_high} when A^(1/a) > B^(1/b), decided as A^b > B^a,
/// with (A, a) the lower bracket of m_low and (B, b) the upper bracket of m_high.
inline SeparationCertificate separate(int m_low, int t_low, int m_high, int t_high,
                                      const ThetaTable& table) {
  SeparationCertificate c;
  c.m_low = m_low;
  c.m_high = m_high;
  c.lower_bound = bound_L(m_low, t_low, table);
  c.upper_bound = bound_L(m_high, t_high, table);
  c.low_provenance = table.provenance(static_cast<int>(c.lower_bound.root));
  c.high_provenance = table.provenance(static_cast<int>(c.upper_bound.root));
  c.lhs = pow(c.lower_bound.lower_radicand, c.upper_bound.root);
  c.rhs = pow(c.upper_bound.upper_radicand, c.lower_bound.root);
  c.separated = c.lhs > c.rhs;
  return c;
}

// ---------------------------------------------------------------------------
// Inequality checks. Every verdict is an integer comparison.

/// 2 theta(k)^2 <= theta(2k) <= 21 theta(k)^2
struct SandwichReport {
  int k = 0;
  BigInt lower;
  BigInt middle;
  BigInt upper;
  bool passed = false;
};

inline SandwichReport check_sandwich(int k, const ThetaTable& table) {
  const BigInt& tk = table.at(k);
  const BigInt sq = tk * tk;
  SandwichReport r{k, 2 * sq, table.at(2 * k), 21 * sq, false};
  r.passed = r.lower <= r.middle && r.middle <= r.upper;
  return r;
}

/// theta(n) <= 21 theta(ceil(n/2)) theta(floor(n/2)), n >= 3
struct SplitUpperReport {
  int n = 0;
  BigInt value;
  BigInt bound;
  bool passed = false;
};

inline SplitUpperReport check_split_upper(int n, const ThetaTable& table) {
  if (n < 3) throw std::invalid_argument("check_split_upper needs n >= 3");
  SplitUpperReport r{n, table.at(n), 21 * table.at((n + 1) / 2) * table.at(n / 2), false};
  r.passed = r.value <= r.bound;
  return r;
}

/// 2^(n-1) <= theta(n) <= floor((n+1)/2)! ceil((n+1)/2)!
struct GlobalBoundsReport {
  int n = 0;
  BigInt lower;
  BigInt value;
  BigInt upper;
  bool passed = false;
};

inline GlobalBoundsReport global_bounds(int n, const BigInt& value) {
  if (n < 1) throw std::invalid_argument("global_bounds needs n >= 1");
  GlobalBoundsReport r{n, BigInt(1) << (n - 1), value,
                       factorial(static_cast<unsigned>((n + 1) / 2)) *
                           factorial(static_cast<unsigned>((n + 2) / 2)),
                       false};
  r.passed = r.lower <= r.value && r.value <= r.upper;
  return r;
}

inline GlobalBoundsReport check_global_bounds(int n, const ThetaTable& table) {
  return global_bounds(n, table.at(n));
}

struct MonotoneStep {
  int t = 0;  // compares b_t(m) with b_{t+1}(m)
  bool strictly_increasing = false;
  SandwichReport sandwich;
};

struct MonotoneReport {
  int m = 0;
  std::vector<int> points;  // available n = m * 2^t
  std::vector<MonotoneStep> steps;
  bool insufficient_data = false;

  bool passed() const {
    for (const auto& s : steps) {
      if (!s.strictly_increasing || !s.sandwich.passed) return false;
    }
    return true;
  }
};

/// Checks b_{t+1}(m) > b_t(m) and the per-step sandwich for consecutive
/// available t. Raising to the (2n)-th power turns both into integer tests:
/// theta(2n) > theta(n)^2 and 2 theta(n)^2 <= theta(2n) <= 21 theta(n)^2.
inline MonotoneReport monotone_report(int m, const ThetaTable& table) {
  MonotoneReport r;
  r.m = m;
  for (int t = 0; (static_cast<long long>(m) << t) <= table.max_n(); ++t) {
    const int n = m << t;
    if (table.contains(n)) r.points.push_back(n);
    if (t == 0 || !table.contains(n) || !table.contains(n / 2)) continue;
    const int half = n / 2;
    const BigInt& prev = table.at(half);
    MonotoneStep step{t - 1, table.at(n) > prev * prev, check_sandwich(half, table)};
    r.steps.push_back(std::move(step));
  }
  r.insufficient_data = r.steps.empty();
  return r;
}

struct NamedCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct EnvelopeReport {
  DecimalRoot liminf_lower;  // (2 theta(160))^(1/160), truncated
  DecimalRoot limsup_upper;  // (21 theta(128))^(1/128), rounded
  bool liminf_bracketed = false;
  bool limsup_bracketed = false;
  std::vector<NamedCheck> historical;

  bool passed() const {
    if (!liminf_bracketed || !limsup_bracketed) return false;
    for (const auto& h : historical) {
      if (!h.passed) return false;
    }
    return true;
  }
};

/// Envelope on liminf/limsup of theta(n)^(1/n) from theta(160) and theta(128),
/// plus the classical constants (2 theta(10))^(1/10) ~ 2.152 and
/// (2 theta(16))^(1/16) ~ 2.248 when those values are present.
inline EnvelopeReport envelope_estimates(const ThetaTable& table, unsigned digits = 5) {
  EnvelopeReport r;
  const BigInt low = 2 * table.at(160);
  const BigInt high = 21 * table.at(128);
  r.liminf_lower = root_decimal(low, 160, digits, kLowerBoundRounding);
  r.limsup_upper = root_decimal(high, 128, digits, kUpperBoundRounding);
  r.liminf_bracketed = brackets(low, 160, r.liminf_lower, kLowerBoundRounding);
  r.limsup_bracketed = brackets(high, 128, r.limsup_upper, kUpperBoundRounding);

  const auto classic = [&](int n, const char* expected) {
    if (!table.contains(n)) return;
    const auto c = root_decimal(2 * table.at(n), static_cast<unsigned>(n), 3, Rounding::nearest);
    r.historical.push_back({"(2*theta(" + std::to_string(n) + "))^(1/" + std::to_string(n) + ")",
                            expected, c.text(), c.text() == expected});
  };
  classic(10, "2.152");
  classic(16, "2.248");
  return r;
}

/// Violated table invariants, one message each; empty when consistent.
inline std::vector<std::string> table_violations(const ThetaTable& table) {
  std::vector<std::string> out;
  for (const auto& [n, e] : table.entries()) {
    if (auto g = global_bounds(n, e.value); !g.passed) {
      out.push_back("global bounds fail at n=" + std::to_string(n) + ": " + to_decimal(g.lower) +
                    " <= " + to_decimal(g.value) + " <= " + to_decimal(g.upper));
    }
    if (table.contains(2 * n)) {
      if (auto s = check_sandwich(n, table); !s.passed) {
        out.push_back("sandwich fails at k=" + std::to_string(n) + ": " + to_decimal(s.lower) +
                      " <= " + to_decimal(s.middle) + " <= " + to_decimal(s.upper));
      }
    }
    if (table.contains(n + 1) && table.contains(2 * n + 1)) {
      const BigInt product = table.at(n + 1) * e.value;
      if (table.at(2 * n + 1) < product) {
        out.push_back("odd doubling fails at n=" + std::to_string(n) + ": theta(" +
                      std::to_string(2 * n + 1) + ")=" + to_decimal(table.at(2 * n + 1)) + " < " +
                      to_decimal(product));
      }
    }
  }
  return out;
}

}  // namespace apfree
