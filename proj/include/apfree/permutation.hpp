#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apfree/error.hpp"

namespace apfree {

/// One-line permutation (pi_1, ..., pi_n) of {1, ..., n}. Immutable once built.
class Permutation {
 public:
  /// Throws Error(not_a_permutation) unless `values` rearranges {1, ..., n}, n >= 1.
  static Permutation validate(std::span<const int> values) {
    if (values.empty()) {
      throw Error(ErrorKind::not_a_permutation, "empty sequence");
    }
    const auto n = static_cast<int>(values.size());
    std::vector<bool> seen(values.size() + 1, false);
    for (int v : values) {
      if (v < 1 || v > n) {
        throw Error(ErrorKind::not_a_permutation,
                    "value " + std::to_string(v) + " outside 1.." + std::to_string(n));
      }
      if (seen[v]) {
        throw Error(ErrorKind::not_a_permutation, "duplicate value " + std::to_string(v));
      }
      seen[v] = true;
    }
    return Permutation(std::vector<int>(values.begin(), values.end()));
  }

  static Permutation validate(std::initializer_list<int> values) {
    return validate(std::span<const int>(values.begin(), values.size()));
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return validate(v);
  }

  int size() const { return static_cast<int>(values_.size()); }
  std::span<const int> values() const { return values_; }

  /// 1-based access, matching the (i, j, k) convention used for witnesses.
  int at(int position) const { return values_.at(static_cast<std::size_t>(position - 1)); }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<int> values) : values_(std::move(values)) {}

  std::vector<int> values_;
};

/// Positions i < j < k (1-based) with pi_i + pi_k = 2 pi_j.
struct APWitness {
  int i = 0;
  int j = 0;
  int k = 0;

  auto operator<=>(const APWitness&) const = default;
};

/// Lexicographically smallest witness, or nullopt iff `p` is 3AP-free. O(n^2).
inline std::optional<APWitness> find_3ap(const Permutation& p) {
  const int n = p.size();
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (int t = 1; t <= n; ++t) pos[p.at(t)] = t;

  std::optional<APWitness> best;
  for (int j = 2; j < n; ++j) {
    const int mid = p.at(j);
    for (int d = 1; mid - d >= 1 && mid + d <= n; ++d) {
      const int a = pos[mid - d];
      const int b = pos[mid + d];
      const APWitness w{std::min(a, b), j, std::max(a, b)};
      if (w.i < j && j < w.k && (!best || w < *best)) best = w;
    }
  }
  return best;
}

inline bool is_3ap_free(const Permutation& p) { return !find_3ap(p).has_value(); }

inline Permutation reverse(const Permutation& p) {
  std::vector<int> v(p.values().rbegin(), p.values().rend());
  return Permutation::validate(v);
}

/// Value map v -> n + 1 - v.
inline Permutation complement(const Permutation& p) {
  std::vector<int> v(p.values().begin(), p.values().end());
  for (int& x : v) x = p.size() + 1 - x;
  return Permutation::validate(v);
}

inline std::string format_csv(const Permutation& p) {
  std::string out;
  for (int v : p.values()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

/// Parses "4,2,1,3". Whitespace anywhere is rejected.
inline Permutation parse_csv(std::string_view text) {
  std::vector<int> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    if (token.empty() || token.size() > 9 ||
        !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorKind::not_a_permutation, "bad token '" + std::string(token) + "' in '" +
                                                    std::string(text) + "'");
    }
    values.push_back(std::stoi(std::string(token)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Permutation::validate(values);
}

}  // namespace apfree
