#pragma once

#include <string>
#include <vector>

#include "apfree/bigint.hpp"
#include "apfree/error.hpp"
#include "apfree/permutation.hpp"
#include "apfree/theta_table.hpp"

namespace apfree {

enum class DoublingOrder { even_block_first, odd_block_first };

namespace detail {

inline void require_3ap_free(const Permutation& p, const char* name) {
  if (auto w = find_3ap(p)) {
    throw Error(ErrorKind::input_not_3ap_free,
                std::string(name) + " = " + format_csv(p) + " has a 3AP at (" + std::to_string(w->i) +
                    "," + std::to_string(w->j) + "," + std::to_string(w->k) + ")");
  }
}

// evens = 2a_i, odds = 2b_i - 1, concatenated in the requested order.
inline Permutation concat_blocks(const Permutation& a, const Permutation& b, DoublingOrder order) {
  std::vector<int> evens;
  std::vector<int> odds;
  for (int v : a.values()) evens.push_back(2 * v);
  for (int v : b.values()) odds.push_back(2 * v - 1);
  auto& first = order == DoublingOrder::even_block_first ? evens : odds;
  auto& second = order == DoublingOrder::even_block_first ? odds : evens;
  first.insert(first.end(), second.begin(), second.end());
  return Permutation::validate(first);
}

}  // namespace detail

/// 3AP-free permutations a, b of [k] -> 3AP-free permutation of [2k].
/// A 3AP needs both endpoints in one parity block, and its midpoint then has
/// to sit inside that block too, where the halved values are 3AP-free.
inline Permutation double_perm(const Permutation& a, const Permutation& b, DoublingOrder order) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::length_mismatch, "double needs |a| == |b|, got " +
                                                std::to_string(a.size()) + " and " +
                                                std::to_string(b.size()));
  }
  detail::require_3ap_free(a, "a");
  detail::require_3ap_free(b, "b");
  return detail::concat_blocks(a, b, order);
}

/// a of [n] (even block), b of [n+1] (odd block) -> permutation of [2n+1].
/// The output is re-checked; a violation throws construction_violation.
inline Permutation double_perm_odd(const Permutation& a, const Permutation& b, DoublingOrder order) {
  if (b.size() != a.size() + 1) {
    throw Error(ErrorKind::length_mismatch, "double_odd needs |b| == |a| + 1, got |a|=" +
                                                std::to_string(a.size()) + ", |b|=" +
                                                std::to_string(b.size()));
  }
  detail::require_3ap_free(a, "a");
  detail::require_3ap_free(b, "b");
  auto out = detail::concat_blocks(a, b, order);
  if (auto w = find_3ap(out)) {
    throw Error(ErrorKind::construction_violation,
                "double_odd produced " + format_csv(out) + " with a 3AP at (" + std::to_string(w->i) +
                    "," + std::to_string(w->j) + "," + std::to_string(w->k) + ")");
  }
  return out;
}

/// 2 * theta(k)^2: the number of distinct outputs of double_perm over all pairs and both orders.
inline BigInt count_via_doubling(int k, const ThetaTable& table) {
  const BigInt& t = table.at(k);
  return 2 * t * t;
}

}  // namespace apfree
