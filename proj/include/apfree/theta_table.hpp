#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "apfree/bigint.hpp"
#include "apfree/error.hpp"

namespace apfree {

enum class Provenance { builtin, computed, ingested };

constexpr std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::builtin: return "builtin";
    case Provenance::computed: return "computed";
    case Provenance::ingested: return "ingested";
  }
  return "unknown";
}

inline Provenance parse_provenance(std::string_view text) {
  if (text == "builtin") return Provenance::builtin;
  if (text == "computed") return Provenance::computed;
  if (text == "ingested") return Provenance::ingested;
  throw Error(ErrorKind::parse_error, "unknown provenance tag '" + std::string(text) + "'");
}

struct ThetaEntry {
  BigInt value;
  Provenance provenance = Provenance::computed;

  bool operator==(const ThetaEntry&) const = default;
};

/// Exact theta(n) values keyed by n, each tagged with where it came from.
/// Single writer; concurrent readers are fine between writes.
class ThetaTable {
 public:
  using Entries = std::map<int, ThetaEntry>;

  ThetaTable() = default;

  /// Only the constants printed with the original result: theta(1..11), theta(64), theta(75).
  static ThetaTable builtin() {
    ThetaTable t;
    constexpr const char* small[] = {"1",   "2",   "4",    "10",   "20",  "48",
                                     "104", "282", "496",  "1066", "2460"};
    for (int n = 1; n <= 11; ++n) t.insert(n, parse_decimal(small[n - 1]), Provenance::builtin);
    t.insert(64, parse_decimal("39911512393313043466768"), Provenance::builtin);
    t.insert(75, parse_decimal("30235147387260979648843264"), Provenance::builtin);
    return t;
  }

  bool contains(int n) const { return entries_.contains(n); }

  const ThetaEntry* find(int n) const {
    auto it = entries_.find(n);
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// Throws Error(value_unavailable) when n is absent.
  const BigInt& at(int n) const {
    if (const auto* e = find(n)) return e->value;
    throw Error(ErrorKind::value_unavailable, "theta(" + std::to_string(n) + ") is not available");
  }

  Provenance provenance(int n) const {
    if (const auto* e = find(n)) return e->provenance;
    throw Error(ErrorKind::value_unavailable, "theta(" + std::to_string(n) + ") is not available");
  }

  // Equal re-insertion keeps the existing provenance; a different value is a conflict.
  void insert(int n, const BigInt& value, Provenance provenance) {
    if (n < 1) {
      throw Error(ErrorKind::parse_error, "n must be positive, got " + std::to_string(n));
    }
    if (value < 0) {
      throw Error(ErrorKind::parse_error, "theta(" + std::to_string(n) + ") must be nonnegative");
    }
    auto [it, inserted] = entries_.try_emplace(n, ThetaEntry{value, provenance});
    if (!inserted && it->second.value != value) {
      throw Error(ErrorKind::conflict_error,
                  "theta(" + std::to_string(n) + "): " + to_string(it->second.provenance).data() +
                      " value " + to_decimal(it->second.value) + " vs " +
                      to_string(provenance).data() + " value " + to_decimal(value));
    }
  }

  void merge(const ThetaTable& other) {
    for (const auto& [n, e] : other.entries_) insert(n, e.value, e.provenance);
  }

  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int max_n() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  bool operator==(const ThetaTable&) const = default;

 private:
  Entries entries_;
};

}  // namespace apfree
