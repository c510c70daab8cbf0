#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apfree {

enum class ErrorKind {
  not_a_permutation,
  oracle_range_exceeded,
  resource_limit_exceeded,
  value_unavailable,
  length_mismatch,
  input_not_3ap_free,
  construction_violation,
  parse_error,
  conflict_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_a_permutation: return "NotAPermutation";
    case ErrorKind::oracle_range_exceeded: return "OracleRangeExceeded";
    case ErrorKind::resource_limit_exceeded: return "ResourceLimitExceeded";
    case ErrorKind::value_unavailable: return "ValueUnavailable";
    case ErrorKind::length_mismatch: return "LengthMismatch";
    case ErrorKind::input_not_3ap_free: return "InputNot3APFree";
    case ErrorKind::construction_violation: return "ConstructionViolation";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::conflict_error: return "ConflictError";
  }
  return "Unknown";
}

// Every failure raised by the library carries a kind so callers (and the CLI)
// can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace apfree
