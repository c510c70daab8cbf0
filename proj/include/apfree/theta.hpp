#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "apfree/counting.hpp"
#include "apfree/data_io.hpp"
#include "apfree/theta_table.hpp"

namespace apfree {

enum class ThetaPolicy { lookup_only, compute_if_missing };

struct ThetaOptions {
  int worker_count = 1;
  int split_depth = 2;
  std::optional<std::uint64_t> node_budget;
  std::optional<std::filesystem::path> cache;  // persisted after every computed insert
};

/// table[n], counting and recording it first under compute_if_missing.
inline BigInt theta(int n, ThetaTable& table, ThetaPolicy policy, const ThetaOptions& options = {}) {
  if (n < 1) throw std::invalid_argument("theta: n must be >= 1");
  if (const auto* e = table.find(n)) return e->value;
  if (policy == ThetaPolicy::lookup_only) {
    throw Error(ErrorKind::value_unavailable, "theta(" + std::to_string(n) + ") is not in the table");
  }
  CountJob job;
  job.n = n;
  job.worker_count = options.worker_count;
  job.split_depth = std::min(options.split_depth, n);
  job.node_budget = options.node_budget;
  BigInt value = count_pruned(job);
  table.insert(n, value, Provenance::computed);
  if (options.cache) save_table_file(table, *options.cache);
  return value;
}

}  // namespace apfree
