#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "apfree/bigint.hpp"
#include "apfree/error.hpp"
#include "apfree/permutation.hpp"

namespace apfree {

inline constexpr int kDefaultOracleCeiling = 10;

/// theta(n) by brute force over all n! permutations. Independent of count_pruned.
inline BigInt count_oracle(int n, int ceiling = kDefaultOracleCeiling) {
  if (n < 1) throw std::invalid_argument("count_oracle: n must be >= 1");
  if (n > ceiling) {
    throw Error(ErrorKind::oracle_range_exceeded,
                "n=" + std::to_string(n) + " exceeds oracle ceiling " + std::to_string(ceiling));
  }
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  BigInt count = 0;
  do {
    if (is_3ap_free(Permutation::validate(v))) ++count;
  } while (std::next_permutation(v.begin(), v.end()));
  return count;
}

struct CountJob {
  int n = 1;
  int worker_count = 1;
  int split_depth = 2;                       // prefix length at which the tree is partitioned
  std::optional<std::uint64_t> node_budget;  // absent: unlimited
  bool verify_leaves = false;                // re-check every counted sequence with find_3ap
  bool use_complement_symmetry = false;      // count pi_1 <= (n+1)/2 only, then weight
};

namespace detail {

// Left-to-right prefix search. Appending v is refused when some placed u has
// its mirror 2v - u inside [1, n] but not yet placed: that mirror would have
// to come later and finish u, v, 2v - u. A prefix that passes every step
// contains no 3AP, and dead branches are cut at the middle element.
class PrefixSearch {
 public:
  PrefixSearch(int n, std::atomic<std::uint64_t>& nodes, std::optional<std::uint64_t> budget,
               bool verify_leaves)
      : n_(n),
        perm_(static_cast<std::size_t>(n) + 1, 0),
        pos_(static_cast<std::size_t>(n) + 1, 0),
        nodes_(nodes),
        budget_(budget),
        verify_(verify_leaves),
        batch_(budget ? std::clamp<std::uint64_t>(*budget / 64, 1, 4096) : 4096) {}

  ~PrefixSearch() { nodes_.fetch_add(local_nodes_, std::memory_order_relaxed); }

  bool can_append(int v) const {
    if (pos_[v] != 0) return false;
    for (int j = 1; j <= len_; ++j) {
      const int x = 2 * v - perm_[j];
      if (x >= 1 && x <= n_ && pos_[x] == 0) return false;
    }
    return true;
  }

  void push(int v) {
    ++len_;
    perm_[len_] = v;
    pos_[v] = len_;
    tick();
  }

  void pop() {
    pos_[perm_[len_]] = 0;
    --len_;
  }

  int length() const { return len_; }
  std::vector<int> prefix() const { return {perm_.begin() + 1, perm_.begin() + 1 + len_}; }

  // Number of completions of the current prefix to a full 3AP-free sequence.
  std::uint64_t count_completions() {
    if (len_ == n_) {
      if (verify_) check_leaf();
      return 1;
    }
    std::uint64_t total = 0;
    for (int v = 1; v <= n_; ++v) {
      if (!can_append(v)) continue;
      push(v);
      total += count_completions();
      pop();
    }
    return total;
  }

 private:
  void tick() {
    if (++local_nodes_ >= batch_) flush();
  }

  void flush() {
    if (local_nodes_ == 0) return;
    const auto seen = nodes_.fetch_add(local_nodes_, std::memory_order_relaxed) + local_nodes_;
    local_nodes_ = 0;
    if (budget_ && seen > *budget_) {
      throw Error(ErrorKind::resource_limit_exceeded,
                  "node budget " + std::to_string(*budget_) + " exhausted at n=" + std::to_string(n_));
    }
  }

  void check_leaf() const {
    const auto p = Permutation::validate(std::span<const int>(perm_.data() + 1, n_));
    if (auto w = find_3ap(p)) {
      throw Error(ErrorKind::construction_violation,
                  "counter accepted " + format_csv(p) + " which has a 3AP at (" +
                      std::to_string(w->i) + "," + std::to_string(w->j) + "," + std::to_string(w->k) + ")");
    }
  }

  int n_;
  int len_ = 0;
  std::vector<int> perm_;  // 1-based
  std::vector<int> pos_;   // pos_[v] = position of v, 0 if unplaced
  std::atomic<std::uint64_t>& nodes_;
  std::optional<std::uint64_t> budget_;
  bool verify_;
  std::uint64_t batch_;
  std::uint64_t local_nodes_ = 0;
};

struct Subtree {
  std::vector<int> prefix;
  unsigned weight = 1;
};

inline void collect_prefixes(PrefixSearch& s, int depth, const CountJob& job,
                             std::vector<Subtree>& out) {
  if (s.length() == depth) {
    unsigned weight = 1;
    if (job.use_complement_symmetry && depth > 0) {
      // complement() fixes no permutation for n >= 2, so orbits pair pi_1 with n+1-pi_1.
      const int first = s.prefix().front();
      weight = 2 * first == job.n + 1 ? 1u : 2u;
    }
    out.push_back({s.prefix(), weight});
    return;
  }
  for (int v = 1; v <= job.n; ++v) {
    if (job.use_complement_symmetry && s.length() == 0 && 2 * v > job.n + 1) continue;
    if (!s.can_append(v)) continue;
    s.push(v);
    collect_prefixes(s, depth, job, out);
    s.pop();
  }
}

}  // namespace detail

/// Exact theta(n) by pruned backtracking. The result is independent of
/// worker_count and split_depth; exhausting node_budget throws.
inline BigInt count_pruned(const CountJob& job) {
  if (job.n < 1) throw std::invalid_argument("count_pruned: n must be >= 1");
  if (job.worker_count < 1) throw std::invalid_argument("count_pruned: worker_count must be >= 1");
  if (job.split_depth < 0 || job.split_depth > job.n) {
    throw std::invalid_argument("count_pruned: split_depth must lie in [0, n]");
  }

  std::atomic<std::uint64_t> nodes{0};
  int depth = job.split_depth;
  if (job.use_complement_symmetry) depth = std::max(depth, 1);

  std::vector<detail::Subtree> tasks;
  {
    detail::PrefixSearch root(job.n, nodes, job.node_budget, job.verify_leaves);
    detail::collect_prefixes(root, depth, job, tasks);
  }

  std::vector<BigInt> partial(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};

  auto worker = [&] {
    try {
      detail::PrefixSearch s(job.n, nodes, job.node_budget, job.verify_leaves);
      for (std::size_t i; !stop.load() && (i = next.fetch_add(1)) < tasks.size();) {
        for (int v : tasks[i].prefix) s.push(v);
        partial[i] = BigInt(s.count_completions()) * tasks[i].weight;
        while (s.length() > 0) s.pop();
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  const auto workers = static_cast<std::size_t>(job.worker_count);
  if (workers == 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  BigInt total = 0;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace apfree
