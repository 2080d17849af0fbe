#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace pairwise::schedule {

/// Oriented pair (outer index, evaluated index).
struct IndexPair {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Index evaluated by outer index `i` at step `s`: (i + s) mod n.
/// Throws DomainError if n == 0, i >= n or s == 0.
std::size_t reach(std::size_t n, std::size_t i, std::size_t s);

/// Index that evaluates `i` at step `s`: (i - s) mod n, in [0, n).
std::size_t reached(std::size_t n, std::size_t i, std::size_t s);

/// Inner steps executed by outer index `i` in the balanced circular schedule.
///
/// Odd n: (n - 1) / 2 for every index. Even n: n / 2 for the first half
/// (i < n / 2), n / 2 - 1 for the second half. Step n / 2 pairs i with
/// i + n / 2, so letting only the first half run it avoids the reciprocal
/// duplicate.
std::size_t steps_for(std::size_t n, std::size_t i);

/// n (n - 1) / 2.
std::uint64_t pair_count(std::size_t n) noexcept;

/// Every (i, reach(n, i, s)) for 0 <= i < n, 1 <= s <= steps_for(n, i),
/// ordered by i then s. Covers each unordered pair exactly once.
std::vector<IndexPair> pairs(std::size_t n);

/// First step at which continuing the odd-n schedule would re-evaluate a
/// pair: (n + 1) / 2. Throws DomainError unless n is odd and n >= 3.
std::size_t first_violation_step(std::size_t n);

/// Per-index step counts of the balanced schedule for a fixed n.
class PairSchedule {
public:
  /// Throws DomainError if n == 0.
  explicit PairSchedule(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t steps(std::size_t i) const;
  std::size_t max_steps() const noexcept;
  std::size_t min_steps() const noexcept;
  std::uint64_t total_steps() const noexcept { return pair_count(n_); }

  /// Calls fn(i, j) for each pair emitted by outer index i, in step order.
  template <class Fn>
  void for_each_from(std::size_t i, Fn&& fn) const {
    const std::size_t count = steps(i);
    std::size_t j = i;
    for (std::size_t s = 1; s <= count; ++s) {
      if (++j == n_) j = 0;
      fn(i, j);
    }
  }

private:
  std::size_t n_;
};

}  // namespace pairwise::schedule
